#pragma once
#include <cstdint>
#include <functional>
#include <utility>
#include <vector>

#include "sospencil/sos.hpp"

namespace sospencil {

// Factored polynomial s = prod_j s_j^{m_j}. Irreducibility of the supplied
// factors is TRUSTED, not verified; multivariate factorization is out of
// scope, so callers assert it and the stripping results are only as good as
// that assertion.
struct FactoredPoly {
    std::vector<std::pair<Poly, int>> factors;  // (factor, multiplicity >= 1)

    int nvars() const;
    // Product of the factors with multiplicities; the constant 1 (in at
    // least min_vars variables) when the factor list is empty.
    Poly expand(int min_vars = 0) const;
};

struct SignClassification {
    bool indefinite = false;
    // Witnesses when indefinite: s(positive_point) > 0 > s(negative_point).
    std::vector<Rational> positive_point, negative_point;
    int samples_checked = 0;
};

// Samples s at random rational points (coordinates uniform on [-10, 10] with
// denominator 1000) and reports indefinite iff both strict signs were
// observed, stopping early once they are. A one-sided outcome is evidence
// only, never a proof of semidefiniteness.
SignClassification sign_classification_sample(const Poly& s, int samples, std::uint64_t seed);

// Certifier handle used by the stripping procedure; maps a target to an SOS
// feasibility verdict.
using SosOracle = std::function<SosResult(const Poly&)>;

// sos_feasibility over the monomial basis whose bounds are half the target's
// total and per-variable degrees (every support point of the target is then
// a pairwise sum over the basis).
SosOracle half_degree_oracle(double tol = 1e-9);

struct StripReport {
    FactoredPoly minimal;
    std::vector<Poly> removed_indefinite;  // dropped with all their multiplicity
    std::vector<Poly> removed_redundant;   // dropped one copy per oracle test
    SosResult final_check;                 // oracle run on minimal^2 * F
    // True when some keep decision rests on an inconclusive or stalled oracle
    // run; minimality is then only as strong as those runs.
    bool oracle_inconclusive = false;
};

// Greedy removal of denominator factors that are not needed for s^2 * F to
// certify as a sum of squares. First drops every factor classified
// indefinite by sampling (removing indefinite factors of a certified product
// cannot lose the sum-of-squares property), then repeatedly drops any single
// factor copy whose removal keeps the oracle certifying, to a fixpoint.
// Minimality of the result is relative to the oracle: no single remaining
// factor can be removed without the certifier giving up.
StripReport minimal_denominator_strip(const Poly& f, const FactoredPoly& s,
                                      const SosOracle& oracle, int sign_samples = 400,
                                      std::uint64_t seed = 0);

struct UhpZeroReport {
    bool found = false;
    std::vector<GaussianRational> point;  // every coordinate has Im > 0
    Rational residual_norm2;              // |s(point)|^2, computed exactly
    int attempts = 0;                     // real base points examined
};

// Heuristic search for a zero of s with every coordinate in the open upper
// half-plane: sample a real base point, take the complex roots of the
// univariate restriction in the pivot variable (the last one with a nonzero
// partial derivative), then push the base point itself into the upper
// half-plane by a ladder of small imaginary shifts with Newton re-polishing
// of the root. A returned point is checked exactly: all imaginary parts
// positive as rationals and |s(point)|^2 < (1e-8 * max |coeff|)^2. Not
// finding one is a report, not an error (expected e.g. when the real variety
// carries all the zeros).
UhpZeroReport upper_halfplane_zero(const Poly& s, std::uint64_t seed);

}  // namespace sospencil