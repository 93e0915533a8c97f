#pragma once
#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "sospencil/pencil.hpp"
#include "sospencil/psd.hpp"

namespace sospencil {

// Exact sum-of-squares witness: Psi gram Psi^t = target with gram PSD, and,
// once factors are extracted, sum_i weights[i] * factors[i]^2 = target with
// every weight a positive rational.
struct GramCertificate {
    MonomialBasis basis;
    Mat gram;
    Poly target;
    std::vector<Rational> weights;
    std::vector<Poly> factors;
};

// Checks both certificate invariants exactly (the linear identity by
// expansion, semidefiniteness by exact_psd_check, and the weighted squares
// when present).
bool gram_certificate_valid(const GramCertificate& cert);

enum class SosStatus {
    certified,            // exact certificate in hand
    infeasible_evidence,  // no certificate; reason says whether the evidence is exact
    inconclusive,         // numeric run did not settle either way
};

struct SosResult {
    SosStatus status = SosStatus::inconclusive;
    std::optional<GramCertificate> cert;
    // For infeasible_evidence: starts with "exact:" when backed by exact
    // arithmetic, "numeric:" when only the iteration stalled. Human-readable
    // detail follows.
    std::string reason;
    double margin = 0.0;  // numeric residual gap where applicable
};

// Decides whether target = Psi G Psi^t admits a PSD Gram matrix G over the
// given basis. Numeric search (alternating projections with Dykstra
// correction) sandwiched between exact reductions; any returned certificate
// is re-verified exactly.
SosResult sos_feasibility(const Poly& target, const MonomialBasis& basis, double tol = 1e-9);

// Weighted square factors from the certificate's exact LDL^t; the expansion
// identity sum w_i h_i^2 = target is verified before returning.
std::vector<std::pair<Rational, Poly>> extract_sos(const GramCertificate& cert);

struct PsdSampleReport {
    bool violation = false;
    std::vector<Rational> point;
    Rational value;
    int samples_checked = 0;
};

// Evaluates F at pseudo-random rational points, coordinates uniform on
// [-10, 10] with denominator 1000; reports the first strictly negative value.
PsdSampleReport psd_sampling_test(const Poly& f, int samples, std::uint64_t seed);

struct NevanlinnaReport {
    bool violation = false;
    std::vector<GaussianRational> point;
    GaussianRational value;
    int samples_checked = 0;
    int poles_skipped = 0;
};

// Samples the open upper poly-halfplane (real parts uniform on [-10, 10],
// imaginary parts uniform on (0, 10], denominator 1000), skipping poles, and
// flags Im f(z) < -1e-12.
NevanlinnaReport nevanlinna_sample_check(const RationalFunction& f, int samples,
                                         std::uint64_t seed);

struct PipelineEntry {
    int variable = 0;  // 1-based z_k
    Poly wronskian_target;
    SosResult result;
};

// Certifies every partial Wronskian W_k[q, p] as a sum of squares over the
// basis determined by the pair's degree bounds.
std::vector<PipelineEntry> main_theorem_pipeline(const RationalFunction& f);

}  // namespace sospencil
