#pragma once
#include <cstdint>
#include <string>

#include <json.hpp>

#include "sospencil/ambiguity.hpp"
#include "sospencil/artin.hpp"
#include "sospencil/resolvent.hpp"
#include "sospencil/sos.hpp"

namespace sospencil {

using Json = nlohmann::json;

// Building blocks. Rationals are serialized as strings ("p/q" or "p"),
// polynomials as their canonical printed form, bases as ordered exponent
// vector lists (z0 occupies the last slot for homogenized bases), matrices
// as dense rows of rational strings, and pencils as
//   { "d": int, "basis": [[exp, ...], ...], "matrices": [mat, ...] }.
// Reconstruction re-derives the degree bounds from the listed exponents and
// rebuilds the canonical enumeration; a listing that is not a canonical
// basis is rejected with ParseError.
Json mat_to_json(const Mat& m);
Mat mat_from_json(const Json& j);

Json basis_to_json(const MonomialBasis& b);
MonomialBasis basis_from_json(const Json& monomials, bool homogenized);

Json pencil_to_json(const MatrixPencil& a);
MatrixPencil pencil_from_json(const Json& j);

// Artifact envelopes. Every artifact carries "kind" and enough context to be
// re-checked without trusting the producer.
Json polarization_artifact(const Poly& q, const Poly& p, const MatrixPencil& pencil,
                           bool psd_last = false);
Json resolvent_artifact(const RationalFunction& f, const ResolventRep& rep);
Json wronskian_artifact(const Poly& q, const Poly& p, int j, const Poly& w);
Json certificate_artifact(const GramCertificate& cert);
Json sos_failure_artifact(const Poly& target, const SosResult& r);
Json ambiguity_basis_artifact(const MonomialBasis& basis,
                              const std::vector<AmbiguityBasisElement>& elements);
Json annihilating_pencil_artifact(const MatrixPencil& pencil);
Json symmetric_matrix_artifact(const Mat& m);
Json nevanlinna_artifact(const RationalFunction& f, int samples, std::uint64_t seed,
                         const NevanlinnaReport& rep);
Json strip_artifact(const Poly& f, const FactoredPoly& s, int sign_samples, std::uint64_t seed,
                    double tol, const StripReport& rep);

struct VerifyOutcome {
    bool ok = false;
    std::string kind;
    std::string detail;
};

// Independent re-check of an artifact: polarization and wronskian identities
// re-expanded exactly, certificates re-validated (including exact PSD),
// ambiguity elements re-checked against Psi S Psi^t = 0, annihilating
// pencils against S(z) Psi^t = 0, resolvents re-evaluated at sample points,
// sampling reports re-run with their recorded seeds. Malformed artifacts
// raise ParseError; semantically broken ones come back ok = false.
VerifyOutcome verify_artifact(const Json& artifact);

}  // namespace sospencil