#pragma once
#include <vector>

#include "sospencil/pencil.hpp"
#include "sospencil/sos.hpp"

namespace sospencil {

// Coordinate changes applied on the way to the resolvent form: first the
// basis permutation (perm[i] = original position now at slot i), then the
// congruence by Q^{-t} (.) Q^{-1} with Q the coefficient matrix (identity
// except row 0, which carries the permuted coefficients of q).
struct TransformRecord {
    std::vector<int> perm;
    Mat q;
};

struct ResolventRep {
    MatrixPencil pencil;  // the transformed pencil
    int scalar_index = 0;
    std::vector<int> block_indices;  // principal block with det != 0 as a polynomial
    TransformRecord transform;
};

// Builds the representation f(z) = A11(z) - A12(z) A22(z)^{-1} A21(z) from
// the product pencil of (den, num).
ResolventRep long_resolvent(const RationalFunction& f);

// Exact Schur-complement evaluation; throws SingularBlockError when the
// retained block is singular at the point.
GaussianRational eval_resolvent(const ResolventRep& rep,
                                const std::vector<GaussianRational>& z);

// Pencil A(z) with A_d positive semidefinite and
//   pi A(z)^{-1} pi^t = 1/f(z),  pi = (1, 0, ..., 0),
// at points where everything is nonsingular. cert must certify
// s^2 W_d[q, p] over the basis of the pair (q s, p s).
MatrixPencil inverse_resolvent_form(const RationalFunction& f, const Poly& s,
                                    const GramCertificate& cert);

}  // namespace sospencil
