#pragma once
#include <vector>

#include "sospencil/matrix.hpp"

namespace sospencil {

// Outcome of the exact semidefiniteness decision. When psd holds,
//   M = P L D L^t P^t  with  P(perm[k], k) = 1,
// L unit lower triangular and D = diag(pivots), pivots >= 0. Otherwise
// `witness` is a rational vector with witness^t M witness = value < 0.
struct PsdResult {
    bool psd = false;
    std::vector<int> perm;
    Mat l;
    std::vector<Rational> pivots;
    std::vector<Rational> witness;
    Rational value;
};

// Pivoted LDL^t over the rationals, largest remaining diagonal first.
PsdResult exact_psd_check(const Mat& m);

}  // namespace sospencil
