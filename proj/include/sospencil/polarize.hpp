#pragma once
#include <vector>

#include "sospencil/pencil.hpp"

namespace sospencil {

// The explicit chain construction: symmetric (2k+1) x (2k+1) matrices
// C_1..C_{2k+1} (coeff[s] multiplies zeta_{s+1}) and exponent vectors
// mu_1..mu_{2k+1} over the 2k+1 chain variables such that
//   C(zeta) (zeta^mu)^t = (zeta^nu, 0, ..., 0)^t,
// where zeta^nu = zeta_1 zeta_3 ... zeta_{2k+1}. Entries of C(zeta):
// (-1)^{max(i,j)} zeta_{min(i,j)}/2 when |i-j| = 1, zeta_{max(i,j)}/2 when
// |i-j| = 2k, zero otherwise; for k = 0 the pencil is the 1x1 matrix
// [zeta_1].
struct ChainPencil {
    std::vector<Mat> coeff;
    std::vector<MultiIndex> mu;
};

ChainPencil chain_pencil(int k);

// Pencil D(z) over the full basis of the bounds with
//   D(z) Psi(z)^t = z^beta e_r,   r = row of z^alpha1.
// Both monomials must satisfy the bounds.
MatrixPencil monomial_transfer_pencil(const MultiIndex& alpha1, const MultiIndex& beta,
                                      const DegreeBounds& bounds);

// Pencil B(z) over the basis of bounds_for_pair(q, p) with
//   B(z) Psi(z)^t = (a_1 p(z), ..., a_N p(z))^t,
// a_j the coefficient of q on basis monomial j, and consequently
//   q(zeta) p(z) = Psi(zeta) B(z) Psi(z)^t.
// Requires q not identically zero.
MatrixPencil product_pencil(const Poly& q, const Poly& p);

// Exact check of the bilinear identity q(zeta) p(z) = Psi(zeta) B(z) Psi(z)^t
// as a polynomial in the 2d variables.
bool verify_polarization(const Poly& q, const Poly& p, const MatrixPencil& pencil);

// Psi(z) A_k Psi(z)^t, the diagonal slice of the pencil (k = 0 gives the
// constant matrix slice).
Poly pencil_diagonal_form(const MatrixPencil& a, int k);

// Checks A_k d^{n_k}Psi^t/dz_k^{n_k} = 0 for every variable k.
bool derivative_annihilation_holds(const MatrixPencil& a);

}  // namespace sospencil
