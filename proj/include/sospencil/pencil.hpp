#pragma once
#include <vector>

#include "sospencil/basis.hpp"
#include "sospencil/matrix.hpp"
#include "sospencil/poly.hpp"

namespace sospencil {

// Linear symmetric matrix pencil A(z) = A_0 + z_1 A_1 + ... + z_d A_d over a
// monomial basis Psi. coeffs[0] is the constant matrix, coeffs[k] multiplies
// z_k. All matrices are N x N with N = basis.size().
struct MatrixPencil {
    MonomialBasis basis;
    std::vector<Mat> coeffs;

    int dim() const { return basis.size(); }
    int nvars() const { return static_cast<int>(coeffs.size()) - 1; }

    Mat eval(const std::vector<Rational>& z) const;
    Poly entry(int i, int j) const;  // 0-based, a degree <= 1 polynomial
    bool symmetric() const;

    MatrixPencil& operator+=(const MatrixPencil& o);
};

// Zero pencil of the right shape over a basis.
MatrixPencil zero_pencil(const MonomialBasis& basis);

// T^t A_k T for every coefficient matrix; the basis field is carried along
// unchanged (it keeps the size and variable count; after a congruence the
// rows no longer correspond to monomials).
MatrixPencil congruence(const MatrixPencil& a, const Mat& t);

// Psi(z) M Psi(z)^t as a polynomial, M over the given basis.
Poly quadratic_form(const Mat& m, const MonomialBasis& basis);

// M v for a vector of polynomials.
std::vector<Poly> mat_apply_polys(const Mat& m, const std::vector<Poly>& v);

// Rows of A(z) Psi(z)^t as polynomials.
std::vector<Poly> pencil_apply_basis(const MatrixPencil& a);

// Evaluation at a complex rational point.
std::vector<std::vector<GaussianRational>> pencil_eval_complex(
    const MatrixPencil& a, const std::vector<GaussianRational>& z);

// Determinant of the principal submatrix of A(z) on the index set, as a
// polynomial (exact fraction-free elimination). Empty index set gives 1.
Poly principal_minor_poly(const MatrixPencil& a, const std::vector<int>& idx);

}  // namespace sospencil
