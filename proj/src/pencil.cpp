#include "sospencil/pencil.hpp"

#include "sospencil/errors.hpp"

namespace sospencil {

Mat MatrixPencil::eval(const std::vector<Rational>& z) const {
    if (static_cast<int>(z.size()) != nvars())
        throw DimensionError("pencil evaluated at a point of the wrong dimension");
    Mat acc = coeffs[0];
    for (int k = 1; k <= nvars(); ++k) {
        if (coeffs[k].is_zero()) continue;
        acc += z[k - 1] * coeffs[k];
    }
    return acc;
}

Poly MatrixPencil::entry(int i, int j) const {
    int d = nvars();
    Poly p(d);
    if (sign_of(coeffs[0](i, j)) != 0)
        p.add_term(MultiIndex{std::vector<int>(d, 0)}, coeffs[0](i, j));
    for (int k = 1; k <= d; ++k) {
        if (sign_of(coeffs[k](i, j)) == 0) continue;
        std::vector<int> e(d, 0);
        e[k - 1] = 1;
        p.add_term(MultiIndex{e}, coeffs[k](i, j));
    }
    return p;
}

bool MatrixPencil::symmetric() const {
    for (const Mat& m : coeffs)
        if (!m.is_symmetric()) return false;
    return true;
}

MatrixPencil& MatrixPencil::operator+=(const MatrixPencil& o) {
    if (coeffs.size() != o.coeffs.size() || dim() != o.dim())
        throw DimensionError("pencil sum shape mismatch");
    for (std::size_t t = 0; t < coeffs.size(); ++t) coeffs[t] += o.coeffs[t];
    return *this;
}

MatrixPencil zero_pencil(const MonomialBasis& basis) {
    MatrixPencil p;
    p.basis = basis;
    int d = basis.bounds().d();
    p.coeffs.assign(d + 1, Mat(basis.size(), basis.size()));
    return p;
}

MatrixPencil congruence(const MatrixPencil& a, const Mat& t) {
    if (t.rows() != a.dim()) throw DimensionError("congruence size mismatch");
    MatrixPencil out;
    out.basis = a.basis;
    Mat tt = t.transpose();
    out.coeffs.reserve(a.coeffs.size());
    for (const Mat& m : a.coeffs) out.coeffs.push_back(tt * m * t);
    return out;
}

Poly quadratic_form(const Mat& m, const MonomialBasis& basis) {
    if (m.rows() != basis.size() || m.cols() != basis.size())
        throw DimensionError("quadratic form size mismatch");
    if (basis.size() == 0) return Poly(0);
    int nv = basis.mono(0).size();
    Poly p(nv);
    for (int i = 0; i < m.rows(); ++i)
        for (int j = 0; j < m.cols(); ++j) {
            if (sign_of(m(i, j)) == 0) continue;
            p.add_term(basis.mono(i) + basis.mono(j), m(i, j));
        }
    return p;
}

std::vector<Poly> mat_apply_polys(const Mat& m, const std::vector<Poly>& v) {
    if (m.cols() != static_cast<int>(v.size()))
        throw DimensionError("matrix applied to polynomial vector of wrong length");
    int nv = 0;
    for (const Poly& p : v) nv = std::max(nv, p.nvars());
    std::vector<Poly> out(m.rows(), Poly(nv));
    for (int i = 0; i < m.rows(); ++i)
        for (int j = 0; j < m.cols(); ++j) {
            if (sign_of(m(i, j)) == 0) continue;
            out[i] = out[i] + m(i, j) * v[j].extended(nv);
        }
    return out;
}

std::vector<Poly> pencil_apply_basis(const MatrixPencil& a) {
    int d = a.nvars();
    int n = a.dim();
    std::vector<Poly> out(n, Poly(d));
    for (int t = 0; t <= d; ++t) {
        const Mat& m = a.coeffs[t];
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j) {
                if (sign_of(m(i, j)) == 0) continue;
                std::vector<int> e = a.basis.mono(j).e;
                if (t > 0) e[t - 1] += 1;
                out[i].add_term(MultiIndex{e}, m(i, j));
            }
    }
    return out;
}

std::vector<std::vector<GaussianRational>> pencil_eval_complex(
    const MatrixPencil& a, const std::vector<GaussianRational>& z) {
    int d = a.nvars();
    if (static_cast<int>(z.size()) != d)
        throw DimensionError("pencil evaluated at a point of the wrong dimension");
    int n = a.dim();
    std::vector<std::vector<GaussianRational>> g(n, std::vector<GaussianRational>(n));
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            GaussianRational acc{a.coeffs[0](i, j), Rational(0)};
            for (int k = 1; k <= d; ++k) {
                const Rational& c = a.coeffs[k](i, j);
                if (sign_of(c) == 0) continue;
                acc = acc + GaussianRational{c, Rational(0)} * z[k - 1];
            }
            g[i][j] = acc;
        }
    return g;
}

Poly principal_minor_poly(const MatrixPencil& a, const std::vector<int>& idx) {
    int d = a.nvars();
    int n = static_cast<int>(idx.size());
    if (n == 0) return Poly::constant(d, 1);
    std::vector<std::vector<Poly>> m(n, std::vector<Poly>(n));
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) m[i][j] = a.entry(idx[i], idx[j]);

    // Fraction-free elimination; every division is exact.
    int sign = 1;
    Poly prev = Poly::constant(d, 1);
    for (int r = 0; r + 1 < n; ++r) {
        if (m[r][r].is_zero()) {
            int swap_row = -1;
            for (int i = r + 1; i < n; ++i)
                if (!m[i][r].is_zero()) {
                    swap_row = i;
                    break;
                }
            if (swap_row < 0) return Poly(d);
            std::swap(m[r], m[swap_row]);
            sign = -sign;
        }
        for (int i = r + 1; i < n; ++i)
            for (int j = r + 1; j < n; ++j)
                m[i][j] = divide_exact(m[r][r] * m[i][j] - m[i][r] * m[r][j], prev);
        prev = m[r][r];
    }
    Poly out = m[n - 1][n - 1];
    return sign < 0 ? -out : out;
}

}  // namespace sospencil
