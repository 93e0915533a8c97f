#include "sospencil/resolvent.hpp"

#include <algorithm>
#include <optional>

#include "sospencil/ambiguity.hpp"
#include "sospencil/errors.hpp"
#include "sospencil/polarize.hpp"
#include "sospencil/psd.hpp"
#include "sospencil/rng.hpp"

namespace sospencil {

namespace {

// Exact Gaussian elimination over Q(i); nullopt when the matrix is singular.
std::optional<std::vector<GaussianRational>> solve_complex(
    std::vector<std::vector<GaussianRational>> a, std::vector<GaussianRational> b) {
    int n = static_cast<int>(a.size());
    for (int col = 0; col < n; ++col) {
        int piv = -1;
        for (int i = col; i < n; ++i)
            if (!a[i][col].is_zero()) {
                piv = i;
                break;
            }
        if (piv < 0) return std::nullopt;
        std::swap(a[piv], a[col]);
        std::swap(b[piv], b[col]);
        for (int i = col + 1; i < n; ++i) {
            if (a[i][col].is_zero()) continue;
            GaussianRational f = a[i][col] / a[col][col];
            for (int j = col; j < n; ++j) a[i][j] = a[i][j] - f * a[col][j];
            b[i] = b[i] - f * b[col];
        }
    }
    std::vector<GaussianRational> sol(n);
    for (int i = n - 1; i >= 0; --i) {
        GaussianRational acc = b[i];
        for (int j = i + 1; j < n; ++j) acc = acc - a[i][j] * sol[j];
        sol[i] = acc / a[i][i];
    }
    return sol;
}

// Decides det of the principal block indexed by idx is not the zero
// polynomial. A single exact nonzero evaluation already certifies this, so
// random points are tried first and the symbolic Bareiss determinant is the
// fallback for blocks small enough to expand (it settles the all-samples-zero
// case, which in practice means the determinant really vanishes).
bool block_det_nonzero(const MatrixPencil& a, const std::vector<int>& idx) {
    if (idx.empty()) return true;
    Rng rng(12345);
    int d = a.nvars();
    for (int t = 0; t < 40; ++t) {
        std::vector<Rational> z(d);
        for (int k = 0; k < d; ++k) z[k] = rng.rational_in(-10, 10);
        Mat g = a.eval(z).submatrix(idx, idx);
        if (sign_of(det(g)) != 0) return true;
    }
    if (static_cast<int>(idx.size()) <= 8)
        return !principal_minor_poly(a, idx).is_zero();
    return false;
}

// Grows a principal block of the trailing part (indices 1..n-1) whose
// determinant stays nonzero as a polynomial. Single indices are tried
// repeatedly, then pairs; a pair can succeed where both halves fail (two
// zero diagonal entries joined by a nonzero off-diagonal), and any growth
// reopens the single-index sweep.
std::vector<int> greedy_block(const MatrixPencil& a) {
    int n = a.dim();
    std::vector<int> s;
    std::vector<bool> used(n, false);
    used[0] = true;
    for (;;) {
        bool grew = false;
        for (int i = 1; i < n; ++i) {
            if (used[i]) continue;
            std::vector<int> cand = s;
            cand.insert(std::upper_bound(cand.begin(), cand.end(), i), i);
            if (block_det_nonzero(a, cand)) {
                s = std::move(cand);
                used[i] = true;
                grew = true;
            }
        }
        if (grew) continue;
        for (int i = 1; i < n && !grew; ++i) {
            if (used[i]) continue;
            for (int j = i + 1; j < n && !grew; ++j) {
                if (used[j]) continue;
                std::vector<int> cand = s;
                cand.insert(std::upper_bound(cand.begin(), cand.end(), i), i);
                cand.insert(std::upper_bound(cand.begin(), cand.end(), j), j);
                if (block_det_nonzero(a, cand)) {
                    s = std::move(cand);
                    used[i] = true;
                    used[j] = true;
                    grew = true;
                }
            }
        }
        if (!grew) break;
    }
    return s;
}

// Shared tail of the resolvent construction: permute the first nonzero
// coefficient of q to the front, conjugate by the inverse of the coefficient
// row matrix so the corner acts like multiplication by q, and retain a
// principal block with polynomially nonzero determinant.
ResolventRep reduce_pencil(MatrixPencil b, const Poly& q) {
    int n = b.dim();

    std::vector<Rational> a(n);
    int s = -1;
    for (int i = 0; i < n; ++i) {
        a[i] = q.coeff(b.basis.mono(i));
        if (s < 0 && sign_of(a[i]) != 0) s = i;
    }
    if (s < 0) throw PreconditionError("denominator is the zero polynomial");

    std::vector<int> perm(n);
    perm[0] = s;
    int t = 1;
    for (int i = 0; i < n; ++i)
        if (i != s) perm[t++] = i;

    Mat pmat(n, n);
    for (int i = 0; i < n; ++i) pmat(perm[i], i) = 1;
    MatrixPencil permuted = congruence(b, pmat);

    // row operation sending the permuted coefficient row of q to e_0; the
    // pencil is conjugated by its inverse so that Q A Q^t has the scalar
    // corner acting like multiplication by q
    Mat qmat = Mat::identity(n);
    for (int j = 0; j < n; ++j) qmat(0, j) = a[perm[j]];
    auto qinv = inverse(qmat);
    if (!qinv) throw Error("internal: coefficient row transform is singular");
    MatrixPencil reduced = congruence(permuted, *qinv);

    ResolventRep rep;
    rep.pencil = std::move(reduced);
    rep.scalar_index = 0;
    rep.block_indices = greedy_block(rep.pencil);
    rep.transform.perm = std::move(perm);
    rep.transform.q = std::move(qmat);
    if (!block_det_nonzero(rep.pencil, rep.block_indices))
        throw Error("internal: retained block lost its nonzero determinant");
    return rep;
}

}  // namespace

ResolventRep long_resolvent(const RationalFunction& f) {
    return reduce_pencil(product_pencil(f.den, f.num), f.den);
}

GaussianRational eval_resolvent(const ResolventRep& rep,
                                const std::vector<GaussianRational>& z) {
    auto g = pencil_eval_complex(rep.pencil, z);
    int s = rep.scalar_index;
    const std::vector<int>& blk = rep.block_indices;
    GaussianRational a11 = g[s][s];
    if (blk.empty()) return a11;
    int m = static_cast<int>(blk.size());
    std::vector<std::vector<GaussianRational>> a22(m, std::vector<GaussianRational>(m));
    std::vector<GaussianRational> a21(m);
    for (int i = 0; i < m; ++i) {
        a21[i] = g[blk[i]][s];
        for (int j = 0; j < m; ++j) a22[i][j] = g[blk[i]][blk[j]];
    }
    auto sol = solve_complex(std::move(a22), std::move(a21));
    if (!sol) throw SingularBlockError("retained block is singular at the evaluation point");
    GaussianRational acc = a11;
    for (int i = 0; i < m; ++i) acc = acc - g[s][blk[i]] * (*sol)[i];
    return acc;
}

MatrixPencil inverse_resolvent_form(const RationalFunction& f, const Poly& s,
                                    const GramCertificate& cert) {
    if (s.is_zero()) throw PreconditionError("multiplier polynomial is identically zero");
    int d = std::max(f.nvars(), s.nvars());
    Poly qs = f.den.extended(d) * s.extended(d);
    Poly ps = f.num.extended(d) * s.extended(d);
    MatrixPencil b = product_pencil(qs, ps);
    if (!(cert.basis == b.basis))
        throw PreconditionError("certificate basis does not match the basis of (q s, p s)");
    if (!(cert.target == wronskian(qs, ps, d)))
        throw PreconditionError("certificate target differs from s^2 W_d[q, p]");

    // Swapping the top coefficient for the certified Gram matrix keeps the
    // polarization identity, so the reduction applies unchanged and every
    // step preserves semidefiniteness of the top coefficient.
    ResolventRep rep = reduce_pencil(psd_repair(b, qs, ps, cert.gram), qs);

    std::vector<int> keep;
    keep.reserve(rep.block_indices.size() + 1);
    keep.push_back(rep.scalar_index);
    keep.insert(keep.end(), rep.block_indices.begin(), rep.block_indices.end());
    int m = static_cast<int>(keep.size());

    // Rows of the reduced pencil are congruence images of basis rows rather
    // than monomials; the basis attached here only fixes the dimension.
    DegreeBounds db;
    db.n0 = m - 1;
    db.nk.assign(static_cast<std::size_t>(d), 0);
    db.nk[0] = m - 1;
    MatrixPencil out;
    out.basis = MonomialBasis::build(db);
    out.coeffs.reserve(rep.pencil.coeffs.size());
    for (const Mat& c : rep.pencil.coeffs) out.coeffs.push_back(c.submatrix(keep, keep));
    if (!exact_psd_check(out.coeffs.back()).psd)
        throw Error("internal: reduction lost semidefiniteness of the top coefficient");
    return out;
}

}  // namespace sospencil
