#include "sospencil/polarize.hpp"

#include <algorithm>

#include "sospencil/errors.hpp"

namespace sospencil {

ChainPencil chain_pencil(int k) {
    if (k < 0) throw PreconditionError("chain order must be non-negative");
    int n = 2 * k + 1;
    ChainPencil ch;
    ch.coeff.assign(n, Mat(n, n));
    if (k == 0) {
        ch.coeff[0](0, 0) = 1;
        ch.mu = {MultiIndex{{0}}};
        return ch;
    }

    Rational half(1, 2);
    for (int i = 1; i < n; ++i) {  // 1-based pair (i, i+1)
        int var = i;               // zeta_min
        Rational c = ((i + 1) % 2 == 0) ? half : -half;
        ch.coeff[var - 1](i - 1, i) = c;
        ch.coeff[var - 1](i, i - 1) = c;
    }
    ch.coeff[n - 1](0, n - 1) = half;  // the long link, |i-j| = 2k
    ch.coeff[n - 1](n - 1, 0) = half;

    ch.mu.assign(n, MultiIndex{std::vector<int>(n, 0)});
    for (int s = 2; s <= 2 * k; s += 2) ch.mu[0].e[s - 1] = 1;
    for (int s = 3; s <= 2 * k + 1; s += 2) ch.mu[1].e[s - 1] = 1;
    for (int j = 3; j <= n; ++j) {
        ch.mu[j - 1] = ch.mu[j - 3];
        ch.mu[j - 1].e[j - 3] += 1;
        ch.mu[j - 1].e[j - 2] -= 1;
    }
    return ch;
}

namespace {

// Adds scale * D(z) for the transfer from z^alpha1 to z^beta into the
// accumulator matrices (one per pencil coefficient, constant first).
void transfer_accumulate(const MultiIndex& alpha1, const MultiIndex& beta,
                         const MonomialBasis& basis, std::vector<Mat>& acc,
                         const Rational& scale) {
    int d = basis.bounds().d();
    int na = alpha1.degree();
    int nb = beta.degree();
    int n = std::max(na, nb - 1);

    // homogenize over d+1 slots, slot 0 being the extra variable
    std::vector<int> ha(d + 1, 0), hb(d + 1, 0);
    ha[0] = n - na;
    hb[0] = n + 1 - nb;
    for (int t = 1; t <= d; ++t) {
        ha[t] = alpha1[t - 1];
        hb[t] = beta[t - 1];
    }
    std::vector<int> gamma(d + 1), u(d + 1), v(d + 1);
    int k = 0;
    for (int t = 0; t <= d; ++t) {
        gamma[t] = std::min(ha[t], hb[t]);
        u[t] = ha[t] - gamma[t];
        v[t] = hb[t] - gamma[t];
        k += u[t];
    }

    ChainPencil ch = chain_pencil(k);
    int cn = 2 * k + 1;

    // chain variable -> original variable slot, evens carrying u, odds v
    std::vector<int> zeta_var(cn, -1);
    {
        std::vector<int> evens, odds;
        for (int t = 0; t <= d; ++t) {
            for (int r = 0; r < u[t]; ++r) evens.push_back(t);
            for (int r = 0; r < v[t]; ++r) odds.push_back(t);
        }
        for (int i = 0; i < k; ++i) zeta_var[2 * i + 1] = evens[i];
        for (int i = 0; i <= k; ++i) zeta_var[2 * i] = odds[i];
    }

    // substituted monomials and their rows in the full basis
    std::vector<int> pos(cn);
    for (int j = 0; j < cn; ++j) {
        std::vector<int> w = gamma;
        for (int s = 0; s < cn; ++s) w[zeta_var[s]] += ch.mu[j][s];
        MultiIndex mj{std::vector<int>(w.begin() + 1, w.end())};
        pos[j] = basis.index0(mj);
        if (pos[j] < 0) throw Error("internal: transfer monomial not in the basis");
    }

    for (int s = 0; s < cn; ++s) {
        const Mat& c = ch.coeff[s];
        int slot = zeta_var[s];  // 0 lands in the constant matrix
        Mat& target = acc[slot];
        for (int i = 0; i < cn; ++i)
            for (int j = 0; j < cn; ++j) {
                if (sign_of(c(i, j)) == 0) continue;
                target(pos[i], pos[j]) += scale * c(i, j);
            }
    }
}

}  // namespace

MatrixPencil monomial_transfer_pencil(const MultiIndex& alpha1, const MultiIndex& beta,
                                      const DegreeBounds& bounds) {
    int d = bounds.d();
    if (alpha1.size() != d || beta.size() != d)
        throw DimensionError("transfer monomials have the wrong dimension");
    if (!bounds.admits(alpha1) || !bounds.admits(beta))
        throw PreconditionError("transfer monomial violates the degree bounds");
    MatrixPencil out = zero_pencil(MonomialBasis::build(bounds));
    transfer_accumulate(alpha1, beta, out.basis, out.coeffs, Rational(1));
    return out;
}

MatrixPencil product_pencil(const Poly& q, const Poly& p) {
    if (q.is_zero()) throw PreconditionError("product pencil needs a nonzero left factor");
    int d = std::max(q.nvars(), p.nvars());
    Poly qe = q.extended(d);
    Poly pe = p.extended(d);
    DegreeBounds bounds = bounds_for_pair(qe, pe);
    MatrixPencil out = zero_pencil(MonomialBasis::build(bounds));
    for (const auto& [alpha, a] : qe.terms())
        for (const auto& [beta, b] : pe.terms())
            transfer_accumulate(alpha, beta, out.basis, out.coeffs, a * b);
    return out;
}

namespace {

// Re-embeds a d-variable polynomial into 2d variables at the given offset.
Poly shift_block(const Poly& p, int offset, int total) {
    Poly out(total);
    for (const auto& [m, c] : p.terms()) {
        std::vector<int> e(total, 0);
        for (int i = 0; i < m.size(); ++i) e[offset + i] = m[i];
        out.add_term(MultiIndex{e}, c);
    }
    return out;
}

}  // namespace

bool verify_polarization(const Poly& q, const Poly& p, const MatrixPencil& pencil) {
    int d = pencil.nvars();
    if (q.nvars() > d || p.nvars() > d)
        throw DimensionError("polynomials do not fit the pencil's variable count");
    if (static_cast<int>(pencil.coeffs.size()) != d + 1)
        throw DimensionError("pencil coefficient list has the wrong length");
    for (const Mat& m : pencil.coeffs)
        if (m.rows() != pencil.dim() || m.cols() != pencil.dim())
            throw DimensionError("pencil matrices have inconsistent sizes");

    Poly lhs = shift_block(q.extended(d), 0, 2 * d) * shift_block(p.extended(d), d, 2 * d);
    Poly rhs(2 * d);
    int n = pencil.dim();
    for (int t = 0; t <= d; ++t) {
        const Mat& m = pencil.coeffs[t];
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j) {
                if (sign_of(m(i, j)) == 0) continue;
                std::vector<int> e(2 * d, 0);
                const MultiIndex& mi = pencil.basis.mono(i);
                const MultiIndex& mj = pencil.basis.mono(j);
                for (int r = 0; r < d; ++r) {
                    e[r] = mi[r];
                    e[d + r] = mj[r];
                }
                if (t > 0) e[d + t - 1] += 1;
                rhs.add_term(MultiIndex{e}, m(i, j));
            }
    }
    return lhs == rhs;
}

Poly pencil_diagonal_form(const MatrixPencil& a, int k) {
    if (k < 0 || k > a.nvars())
        throw DimensionError("pencil has no such coefficient matrix");
    return quadratic_form(a.coeffs[k], a.basis);
}

bool derivative_annihilation_holds(const MatrixPencil& a) {
    int d = a.nvars();
    int n = a.dim();
    for (int k = 1; k <= d; ++k) {
        int nk = a.basis.bounds().nk[k - 1];
        std::vector<Poly> der(n);
        for (int i = 0; i < n; ++i) {
            Poly m = Poly::monomial(a.basis.mono(i));
            for (int r = 0; r < nk; ++r) m = m.derivative(k);
            der[i] = m;
        }
        for (const Poly& row : mat_apply_polys(a.coeffs[k], der))
            if (!row.is_zero()) return false;
    }
    return true;
}

}  // namespace sospencil
