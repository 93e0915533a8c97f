#include "sospencil/artin.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <complex>
#include <cstddef>
#include <string>
#include <utility>
#include <vector>

#include "sospencil/errors.hpp"
#include "sospencil/rng.hpp"

namespace sospencil {

namespace {

constexpr unsigned long kPointDen = 1000000000UL;  // rationalization cap
constexpr int kBaseBudget = 40;

using cd = std::complex<double>;

// Canonical factor order for the greedy sweeps: degree, then printed form.
bool factor_before(const Poly& a, const Poly& b) {
    int da = a.is_zero() ? 0 : a.degree();
    int db = b.is_zero() ? 0 : b.degree();
    if (da != db) return da < db;
    return a.str() < b.str();
}

std::string status_text(const SosResult& r) {
    switch (r.status) {
        case SosStatus::certified:
            return "certified";
        case SosStatus::infeasible_evidence:
            return "infeasible evidence: " + r.reason;
        default:
            return "inconclusive: " + r.reason;
    }
}

// Coefficients of t -> s(x with z_pivot = t); the pivot slot of x is ignored.
std::vector<cd> restrict_coeffs(const Poly& s, int pivot, const std::vector<cd>& x) {
    std::vector<cd> c(static_cast<std::size_t>(s.degree_in(pivot)) + 1, cd(0, 0));
    for (const auto& [m, coef] : s.terms()) {
        cd v(rat_double(coef), 0.0);
        for (int j = 1; j <= s.nvars(); ++j) {
            if (j == pivot) continue;
            for (int t = 0; t < m[static_cast<std::size_t>(j - 1)]; ++t)
                v *= x[static_cast<std::size_t>(j - 1)];
        }
        c[static_cast<std::size_t>(m[static_cast<std::size_t>(pivot - 1)])] += v;
    }
    return c;
}

std::vector<cd> poly_roots(std::vector<cd> c) {
    double mx = 0;
    for (const cd& z : c) mx = std::max(mx, std::abs(z));
    if (mx == 0) return {};
    while (c.size() > 1 && std::abs(c.back()) < 1e-12 * mx) c.pop_back();
    int n = static_cast<int>(c.size()) - 1;
    if (n <= 0) return {};
    Eigen::MatrixXcd comp = Eigen::MatrixXcd::Zero(n, n);
    for (int i = 0; i + 1 < n; ++i) comp(i + 1, i) = 1.0;
    for (int i = 0; i < n; ++i) comp(i, n - 1) = -c[static_cast<std::size_t>(i)] / c[static_cast<std::size_t>(n)];
    Eigen::ComplexEigenSolver<Eigen::MatrixXcd> es(comp);
    std::vector<cd> out(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) out[static_cast<std::size_t>(i)] = es.eigenvalues()(i);
    std::sort(out.begin(), out.end(),
              [](const cd& a, const cd& b) { return a.imag() > b.imag(); });
    return out;
}

cd horner(const std::vector<cd>& c, cd z) {
    cd acc(0, 0);
    for (std::size_t i = c.size(); i-- > 0;) acc = acc * z + c[i];
    return acc;
}

cd newton_polish(const std::vector<cd>& c, cd z) {
    double mx = 0;
    for (const cd& v : c) mx = std::max(mx, std::abs(v));
    std::vector<cd> dc(c.size() > 1 ? c.size() - 1 : 0);
    for (std::size_t i = 1; i < c.size(); ++i) dc[i - 1] = static_cast<double>(i) * c[i];
    for (int it = 0; it < 50; ++it) {
        cd p = horner(c, z);
        if (std::abs(p) < 1e-15 * std::max(1.0, mx)) break;
        cd dp = horner(dc, z);
        if (std::abs(dp) < 1e-300) break;
        cd zn = z - p / dp;
        if (!std::isfinite(zn.real()) || !std::isfinite(zn.imag())) break;
        z = zn;
    }
    return z;
}

}  // namespace

int FactoredPoly::nvars() const {
    int d = 0;
    for (const auto& [p, m] : factors) d = std::max(d, p.nvars());
    return d;
}

Poly FactoredPoly::expand(int min_vars) const {
    int d = std::max(min_vars, nvars());
    Poly out = Poly::constant(d, 1);
    for (const auto& [p, m] : factors) {
        Poly pe = p.extended(d);
        for (int i = 0; i < m; ++i) out = out * pe;
    }
    return out;
}

SignClassification sign_classification_sample(const Poly& s, int samples, std::uint64_t seed) {
    if (s.is_zero()) throw PreconditionError("sign_classification_sample: polynomial is zero");
    SignClassification rep;
    Rng rng(seed);
    int d = s.nvars();
    for (int t = 0; t < samples; ++t) {
        std::vector<Rational> z(static_cast<std::size_t>(d));
        for (int k = 0; k < d; ++k) z[static_cast<std::size_t>(k)] = rng.rational_in(-10, 10, 1000);
        ++rep.samples_checked;
        int sg = sign_of(s.eval_real(z));
        if (sg > 0 && rep.positive_point.empty()) rep.positive_point = std::move(z);
        else if (sg < 0 && rep.negative_point.empty()) rep.negative_point = std::move(z);
        if (!rep.positive_point.empty() && !rep.negative_point.empty()) {
            rep.indefinite = true;
            return rep;
        }
    }
    rep.positive_point.clear();
    rep.negative_point.clear();
    return rep;
}

SosOracle half_degree_oracle(double tol) {
    return [tol](const Poly& t) { return sos_feasibility(t, MonomialBasis::build(half_bounds(t)), tol); };
}

StripReport minimal_denominator_strip(const Poly& f, const FactoredPoly& s,
                                      const SosOracle& oracle, int sign_samples,
                                      std::uint64_t seed) {
    for (const auto& [p, m] : s.factors) {
        if (p.is_zero())
            throw PreconditionError("minimal_denominator_strip: factor is identically zero");
        if (m < 1)
            throw PreconditionError("minimal_denominator_strip: factor multiplicity must be positive");
    }
    int d = std::max(f.nvars(), s.nvars());
    Poly fext = f.extended(d);

    std::vector<std::pair<Poly, int>> work;
    work.reserve(s.factors.size());
    for (const auto& [p, m] : s.factors) work.push_back({p.extended(d), m});
    std::sort(work.begin(), work.end(),
              [](const auto& a, const auto& b) { return factor_before(a.first, b.first); });

    auto target_for = [&](const std::vector<std::pair<Poly, int>>& fs) {
        Poly prod = Poly::constant(d, 1);
        for (const auto& [p, m] : fs)
            for (int i = 0; i < m; ++i) prod = prod * p;
        return prod * prod * fext;
    };

    SosResult initial = oracle(target_for(work));
    if (initial.status != SosStatus::certified)
        throw PreconditionError("minimal_denominator_strip: the full product is not certified (" +
                                status_text(initial) + ")");

    StripReport rep;

    // Indefinite factors go first and wholesale: dividing them out of a
    // certified square product cannot lose the sum-of-squares property.
    std::vector<std::pair<Poly, int>> kept;
    for (std::size_t i = 0; i < work.size(); ++i) {
        SignClassification cls =
            sign_classification_sample(work[i].first, sign_samples, seed + i);
        if (cls.indefinite)
            rep.removed_indefinite.push_back(work[i].first);
        else
            kept.push_back(work[i]);
    }
    work = std::move(kept);

    // Then drop one copy at a time while the oracle keeps certifying.
    bool changed = true;
    while (changed) {
        changed = false;
        for (std::size_t i = 0; i < work.size(); ++i) {
            std::vector<std::pair<Poly, int>> cand = work;
            if (--cand[i].second == 0) cand.erase(cand.begin() + static_cast<std::ptrdiff_t>(i));
            SosResult r = oracle(target_for(cand));
            if (r.status == SosStatus::certified) {
                rep.removed_redundant.push_back(work[i].first);
                work = std::move(cand);
                changed = true;
                break;
            }
            if (r.status == SosStatus::inconclusive) rep.oracle_inconclusive = true;
        }
    }

    rep.minimal.factors = work;
    rep.final_check = oracle(target_for(work));
    return rep;
}

UhpZeroReport upper_halfplane_zero(const Poly& s, std::uint64_t seed) {
    if (s.is_zero() || s.degree() == 0)
        throw PreconditionError("upper_halfplane_zero: polynomial is constant");
    int d = s.nvars();
    int pivot = 0;
    for (int j = d; j >= 1; --j)
        if (!s.derivative(j).is_zero()) {
            pivot = j;
            break;
        }

    Rational scale(0);
    for (const auto& [m, c] : s.terms()) {
        Rational a = abs(c);
        if (a > scale) scale = a;
    }
    mpz_class p16;
    mpz_ui_pow_ui(p16.get_mpz_t(), 10, 16);
    Rational residual_bound = scale * scale / Rational(p16);  // (1e-8 * scale)^2

    Rng rng(seed);
    UhpZeroReport rep;
    const int budget = d == 1 ? 1 : kBaseBudget;
    for (int attempt = 0; attempt < budget; ++attempt) {
        ++rep.attempts;
        std::vector<double> xr(static_cast<std::size_t>(d), 0.0);
        std::vector<cd> base(static_cast<std::size_t>(d), cd(0, 0));
        for (int j = 1; j <= d; ++j) {
            if (j == pivot) continue;
            xr[static_cast<std::size_t>(j - 1)] = rat_double(rng.rational_in(-2, 2, 100));
            base[static_cast<std::size_t>(j - 1)] = cd(xr[static_cast<std::size_t>(j - 1)], 0);
        }
        std::vector<cd> real_coeffs = restrict_coeffs(s, pivot, base);
        for (const cd& r0 : poly_roots(real_coeffs)) {
            if (!(r0.imag() > 1e-9)) continue;

            if (d == 1) {
                cd rp = newton_polish(real_coeffs, r0);
                if (!std::isfinite(rp.real()) || !std::isfinite(rp.imag()) || !(rp.imag() > 1e-9))
                    continue;
                std::vector<GaussianRational> pt{
                    {rational_near(rp.real(), kPointDen), rational_near(rp.imag(), kPointDen)}};
                if (sign_of(pt[0].im) <= 0) continue;
                Rational r2 = s.eval(pt).norm2();
                if (r2 < residual_bound) {
                    rep.found = true;
                    rep.point = std::move(pt);
                    rep.residual_norm2 = r2;
                    return rep;
                }
                continue;
            }

            double xs = 1.0;
            for (int j = 1; j <= d; ++j)
                if (j != pivot) xs = std::max(xs, std::fabs(xr[static_cast<std::size_t>(j - 1)]));
            for (int k = 1; k <= 6; ++k) {
                double eps = xs * std::pow(10.0, -k);
                std::vector<cd> shifted = base;
                for (int j = 1; j <= d; ++j)
                    if (j != pivot)
                        shifted[static_cast<std::size_t>(j - 1)] =
                            cd(xr[static_cast<std::size_t>(j - 1)], eps);
                cd rp = newton_polish(restrict_coeffs(s, pivot, shifted), r0);
                if (!std::isfinite(rp.real()) || !std::isfinite(rp.imag()) || !(rp.imag() > 1e-9))
                    continue;

                std::vector<GaussianRational> pt(static_cast<std::size_t>(d));
                for (int j = 1; j <= d; ++j)
                    if (j != pivot)
                        pt[static_cast<std::size_t>(j - 1)] =
                            GaussianRational(rational_near(xr[static_cast<std::size_t>(j - 1)], kPointDen),
                                             rational_near(eps, kPointDen));
                pt[static_cast<std::size_t>(pivot - 1)] =
                    GaussianRational(rational_near(rp.real(), kPointDen),
                                     rational_near(rp.imag(), kPointDen));
                bool im_ok = true;
                for (const GaussianRational& c : pt) im_ok = im_ok && sign_of(c.im) > 0;
                if (!im_ok) continue;
                Rational r2 = s.eval(pt).norm2();
                if (r2 < residual_bound) {
                    rep.found = true;
                    rep.point = std::move(pt);
                    rep.residual_norm2 = r2;
                    return rep;
                }
            }
        }
    }
    return rep;
}

}  // namespace sospencil