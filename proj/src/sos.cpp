#include "sospencil/sos.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <cstdint>
#include <map>
#include <set>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "sospencil/errors.hpp"
#include "sospencil/rng.hpp"

namespace sospencil {

namespace {

constexpr int kIterCap = 50000;
constexpr unsigned long kDenStart = 10000;
constexpr int kRoundRetries = 8;

std::string mono_str(const MultiIndex& m) { return Poly::monomial(m).str(); }

Rational binom(int n, int k) {
    mpz_class b;
    mpz_bin_uiui(b.get_mpz_t(), static_cast<unsigned long>(n), static_cast<unsigned long>(k));
    return Rational(b);
}

Rational rat_pow(const Rational& x, int e) {
    Rational acc(1);
    for (int i = 0; i < e; ++i) acc *= x;
    return acc;
}

using CellGroups = std::map<MultiIndex, std::vector<std::pair<int, int>>, BasisOrder>;

CellGroups pair_groups(const std::vector<MultiIndex>& mons) {
    CellGroups g;
    int n = static_cast<int>(mons.size());
    for (int i = 0; i < n; ++i)
        for (int j = i; j < n; ++j) g[mons[i] + mons[j]].push_back({i, j});
    return g;
}

// All 2^d d! signed coordinate permutations; comparing their keys
// lexicographically sweeps every "extreme corner" direction of the support.
struct LexOrder {
    std::vector<int> perm;
    std::vector<int> signs;

    std::vector<int> key(const MultiIndex& m) const {
        std::vector<int> k(perm.size());
        for (std::size_t i = 0; i < perm.size(); ++i)
            k[i] = signs[i] * m[static_cast<std::size_t>(perm[i])];
        return k;
    }
};

std::vector<LexOrder> lex_orders(int d) {
    std::vector<int> p(d);
    for (int i = 0; i < d; ++i) p[i] = i;
    std::vector<LexOrder> out;
    do {
        for (int mask = 0; mask < (1 << d); ++mask) {
            LexOrder lo;
            lo.perm = p;
            lo.signs.resize(d);
            for (int i = 0; i < d; ++i) lo.signs[i] = (mask >> i) & 1 ? -1 : 1;
            out.push_back(std::move(lo));
        }
    } while (std::next_permutation(p.begin(), p.end()));
    return out;
}

// Corner strike + single-cell pinning to a fixpoint. A basis monomial whose
// double is the unique extreme point of supports-plus-doubles in some signed
// lex direction must have a zero Gram row (its diagonal group is a
// singleton), so it can be removed; the dual reading proves exact
// infeasibility when an extreme support point has no pair representation.
// Returns false and fills `why` on an exact infeasibility proof.
bool strike_and_pin(std::vector<MultiIndex>& mons, std::vector<int>& orig, const Poly& f,
                    std::string& why) {
    int d = f.nvars();
    std::vector<LexOrder> orders = lex_orders(d);
    std::set<MultiIndex, BasisOrder> supp;
    for (const auto& [m, c] : f.terms()) supp.insert(m);

    for (;;) {
        bool changed = false;

        std::map<MultiIndex, int, BasisOrder> doubles;
        for (int i = 0; i < static_cast<int>(mons.size()); ++i) doubles[mons[i] + mons[i]] = i;
        std::set<MultiIndex, BasisOrder> points(supp);
        for (const auto& [m, i] : doubles) points.insert(m);

        for (const LexOrder& lo : orders) {
            const MultiIndex* top = nullptr;
            std::vector<int> top_key;
            int ties = 0;
            for (const MultiIndex& m : points) {
                std::vector<int> k = lo.key(m);
                if (!top || top_key < k) {
                    top = &m;
                    top_key = std::move(k);
                    ties = 1;
                } else if (top_key == k) {
                    ++ties;
                }
            }
            if (!top || ties != 1) continue;
            auto it = doubles.find(*top);
            bool in_f = supp.count(*top) != 0;
            if (it != doubles.end() && !in_f) {
                mons.erase(mons.begin() + it->second);
                orig.erase(orig.begin() + it->second);
                changed = true;
                break;
            }
            if (it == doubles.end() && in_f) {
                why = "exact: support corner " + mono_str(*top) +
                      " is not a pairwise sum over the basis";
                return false;
            }
        }
        if (changed) continue;

        CellGroups groups = pair_groups(mons);
        for (const auto& [beta, cells] : groups) {
            if (cells.size() != 1 || cells[0].first != cells[0].second) continue;
            int i = cells[0].first;
            Rational fb = f.coeff(beta);
            if (sign_of(fb) < 0) {
                why = "exact: diagonal Gram entry for " + mono_str(mons[i]) + " is forced to " +
                      rat_str(fb);
                return false;
            }
            if (sign_of(fb) == 0) {
                mons.erase(mons.begin() + i);
                orig.erase(orig.begin() + i);
                changed = true;
                break;
            }
        }
        if (changed) continue;

        for (const auto& [m, c] : f.terms()) {
            if (!groups.count(m)) {
                why = "exact: support point " + mono_str(m) +
                      " is not representable over the pruned basis";
                return false;
            }
        }
        return true;
    }
}

// Gradient descent with Armijo backtracking from a coarse grid, keeping only
// starting points that land on numerically tiny values which then verify as
// exact rational zeros after continued-fraction rounding.
std::vector<std::vector<Rational>> harvest_zeros(const Poly& f) {
    std::vector<std::vector<Rational>> out;
    int d = f.nvars();
    if (d > 3) return out;

    std::vector<Poly> grads;
    for (int j = 1; j <= d; ++j) grads.push_back(f.derivative(j));

    std::vector<int> odo(d, 0);
    std::set<std::vector<Rational>> seen;
    for (;;) {
        std::vector<double> x(d);
        for (int k = 0; k < d; ++k) x[k] = -1.5 + 0.5 * odo[k];

        for (int it = 0; it < 60; ++it) {
            std::vector<double> g(d);
            double ng2 = 0;
            for (int k = 0; k < d; ++k) {
                g[k] = grads[k].eval_double(x);
                ng2 += g[k] * g[k];
            }
            if (!std::isfinite(ng2) || std::sqrt(ng2) < 1e-14) break;
            double fx = f.eval_double(x);
            auto stepped = [&](double s) {
                std::vector<double> y(d);
                for (int k = 0; k < d; ++k) y[k] = x[k] - s * g[k];
                return y;
            };
            double step = 1.0;
            while (step > 1e-12 && !(f.eval_double(stepped(step)) <= fx - 0.25 * step * ng2))
                step *= 0.5;
            x = stepped(step);
        }

        bool finite = true;
        for (double v : x) finite = finite && std::isfinite(v);
        if (finite && f.eval_double(x) < 1e-16) {
            std::vector<Rational> cand(d);
            for (int k = 0; k < d; ++k) cand[k] = rational_near(x[k], 32);
            if (seen.insert(cand).second && sign_of(f.eval_real(cand)) == 0) {
                out.push_back(cand);
                if (out.size() == 40) return out;
            }
        }

        int k = 0;
        while (k < d && odo[k] == 6) odo[k++] = 0;
        if (k == d) break;
        ++odo[k];
    }
    return out;
}

// Row vector of alpha-th Taylor coefficients of the basis monomials at z.
std::vector<Rational> deriv_vec(const std::vector<MultiIndex>& mons,
                                const std::vector<Rational>& z, const std::vector<int>& alpha) {
    int d = static_cast<int>(z.size());
    std::vector<Rational> v(mons.size(), Rational(0));
    for (std::size_t t = 0; t < mons.size(); ++t) {
        Rational val(1);
        bool ok = true;
        for (int k = 0; k < d; ++k) {
            int a = mons[t][static_cast<std::size_t>(k)], al = alpha[k];
            if (al > a) {
                ok = false;
                break;
            }
            val *= binom(a, al) * rat_pow(z[k], a - al);
        }
        if (ok) v[t] = val;
    }
    return v;
}

Poly taylor_shift(const Poly& f, const std::vector<Rational>& pt) {
    int d = f.nvars();
    Poly out(d);
    for (const auto& [m, c] : f.terms()) {
        std::vector<std::pair<MultiIndex, Rational>> terms{{MultiIndex(static_cast<std::size_t>(d)), c}};
        for (int k = 0; k < d; ++k) {
            int mk = m[static_cast<std::size_t>(k)];
            if (mk == 0) continue;
            std::vector<Rational> pw(mk + 1);
            pw[0] = 1;
            for (int j = 1; j <= mk; ++j) pw[j] = pw[j - 1] * pt[k];
            std::vector<std::pair<MultiIndex, Rational>> next;
            next.reserve(terms.size() * (mk + 1));
            for (const auto& [mm, cc] : terms)
                for (int j = 0; j <= mk; ++j) {
                    MultiIndex m2 = mm;
                    m2[static_cast<std::size_t>(k)] += j;
                    next.push_back({m2, cc * binom(mk, j) * pw[mk - j]});
                }
            terms = std::move(next);
        }
        for (const auto& [mm, cc] : terms) out.add_term(mm, cc);
    }
    return out;
}

// Kernel constraints forced by the exact real zeros: every SOS factor
// vanishes to half the local order, so all basis derivative rows up to that
// order annihilate the Gram matrix; order-one zeros add the nullspace
// directions of the local quadratic form.
std::vector<std::vector<Rational>> kernel_rows(const std::vector<MultiIndex>& mons, const Poly& f,
                                               const std::vector<std::vector<Rational>>& zeros) {
    int d = f.nvars();
    std::vector<std::vector<Rational>> rows;
    for (const std::vector<Rational>& z : zeros) {
        Poly fs = taylor_shift(f, z);
        int lowdeg = fs.terms().rbegin()->first.degree();
        int m_ord = lowdeg / 2;

        std::vector<int> alpha(d, 0);
        for (;;) {
            int tot = 0;
            for (int a : alpha) tot += a;
            if (tot <= m_ord - 1) rows.push_back(deriv_vec(mons, z, alpha));
            int k = 0;
            while (k < d && alpha[k] == m_ord) alpha[k++] = 0;
            if (k == d) break;
            ++alpha[k];
        }

        if (m_ord == 1) {
            Mat q(d, d);
            for (const auto& [m, c] : fs.terms()) {
                if (m.degree() != 2) continue;
                int i = -1, j = -1;
                for (int k = 0; k < d; ++k) {
                    for (int rep = 0; rep < m[static_cast<std::size_t>(k)]; ++rep) {
                        if (i < 0)
                            i = k;
                        else
                            j = k;
                    }
                }
                if (i == j)
                    q(i, i) += c;
                else {
                    q(i, j) += c / 2;
                    q(j, i) += c / 2;
                }
            }
            Mat ns = nullspace(q);
            for (int col = 0; col < ns.cols(); ++col) {
                std::vector<Rational> v(mons.size(), Rational(0));
                for (int k = 0; k < d; ++k) {
                    if (sign_of(ns(k, col)) == 0) continue;
                    std::vector<int> ek(d, 0);
                    ek[k] = 1;
                    std::vector<Rational> dv = deriv_vec(mons, z, ek);
                    for (std::size_t t = 0; t < v.size(); ++t) v[t] += ns(k, col) * dv[t];
                }
                bool nonzero = false;
                for (const Rational& x : v) nonzero = nonzero || sign_of(x) != 0;
                if (nonzero) rows.push_back(std::move(v));
            }
        }
    }
    return rows;
}

struct ReducedSystem {
    std::vector<std::vector<Rational>> rows;  // one exact row per pair-sum group
    std::vector<Rational> rhs;
    std::vector<std::vector<Rational>> rm;  // Gauss-Jordan form of [rows | rhs]
    std::vector<int> piv_cols, piv_rows, free_cols;
    int r0 = 0;
    bool consistent = true;
};

ReducedSystem build_system(const CellGroups& groups, const Mat& w, const Poly& f,
                           const std::vector<std::pair<int, int>>& hidx) {
    int r = w.cols();
    int nh = static_cast<int>(hidx.size());
    std::map<std::pair<int, int>, int> hpos;
    for (int t = 0; t < nh; ++t) hpos[hidx[t]] = t;

    ReducedSystem sys;
    for (const auto& [beta, cells] : groups) {
        std::vector<Rational> row(nh, Rational(0));
        for (const auto& [i, j] : cells) {
            int mult = i == j ? 1 : 2;
            for (int a = 0; a < r; ++a) {
                if (sign_of(w(i, a)) == 0) continue;
                for (int b = 0; b < r; ++b) {
                    if (sign_of(w(j, b)) == 0) continue;
                    Rational c = mult * w(i, a) * w(j, b);
                    row[a <= b ? hpos[{a, b}] : hpos[{b, a}]] += c;
                }
            }
        }
        sys.rows.push_back(std::move(row));
        sys.rhs.push_back(f.coeff(beta));
    }

    int mrows = static_cast<int>(sys.rows.size());
    sys.rm.resize(mrows);
    std::vector<int> rowmap(mrows);
    for (int i = 0; i < mrows; ++i) {
        sys.rm[i] = sys.rows[i];
        sys.rm[i].push_back(sys.rhs[i]);
        rowmap[i] = i;
    }
    for (int c = 0; c < nh; ++c) {
        int piv = -1;
        for (int i = sys.r0; i < mrows; ++i)
            if (sign_of(sys.rm[i][c]) != 0) {
                piv = i;
                break;
            }
        if (piv < 0) continue;
        std::swap(sys.rm[sys.r0], sys.rm[piv]);
        std::swap(rowmap[sys.r0], rowmap[piv]);
        Rational pv = sys.rm[sys.r0][c];
        for (Rational& x : sys.rm[sys.r0]) x /= pv;
        for (int i = 0; i < mrows; ++i) {
            if (i == sys.r0 || sign_of(sys.rm[i][c]) == 0) continue;
            Rational fac = sys.rm[i][c];
            for (int t = 0; t <= nh; ++t) sys.rm[i][t] -= fac * sys.rm[sys.r0][t];
        }
        sys.piv_cols.push_back(c);
        sys.piv_rows.push_back(rowmap[sys.r0]);
        ++sys.r0;
    }
    for (int i = sys.r0; i < mrows; ++i)
        if (sign_of(sys.rm[i][nh]) != 0) sys.consistent = false;
    for (int c = 0; c < nh; ++c)
        if (std::find(sys.piv_cols.begin(), sys.piv_cols.end(), c) == sys.piv_cols.end())
            sys.free_cols.push_back(c);
    return sys;
}

// Free entries come from the rounded numeric solution; pivot entries are then
// solved exactly, which restores the affine slice identity by construction.
Mat exact_fit(const ReducedSystem& sys, const std::vector<Rational>& h_free, int r,
              const std::vector<std::pair<int, int>>& hidx) {
    int nh = static_cast<int>(hidx.size());
    std::vector<Rational> h(nh, Rational(0));
    for (std::size_t t = 0; t < sys.free_cols.size(); ++t) h[sys.free_cols[t]] = h_free[t];
    for (int i = 0; i < sys.r0; ++i) {
        Rational s = sys.rm[i][nh];
        for (int c : sys.free_cols)
            if (sign_of(sys.rm[i][c]) != 0) s -= sys.rm[i][c] * h[c];
        h[sys.piv_cols[i]] = s;
    }
    Mat m(r, r);
    for (int t = 0; t < nh; ++t) {
        auto [a, b] = hidx[t];
        m(a, b) = h[t];
        m(b, a) = h[t];
    }
    return m;
}

}  // namespace

bool gram_certificate_valid(const GramCertificate& cert) {
    int n = cert.basis.size();
    if (cert.gram.rows() != n || cert.gram.cols() != n) return false;
    if (!cert.gram.is_symmetric()) return false;
    if (!(quadratic_form(cert.gram, cert.basis) == cert.target)) return false;
    if (!exact_psd_check(cert.gram).psd) return false;
    if (!cert.weights.empty() || !cert.factors.empty()) {
        if (cert.weights.size() != cert.factors.size()) return false;
        Poly acc(cert.target.nvars());
        for (std::size_t i = 0; i < cert.weights.size(); ++i) {
            if (sign_of(cert.weights[i]) <= 0) return false;
            acc = acc + cert.weights[i] * (cert.factors[i] * cert.factors[i]);
        }
        if (!(acc == cert.target)) return false;
    }
    return true;
}

SosResult sos_feasibility(const Poly& target, const MonomialBasis& basis, double tol) {
    if (basis.homogenized())
        throw PreconditionError("sos_feasibility: basis must not be homogenized");
    int d = basis.bounds().d();
    if (target.nvars() > d)
        throw PreconditionError("sos_feasibility: target has more variables than the basis");
    Poly f = target.extended(d);

    CellGroups full_groups = pair_groups(basis.monomials());
    for (const auto& [m, c] : f.terms())
        if (!full_groups.count(m))
            throw PreconditionError("sos_feasibility: basis cannot represent the support point " +
                                    mono_str(m));

    SosResult res;
    int n0 = basis.size();
    if (f.is_zero()) {
        res.status = SosStatus::certified;
        res.cert = GramCertificate{basis, Mat(n0, n0), f, {}, {}};
        return res;
    }

    std::vector<MultiIndex> mons = basis.monomials();
    std::vector<int> orig(mons.size());
    for (std::size_t i = 0; i < orig.size(); ++i) orig[i] = static_cast<int>(i);
    std::string why;
    if (!strike_and_pin(mons, orig, f, why)) {
        res.status = SosStatus::infeasible_evidence;
        res.reason = why;
        return res;
    }
    int n = static_cast<int>(mons.size());
    // f != 0 and every support point covered, so some monomials survived
    if (n == 0) throw Error("internal: pruning emptied the basis of a nonzero target");

    std::vector<std::vector<Rational>> zeros = harvest_zeros(f);
    std::vector<std::vector<Rational>> vker = kernel_rows(mons, f, zeros);

    Mat w = Mat::identity(n);
    if (!vker.empty()) {
        Mat k(static_cast<int>(vker.size()), n);
        for (std::size_t i = 0; i < vker.size(); ++i)
            for (int j = 0; j < n; ++j) k(static_cast<int>(i), j) = vker[i][j];
        w = nullspace(k);
    }
    int r = w.cols();
    if (r == 0) {
        res.status = SosStatus::infeasible_evidence;
        res.reason = "exact: the kernel forced by real zeros reduces the Gram slice to zero";
        return res;
    }

    std::vector<std::pair<int, int>> hidx;
    for (int a = 0; a < r; ++a)
        for (int b = a; b < r; ++b) hidx.push_back({a, b});
    int nh = static_cast<int>(hidx.size());

    CellGroups groups = pair_groups(mons);
    ReducedSystem sys = build_system(groups, w, f, hidx);
    if (!sys.consistent) {
        res.status = SosStatus::infeasible_evidence;
        res.reason = "exact: the affine slice is incompatible with the forced kernel";
        return res;
    }

    // alternating projections with Dykstra correction on the face coordinates
    Eigen::MatrixXd an(sys.r0, nh);
    Eigen::VectorXd bn(sys.r0);
    for (int i = 0; i < sys.r0; ++i) {
        for (int t = 0; t < nh; ++t) an(i, t) = rat_double(sys.rows[sys.piv_rows[i]][t]);
        bn(i) = rat_double(sys.rhs[sys.piv_rows[i]]);
    }
    Eigen::MatrixXd aw(sys.r0, nh);
    for (int i = 0; i < sys.r0; ++i)
        for (int t = 0; t < nh; ++t) aw(i, t) = an(i, t) / (hidx[t].first == hidx[t].second ? 1.0 : 2.0);
    Eigen::LDLT<Eigen::MatrixXd> kfac((aw * an.transpose()).eval());

    auto proj_aff = [&](const Eigen::VectorXd& h) {
        return (h - aw.transpose() * kfac.solve(an * h - bn)).eval();
    };
    auto to_h = [&](const Eigen::MatrixXd& x) {
        Eigen::VectorXd h(nh);
        for (int t = 0; t < nh; ++t) h(t) = x(hidx[t].first, hidx[t].second);
        return h;
    };
    auto to_x = [&](const Eigen::VectorXd& h) {
        Eigen::MatrixXd x(r, r);
        for (int t = 0; t < nh; ++t) {
            x(hidx[t].first, hidx[t].second) = h(t);
            x(hidx[t].second, hidx[t].first) = h(t);
        }
        return x;
    };
    auto proj_psd = [&](const Eigen::MatrixXd& x) {
        Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(x);
        Eigen::VectorXd ev = es.eigenvalues().cwiseMax(0.0);
        return (es.eigenvectors() * ev.asDiagonal() * es.eigenvectors().transpose()).eval();
    };

    double scale = 0;
    for (const auto& [m, c] : f.terms()) scale = std::max(scale, std::fabs(rat_double(c)));

    Eigen::MatrixXd x = to_x(proj_aff(to_h(Eigen::MatrixXd::Identity(r, r) * scale)));
    Eigen::MatrixXd p = Eigen::MatrixXd::Zero(r, r);
    std::vector<double> gaps;
    bool converged = false;
    for (int it = 0; it < kIterCap; ++it) {
        Eigen::MatrixXd y = proj_psd(x + p);
        p = x + p - y;
        Eigen::MatrixXd xn = to_x(proj_aff(to_h(y)));
        double gap = (xn - y).norm();
        gaps.push_back(gap);
        x = xn;
        if (gap < tol) {
            converged = true;
            break;
        }
        if (it > 2000 && it % 500 == 0 && gap > 1e-7 && gap > 0.97 * gaps[gaps.size() / 2]) break;
    }
    if (!converged && !gaps.empty() && gaps.back() <= 1e-7) converged = true;
    res.margin = gaps.empty() ? 0.0 : gaps.back();
    if (!converged) {
        std::ostringstream os;
        os << "numeric: alternating projections stalled after " << gaps.size()
           << " iterations (gap " << res.margin << ")";
        res.status = SosStatus::infeasible_evidence;
        res.reason = os.str();
        return res;
    }

    Eigen::VectorXd zh = to_h(proj_psd(x));
    unsigned long den = kDenStart;
    for (int attempt = 0; attempt < kRoundRetries; ++attempt, den *= 2) {
        std::vector<Rational> h_free(sys.free_cols.size());
        for (std::size_t t = 0; t < sys.free_cols.size(); ++t)
            h_free[t] = rational_near(zh(sys.free_cols[t]), den);
        Mat hm = exact_fit(sys, h_free, r, hidx);
        if (!exact_psd_check(hm).psd) continue;

        Mat g(n, n);
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j) {
                Rational acc(0);
                for (int a = 0; a < r; ++a) {
                    if (sign_of(w(i, a)) == 0) continue;
                    for (int b = 0; b < r; ++b) acc += w(i, a) * hm(a, b) * w(j, b);
                }
                g(i, j) = acc;
            }

        Poly expanded(d);
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j)
                if (sign_of(g(i, j)) != 0) expanded.add_term(mons[i] + mons[j], g(i, j));
        if (!(expanded == f)) throw Error("internal: fitted Gram matrix leaves the slice");
        if (!exact_psd_check(g).psd)
            throw Error("internal: face congruence lost semidefiniteness");

        Mat full(n0, n0);
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j) full(orig[i], orig[j]) = g(i, j);
        res.status = SosStatus::certified;
        res.cert = GramCertificate{basis, std::move(full), f, {}, {}};
        return res;
    }

    res.status = SosStatus::inconclusive;
    res.reason = "numeric: rational rounding failed within the denominator cap";
    return res;
}

std::vector<std::pair<Rational, Poly>> extract_sos(const GramCertificate& cert) {
    int n = cert.basis.size();
    if (cert.gram.rows() != n || cert.gram.cols() != n || !cert.gram.is_symmetric())
        throw PreconditionError("extract_sos: Gram matrix does not match the basis");
    PsdResult fac = exact_psd_check(cert.gram);
    if (!fac.psd)
        throw PreconditionError("extract_sos: certificate Gram matrix is not positive semidefinite");

    int nv = cert.target.nvars();
    std::vector<std::pair<Rational, Poly>> out;
    for (int i = 0; i < n; ++i) {
        if (sign_of(fac.pivots[i]) <= 0) continue;
        Poly h(nv);
        for (int k = 0; k < n; ++k)
            if (sign_of(fac.l(k, i)) != 0) h.add_term(cert.basis.mono(fac.perm[k]), fac.l(k, i));
        out.push_back({fac.pivots[i], std::move(h)});
    }
    Poly acc(nv);
    for (const auto& [wgt, h] : out) acc = acc + wgt * (h * h);
    if (!(acc == cert.target)) throw Error("internal: extracted squares do not re-expand to the target");
    return out;
}

PsdSampleReport psd_sampling_test(const Poly& f, int samples, std::uint64_t seed) {
    PsdSampleReport rep;
    Rng rng(seed);
    int d = f.nvars();
    for (int t = 0; t < samples; ++t) {
        std::vector<Rational> z(d);
        for (int k = 0; k < d; ++k) z[k] = rng.rational_in(-10, 10, 1000);
        ++rep.samples_checked;
        Rational v = f.eval_real(z);
        if (sign_of(v) < 0) {
            rep.violation = true;
            rep.point = std::move(z);
            rep.value = v;
            return rep;
        }
    }
    return rep;
}

NevanlinnaReport nevanlinna_sample_check(const RationalFunction& f, int samples,
                                         std::uint64_t seed) {
    static const Rational kNegTol = [] {
        mpz_class den;
        mpz_ui_pow_ui(den.get_mpz_t(), 10, 12);
        return Rational(mpz_class(-1), den);
    }();
    NevanlinnaReport rep;
    Rng rng(seed);
    int d = f.nvars();
    for (int t = 0; t < samples; ++t) {
        std::vector<GaussianRational> z(d);
        for (int k = 0; k < d; ++k) {
            Rational re = rng.rational_in(-10, 10, 1000);
            Rational im(mpz_class(rng.int_in(1, 10000)), mpz_class(1000));
            im.canonicalize();
            z[k] = GaussianRational(re, im);
        }
        GaussianRational qv = f.den.eval(z);
        if (qv.is_zero()) {
            ++rep.poles_skipped;
            continue;
        }
        ++rep.samples_checked;
        GaussianRational val = f.num.eval(z) / qv;
        if (val.im < kNegTol) {
            rep.violation = true;
            rep.point = std::move(z);
            rep.value = val;
            return rep;
        }
    }
    return rep;
}

std::vector<PipelineEntry> main_theorem_pipeline(const RationalFunction& f) {
    MonomialBasis basis = MonomialBasis::build(bounds_for_pair(f.den, f.num));
    std::vector<PipelineEntry> out;
    for (int j = 1; j <= f.nvars(); ++j) {
        PipelineEntry e;
        e.variable = j;
        e.wronskian_target = wronskian(f.den, f.num, j);
        e.result = sos_feasibility(e.wronskian_target, basis, 1e-9);
        out.push_back(std::move(e));
    }
    return out;
}

}  // namespace sospencil