#include "sospencil/ambiguity.hpp"

#include <algorithm>
#include <map>
#include <optional>
#include <set>
#include <tuple>
#include <utility>
#include <vector>

#include "sospencil/polarize.hpp"
#include "sospencil/psd.hpp"

namespace sospencil {

namespace {

// Single-variable move turning pair u into pair v, if one exists whose
// variables stay clear of `avoid` (pass -1 to accept any). The two pair sums
// agree, so checking one member difference per matching is enough; member 0
// is tried first to keep the output canonical.
std::optional<ElementaryMove> move_between(const PairSet& ps, int u, int v, int avoid) {
    const MultiIndex& dst = ps.mons[static_cast<std::size_t>(v)].first;
    for (int member = 0; member < 2; ++member) {
        const MultiIndex& src = member == 0 ? ps.mons[static_cast<std::size_t>(u)].first
                                            : ps.mons[static_cast<std::size_t>(u)].second;
        int plus = -1, minus = -1;
        bool ok = true;
        for (std::size_t k = 0; k < src.size() && ok; ++k) {
            int delta = dst[k] - src[k];
            if (delta == 0) continue;
            if (delta == 1 && plus < 0)
                plus = static_cast<int>(k);
            else if (delta == -1 && minus < 0)
                minus = static_cast<int>(k);
            else
                ok = false;
        }
        if (ok && plus >= 0 && minus >= 0 && plus != avoid && minus != avoid)
            return ElementaryMove{member, plus, minus};
    }
    return std::nullopt;
}

// Breadth-first spanning tree that prefers moves avoiding the given variable
// slot. Once no avoiding move reaches an unvisited pair, one arbitrary move
// is taken and the preferred search resumes; processed pairs have already
// exhausted their avoiding edges into the shrinking unvisited set, so nothing
// is missed.
std::vector<TreeEdge> spanning_tree(const PairSet& ps, int avoid) {
    const int m = static_cast<int>(ps.pairs.size());
    if (m == 0) throw PreconditionError("elementary_transform_tree: empty pair set");
    std::vector<TreeEdge> edges;
    std::vector<bool> visited(static_cast<std::size_t>(m), false);
    std::vector<int> order{0};
    visited[0] = true;
    std::size_t head = 0;
    while (static_cast<int>(order.size()) < m) {
        if (head < order.size()) {
            int u = order[head];
            for (int v = 0; v < m; ++v) {
                if (visited[static_cast<std::size_t>(v)]) continue;
                if (std::optional<ElementaryMove> mv = move_between(ps, u, v, avoid)) {
                    edges.push_back(TreeEdge{u, v, *mv});
                    visited[static_cast<std::size_t>(v)] = true;
                    order.push_back(v);
                }
            }
            ++head;
        } else {
            bool added = false;
            for (std::size_t k = 0; k < order.size() && !added; ++k)
                for (int v = 0; v < m && !added; ++v) {
                    if (visited[static_cast<std::size_t>(v)]) continue;
                    if (std::optional<ElementaryMove> mv = move_between(ps, order[k], v, -1)) {
                        edges.push_back(TreeEdge{order[k], v, *mv});
                        visited[static_cast<std::size_t>(v)] = true;
                        order.push_back(v);
                        head = order.size() - 1;
                        added = true;
                    }
                }
            if (!added) throw Error("internal: elementary transformation graph is disconnected");
        }
    }
    return edges;
}

AmbiguityBasisElement element_from_edge(const PairSet& ps, const TreeEdge& te) {
    AmbiguityBasisElement el;
    el.beta = ps.beta;
    auto [i1, j1] = ps.pairs[static_cast<std::size_t>(te.from)];
    auto [i2, j2] = ps.pairs[static_cast<std::size_t>(te.to)];
    if (i1 == j1 || i2 == j2) {
        el.kind = AmbiguityKind::triple;
        int mid = i1 == j1 ? i1 : i2;
        int a = i1 == j1 ? i2 : i1;
        int b = i1 == j1 ? j2 : j1;
        // the midpoint monomial always sits between the end monomials in
        // basis order, so ascending support keeps it in the middle
        el.support = {std::min(a, b), mid, std::max(a, b)};
        el.matrix = Mat(3, 3);
        el.matrix(0, 2) = el.matrix(2, 0) = -1;
        el.matrix(1, 1) = 2;
    } else {
        el.kind = AmbiguityKind::quad;
        int moved = te.move.member == 0 ? i1 : j1;
        int fixed = te.move.member == 0 ? j1 : i1;
        MultiIndex t = te.move.member == 0 ? ps.mons[static_cast<std::size_t>(te.from)].first
                                           : ps.mons[static_cast<std::size_t>(te.from)].second;
        t[static_cast<std::size_t>(te.move.plus)] += 1;
        t[static_cast<std::size_t>(te.move.minus)] -= 1;
        int ak, al;
        if (t == ps.mons[static_cast<std::size_t>(te.to)].first) {
            ak = i2;
            al = j2;
        } else {
            ak = j2;
            al = i2;
        }
        el.support = {ak, moved, al, fixed};
        el.matrix = Mat(4, 4);
        el.matrix(0, 2) = el.matrix(2, 0) = 1;
        el.matrix(1, 3) = el.matrix(3, 1) = -1;
    }
    return el;
}

// Writes the closed-form completion of one tree-edge element, scaled by c,
// into the coefficient matrices for the slots other than z_d. The z_d block
// of the element is already accounted for inside s_d itself.
void embed_display(const PairSet& ps, const TreeEdge& te, const Rational& c,
                   const MonomialBasis& hb, int zd, std::vector<Mat>& work) {
    auto pos = [&](const MultiIndex& mono) {
        int p = hb.index0(mono);
        if (p < 0) throw Error("internal: display monomial escapes the basis");
        return p;
    };
    auto add2 = [&](int slot, int a, int b, const Rational& v) {
        work[static_cast<std::size_t>(slot)](a, b) += v;
        work[static_cast<std::size_t>(slot)](b, a) += v;
    };
    bool deg_from = ps.pairs[static_cast<std::size_t>(te.from)].first ==
                    ps.pairs[static_cast<std::size_t>(te.from)].second;
    bool deg_to = ps.pairs[static_cast<std::size_t>(te.to)].first ==
                  ps.pairs[static_cast<std::size_t>(te.to)].second;
    if (deg_from || deg_to) {
        const auto& center = deg_from ? ps.mons[static_cast<std::size_t>(te.from)]
                                      : ps.mons[static_cast<std::size_t>(te.to)];
        const auto& split = deg_from ? ps.mons[static_cast<std::size_t>(te.to)]
                                     : ps.mons[static_cast<std::size_t>(te.from)];
        const MultiIndex& m = center.first;
        const MultiIndex& p = split.first;
        const MultiIndex& q = split.second;
        int r = -1, l = -1;
        for (std::size_t k = 0; k < m.size(); ++k) {
            if (p[k] == m[k] + 1) r = static_cast<int>(k);
            if (p[k] == m[k] - 1) l = static_cast<int>(k);
        }
        MultiIndex zr = m, zl = m;
        zr[static_cast<std::size_t>(zd)] += 1;
        zr[static_cast<std::size_t>(l)] -= 1;
        zl[static_cast<std::size_t>(zd)] += 1;
        zl[static_cast<std::size_t>(r)] -= 1;
        int pm = pos(m), pp = pos(p), pq = pos(q), pzr = pos(zr), pzl = pos(zl);
        add2(l, pzr, pm, -c);
        add2(r, pzr, pq, c);
        add2(l, pzl, pp, c);
        add2(r, pzl, pm, -c);
    } else {
        const auto& from = ps.mons[static_cast<std::size_t>(te.from)];
        const MultiIndex& moved = te.move.member == 0 ? from.first : from.second;
        const MultiIndex& fixed = te.move.member == 0 ? from.second : from.first;
        int mu = te.move.plus, nu = te.move.minus;
        MultiIndex ak = moved, al = fixed, zg1 = moved, zg2 = fixed;
        ak[static_cast<std::size_t>(mu)] += 1;
        ak[static_cast<std::size_t>(nu)] -= 1;
        al[static_cast<std::size_t>(mu)] -= 1;
        al[static_cast<std::size_t>(nu)] += 1;
        zg1[static_cast<std::size_t>(zd)] += 1;
        zg1[static_cast<std::size_t>(nu)] -= 1;
        zg2[static_cast<std::size_t>(zd)] += 1;
        zg2[static_cast<std::size_t>(mu)] -= 1;
        int pa = pos(ak), pb = pos(moved), pc = pos(al), pd = pos(fixed);
        int pg1 = pos(zg1), pg2 = pos(zg2);
        add2(nu, pg2, pa, -c);
        add2(mu, pg2, pb, c);
        add2(mu, pg1, pc, -c);
        add2(nu, pg1, pd, c);
    }
}

// z_d block of the element attached to a tree edge, scaled by c.
void add_edge_stencil(const PairSet& ps, const TreeEdge& te, const Rational& c, Mat& residual) {
    auto [i1, j1] = ps.pairs[static_cast<std::size_t>(te.from)];
    auto [i2, j2] = ps.pairs[static_cast<std::size_t>(te.to)];
    if (i1 == j1 || i2 == j2) {
        int mid = i1 == j1 ? i1 : i2;
        auto [sp, sq] = i1 == j1 ? ps.pairs[static_cast<std::size_t>(te.to)]
                                 : ps.pairs[static_cast<std::size_t>(te.from)];
        residual(mid, mid) += 2 * c;
        residual(sp, sq) -= c;
        residual(sq, sp) -= c;
    } else {
        residual(i2, j2) += c;
        residual(j2, i2) += c;
        residual(i1, j1) -= c;
        residual(j1, i1) -= c;
    }
}

// The part of s_d not covered by closed-form completions has to be lifted by
// solving for fresh symmetric entries directly. The full annihilation system
// splits by the homogeneous monomial grade of the products, and the residual
// of a beta group only touches grade beta + e_d, so one small exact solve per
// group settles it; an inconsistent system means no completion exists at all.
void solve_residual(const MultiIndex& beta, const Mat& residual, const MonomialBasis& hb, int zd,
                    int d, std::vector<Mat>& work) {
    const int n = hb.size();
    MultiIndex g = beta;
    g[static_cast<std::size_t>(zd)] += 1;
    std::map<std::tuple<int, int, int>, int> cols;  // (slot, i, j) with i <= j
    struct Row {
        std::vector<std::tuple<int, int, int>> keys;
        Rational rhs;
    };
    std::vector<Row> rows;
    for (int i = 0; i < n; ++i) {
        MultiIndex mono = g - hb.mono(i);
        if (!mono.nonnegative()) continue;
        Row row;
        for (int t = 0; t <= d; ++t) {
            if (t == zd || mono[static_cast<std::size_t>(t)] == 0) continue;
            MultiIndex rest = mono;
            rest[static_cast<std::size_t>(t)] -= 1;
            int j = hb.index0(rest);
            if (j < 0) continue;
            auto key = std::make_tuple(t, std::min(i, j), std::max(i, j));
            cols.try_emplace(key, static_cast<int>(cols.size()));
            row.keys.push_back(key);
        }
        if (mono[static_cast<std::size_t>(zd)] > 0) {
            MultiIndex rest = mono;
            rest[static_cast<std::size_t>(zd)] -= 1;
            int j = hb.index0(rest);
            if (j >= 0) row.rhs = -residual(i, j);
        }
        if (!row.keys.empty() || sign_of(row.rhs) != 0) rows.push_back(std::move(row));
    }
    Mat a(static_cast<int>(rows.size()), static_cast<int>(cols.size()));
    std::vector<Rational> b(rows.size());
    for (std::size_t r = 0; r < rows.size(); ++r) {
        for (const auto& key : rows[r].keys) a(static_cast<int>(r), cols[key]) += 1;
        b[r] = rows[r].rhs;
    }
    std::optional<std::vector<Rational>> x = solve(a, b);
    if (!x)
        throw NotLiftableError(
            "lift_ambiguity: no symmetric completion annihilates the basis vector");
    for (const auto& [key, col] : cols) {
        const Rational& v = (*x)[static_cast<std::size_t>(col)];
        if (sign_of(v) == 0) continue;
        auto [t, i, j] = key;
        work[static_cast<std::size_t>(t)](i, j) += v;
        if (i != j) work[static_cast<std::size_t>(t)](j, i) += v;
    }
}

}  // namespace

PairSet pairs_for_beta(const MonomialBasis& basis, const MultiIndex& beta) {
    if (!basis.homogenized())
        throw PreconditionError("pairs_for_beta: basis must be homogenized");
    if (static_cast<int>(beta.size()) != basis.bounds().d())
        throw DimensionError("pairs_for_beta: exponent length does not match the basis");
    if (beta.degree() != 2 * basis.bounds().n0)
        throw PreconditionError("pairs_for_beta: degree must be twice the homogeneity degree");
    PairSet ps;
    ps.beta = beta;
    for (int i = 0; i < basis.size(); ++i) {
        MultiIndex rest = beta - basis.mono(i);
        if (!rest.nonnegative()) continue;
        int j = basis.index0(rest);
        if (j < i) continue;
        ps.pairs.push_back({i, j});
        ps.mons.push_back({basis.mono(i), rest});
    }
    return ps;
}

std::vector<TreeEdge> elementary_transform_tree(const PairSet& ps) {
    return spanning_tree(ps, -1);
}

std::vector<AmbiguityBasisElement> ambiguity_space_basis(const MonomialBasis& basis) {
    if (!basis.homogenized())
        throw PreconditionError("ambiguity_space_basis: basis must be homogenized");
    std::set<MultiIndex, BasisOrder> betas;
    for (int i = 0; i < basis.size(); ++i)
        for (int j = i; j < basis.size(); ++j) betas.insert(basis.mono(i) + basis.mono(j));
    std::vector<AmbiguityBasisElement> out;
    for (const MultiIndex& beta : betas) {
        PairSet ps = pairs_for_beta(basis, beta);
        if (ps.pairs.size() < 2) continue;
        for (const TreeEdge& te : spanning_tree(ps, -1)) out.push_back(element_from_edge(ps, te));
    }
    return out;
}

MatrixPencil lift_ambiguity(const Mat& s_d, const MonomialBasis& basis,
                            const DegreeBounds& bounds) {
    const int n = basis.size();
    const int d = bounds.d();
    if (d < 1) throw PreconditionError("lift_ambiguity: need at least one variable");
    if (basis.homogenized())
        throw PreconditionError("lift_ambiguity: pass the plain basis, not the homogenized one");
    if (basis.bounds().n0 != bounds.n0 || basis.bounds().nk != bounds.nk)
        throw PreconditionError("lift_ambiguity: basis and bounds disagree");
    if (s_d.rows() != n || s_d.cols() != n)
        throw DimensionError("lift_ambiguity: matrix size does not match the basis");
    if (!s_d.is_symmetric()) throw PreconditionError("lift_ambiguity: matrix is not symmetric");
    if (!quadratic_form(s_d, basis).is_zero())
        throw PreconditionError("lift_ambiguity: Psi S Psi^T is not the zero polynomial");
    const int nd = bounds.nk[static_cast<std::size_t>(d - 1)];
    for (int j = 0; j < n; ++j) {
        if (basis.mono(j)[static_cast<std::size_t>(d - 1)] < nd) continue;
        for (int i = 0; i < n; ++i)
            if (sign_of(s_d(i, j)) != 0)
                throw PreconditionError(
                    "lift_ambiguity: S does not annihilate the top z_d derivative of the basis");
    }

    MonomialBasis hb = basis.homogenize();
    const int zd = d - 1;  // exponent slot of z_d; slot d holds z0
    std::vector<Mat> work(static_cast<std::size_t>(d) + 1, Mat(n, n));
    work[static_cast<std::size_t>(zd)] = s_d;

    // nonzero cells grouped by the exponent sum of their homogenized monomials
    std::map<MultiIndex, std::vector<std::pair<int, int>>, BasisOrder> groups;
    for (int i = 0; i < n; ++i)
        for (int j = i; j < n; ++j)
            if (sign_of(s_d(i, j)) != 0) groups[hb.mono(i) + hb.mono(j)].push_back({i, j});

    for (const auto& [beta, cells] : groups) {
        // pairs whose members keep z_d degree below n_d; the annihilation
        // precondition confines every nonzero cell to this set, and the zero
        // group sum guarantees at least two such pairs
        PairSet full = pairs_for_beta(hb, beta);
        PairSet res;
        res.beta = beta;
        for (std::size_t k = 0; k < full.pairs.size(); ++k)
            if (full.mons[k].first[static_cast<std::size_t>(zd)] < nd &&
                full.mons[k].second[static_cast<std::size_t>(zd)] < nd) {
                res.pairs.push_back(full.pairs[k]);
                res.mons.push_back(full.mons[k]);
            }
        std::map<std::pair<int, int>, int> where;
        for (std::size_t k = 0; k < res.pairs.size(); ++k)
            where[res.pairs[k]] = static_cast<int>(k);

        std::vector<TreeEdge> tree = spanning_tree(res, zd);
        const int m = static_cast<int>(res.pairs.size());
        Mat inc(m, static_cast<int>(tree.size()));
        for (std::size_t e = 0; e < tree.size(); ++e) {
            const TreeEdge& te = tree[e];
            bool deg_from = res.pairs[static_cast<std::size_t>(te.from)].first ==
                            res.pairs[static_cast<std::size_t>(te.from)].second;
            bool deg_to = res.pairs[static_cast<std::size_t>(te.to)].first ==
                          res.pairs[static_cast<std::size_t>(te.to)].second;
            if (deg_from || deg_to) {
                inc(deg_from ? te.from : te.to, static_cast<int>(e)) = 2;
                inc(deg_from ? te.to : te.from, static_cast<int>(e)) = -1;
            } else {
                inc(te.from, static_cast<int>(e)) = -1;
                inc(te.to, static_cast<int>(e)) = 1;
            }
        }
        std::vector<Rational> rhs(static_cast<std::size_t>(m), Rational(0));
        for (const auto& [i, j] : cells) {
            auto it = where.find({i, j});
            if (it == where.end())
                throw Error("internal: ambiguity cell escapes the restricted pair set");
            rhs[static_cast<std::size_t>(it->second)] = s_d(i, j);
        }
        std::optional<std::vector<Rational>> coeffs = solve(inc, rhs);
        if (!coeffs) throw Error("internal: tree decomposition of an ambiguity group failed");

        Mat residual(n, n);
        bool have_residual = false;
        for (std::size_t e = 0; e < tree.size(); ++e) {
            const Rational& c = (*coeffs)[e];
            if (sign_of(c) == 0) continue;
            if (tree[e].move.plus != zd && tree[e].move.minus != zd) {
                embed_display(res, tree[e], c, hb, zd, work);
            } else {
                add_edge_stencil(res, tree[e], c, residual);
                have_residual = true;
            }
        }
        if (have_residual) solve_residual(beta, residual, hb, zd, d, work);
    }

    MatrixPencil out;
    out.basis = basis;
    out.coeffs.resize(static_cast<std::size_t>(d) + 1);
    out.coeffs[0] = work[static_cast<std::size_t>(d)];
    for (int k = 0; k < d; ++k)
        out.coeffs[static_cast<std::size_t>(k) + 1] = work[static_cast<std::size_t>(k)];
    for (const Poly& row : pencil_apply_basis(out))
        if (!row.is_zero())
            throw Error("internal: lifted pencil fails to annihilate the basis vector");
    return out;
}

MatrixPencil psd_repair(const MatrixPencil& b, const Poly& q, const Poly& p, const Mat& a_d) {
    const int d = b.nvars();
    const int n = b.dim();
    if (d < 1) throw PreconditionError("psd_repair: pencil has no variables");
    if (a_d.rows() != n || a_d.cols() != n)
        throw DimensionError("psd_repair: Gram matrix size does not match the pencil");
    if (!a_d.is_symmetric()) throw PreconditionError("psd_repair: Gram matrix is not symmetric");
    if (!verify_polarization(q, p, b))
        throw PreconditionError("psd_repair: pencil does not polarize the product");
    Poly w = wronskian(q.extended(d), p.extended(d), d);
    if (!(quadratic_form(a_d, b.basis) == w))
        throw PreconditionError("psd_repair: Gram quadratic form is not the partial Wronskian");
    const int nd = b.basis.bounds().nk[static_cast<std::size_t>(d - 1)];
    for (int j = 0; j < n; ++j) {
        if (b.basis.mono(j)[static_cast<std::size_t>(d - 1)] < nd) continue;
        for (int i = 0; i < n; ++i)
            if (sign_of(a_d(i, j)) != 0)
                throw PreconditionError(
                    "psd_repair: Gram matrix does not annihilate the top z_d derivative");
    }
    if (!exact_psd_check(a_d).psd)
        throw PreconditionError("psd_repair: Gram matrix is not positive semidefinite");

    Mat s = a_d - b.coeffs[static_cast<std::size_t>(d)];
    if (s.is_zero()) return b;
    MatrixPencil out = b;
    out += lift_ambiguity(s, b.basis, b.basis.bounds());
    if (!(out.coeffs[static_cast<std::size_t>(d)] == a_d) || !verify_polarization(q, p, out))
        throw Error("internal: psd repair failed to preserve the polarization");
    return out;
}

}  // namespace sospencil
