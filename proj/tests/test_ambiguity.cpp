#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <map>
#include <numeric>
#include <set>
#include <vector>

#include "sospencil/ambiguity.hpp"
#include "sospencil/polarize.hpp"
#include "sospencil/psd.hpp"
#include "sospencil/rng.hpp"

using namespace sospencil;

namespace {

MultiIndex mi(std::vector<int> e) { return MultiIndex{std::move(e)}; }

MonomialBasis hom_basis(int n0, std::vector<int> nk) {
    DegreeBounds b;
    b.n0 = n0;
    b.nk = std::move(nk);
    return MonomialBasis::build(b).homogenize();
}

// scatter a stencil over its support positions into a full N x N matrix
Mat scatter(const AmbiguityBasisElement& el, int n) {
    Mat m(n, n);
    int s = static_cast<int>(el.support.size());
    for (int a = 0; a < s; ++a)
        for (int b = 0; b < s; ++b)
            m(el.support[a], el.support[b]) += el.matrix(a, b);
    return m;
}

// nullspace dimension of system (sum over cells of a beta group = 0, all
// other cells = 0), phrased over all upper-triangular cells
int brute_group_dimension(const MonomialBasis& hb, const MultiIndex& beta) {
    int n = hb.size();
    std::vector<std::pair<int, int>> cells;
    for (int i = 0; i < n; ++i)
        for (int j = i; j < n; ++j) cells.push_back({i, j});
    int nc = static_cast<int>(cells.size());
    std::vector<std::vector<Rational>> rows;
    std::vector<Rational> sum_row(nc, Rational(0));
    for (int c = 0; c < nc; ++c) {
        MultiIndex s = hb.mono(cells[c].first) + hb.mono(cells[c].second);
        if (s == beta) {
            sum_row[c] = cells[c].first == cells[c].second ? Rational(1) : Rational(2);
        } else {
            std::vector<Rational> r(nc, Rational(0));
            r[c] = 1;
            rows.push_back(std::move(r));
        }
    }
    rows.push_back(std::move(sum_row));
    Mat m(static_cast<int>(rows.size()), nc);
    for (int i = 0; i < m.rows(); ++i)
        for (int j = 0; j < nc; ++j) m(i, j) = rows[i][j];
    return nc - rref(m).rank;
}

// independent feasibility oracle: do symmetric S_0..S_{d-1} exist with
// (S_0 + z_1 S_1 + ... + z_d s_d) Psi^T = 0? Plain dense Gaussian
// elimination over all unknown entries, no block structure used.
bool full_lift_feasible(const Mat& s_d, const MonomialBasis& basis, const DegreeBounds& bounds) {
    int n = basis.size();
    int d = bounds.d();
    // unknowns: (k, i<=j) for k = 0..d-1, where k = 0 is the constant matrix
    std::map<std::tuple<int, int, int>, int> col;
    for (int k = 0; k < d; ++k)
        for (int i = 0; i < n; ++i)
            for (int j = i; j < n; ++j)
                col[{k, i, j}] = static_cast<int>(col.size());
    int nu = static_cast<int>(col.size());
    // equations: per row i, per monomial of the row polynomial
    std::map<std::pair<int, std::vector<int>>, std::map<int, Rational>> lhs;
    std::map<std::pair<int, std::vector<int>>, Rational> rhs;
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            int a = std::min(i, j), b = std::max(i, j);
            for (int k = 0; k < d; ++k) {
                MultiIndex m = basis.mono(j);
                if (k > 0) m[k - 1] += 1;
                lhs[{i, m.e}][col[{k, a, b}]] += 1;
            }
            if (sign_of(s_d(i, j)) != 0) {
                MultiIndex m = basis.mono(j);
                m[d - 1] += 1;
                rhs[{i, m.e}] -= s_d(i, j);
            }
        }
    for (auto& [key, v] : rhs) lhs[key];  // make sure rhs-only equations exist
    Mat a(static_cast<int>(lhs.size()), nu);
    std::vector<Rational> b(lhs.size(), Rational(0));
    int r = 0;
    for (auto& [key, terms] : lhs) {
        for (auto& [c, v] : terms) a(r, c) = v;
        auto it = rhs.find(key);
        if (it != rhs.end()) b[static_cast<std::size_t>(r)] = it->second;
        ++r;
    }
    return solve(a, b).has_value();
}

bool pencil_annihilates(const MatrixPencil& s) {
    for (const Poly& row : pencil_apply_basis(s))
        if (!row.is_zero()) return false;
    return true;
}

}  // namespace

TEST_CASE("pair sets for box bases") {
    MonomialBasis hb = hom_basis(2, {2, 2});
    REQUIRE(hb.size() == 6);
    // order: 1, z1, z2, z1^2, z1z2, z2^2 with the z0 exponent appended last
    CHECK(hb.mono(3) == mi({2, 0, 0}));
    CHECK(hb.mono(4) == mi({1, 1, 0}));

    PairSet ps = pairs_for_beta(hb, mi({2, 2, 0}));
    REQUIRE(ps.pairs.size() == 2);
    CHECK(ps.pairs[0] == std::pair<int, int>{3, 5});
    CHECK(ps.pairs[1] == std::pair<int, int>{4, 4});
    CHECK(ps.mons[0].first == mi({2, 0, 0}));
    CHECK(ps.mons[0].second == mi({0, 2, 0}));
    CHECK(ps.mons[1].first == mi({1, 1, 0}));

    // corner monomial doubled: unique self pair
    PairSet corner = pairs_for_beta(hb, mi({4, 0, 0}));
    REQUIRE(corner.pairs.size() == 1);
    CHECK(corner.pairs[0] == std::pair<int, int>{3, 3});

    // out of reach: z1 exponent cannot exceed twice its bound
    MonomialBasis slim = hom_basis(2, {1, 2});
    CHECK(pairs_for_beta(slim, mi({4, 0, 0})).pairs.empty());

    CHECK_THROWS_AS(pairs_for_beta(hb, mi({1, 1, 0})), PreconditionError);  // |beta| != 2 n0
    CHECK_THROWS_AS(pairs_for_beta(MonomialBasis::build(hb.bounds()), mi({2, 2, 0, 0})),
                    PreconditionError);  // not homogenized

    // brute-force cross-check plus the box characterization of members
    Rng rng(41);
    for (int trial = 0; trial < 25; ++trial) {
        int d = rng.int_in(1, 3);
        DegreeBounds bb;
        bb.n0 = rng.int_in(1, 3);
        for (int k = 0; k < d; ++k) bb.nk.push_back(rng.int_in(1, bb.n0));
        MonomialBasis h = MonomialBasis::build(bb).homogenize();
        int i = rng.int_in(0, h.size() - 1), j = rng.int_in(0, h.size() - 1);
        MultiIndex beta = h.mono(i) + h.mono(j);
        PairSet got = pairs_for_beta(h, beta);

        std::set<std::pair<int, int>> expect;
        for (int a = 0; a < h.size(); ++a)
            for (int b = a; b < h.size(); ++b)
                if (h.mono(a) + h.mono(b) == beta) expect.insert({a, b});
        std::set<std::pair<int, int>> gotset(got.pairs.begin(), got.pairs.end());
        CHECK(gotset == expect);

        // member monomials = box points of (4.10) at total degree n0
        std::set<MultiIndex, BasisOrder> members;
        for (const auto& [ma, mb] : got.mons) {
            members.insert(ma);
            members.insert(mb);
        }
        const std::vector<int>& nk = h.bounds().nk;  // includes the z0 slot bound
        std::set<MultiIndex, BasisOrder> box;
        for (int a = 0; a < h.size(); ++a) {
            const MultiIndex& m = h.mono(a);
            bool in = true;
            for (std::size_t k = 0; k < m.size(); ++k) {
                int lo = std::max(beta[static_cast<int>(k)] - nk[k], 0);
                int hi = std::min(beta[static_cast<int>(k)], nk[k]);
                if (m[static_cast<int>(k)] < lo || m[static_cast<int>(k)] > hi) in = false;
            }
            if (in) box.insert(m);
        }
        CHECK(members == box);
    }
}

TEST_CASE("elementary transformation trees") {
    MonomialBasis hb = hom_basis(2, {2, 2});
    PairSet ps = pairs_for_beta(hb, mi({2, 2, 0}));
    std::vector<TreeEdge> edges = elementary_transform_tree(ps);
    REQUIRE(edges.size() == 1);
    CHECK(edges[0].from == 0);
    CHECK(edges[0].to == 1);
    CHECK(edges[0].move.member == 0);
    CHECK(edges[0].move.plus == 1);   // z1^2 * z2/z1 = z1z2
    CHECK(edges[0].move.minus == 0);

    // single pair: no edges
    CHECK(elementary_transform_tree(pairs_for_beta(hb, mi({4, 0, 0}))).empty());
    CHECK_THROWS_AS(elementary_transform_tree(PairSet{}), PreconditionError);

    // three disjoint-product pairs in four variables connect with two edges
    MonomialBasis h4 = hom_basis(2, {1, 1, 1, 1});
    PairSet ps4 = pairs_for_beta(h4, mi({1, 1, 1, 1, 0}));
    REQUIRE(ps4.pairs.size() == 3);
    // pair order: {z1z2, z3z4}, {z1z3, z2z4}, {z1z4, z2z3}
    CHECK(ps4.mons[0].first == mi({1, 1, 0, 0, 0}));
    CHECK(ps4.mons[1].first == mi({1, 0, 1, 0, 0}));
    CHECK(ps4.mons[2].first == mi({1, 0, 0, 1, 0}));
    std::vector<TreeEdge> e4 = elementary_transform_tree(ps4);
    REQUIRE(e4.size() == 2);
    CHECK(e4[0].from == 0);
    CHECK(e4[0].to == 1);
    CHECK(e4[0].move.plus == 2);
    CHECK(e4[0].move.minus == 1);
    CHECK(e4[1].from == 0);
    CHECK(e4[1].to == 2);
    CHECK(e4[1].move.plus == 3);
    CHECK(e4[1].move.minus == 1);

    // randomized: m-1 edges, every move valid, tree spans, deterministic
    Rng rng(57);
    for (int trial = 0; trial < 25; ++trial) {
        int d = rng.int_in(1, 3);
        DegreeBounds bb;
        bb.n0 = rng.int_in(1, 3);
        for (int k = 0; k < d; ++k) bb.nk.push_back(rng.int_in(1, bb.n0));
        MonomialBasis h = MonomialBasis::build(bb).homogenize();
        int i = rng.int_in(0, h.size() - 1), j = rng.int_in(0, h.size() - 1);
        PairSet ps2 = pairs_for_beta(h, h.mono(i) + h.mono(j));
        if (ps2.pairs.empty()) continue;
        std::vector<TreeEdge> tree = elementary_transform_tree(ps2);
        CHECK(tree.size() == ps2.pairs.size() - 1);

        std::vector<int> root(ps2.pairs.size());
        std::iota(root.begin(), root.end(), 0);
        auto find = [&](int x) {
            while (root[static_cast<std::size_t>(x)] != x) x = root[static_cast<std::size_t>(x)];
            return x;
        };
        for (const TreeEdge& e : tree) {
            // applying the move to the stated member reproduces the target pair
            MultiIndex a = e.move.member == 0 ? ps2.mons[e.from].first : ps2.mons[e.from].second;
            MultiIndex b = e.move.member == 0 ? ps2.mons[e.from].second : ps2.mons[e.from].first;
            a[e.move.plus] += 1;
            a[e.move.minus] -= 1;
            b[e.move.plus] -= 1;
            b[e.move.minus] += 1;
            CHECK(a.nonnegative());
            CHECK(b.nonnegative());
            bool match = (a == ps2.mons[e.to].first && b == ps2.mons[e.to].second) ||
                         (a == ps2.mons[e.to].second && b == ps2.mons[e.to].first);
            CHECK(match);
            root[static_cast<std::size_t>(find(e.from))] = find(e.to);
        }
        std::set<int> roots;
        for (std::size_t k = 0; k < ps2.pairs.size(); ++k) roots.insert(find(static_cast<int>(k)));
        CHECK(roots.size() == 1);

        std::vector<TreeEdge> again = elementary_transform_tree(ps2);
        REQUIRE(again.size() == tree.size());
        for (std::size_t k = 0; k < tree.size(); ++k) {
            CHECK(again[k].from == tree[k].from);
            CHECK(again[k].to == tree[k].to);
            CHECK(again[k].move.plus == tree[k].move.plus);
        }
    }
}

TEST_CASE("ambiguity space basis") {
    MonomialBasis hb = hom_basis(2, {2, 2});
    std::vector<AmbiguityBasisElement> els = ambiguity_space_basis(hb);
    REQUIRE(els.size() == 6);
    // beta groups in basis order of the sums; one element per group here
    std::vector<AmbiguityKind> kinds{AmbiguityKind::triple, AmbiguityKind::quad,
                                     AmbiguityKind::triple, AmbiguityKind::quad,
                                     AmbiguityKind::quad,   AmbiguityKind::triple};
    for (std::size_t k = 0; k < els.size(); ++k) CHECK(els[k].kind == kinds[k]);

    CHECK(els[0].beta == mi({2, 2, 0}));
    CHECK(els[0].support == std::vector<int>{3, 4, 5});
    Mat triple_stencil({{0, 0, -1}, {0, 2, 0}, {-1, 0, 0}});
    CHECK(els[0].matrix == triple_stencil);

    CHECK(els[2].beta == mi({2, 0, 2}));
    CHECK(els[2].support == std::vector<int>{0, 1, 3});
    CHECK(els[2].matrix == triple_stencil);

    CHECK(els[1].beta == mi({2, 1, 1}));
    CHECK(els[1].support == std::vector<int>{2, 1, 3, 4});
    Mat quad_stencil({{0, 0, 1, 0}, {0, 0, 0, -1}, {1, 0, 0, 0}, {0, -1, 0, 0}});
    CHECK(els[1].matrix == quad_stencil);

    // every element annihilates the homogenized quadratic form exactly
    for (const AmbiguityBasisElement& el : els)
        CHECK(quadratic_form(scatter(el, hb.size()), hb).is_zero());

    // group dimensions against the dense cell-variable system
    std::set<MultiIndex, BasisOrder> hb_betas;
    for (int i = 0; i < hb.size(); ++i)
        for (int j = i; j < hb.size(); ++j) hb_betas.insert(hb.mono(i) + hb.mono(j));
    for (const MultiIndex& beta : hb_betas)
        CHECK(brute_group_dimension(hb, beta) ==
              static_cast<int>(pairs_for_beta(hb, beta).pairs.size()) - 1);

    // the four-variable example yields two quads for its beta
    MonomialBasis h4 = hom_basis(2, {1, 1, 1, 1});
    int quads = 0;
    for (const AmbiguityBasisElement& el : ambiguity_space_basis(h4))
        if (el.beta == mi({1, 1, 1, 1, 0})) {
            CHECK(el.kind == AmbiguityKind::quad);
            ++quads;
        }
    CHECK(quads == 2);

    // group sizes match the brute-force dimension of the constraint system,
    // and the elements of each group are linearly independent
    Rng rng(73);
    for (int trial = 0; trial < 8; ++trial) {
        int d = rng.int_in(1, 3);
        DegreeBounds bb;
        bb.n0 = rng.int_in(1, 3);
        for (int k = 0; k < d; ++k) bb.nk.push_back(rng.int_in(1, bb.n0));
        MonomialBasis h = MonomialBasis::build(bb).homogenize();
        if (h.size() > 12) continue;
        std::vector<AmbiguityBasisElement> basis_els = ambiguity_space_basis(h);

        std::map<MultiIndex, std::vector<const AmbiguityBasisElement*>, BasisOrder> groups;
        for (const AmbiguityBasisElement& el : basis_els) {
            groups[el.beta].push_back(&el);
            CHECK(quadratic_form(scatter(el, h.size()), h).is_zero());
        }
        bool brute = h.size() <= 8;  // keep the dense rref oracle affordable
        std::set<MultiIndex, BasisOrder> betas;
        for (int i = 0; i < h.size(); ++i)
            for (int j = i; j < h.size(); ++j) betas.insert(h.mono(i) + h.mono(j));
        for (const MultiIndex& beta : betas) {
            int m = static_cast<int>(pairs_for_beta(h, beta).pairs.size());
            if (brute) CHECK(brute_group_dimension(h, beta) == m - 1);
            int have = groups.count(beta) ? static_cast<int>(groups[beta].size()) : 0;
            CHECK(have == m - 1);
            if (have > 0) {
                // stack flattened elements, check full row rank
                int n = h.size();
                Mat stack(have, n * n);
                for (int e = 0; e < have; ++e) {
                    Mat s = scatter(*groups[beta][static_cast<std::size_t>(e)], n);
                    for (int i = 0; i < n; ++i)
                        for (int j = 0; j < n; ++j) stack(e, i * n + j) = s(i, j);
                }
                CHECK(rref(stack).rank == have);
            }
        }
    }
}

TEST_CASE("lifting the closed-form blocks") {
    // triple block over bounds (2; 2, 1): S_2 supported on (1, z1, z1^2)
    DegreeBounds b21;
    b21.n0 = 2;
    b21.nk = {2, 1};
    MonomialBasis basis21 = MonomialBasis::build(b21);
    REQUIRE(basis21.size() == 5);  // 1, z1, z2, z1^2, z1z2
    Mat s2(5, 5);
    s2(3, 0) = s2(0, 3) = -1;
    s2(1, 1) = 2;
    MatrixPencil lifted = lift_ambiguity(s2, basis21, b21);
    REQUIRE(lifted.coeffs.size() == 3);
    CHECK(lifted.coeffs[2] == s2);
    Mat s0(5, 5), s1(5, 5);
    s0(1, 4) = s0(4, 1) = -1;
    s0(2, 3) = s0(3, 2) = 1;
    s1(0, 4) = s1(4, 0) = 1;
    s1(1, 2) = s1(2, 1) = -1;
    CHECK(lifted.coeffs[0] == s0);
    CHECK(lifted.coeffs[1] == s1);
    CHECK(pencil_annihilates(lifted));

    // quad block over bounds (2; 2, 2): S_2 = +1 on (z1, z1z2), -1 on (z1^2, z2)
    DegreeBounds b22;
    b22.n0 = 2;
    b22.nk = {2, 2};
    MonomialBasis basis22 = MonomialBasis::build(b22);
    REQUIRE(basis22.size() == 6);
    Mat q2(6, 6);
    q2(1, 4) = q2(4, 1) = 1;
    q2(3, 2) = q2(2, 3) = -1;
    MatrixPencil qlift = lift_ambiguity(q2, basis22, b22);
    CHECK(qlift.coeffs[2] == q2);
    Mat q0(6, 6), q1(6, 6);
    q0(4, 4) = -2;
    q0(3, 5) = q0(5, 3) = 1;
    q1(2, 4) = q1(4, 2) = 1;
    q1(1, 5) = q1(5, 1) = -1;
    CHECK(qlift.coeffs[0] == q0);
    CHECK(qlift.coeffs[1] == q1);
    CHECK(pencil_annihilates(qlift));

    // zero input lifts to the zero pencil
    MatrixPencil zl = lift_ambiguity(Mat(5, 5), basis21, b21);
    REQUIRE(zl.coeffs.size() == 3);
    for (const Mat& c : zl.coeffs) CHECK(c.is_zero());

    // violated preconditions
    CHECK_THROWS_AS(lift_ambiguity(Mat::identity(5), basis21, b21), PreconditionError);
    DegreeBounds b11;
    b11.n0 = 2;
    b11.nk = {1, 1};
    MonomialBasis basis11 = MonomialBasis::build(b11);  // 1, z1, z2, z1z2
    Mat bad(4, 4);
    bad(1, 2) = bad(2, 1) = 1;
    bad(0, 3) = bad(3, 0) = -1;  // quadratic form vanishes, derivative check fails
    CHECK_THROWS_AS(lift_ambiguity(bad, basis11, b11), PreconditionError);
}

TEST_CASE("ambiguities that admit no lift") {
    // over degree bounds (3; 3, 3) this z2 ambiguity satisfies both
    // membership conditions yet has no symmetric completion
    DegreeBounds b33;
    b33.n0 = 3;
    b33.nk = {3, 3};
    MonomialBasis basis = MonomialBasis::build(b33);
    REQUIRE(basis.size() == 10);
    int i_z2 = basis.index0(mi({0, 1}));
    int i_z1 = basis.index0(mi({1, 0}));
    int i_z1z1z2 = basis.index0(mi({2, 1}));
    int i_z1z2z2 = basis.index0(mi({1, 2}));
    Mat s(10, 10);
    s(i_z1z1z2, i_z2) = s(i_z2, i_z1z1z2) = 1;
    s(i_z1z2z2, i_z1) = s(i_z1, i_z1z2z2) = -1;
    CHECK(quadratic_form(s, basis).is_zero());
    CHECK_THROWS_AS(lift_ambiguity(s, basis, b33), NotLiftableError);
    // the independent dense solver agrees that no completion exists
    CHECK(!full_lift_feasible(s, basis, b33));
}

TEST_CASE("randomized lifts against the dense oracle") {
    Rng rng(99);
    int lifted_ok = 0, not_liftable = 0;
    for (int trial = 0; trial < 30; ++trial) {
        int d = rng.int_in(1, 3);
        DegreeBounds bb;
        bb.n0 = rng.int_in(1, 3);
        for (int k = 0; k < d; ++k) bb.nk.push_back(rng.int_in(1, bb.n0));
        MonomialBasis basis = MonomialBasis::build(bb);
        if (basis.size() > 12) continue;
        MonomialBasis h = basis.homogenize();
        int nd = bb.nk[static_cast<std::size_t>(d - 1)];

        // eligible elements: every support monomial has z_d degree < n_d
        std::vector<Mat> eligible;
        for (const AmbiguityBasisElement& el : ambiguity_space_basis(h)) {
            bool ok = true;
            for (int p : el.support)
                if (h.mono(p)[d - 1] >= nd) ok = false;
            if (ok) eligible.push_back(scatter(el, h.size()));
        }
        if (eligible.empty()) continue;

        Mat s(basis.size(), basis.size());
        int picks = rng.int_in(1, 3);
        for (int t = 0; t < picks; ++t) {
            int e = rng.int_in(0, static_cast<int>(eligible.size()) - 1);
            Rational c = rng.rational_in(-2, 2, 3);
            s += c * eligible[static_cast<std::size_t>(e)];
        }
        if (s.is_zero()) continue;

        try {
            MatrixPencil out = lift_ambiguity(s, basis, bb);
            REQUIRE(out.coeffs.size() == static_cast<std::size_t>(d + 1));
            CHECK(out.coeffs[static_cast<std::size_t>(d)] == s);
            for (const Mat& c : out.coeffs) CHECK(c.is_symmetric());
            CHECK(pencil_annihilates(out));
            ++lifted_ok;
        } catch (const NotLiftableError&) {
            if (basis.size() <= 10) CHECK(!full_lift_feasible(s, basis, bb));
            ++not_liftable;
        }
    }
    CHECK(lifted_ok >= 5);
    // informational: both branches may occur; the counts just need to add up
    CHECK(lifted_ok + not_liftable >= 5);
}

TEST_CASE("psd repair") {
    // d = 1: the Wronskian Gram equals the pencil coefficient, nothing moves
    Poly q1 = parse_poly_text("z1");
    Poly p1 = parse_poly_text("-1", 1);
    MatrixPencil b1 = product_pencil(q1, p1);
    REQUIRE(b1.dim() == 2);
    Mat a1(2, 2);
    a1(0, 0) = 1;
    MatrixPencil r1 = psd_repair(b1, q1, p1, a1);
    CHECK(r1.coeffs[1] == a1);
    for (std::size_t k = 0; k < b1.coeffs.size(); ++k) CHECK(r1.coeffs[k] == b1.coeffs[k]);
    CHECK(verify_polarization(q1, p1, r1));

    // two-variable harmonic quotient: Gram of W_2 = z1^2 is a single 1
    Poly q2 = parse_poly_text("z1+z2");
    Poly p2 = parse_poly_text("z1*z2");
    MatrixPencil b2 = product_pencil(q2, p2);
    REQUIRE(b2.dim() == 4);  // 1, z1, z2, z1z2
    CHECK(quadratic_form(b2.coeffs[2], b2.basis) == parse_poly_text("z1^2", 2));
    Mat a2(4, 4);
    a2(1, 1) = 1;
    MatrixPencil r2 = psd_repair(b2, q2, p2, a2);
    CHECK(r2.coeffs[2] == a2);
    CHECK(verify_polarization(q2, p2, r2));
    CHECK(exact_psd_check(r2.coeffs[2]).psd);

    // a perturbed pencil exercises the lifting path: add a lifted ambiguity,
    // then ask for the clean Gram back
    Poly q3 = parse_poly_text("z1^2", 2);
    Poly p3 = parse_poly_text("z1^2+z2");
    MatrixPencil b3 = product_pencil(q3, p3);
    REQUIRE(b3.dim() == 5);  // 1, z1, z2, z1^2, z1z2
    CHECK(quadratic_form(b3.coeffs[2], b3.basis) == parse_poly_text("z1^2", 2));
    Mat s2(5, 5);
    s2(3, 0) = s2(0, 3) = -1;
    s2(1, 1) = 2;
    MatrixPencil perturbed = b3;
    perturbed += lift_ambiguity(s2, b3.basis, b3.basis.bounds());
    REQUIRE(verify_polarization(q3, p3, perturbed));
    Mat a3(5, 5);
    a3(1, 1) = 1;
    REQUIRE(!(perturbed.coeffs[2] == a3));
    MatrixPencil r3 = psd_repair(perturbed, q3, p3, a3);
    CHECK(r3.coeffs[2] == a3);
    CHECK(verify_polarization(q3, p3, r3));
    CHECK(exact_psd_check(r3.coeffs[2]).psd);

    // precondition gates: wrong quadratic form, indefinite Gram
    Mat wrong(4, 4);
    wrong(2, 2) = 1;  // z2^2, not W_2
    CHECK_THROWS_AS(psd_repair(b2, q2, p2, wrong), PreconditionError);
    Mat indef(5, 5);
    indef(0, 3) = indef(3, 0) = 1;
    indef(1, 1) = -1;  // Psi M Psi^T = z1^2 but M is indefinite
    CHECK_THROWS_AS(psd_repair(b3, q3, p3, indef), PreconditionError);
}
