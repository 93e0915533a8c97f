#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <vector>

#include "sospencil/matrix.hpp"
#include "sospencil/polarize.hpp"
#include "sospencil/rng.hpp"

using namespace sospencil;

namespace {

MultiIndex mi(std::vector<int> e) { return MultiIndex{std::move(e)}; }

Mat unit_entry(int n, int i, int j, const Rational& v) {
    Mat m(n, n);
    m(i, j) = v;
    return m;
}

Mat sym_entry(int n, int i, int j, const Rational& v) {
    Mat m(n, n);
    m(i, j) = v;
    m(j, i) = v;
    return m;
}

Poly random_poly(Rng& rng, int d, int maxdeg, int maxterms) {
    Poly p(d);
    int nt = rng.int_in(0, maxterms);
    for (int t = 0; t < nt; ++t) {
        std::vector<int> e(d, 0);
        int remaining = maxdeg;
        for (int k = 0; k < d; ++k) {
            e[k] = rng.int_in(0, remaining);
            remaining -= e[k];
        }
        Rational c = rng.rational_in(-3, 3, 4);
        p.add_term(mi(e), c);
    }
    return p;
}

std::vector<Rational> random_point(Rng& rng, int d) {
    std::vector<Rational> z(d);
    for (auto& v : z) v = rng.rational_in(-5, 5, 8);
    return z;
}

// Rows of C(zeta) (zeta^mu)^t as polynomials in the chain variables.
std::vector<Poly> chain_rows(const ChainPencil& ch) {
    int n = static_cast<int>(ch.mu.size());
    std::vector<Poly> rows(n, Poly(n));
    for (int s = 0; s < n; ++s) {
        const Mat& c = ch.coeff[s];
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j) {
                if (sign_of(c(i, j)) == 0) continue;
                std::vector<int> e = ch.mu[j].e;
                e[s] += 1;
                rows[i].add_term(mi(e), c(i, j));
            }
    }
    return rows;
}

}  // namespace

TEST_CASE("exact matrix arithmetic, elimination, kernels") {
    Mat a(std::vector<std::vector<Rational>>{{1, 2}, {3, 4}});
    CHECK(a.rows() == 2);
    CHECK(a(1, 0) == 3);
    CHECK(a.transpose()(0, 1) == 3);
    CHECK(!a.is_symmetric());
    CHECK(sym_entry(3, 0, 2, Rational(1)).is_symmetric());
    CHECK(Mat(2, 3).is_zero());

    Mat b(std::vector<std::vector<Rational>>{{0, 1}, {1, 0}});
    CHECK((a * b) == Mat(std::vector<std::vector<Rational>>{{2, 1}, {4, 3}}));
    CHECK((a + b - b) == a);
    CHECK((Rational(2) * b)(0, 1) == 2);
    CHECK(Mat::identity(2) * a == a);

    CHECK(det(a) == -2);
    CHECK(det(Mat::identity(5)) == 1);
    CHECK(det(Mat(std::vector<std::vector<Rational>>{{1, 2}, {2, 4}})) == 0);
    Mat c(std::vector<std::vector<Rational>>{{2, 0, 1}, {1, 1, 0}, {0, 3, 1}});
    CHECK(det(c) == 5);  // 2*(1-0) - 0 + 1*(3-0)

    auto ainv = inverse(a);
    REQUIRE(ainv.has_value());
    CHECK(*ainv == Mat(std::vector<std::vector<Rational>>{
                      {-2, 1}, {Rational(3, 2), Rational(-1, 2)}}));
    CHECK(!inverse(Mat(std::vector<std::vector<Rational>>{{1, 1}, {1, 1}})).has_value());

    Mat wide(std::vector<std::vector<Rational>>{{1, 1, 0}, {0, 0, 1}});
    Rref r = rref(wide);
    CHECK(r.rank == 2);
    CHECK(r.pivot_cols == std::vector<int>{0, 2});
    Mat ker = nullspace(wide);
    REQUIRE(ker.cols() == 1);
    CHECK(ker(0, 0) == -1);
    CHECK(ker(1, 0) == 1);
    CHECK(ker(2, 0) == 0);
    CHECK(nullspace(Mat::identity(3)).cols() == 0);

    Mat ones(std::vector<std::vector<Rational>>{{1, 1}, {1, 1}});
    CHECK(!solve(ones, {Rational(2), Rational(3)}).has_value());
    auto sol = solve(ones, {Rational(2), Rational(2)});
    REQUIRE(sol.has_value());
    CHECK(mat_vec(ones, *sol) == std::vector<Rational>{2, 2});

    Rng g1(42), g2(42);
    for (int i = 0; i < 10; ++i) CHECK(g1.raw() == g2.raw());
    for (int i = 0; i < 50; ++i) {
        Rational v = g1.rational_in(-10, 10);
        CHECK(v >= -10);
        CHECK(v <= 10);
        Rational grid = Rational(1000) * v;
        CHECK(grid.get_den() == 1);  // lands on the 1/1000 grid
    }

    // round trip: random nonsingular systems
    Rng rng(7);
    for (int t = 0; t < 10; ++t) {
        Mat m(4, 4);
        for (int i = 0; i < 4; ++i)
            for (int j = 0; j < 4; ++j) m(i, j) = rng.rational_in(-4, 4, 2);
        if (det(m) == 0) continue;
        auto minv = inverse(m);
        REQUIRE(minv.has_value());
        CHECK((m * *minv) == Mat::identity(4));
        std::vector<Rational> rhs = random_point(rng, 4);
        auto x = solve(m, rhs);
        REQUIRE(x.has_value());
        CHECK(mat_vec(m, *x) == rhs);
    }
}

TEST_CASE("exact polynomial quotients") {
    Poly s = parse_poly_text("z1+z2");
    Poly t = parse_poly_text("z1-z2");
    CHECK(divide_exact(s * s * t, s) == s * t);
    CHECK(divide_exact(s * t, t) == s);
    CHECK(divide_exact(Poly(2), s).is_zero());
    CHECK(divide_exact(parse_poly_text("3*z1^2"), Poly::constant(1, Rational(3, 2))) ==
          parse_poly_text("2*z1^2"));
    CHECK_THROWS_AS(divide_exact(parse_poly_text("z1^2+z2"), parse_poly_text("z1")), Error);
    CHECK_THROWS_AS(divide_exact(s, Poly(2)), Error);

    Rng rng(11);
    for (int i = 0; i < 20; ++i) {
        Poly a = random_poly(rng, 2, 3, 3);
        Poly b = random_poly(rng, 2, 2, 3);
        if (b.is_zero()) continue;
        CHECK(divide_exact(a * b, b) == a);
    }
}

TEST_CASE("chain construction, explicit low orders") {
    ChainPencil c0 = chain_pencil(0);
    REQUIRE(c0.coeff.size() == 1);
    CHECK(c0.coeff[0] == Mat(std::vector<std::vector<Rational>>{{1}}));
    REQUIRE(c0.mu.size() == 1);
    CHECK(c0.mu[0] == mi({0}));

    ChainPencil c1 = chain_pencil(1);
    REQUIRE(c1.coeff.size() == 3);
    Rational h(1, 2);
    CHECK(c1.coeff[0] == sym_entry(3, 0, 1, h));
    CHECK(c1.coeff[1] == sym_entry(3, 1, 2, -h));
    CHECK(c1.coeff[2] == sym_entry(3, 0, 2, h));
    CHECK(c1.mu == std::vector<MultiIndex>{mi({0, 1, 0}), mi({0, 0, 1}), mi({1, 0, 0})});
}

TEST_CASE("chain identity holds symbolically up to order five") {
    for (int k = 0; k <= 5; ++k) {
        ChainPencil ch = chain_pencil(k);
        int n = 2 * k + 1;
        REQUIRE(static_cast<int>(ch.coeff.size()) == n);
        for (const Mat& m : ch.coeff) {
            CHECK(m.rows() == n);
            CHECK(m.is_symmetric());
        }
        for (const MultiIndex& m : ch.mu) CHECK(m.degree() == k);

        std::vector<int> nu(n, 0);
        for (int s = 0; s < n; s += 2) nu[s] = 1;  // odd chain variables
        std::vector<Poly> rows = chain_rows(ch);
        CHECK(rows[0] == Poly::monomial(mi(nu)));
        for (int i = 1; i < n; ++i) CHECK(rows[i].is_zero());
    }
}

TEST_CASE("monomial transfer, pinned small cases") {
    // alpha = beta: lone diagonal unit in the constant matrix
    DegreeBounds b1{1, {1}};
    MatrixPencil idt = monomial_transfer_pencil(mi({1}), mi({1}), b1);
    REQUIRE(idt.dim() == 2);  // basis (1, z1)
    CHECK(idt.coeffs[0] == unit_entry(2, 1, 1, Rational(1)));
    CHECK(idt.coeffs[1] == Mat(2, 2));

    // degree raise 1 -> z over basis (1, z)
    MatrixPencil up = monomial_transfer_pencil(mi({0}), mi({1}), b1);
    CHECK(up.coeffs[0] == Mat(2, 2));
    CHECK(up.coeffs[1] == unit_entry(2, 0, 0, Rational(1)));
    std::vector<Poly> rows = pencil_apply_basis(up);
    CHECK(rows[0] == parse_poly_text("z1"));
    CHECK(rows[1].is_zero());

    // two-variable drops to the constant monomial, basis (1, z1, z2, z1^2, z1z2)
    DegreeBounds b2{2, {2, 1}};
    MatrixPencil dz2 = monomial_transfer_pencil(mi({0, 1}), mi({0, 0}), b2);
    REQUIRE(dz2.dim() == 5);
    Mat d0(5, 5);
    d0(0, 2) = 1;
    d0(2, 0) = 1;
    CHECK(dz2.coeffs[0] == d0);
    CHECK(dz2.coeffs[1] == Mat(5, 5));
    CHECK(dz2.coeffs[2] == unit_entry(5, 0, 0, Rational(-1)));

    MatrixPencil dz11 = monomial_transfer_pencil(mi({2, 0}), mi({0, 0}), b2);
    Mat e0(5, 5);
    e0(1, 1) = 1;
    e0(0, 3) = 1;
    e0(3, 0) = 1;
    CHECK(dz11.coeffs[0] == e0);
    CHECK(dz11.coeffs[1] == sym_entry(5, 0, 1, Rational(-1)));
    CHECK(dz11.coeffs[2] == Mat(5, 5));

    CHECK_THROWS_AS(monomial_transfer_pencil(mi({0, 2}), mi({0, 0}), b2), Error);
    CHECK_THROWS_AS(monomial_transfer_pencil(mi({0, 0}), mi({3, 0}), b2), Error);
}

TEST_CASE("monomial transfer, randomized symbolic checks") {
    Rng rng(101);
    for (int trial = 0; trial < 30; ++trial) {
        int d = rng.int_in(1, 3);
        DegreeBounds b;
        b.n0 = rng.int_in(0, 3);
        for (int k = 0; k < d; ++k) b.nk.push_back(rng.int_in(0, b.n0));
        MonomialBasis basis = MonomialBasis::build(b);
        int ia = static_cast<int>(rng.below(basis.size()));
        int ib = static_cast<int>(rng.below(basis.size()));
        const MultiIndex& alpha = basis.mono(ia);
        const MultiIndex& beta = basis.mono(ib);

        MatrixPencil dp = monomial_transfer_pencil(alpha, beta, b);
        CHECK(dp.symmetric());
        CHECK(dp.basis == basis);
        std::vector<Poly> rows = pencil_apply_basis(dp);
        for (int i = 0; i < dp.dim(); ++i) {
            if (i == ia)
                CHECK(rows[i] == Poly::monomial(beta));
            else
                CHECK(rows[i].is_zero());
        }
    }
}

TEST_CASE("product pencil, pinned and randomized") {
    // q = z, p = 1
    MatrixPencil zb = product_pencil(parse_poly_text("z1"), Poly::constant(1, 1));
    REQUIRE(zb.dim() == 2);
    CHECK(zb.coeffs[0] == sym_entry(2, 0, 1, Rational(1)));
    CHECK(zb.coeffs[1] == unit_entry(2, 0, 0, Rational(-1)));
    CHECK(verify_polarization(parse_poly_text("z1"), Poly::constant(1, 1), zb));
    std::vector<Poly> rows = pencil_apply_basis(zb);
    CHECK(rows[0].is_zero());
    CHECK(rows[1] == Poly::constant(1, 1));

    // constants
    MatrixPencil ones = product_pencil(Poly::constant(1, 1), Poly::constant(1, 1));
    REQUIRE(ones.dim() == 1);
    CHECK(ones.coeffs[0] == Mat(std::vector<std::vector<Rational>>{{1}}));
    CHECK(ones.coeffs[1] == Mat(1, 1));

    // p identically zero gives the zero pencil and still verifies
    MatrixPencil zp = product_pencil(parse_poly_text("z1+z2"), Poly(2));
    for (const Mat& m : zp.coeffs) CHECK(m.is_zero());
    CHECK(verify_polarization(parse_poly_text("z1+z2"), Poly(2), zp));

    CHECK_THROWS_AS(product_pencil(Poly(1), Poly::constant(1, 1)), Error);

    // symmetric roles when q = p: swapping the two variable groups fixes the form
    Poly s = parse_poly_text("1+z1*z2");
    MatrixPencil sp = product_pencil(s, s);
    CHECK(verify_polarization(s, s, sp));
    Rng rng(5);
    for (int t = 0; t < 5; ++t) {
        auto zeta = random_point(rng, 2);
        auto z = random_point(rng, 2);
        std::vector<Rational> pz = sp.basis.eval_real(zeta);
        std::vector<Rational> pw = sp.basis.eval_real(z);
        Rational lhs = 0, rhs = 0;
        Mat az = sp.eval(z), azeta = sp.eval(zeta);
        for (int i = 0; i < sp.dim(); ++i)
            for (int j = 0; j < sp.dim(); ++j) {
                lhs += pz[i] * az(i, j) * pw[j];
                rhs += pw[i] * azeta(i, j) * pz[j];
            }
        CHECK(lhs == rhs);
    }

    // randomized bilinear identity
    int done = 0;
    while (done < 50) {
        int d = rng.int_in(1, 3);
        Poly q = random_poly(rng, d, 3, 4);
        if (q.is_zero()) continue;
        Poly p = random_poly(rng, d, 3, 4);
        MatrixPencil bp = product_pencil(q, p);
        CHECK(bp.symmetric());
        CHECK(verify_polarization(q, p, bp));
        if (done == 0) {
            MatrixPencil broken = bp;
            broken.coeffs[0](0, 0) += 1;
            CHECK(!verify_polarization(q, p, broken));
        }
        ++done;
    }
}

TEST_CASE("diagonal slices match derivative numerators") {
    Poly q = parse_poly_text("z1+z2");
    Poly p = parse_poly_text("z1*z2");
    MatrixPencil bp = product_pencil(q, p);
    CHECK(pencil_diagonal_form(bp, 1) == parse_poly_text("z2^2", 2));
    CHECK(pencil_diagonal_form(bp, 2) == parse_poly_text("z1^2", 2));
    CHECK(derivative_annihilation_holds(bp));

    MatrixPencil zb = product_pencil(parse_poly_text("z1"), Poly::constant(1, 1));
    CHECK(pencil_diagonal_form(zb, 1) == Poly::constant(1, -1));
    CHECK(derivative_annihilation_holds(zb));

    Rng rng(23);
    for (int t = 0; t < 20; ++t) {
        int d = rng.int_in(1, 2);
        Poly qq = random_poly(rng, d, 3, 3);
        if (qq.is_zero()) continue;
        Poly pp = random_poly(rng, d, 3, 3);
        MatrixPencil b = product_pencil(qq, pp);
        for (int k = 1; k <= d; ++k)
            CHECK(pencil_diagonal_form(b, k) == wronskian(qq, pp, k));
        CHECK(derivative_annihilation_holds(b));
    }
}

TEST_CASE("congruence transforms and principal minors") {
    MatrixPencil zb = product_pencil(parse_poly_text("z1"), Poly::constant(1, 1));
    CHECK(principal_minor_poly(zb, {}) == Poly::constant(1, 1));
    CHECK(principal_minor_poly(zb, {0}) == parse_poly_text("-z1"));
    CHECK(principal_minor_poly(zb, {0, 1}) == Poly::constant(1, -1));
    CHECK(principal_minor_poly(zb, {1}).is_zero());

    Rng rng(31);
    Mat t(2, 2);
    do {
        for (int i = 0; i < 2; ++i)
            for (int j = 0; j < 2; ++j) t(i, j) = rng.rational_in(-3, 3, 2);
    } while (det(t) == 0);
    MatrixPencil ct = congruence(zb, t);
    CHECK(ct.symmetric());
    for (int trial = 0; trial < 5; ++trial) {
        auto z = random_point(rng, 1);
        CHECK(ct.eval(z) == t.transpose() * zb.eval(z) * t);
    }

    // a 3x3 pencil exercises the fraction-free elimination with actual division
    Poly q3 = parse_poly_text("1+z1+z1^2");
    MatrixPencil b3 = product_pencil(q3, Poly::constant(1, 1));
    std::vector<int> all(b3.dim());
    for (int i = 0; i < b3.dim(); ++i) all[i] = i;
    Poly dsym = principal_minor_poly(b3, all);
    for (int trial = 0; trial < 6; ++trial) {
        auto z = random_point(rng, 1);
        CHECK(dsym.eval_real(z) == det(b3.eval(z)));
    }
}
