#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <vector>

#include "sospencil/artin.hpp"

using namespace sospencil;

namespace {

Poly motzkin() { return parse_poly_text("z1^4*z2^2+z1^2*z2^4-3*z1^2*z2^2+1"); }

Poly circle() { return parse_poly_text("z1^2+z2^2"); }

bool same_report(const SignClassification& a, const SignClassification& b) {
    return a.indefinite == b.indefinite && a.positive_point == b.positive_point &&
           a.negative_point == b.negative_point && a.samples_checked == b.samples_checked;
}

}  // namespace

TEST_CASE("factored polynomial expansion") {
    FactoredPoly s{{{parse_poly_text("z1"), 1}, {circle(), 2}}};
    CHECK(s.nvars() == 2);
    CHECK(s.expand() == parse_poly_text("z1", 2) * circle() * circle());

    FactoredPoly empty;
    CHECK(empty.nvars() == 0);
    Poly one = empty.expand(2);
    CHECK(one.nvars() == 2);
    CHECK(one == Poly::constant(2, 1));
}

TEST_CASE("sign classification by sampling") {
    SignClassification lin = sign_classification_sample(parse_poly_text("z1"), 400, 2);
    CHECK(lin.indefinite);
    REQUIRE(lin.positive_point.size() == 1);
    REQUIRE(lin.negative_point.size() == 1);
    Poly z1 = parse_poly_text("z1");
    CHECK(sign_of(z1.eval_real(lin.positive_point)) > 0);
    CHECK(sign_of(z1.eval_real(lin.negative_point)) < 0);
    CHECK(lin.samples_checked >= 2);
    CHECK(lin.samples_checked <= 400);
    CHECK(same_report(lin, sign_classification_sample(parse_poly_text("z1"), 400, 2)));

    SignClassification saddle = sign_classification_sample(parse_poly_text("z1^2-z2^2"), 400, 5);
    CHECK(saddle.indefinite);

    SignClassification psd = sign_classification_sample(circle(), 400, 3);
    CHECK_FALSE(psd.indefinite);
    CHECK(psd.samples_checked == 400);
    CHECK(psd.positive_point.empty());
    CHECK(psd.negative_point.empty());

    SignClassification nsd = sign_classification_sample(-circle(), 400, 3);
    CHECK_FALSE(nsd.indefinite);

    CHECK_THROWS_AS(sign_classification_sample(Poly(2), 10, 1), PreconditionError);
}

TEST_CASE("half degree oracle bounds") {
    // the oracle must reproduce the direct run over the half-degree basis
    Poly m = motzkin();
    SosResult via_oracle = half_degree_oracle()(m);
    SosResult direct = sos_feasibility(m, MonomialBasis::build(DegreeBounds{3, {2, 2}}));
    CHECK(via_oracle.status == SosStatus::infeasible_evidence);
    CHECK(via_oracle.reason == direct.reason);

    SosResult sq = half_degree_oracle()(parse_poly_text("z2^2"));
    REQUIRE(sq.status == SosStatus::certified);
    CHECK(sq.cert->basis == MonomialBasis::build(DegreeBounds{1, {0, 1}}));
}

TEST_CASE("minimal denominator strip keeps the semidefinite factor") {
    Poly f = motzkin();
    FactoredPoly s{{{parse_poly_text("z1"), 1}, {circle(), 1}}};
    StripReport rep = minimal_denominator_strip(f, s, half_degree_oracle(), 400, 7);

    REQUIRE(rep.removed_indefinite.size() == 1);
    CHECK(rep.removed_indefinite[0] == parse_poly_text("z1").extended(2));
    CHECK(rep.removed_redundant.empty());
    REQUIRE(rep.minimal.factors.size() == 1);
    CHECK(rep.minimal.factors[0].first == circle());
    CHECK(rep.minimal.factors[0].second == 1);
    CHECK_FALSE(rep.oracle_inconclusive);

    REQUIRE(rep.final_check.status == SosStatus::certified);
    CHECK(rep.final_check.cert->target == circle() * circle() * f);
    CHECK(gram_certificate_valid(*rep.final_check.cert));

    // minimality: dropping the surviving factor loses certification
    SosResult bare = half_degree_oracle()(f);
    CHECK(bare.status != SosStatus::certified);
}

TEST_CASE("minimal denominator strip can empty the denominator") {
    Poly f = parse_poly_text("z2^2");
    FactoredPoly s{{{parse_poly_text("z1"), 1}, {circle(), 1}}};
    StripReport rep = minimal_denominator_strip(f, s, half_degree_oracle(), 400, 7);

    REQUIRE(rep.removed_indefinite.size() == 1);
    CHECK(rep.removed_indefinite[0] == parse_poly_text("z1").extended(2));
    REQUIRE(rep.removed_redundant.size() == 1);
    CHECK(rep.removed_redundant[0] == circle());
    CHECK(rep.minimal.factors.empty());
    CHECK(rep.minimal.expand(2) == Poly::constant(2, 1));
    REQUIRE(rep.final_check.status == SosStatus::certified);
    CHECK(rep.final_check.cert->target == f);
}

TEST_CASE("minimal denominator strip drops copies one at a time") {
    Poly f = parse_poly_text("z2^2");
    FactoredPoly s{{{circle(), 2}}};
    StripReport rep = minimal_denominator_strip(f, s, half_degree_oracle(), 400, 7);

    CHECK(rep.removed_indefinite.empty());
    REQUIRE(rep.removed_redundant.size() == 2);
    CHECK(rep.removed_redundant[0] == circle());
    CHECK(rep.removed_redundant[1] == circle());
    CHECK(rep.minimal.factors.empty());
    CHECK(rep.final_check.status == SosStatus::certified);
}

TEST_CASE("minimal denominator strip rejects bad inputs") {
    // an indefinite-only denominator cannot certify a non-SOS numerator
    CHECK_THROWS_AS(minimal_denominator_strip(motzkin(),
                                              FactoredPoly{{{parse_poly_text("z1"), 1}}},
                                              half_degree_oracle()),
                    PreconditionError);
    CHECK_THROWS_AS(minimal_denominator_strip(parse_poly_text("z2^2"),
                                              FactoredPoly{{{circle(), 0}}},
                                              half_degree_oracle()),
                    PreconditionError);
    CHECK_THROWS_AS(minimal_denominator_strip(parse_poly_text("z2^2"),
                                              FactoredPoly{{{Poly(2), 1}}},
                                              half_degree_oracle()),
                    PreconditionError);
}

TEST_CASE("upper half-plane zero of a univariate polynomial") {
    UhpZeroReport rep = upper_halfplane_zero(parse_poly_text("z1^2+1"), 1);
    REQUIRE(rep.found);
    CHECK(rep.attempts == 1);
    REQUIRE(rep.point.size() == 1);
    CHECK(rep.point[0] == GaussianRational(Rational(0), Rational(1)));
    CHECK(rep.residual_norm2 == 0);
}

TEST_CASE("upper half-plane zero of the circle polynomial") {
    Poly s = circle();
    UhpZeroReport rep = upper_halfplane_zero(s, 4);
    REQUIRE(rep.found);
    REQUIRE(rep.point.size() == 2);
    for (const GaussianRational& c : rep.point) CHECK(sign_of(c.im) > 0);
    CHECK(rep.residual_norm2 == s.eval(rep.point).norm2());
    // coefficient scale is 1, so the residual gate is (1e-8)^2
    mpz_class q;
    mpz_ui_pow_ui(q.get_mpz_t(), 10, 16);
    CHECK(rep.residual_norm2 < Rational(mpz_class(1), q));

    UhpZeroReport again = upper_halfplane_zero(s, 4);
    CHECK(again.found);
    CHECK(again.point == rep.point);
    CHECK(again.attempts == rep.attempts);
}

TEST_CASE("upper half-plane zero search reports failure honestly") {
    UhpZeroReport lin = upper_halfplane_zero(parse_poly_text("z1"), 2);
    CHECK_FALSE(lin.found);
    CHECK(lin.attempts == 1);
    CHECK(lin.point.empty());

    UhpZeroReport saddle = upper_halfplane_zero(parse_poly_text("z1^2-z2^2"), 2);
    CHECK_FALSE(saddle.found);
    CHECK(saddle.attempts == 40);

    CHECK_THROWS_AS(upper_halfplane_zero(parse_poly_text("5"), 1), PreconditionError);
    CHECK_THROWS_AS(upper_halfplane_zero(Poly(1), 1), PreconditionError);
}