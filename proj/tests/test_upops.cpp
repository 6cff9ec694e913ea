#include <doctest.h>

#include <random>
#include <vector>

#include <pseries/parser.hpp>
#include <pseries/upops.hpp>

#include "support/random_poly.hpp"

using namespace pseries;
using testsupport::random_poly;

namespace {

Upops U(const char* text, const std::vector<std::string>& all_vars, const std::string& main_var) {
    VarSet all(all_vars);
    return upops_from_polynomial(parse_poly(text, all), main_var);
}

// The Hensel benchmark family: prod_{i=1..k} (mv - i) + t*(mv^(k-1) + mv).
Upops hensel_family(unsigned k, const std::string& tvar = "X1", const std::string& mv = "X2") {
    VarSet all({tvar, mv});
    MultiPoly p = MultiPoly::one(all);
    for (unsigned i = 1; i <= k; ++i)
        p = p * (MultiPoly::variable(all, mv) - MultiPoly::constant(all, Rational(static_cast<long>(i))));
    MultiPoly mvp = MultiPoly::variable(all, mv);
    p = p + MultiPoly::variable(all, tvar) * (mvp.pow(k - 1) + mvp);
    return upops_from_polynomial(p, mv);
}

bool equal_mod(const Upops& f, const Upops& g, unsigned r) {
    return upops_truncate(f, r) == upops_truncate(g, r);
}

}  // namespace

TEST_CASE("upops_from_polynomial") {
    Upops f = U("X2^2 + X1", {"X1", "X2"}, "X2");
    REQUIRE(f.degree() == 2);
    VarSet v = f.coeff_vars();
    CHECK(truncate(f.coefficient(0), 3) == parse_poly("X1", v));
    CHECK(truncate(f.coefficient(1), 3).is_zero());
    CHECK(truncate(f.coefficient(2), 3) == MultiPoly::one(v));

    Upops z = upops_from_coefficients("X2", VarSet({"X1"}), {});
    CHECK(!z.degree().has_value());

    Upops h = hensel_family(3);
    REQUIRE(h.degree() == 3);
    VarSet hv = h.coeff_vars();
    CHECK(truncate(h.coefficient(0), 4) == parse_poly("-6", hv));
    CHECK(truncate(h.coefficient(1), 4) == parse_poly("11 + X1", hv));
    CHECK(truncate(h.coefficient(2), 4) == parse_poly("-6 + X1", hv));
    CHECK(truncate(h.coefficient(3), 4) == MultiPoly::one(hv));

    CHECK_THROWS_AS(Upops("x", VarSet({"x", "y"}), {}), VariableClash);
}

TEST_CASE("trailing zero polynomial coefficients are trimmed") {
    VarSet v({"X1"});
    Upops f = upops_from_coefficients(
        "X2", v, {MultiPoly::one(v), MultiPoly::zero(v), MultiPoly::zero(v)});
    CHECK(f.degree() == 0);
}

TEST_CASE("upops arithmetic") {
    Upops f = U("X2^3 + X1*X2 + 2", {"X1", "X2"}, "X2");
    VarSet v = f.coeff_vars();

    Upops z = upops_add(f, upops_negate(f));
    CHECK(upops_truncate(z, 8).is_zero());

    Upops a = U("X2 + X1", {"X1", "X2"}, "X2");
    Upops b = U("X2 - X1", {"X1", "X2"}, "X2");
    Upops prod = upops_mul(a, b);
    CHECK(upops_truncate(prod, 6) ==
          parse_poly("X2^2 - X1^2", prod.combined_vars()));
    // coefficient of X2^1 in (X2+a)(X2+b) is a+b
    Upops sum_coeff = upops_mul(a, b);
    CHECK(truncate(sum_coeff.coefficient(1), 5).is_zero());  // X1 + (-X1)

    Upops sc = scale_by_series(a, from_polynomial(parse_poly("2", v)));
    CHECK(upops_truncate(sc, 4) == parse_poly("2*X2 + 2*X1", sc.combined_vars()));
}

TEST_CASE("accessors") {
    Upops f = U("X2^2 + X1", {"X1", "X2"}, "X2");
    CHECK(f.main_variable() == "X2");
    CHECK_THROWS_AS(f.coefficient(3), IndexOutOfRange);
    upops_update_precision(f, 7);
    for (const auto& c : f.coefficients()) CHECK(c->precision() >= 7);
    CHECK(upops_precision(f) >= 7);
}

TEST_CASE("evaluate_at_origin") {
    VarSet uv({"X2"});
    CHECK(evaluate_at_origin(U("X2^2 + X1", {"X1", "X2"}, "X2")) == parse_poly("X2^2", uv));
    CHECK(evaluate_at_origin(hensel_family(3)) == parse_poly("X2^3 - 6*X2^2 + 11*X2 - 6", uv));
    CHECK(evaluate_at_origin(upops_from_coefficients("X2", VarSet({"X1"}), {})).is_zero());
}

TEST_CASE("weierstrass: d = 0") {
    Upops f = U("X2^2 + 1 + X1", {"X1", "X2"}, "X2");
    auto [p, alpha] = weierstrass_preparation(f);
    CHECK(p.degree() == 0);
    CHECK(upops_truncate(p, 5) == MultiPoly::one(p.combined_vars()));
    CHECK(equal_mod(alpha, f, 8));
}

TEST_CASE("weierstrass: unit at top, m = 0") {
    Upops f = U("X3^2 + X1*X3 + X2", {"X1", "X2", "X3"}, "X3");
    auto [p, alpha] = weierstrass_preparation(f);
    REQUIRE(p.degree() == 2);
    REQUIRE(alpha.degree() == 0);
    // alpha = a_2 = 1
    CHECK(truncate(alpha.coefficient(0), 6) == MultiPoly::one(alpha.coeff_vars()));
    // b_i in M, p monic, and p*alpha = f mod M^10
    CHECK(homogeneous_part(p.coefficient(0), 0).is_zero());
    CHECK(homogeneous_part(p.coefficient(1), 0).is_zero());
    CHECK(equal_mod(upops_mul(p, alpha), f, 10));
}

TEST_CASE("weierstrass: Catalan numbers from X2^2 + X2 + X1") {
    Upops f = U("X2^2 + X2 + X1", {"X1", "X2"}, "X2");
    auto [p, alpha] = weierstrass_preparation(f);
    REQUIRE(p.degree() == 1);
    SeriesHandle b0 = p.coefficient(0);
    VarSet v = p.coeff_vars();
    // b0(1 - b0) = X1; coefficients are the Catalan numbers
    long catalan[] = {1, 1, 2, 5, 14};
    for (unsigned d = 1; d <= 5; ++d) {
        Monomial m{{d}};
        CHECK(get_coefficient(b0, m) == catalan[d - 1]);
    }
    // fixed-point identity mod M^8
    MultiPoly t = truncate(b0, 8);
    VarSet bv = t.vars();
    MultiPoly lhs = t * (MultiPoly::one(bv) - t);
    for (unsigned d = 0; d <= 8; ++d)
        CHECK(lhs.homogeneous_component(d) ==
              parse_poly("X1", bv).homogeneous_component(d));
    CHECK(equal_mod(upops_mul(p, alpha), f, 10));
}

TEST_CASE("weierstrass: simultaneity of the shared update") {
    Upops f = U("X2^2 + X2 + X1", {"X1", "X2"}, "X2");
    auto [p, alpha] = weierstrass_preparation(f);
    homogeneous_part(alpha.coefficient(0), 6);
    CHECK(p.coefficient(0)->precision() >= 6);
    CHECK(alpha.coefficient(0)->precision() >= 6);
}

TEST_CASE("weierstrass: NotPrepared") {
    Upops f = U("X1*X2 + X1", {"X1", "X2"}, "X2");
    CHECK_THROWS_AS(weierstrass_preparation(f), NotPrepared);
}

TEST_CASE("weierstrass: defining properties on a deeper family") {
    // f1 = (1/(1+X1+X2)) X3^k + X3^(k-1) + ... + X3^2 + X2 X3 + X1
    VarSet v({"X1", "X2"});
    for (unsigned k = 3; k <= 4; ++k) {
        std::vector<UpopsCoeff> coeffs;
        coeffs.emplace_back(parse_poly("X1", v));
        coeffs.emplace_back(parse_poly("X2", v));
        for (unsigned i = 2; i < k; ++i) coeffs.emplace_back(MultiPoly::one(v));
        coeffs.emplace_back(inverse(from_polynomial(parse_poly("1+X1+X2", v))));
        Upops f = upops_from_coefficients("X3", v, std::move(coeffs));
        auto [p, alpha] = weierstrass_preparation(f);
        REQUIRE(*p.degree() + *alpha.degree() == static_cast<int>(k));
        CHECK(p.degree() == 2);
        for (int i = 0; i < *p.degree(); ++i)
            CHECK(homogeneous_part(p.coefficient(static_cast<std::size_t>(i)), 0).is_zero());
        CHECK(!is_zero(homogeneous_part(alpha.coefficient(0), 0).constant_term()));
        CHECK(equal_mod(upops_mul(p, alpha), f, 8));
    }
}

TEST_CASE("taylor_shift") {
    Upops f = U("X2^2 + X1", {"X1", "X2"}, "X2");
    Upops s = taylor_shift(f, 1);
    CHECK(upops_truncate(s, 5) == parse_poly("X2^2 + 2*X2 + 1 + X1", s.combined_vars()));

    Upops id = taylor_shift(f, 0);
    for (unsigned d = 0; d <= 6; ++d)
        for (std::size_t i = 0; i < f.coefficients().size(); ++i)
            CHECK(homogeneous_part(id.coefficient(i), d) ==
                  homogeneous_part(f.coefficient(i), d));

    Upops back = taylor_shift(taylor_shift(f, rational(3, 2)), rational(-3, 2));
    for (unsigned d = 0; d <= 10; ++d)
        for (std::size_t i = 0; i < f.coefficients().size(); ++i)
            CHECK(homogeneous_part(back.coefficient(i), d) ==
                  homogeneous_part(f.coefficient(i), d));
}

TEST_CASE("taylor_shift group law and substitution oracle on random inputs") {
    std::mt19937 rng(515);
    VarSet all({"t", "y"});
    VarSet cv({"t"});
    for (int trial = 0; trial < 12; ++trial) {
        // random Upops with polynomial coefficients in t, degree <= 3 in y
        MultiPoly p(all);
        std::uniform_int_distribution<int> coef(-4, 4);
        std::uniform_int_distribution<unsigned> te(0, 2);
        for (unsigned e = 0; e <= 3; ++e) {
            Monomial m{{te(rng), e}};
            p.add_term(m, coef(rng));
        }
        if (p.is_zero()) continue;
        Upops f = upops_from_polynomial(p, "y");
        Rational a = rational(coef(rng), 2), b = rational(coef(rng), 3);

        Upops lhs = taylor_shift(taylor_shift(f, a), b);
        Upops rhs = taylor_shift(f, a + b);
        for (unsigned d = 0; d <= 10; ++d)
            for (std::size_t i = 0; i < f.coefficients().size(); ++i)
                CHECK(homogeneous_part(lhs.coefficient(i), d) ==
                      homogeneous_part(rhs.coefficient(i), d));

        // substitution oracle: shift then truncate == substitute y -> y + c
        Rational c = a;
        MultiPoly shifted = upops_truncate(taylor_shift(f, c), 10);
        VarSet sv = shifted.vars();
        MultiPoly ypc = MultiPoly::variable(sv, "y") + MultiPoly::constant(sv, c);
        MultiPoly subst(sv);
        MultiPoly whole = upops_truncate(f, 10);
        for (const auto& [m, cc] : whole.terms()) {
            MultiPoly term = MultiPoly::constant(sv, cc);
            Monomial tm = m;
            unsigned ye = tm.exps.back();
            tm.exps.back() = 0;
            term = term * [&] {
                MultiPoly mono(sv);
                mono.add_term(tm, 1);
                return mono;
            }();
            subst = subst + term * ypc.pow(ye);
        }
        CHECK(shifted == subst);
    }
}

TEST_CASE("rational_roots") {
    VarSet v({"X"});
    auto r1 = rational_roots(parse_poly("X^2 - 3*X + 2", v));
    REQUIRE(r1.roots.size() == 2);
    CHECK(r1.roots[0] == std::pair{Rational(1), 1u});
    CHECK(r1.roots[1] == std::pair{Rational(2), 1u});
    CHECK(r1.residual == MultiPoly::one(v));

    auto r2 = rational_roots(parse_poly("(X-2)^3", v));
    REQUIRE(r2.roots.size() == 1);
    CHECK(r2.roots[0] == std::pair{Rational(2), 3u});

    auto r3 = rational_roots(parse_poly("X^2 + 1", v));
    CHECK(r3.roots.empty());
    CHECK(r3.residual == parse_poly("X^2 + 1", v));

    // non-monic with rational roots and reconstruction
    auto r4 = rational_roots(parse_poly("6*X^3 - 5*X^2 - 2*X + 1", v));
    MultiPoly rebuilt = MultiPoly::constant(v, r4.leading) * r4.residual;
    for (const auto& [root, mult] : r4.roots)
        rebuilt = rebuilt * (MultiPoly::variable(v, "X") - MultiPoly::constant(v, root)).pow(mult);
    CHECK(rebuilt == parse_poly("6*X^3 - 5*X^2 - 2*X + 1", v));
}

TEST_CASE("hensel_factorize: k = 3 family") {
    Upops f = hensel_family(3);
    FactorizationResult res = hensel_factorize(f);
    REQUIRE(res.factors.size() == 3);
    unsigned total = 0;
    VarSet uv({"X2"});
    for (std::size_t i = 0; i < res.factors.size(); ++i) {
        const auto& fac = res.factors[i];
        CHECK(fac.root == Rational(static_cast<long>(i + 1)));
        CHECK(fac.multiplicity == 1);
        CHECK(fac.factor.degree() == 1);
        total += fac.multiplicity;
        MultiPoly ev = evaluate_at_origin(fac.factor);
        MultiPoly expect = MultiPoly::variable(uv, "X2") -
                           MultiPoly::constant(uv, Rational(static_cast<long>(i + 1)));
        CHECK(ev == expect);
        // factors come back at precision 0 and are resumable
        CHECK(upops_precision(fac.factor) == 0);
        upops_update_precision(fac.factor, 5);
        CHECK(upops_precision(fac.factor) >= 5);
    }
    CHECK(total == 3);
    // a_k * f1*f2*f3 = f mod M^12
    Upops prod = res.factors[0].factor;
    for (std::size_t i = 1; i < res.factors.size(); ++i)
        prod = upops_mul(prod, res.factors[i].factor);
    prod = scale_by_series(prod, res.leading_unit);
    CHECK(equal_mod(prod, f, 12));
}

TEST_CASE("hensel_factorize: repeated root splits as one factor") {
    Upops f = U("X2^2 - X1", {"X1", "X2"}, "X2");
    FactorizationResult res = hensel_factorize(f);
    REQUIRE(res.factors.size() == 1);
    CHECK(res.factors[0].root == 0);
    CHECK(res.factors[0].multiplicity == 2);
    CHECK(equal_mod(res.factors[0].factor, f, 10));
}

TEST_CASE("hensel_factorize: error paths") {
    // leading coefficient X1 is not a unit
    Upops f = U("X1*X2^2 + X2 + 1", {"X1", "X2"}, "X2");
    CHECK_THROWS_AS(hensel_factorize(f), LeadingCoefficientNotUnit);

    Upops g = U("X2^2 + 1 + X1", {"X1", "X2"}, "X2");
    try {
        hensel_factorize(g);
        FAIL("expected RootsNotRational");
    } catch (const RootsNotRational& e) {
        CHECK(e.residual == "X2^2 + 1");
    }
}

TEST_CASE("divide_upops_by_unit_series") {
    VarSet v({"X1"});
    Upops f = U("X2^3 + X1*X2 + 1", {"X1", "X2"}, "X2");
    auto one = series_one(v);
    Upops same = divide_upops_by_unit_series(f, one);
    CHECK(equal_mod(same, f, 8));

    auto u = from_polynomial(parse_poly("1 + X1", v));
    Upops fu = scale_by_series(f, u);
    Upops back = divide_upops_by_unit_series(fu, u);
    CHECK(equal_mod(back, f, 15));

    auto nonunit = from_polynomial(parse_poly("X1", v));
    CHECK_THROWS_AS(divide_upops_by_unit_series(f, nonunit), NotInvertible);
}
