#include <doctest.h>

#include <random>

#include "affschur/laurent.hpp"

using namespace affschur;

namespace {

LaurentPoly P(std::initializer_list<std::pair<const int, long>> init) {
    LaurentPoly p;
    for (const auto& [e, c] : init) p.add_term(e, mpz_class(c));
    return p;
}

LaurentPoly random_poly(std::mt19937& rng) {
    std::uniform_int_distribution<int> nterms(0, 4), exp(-5, 5), coeff(-6, 6);
    LaurentPoly p;
    for (int i = nterms(rng); i > 0; --i) p.add_term(exp(rng), mpz_class(coeff(rng)));
    return p;
}

}  // namespace

TEST_CASE("addition") {
    CHECK((P({{1, 1}}) + P({{1, -1}})).is_zero());
    CHECK(P({{1, 1}, {0, 1}}) + P({{-1, 1}}) == P({{1, 1}, {0, 1}, {-1, 1}}));
    LaurentPoly p = P({{3, 2}, {-2, 5}});
    CHECK(LaurentPoly() + p == p);
}

TEST_CASE("multiplication") {
    CHECK(P({{0, 1}, {1, 1}}) * P({{0, 1}, {1, -1}}) == P({{0, 1}, {2, -1}}));
    LaurentPoly s = t_plus_t_inv();
    CHECK(s * s == P({{2, 1}, {0, 2}, {-2, 1}}));
    CHECK((s * LaurentPoly()).is_zero());
}

TEST_CASE("bar, degree, coefficients") {
    CHECK(P({{2, 1}, {0, 3}}).bar() == P({{-2, 1}, {0, 3}}));
    CHECK(t_plus_t_inv().bar() == t_plus_t_inv());
    CHECK(t_plus_t_inv().deg() == 1);
    CHECK(LaurentPoly(7).deg() == 0);
    CHECK(LaurentPoly().deg() == kNegInfDegree);
    CHECK(t_plus_t_inv().coeff(1) == 1);
    CHECK(t_plus_t_inv().coeff(0) == 0);
    CHECK(P({{2, 3}}).coeff(2) == 3);
}

TEST_CASE("exact division") {
    CHECK(exact_div(P({{2, 1}, {0, 2}, {-2, 1}}), t_plus_t_inv()) == t_plus_t_inv());
    LaurentPoly p = P({{4, -3}, {-1, 2}});
    CHECK(exact_div(p, LaurentPoly(1)) == p);
    CHECK_THROWS_AS(exact_div(P({{1, 1}, {0, 1}}), P({{1, 1}, {0, -1}})), InexactDivision);
    CHECK_THROWS_AS(exact_div(p, LaurentPoly()), DivisionByZero);
    CHECK(exact_div(LaurentPoly(), p).is_zero());
    CHECK_THROWS_AS(exact_div(LaurentPoly(3), LaurentPoly(2)), InexactDivision);
}

TEST_CASE("evaluation") {
    CHECK(evaluate(t_plus_t_inv(), mpq_class(2)) == mpq_class(5, 2));
    LaurentPoly p = P({{3, 2}, {-2, -7}, {0, 4}});
    CHECK(evaluate(p, mpq_class(1)) == mpq_class(-1));
    CHECK(evaluate(LaurentPoly(), mpq_class(9)) == 0);
    CHECK_THROWS_AS(evaluate(p, mpq_class(0)), ZeroBase);
}

TEST_CASE("formatting") {
    CHECK(LaurentPoly().to_string() == "0");
    CHECK(t_plus_t_inv().to_string() == "t^-1 + t");
    CHECK(P({{0, -1}, {2, 3}}).to_string() == "-1 + 3*t^2");
}

TEST_CASE("randomized ring laws") {
    std::mt19937 rng(20240611);
    for (int iter = 0; iter < 300; ++iter) {
        LaurentPoly a = random_poly(rng), b = random_poly(rng), c = random_poly(rng);
        CHECK((a * b) * c == a * (b * c));
        CHECK(a * (b + c) == a * b + a * c);
        CHECK(a * b == b * a);
        CHECK((a * b).bar() == a.bar() * b.bar());
        CHECK(a.bar().bar() == a);
        if (!b.is_zero()) CHECK(exact_div(a * b, b) == a);
        LaurentPoly ea, eb;
        for (const auto& [e, x] : a.terms()) ea.add_term(2 * e, x);
        for (const auto& [e, x] : b.terms()) eb.add_term(2 * e, x);
        CHECK((ea * eb).lies_in_q());
        CHECK(evaluate(a * b, mpq_class(3, 2)) == evaluate(a, mpq_class(3, 2)) * evaluate(b, mpq_class(3, 2)));
    }
}
