#include <doctest.h>

#include <set>

#include "affschur/errors.hpp"
#include "affschur/parabolic.hpp"

using namespace affschur;

namespace {

AffPerm s(int r, int i) { return AffPerm::generator(r, i); }
Composition C(std::vector<int> p) { return Composition(std::move(p)); }

// Independent reading of |R_k ∩ w R_l| straight from the definition, scanning
// a generous range of k and l.
long matrix_entry_by_definition(const CosetTriple& t, long k, long l) {
    auto [klo, khi] = t.lambda.block(k);
    auto [llo, lhi] = t.mu.block(l);
    long count = 0;
    for (long p = llo; p <= lhi; ++p) {
        long m = t.w.apply(p);
        if (m >= klo && m <= khi) ++count;
    }
    return count;
}

}  // namespace

TEST_CASE("compositions") {
    Composition l = C({2, 0, 1});
    CHECK(l.n() == 3);
    CHECK(l.r() == 3);
    CHECK(l.generators() == std::vector<int>{1});
    CHECK(l.block(1) == std::pair<long, long>{1, 2});
    CHECK(l.block(2).first > l.block(2).second);
    CHECK(l.block(3) == std::pair<long, long>{3, 3});
    CHECK(l.block(4) == std::pair<long, long>{4, 5});
    CHECK(l.block(0) == std::pair<long, long>{0, 0});
    CHECK(Composition::all(2, 2).size() == 3);
    CHECK(Composition::all(3, 3).size() == 10);
    CHECK(Composition::omega(3, 2).parts() == std::vector<int>{1, 1, 0});
    CHECK_THROWS_AS(C({}), DomainError);
    CHECK_THROWS_AS(C({0, 0}), DomainError);
    CHECK_THROWS_AS(C({-1, 2}), DomainError);
}

TEST_CASE("young subgroups and longest elements") {
    CHECK(young_elements(C({1, 1})) == std::vector<AffPerm>{AffPerm::identity(2)});
    CHECK(young_elements(C({2, 0})) == std::vector<AffPerm>{AffPerm::identity(2), s(2, 1)});
    CHECK(young_elements(C({0, 2})) == std::vector<AffPerm>{AffPerm::identity(2), s(2, 1)});
    CHECK(C({2, 0}) != C({0, 2}));
    CHECK(young_elements(C({3})).size() == 6);
    CHECK(young_elements(C({2, 2})).size() == 4);
    CHECK(longest_in_parabolic(C({1, 1})).is_identity());
    CHECK(longest_in_parabolic(C({2, 0})) == s(2, 1));
    AffPerm w0 = longest_in_parabolic(C({3}));
    CHECK(w0 == s(3, 1) * s(3, 2) * s(3, 1));
    CHECK(w0.length() == 3);
    CHECK((w0 * w0).is_identity());
    for (const auto& l : Composition::all(3, 4)) CHECK(longest_in_parabolic(l).length() == longest_length(l));
}

TEST_CASE("double coset representatives") {
    Composition l20 = C({2, 0}), w11 = C({1, 1});
    CHECK(min_double_rep(s(2, 1), l20, l20).is_identity());
    CHECK(min_double_rep(s(2, 0), w11, w11) == s(2, 0));
    CHECK(min_double_rep(s(2, 0) * s(2, 1), l20, l20) == s(2, 0));
    CHECK(is_min_double_rep(s(2, 0), l20, l20));
    CHECK_FALSE(is_min_double_rep(s(2, 1) * s(2, 0), l20, l20));

    CosetTriple t(l20, s(2, 0), l20);
    auto coset = double_coset(t);
    std::set<AffPerm> expect{s(2, 0), s(2, 1) * s(2, 0), s(2, 0) * s(2, 1), s(2, 1) * s(2, 0) * s(2, 1)};
    CHECK(std::set<AffPerm>(coset.begin(), coset.end()) == expect);
    CHECK(plus_rep(t) == s(2, 1) * s(2, 0) * s(2, 1));
    CHECK(plus_rep(t).length() == 3);
    CHECK(plus_rep(CosetTriple(l20, AffPerm::identity(2), l20)) == s(2, 1));
    CHECK(double_coset(CosetTriple(l20, AffPerm::identity(2), l20)).size() == 2);
    AffPerm w = AffPerm::from_window(2, {5, -2});
    CHECK(plus_rep(CosetTriple(w11, w, w11)) == w);
    CHECK(double_coset(CosetTriple(w11, w, w11)) == std::vector<AffPerm>{w});
    CHECK_THROWS_AS(CosetTriple(l20, s(2, 1), l20), DomainError);
}

TEST_CASE("enumerated cosets agree with the descent-walk representatives") {
    for (int r : {2, 3}) {
        auto comps = Composition::all(r == 2 ? 2 : 3, r);
        for (const auto& lambda : comps)
            for (const auto& mu : comps)
                for (const auto& u : ball(r, 3)) {
                    AffPerm x = u.rho_shifted(1);
                    AffPerm mn = min_double_rep(x, lambda, mu);
                    CosetTriple t(lambda, mn, mu);
                    auto coset = double_coset(t);
                    CHECK(coset.front() == mn);
                    CHECK(coset.back() == plus_rep(t));
                    CHECK(std::find(coset.begin(), coset.end(), x) != coset.end());
                    if (coset.size() > 1) CHECK(coset[1].length() > mn.length());
                    CHECK(coset.size() <= young_elements(lambda).size() * young_elements(mu).size());
                    AffPerm mx = plus_rep(t);
                    for (int i : lambda.generators()) CHECK(mx.has_left_descent(i));
                    for (int i : mu.generators()) CHECK(mx.has_right_descent(i));
                    CHECK(is_max_double_rep(mx, lambda, mu));
                }
    }
}

TEST_CASE("matrix of a triple") {
    Composition w11 = C({1, 1});
    for (const auto& l : Composition::all(3, 3))
        CHECK(matrix_of_triple(CosetTriple(l, AffPerm::identity(3), l)) == diagonal_matrix(l));

    PeriodicMatrix a = matrix_of_triple(CosetTriple(w11, s(2, 0), w11));
    CHECK(a == PeriodicMatrix(2, {{1, 0, 1}, {2, 3, 1}}));
    PeriodicMatrix b = matrix_of_triple(CosetTriple(w11, s(2, 1), w11));
    CHECK(b == PeriodicMatrix(2, {{1, 2, 1}, {2, 1, 1}}));

    CHECK(triple_of_matrix(a) == CosetTriple(w11, s(2, 0), w11));
    CHECK(triple_of_matrix(b) == CosetTriple(w11, s(2, 1), w11));
    CHECK(triple_of_matrix(diagonal_matrix(C({2, 0}))).w.is_identity());

    CHECK(a.ro() == w11);
    CHECK(a.co() == w11);
    CHECK(a.r() == 2);
    CHECK(a.at(3, 2) == 1);
    CHECK(a.at(4, 5) == 1);
    CHECK(a.at(1, 1) == 0);
}

TEST_CASE("matrix validation") {
    CHECK_THROWS_AS(PeriodicMatrix(2, {{3, 0, 1}}), InvalidMatrix);
    CHECK_THROWS_AS(PeriodicMatrix(2, {{1, 0, -1}}), InvalidMatrix);
    CHECK_THROWS_AS(PeriodicMatrix(2, {{1, 0, 1}, {1, 0, 2}}), InvalidMatrix);
    CHECK_THROWS_AS(PeriodicMatrix(2, {}), InvalidMatrix);
    CHECK(PeriodicMatrix(2, {{1, 0, 0}, {2, 2, 1}}).entries().size() == 1);
}

TEST_CASE("matrix entries agree with the block-intersection definition") {
    for (auto [n, r] : {std::pair{2, 2}, std::pair{2, 3}, std::pair{3, 3}, std::pair{3, 2}}) {
        for (const auto& a : enumerate_theta(n, r, 3, OmegaWindow{-2, 2})) {
            CosetTriple t = triple_of_matrix(a);
            for (long k = 1; k <= n; ++k)
                for (long l = -4 * n; l <= 5 * n; ++l) CHECK(a.at(k, l) == matrix_entry_by_definition(t, k, l));
        }
    }
}

TEST_CASE("round trips and transpose") {
    for (auto [n, r] : {std::pair{1, 2}, std::pair{2, 2}, std::pair{2, 3}, std::pair{3, 3}, std::pair{3, 2},
                        std::pair{1, 3}}) {
        for (const auto& a : enumerate_theta(n, r, 4, OmegaWindow{-2, 2})) {
            CosetTriple t = triple_of_matrix(a);
            CHECK(matrix_of_triple(t) == a);
            CHECK(triple_of_matrix(matrix_of_triple(t)) == t);
            CHECK(a.r() == r);
            CHECK(a.ro() == t.lambda);
            CHECK(a.co() == t.mu);
            PeriodicMatrix at = a.transpose();
            CHECK(at.transpose() == a);
            CosetTriple tt = triple_of_matrix(at);
            CHECK(tt.lambda == t.mu);
            CHECK(tt.mu == t.lambda);
            CHECK(tt.w == t.w.inverse());
            CHECK(sigma_plus(at) == sigma_plus(a).inverse());
        }
    }
}

TEST_CASE("dimension statistic") {
    Composition w11 = C({1, 1});
    for (const auto& l : Composition::all(2, 2)) {
        CHECK(d_A_combinatorial(diagonal_matrix(l)) == 0);
        CHECK(d_A_coxeter(diagonal_matrix(l)) == 0);
    }
    PeriodicMatrix a = matrix_of_triple(CosetTriple(w11, s(2, 0), w11));
    CHECK(d_A_combinatorial(a) == 1);
    CHECK(d_A_coxeter(a) == 1);
    PeriodicMatrix b = matrix_of_triple(CosetTriple(w11, s(2, 1), w11));
    CHECK(d_A_combinatorial(b) == 1);
    CHECK(d_A_coxeter(b) == 1);
    for (auto [n, r] : {std::pair{1, 2}, std::pair{2, 2}, std::pair{2, 3}, std::pair{3, 3}})
        for (const auto& m : enumerate_theta(n, r, 5)) CHECK(d_A_combinatorial(m) == d_A_coxeter(m));
}

TEST_CASE("enumeration of theta windows") {
    auto zero = enumerate_theta(2, 2, 0, OmegaWindow{0, 0});
    CHECK(zero == std::vector<PeriodicMatrix>{diagonal_matrix(C({1, 1}))});

    auto one = enumerate_theta(1, 1, 0, OmegaWindow{-1, 1});
    std::set<PeriodicMatrix> got(one.begin(), one.end());
    std::set<PeriodicMatrix> expect{PeriodicMatrix(1, {{1, 0, 1}}), PeriodicMatrix(1, {{1, 1, 1}}),
                                    PeriodicMatrix(1, {{1, 2, 1}})};
    CHECK(got == expect);

    auto w1 = enumerate_theta(2, 2, 1, OmegaWindow{-1, 1});
    std::set<PeriodicMatrix> s1(w1.begin(), w1.end());
    Composition w11 = C({1, 1});
    for (const auto& l : Composition::all(2, 2)) CHECK(s1.count(diagonal_matrix(l)) == 1);
    CHECK(s1.count(matrix_of_triple(CosetTriple(w11, s(2, 0), w11))) == 1);
    CHECK(s1.count(matrix_of_triple(CosetTriple(w11, AffPerm::rho(2), w11))) == 1);
    CHECK(s1.count(matrix_of_triple(CosetTriple(w11, AffPerm::rho_pow(2, -1), w11))) == 1);
    for (std::size_t i = 1; i < w1.size(); ++i) CHECK(theta_less(w1[i - 1], w1[i]));
    for (const auto& a : w1) CHECK(sigma_plus(a).length() <= 1);
}
