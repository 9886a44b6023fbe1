#include "affschur/acceptance.hpp"

#include <algorithm>
#include <chrono>
#include <set>
#include <sstream>

#include "affschur/asympt.hpp"
#include "affschur/hecke.hpp"
#include "affschur/reference.hpp"
#include "affschur/schur.hpp"

namespace affschur {

namespace {

// The (2, 2) window shared by most criteria.
constexpr int kWindowL = 4;
const OmegaWindow kWindowOmega{-2, 2};

const std::vector<PeriodicMatrix>& window22() {
    static const std::vector<PeriodicMatrix> w = enumerate_theta(2, 2, kWindowL, kWindowOmega);
    return w;
}

struct Outcome {
    bool passed = true;
    std::string detail;
};

Outcome fail(const std::string& why) { return {false, why}; }

SchurElt theta(const PeriodicMatrix& a) { return SchurElt::basis_elt(a, SBasis::Theta); }

template <class F>
void for_composable(const std::vector<PeriodicMatrix>& w, F&& f) {
    for (const auto& a : w)
        for (const auto& b : w)
            if (a.co() == b.ro()) f(a, b);
}

Outcome kl_bar_oracle() {
    long elems = 0, pairs = 0;
    for (auto [r, L] : {std::pair{2, 8}, std::pair{3, 5}})
        for (const auto& w : ball(r, L)) {
            ++elems;
            const HeckeElt c = c_elt(w);
            if (h_bar(c) != c) return fail("C_w is not bar-invariant for w = " + w.to_string());
            for (const auto& y : bruhat_lower(w)) {
                if (y == w) continue;
                ++pairs;
                if (kl_poly(y, w).deg() > w.length() - y.length() - 1)
                    return fail("degree bound fails for y = " + y.to_string() + ", w = " + w.to_string());
            }
        }
    return {true, std::to_string(elems) + " elements, " + std::to_string(pairs) + " Bruhat pairs"};
}

Outcome h_positivity() {
    long count = 0;
    for (auto [r, L] : {std::pair{2, 5}, std::pair{3, 3}}) {
        auto b = ball(r, L);
        const HeckeAlgebra& H = HeckeAlgebra::shared(r);
        for (const auto& x : b)
            for (const auto& y : b)
                for (const auto& [z, h] : H.c_product(x, y).terms()) {
                    ++count;
                    if (!h.all_nonnegative() || h.bar() != h)
                        return fail("h_{x,y,z} = " + h.to_string() + " for x = " + x.to_string() + ", y = " +
                                    y.to_string());
                }
    }
    return {true, std::to_string(count) + " nonzero h_{x,y,z}"};
}

Outcome division_exact() {
    long count = 0;
    Outcome out;
    for_composable(window22(), [&](const PeriodicMatrix& a, const PeriodicMatrix& b) {
        if (!out.passed) return;
        const LaurentPoly hmu = poincare_h(a.co());
        for (const auto& [z, h] : HeckeAlgebra::shared(2).c_product(sigma_plus(a), sigma_plus(b)).terms()) {
            ++count;
            try {
                LaurentPoly g = exact_div(h, hmu);
                if (!g.all_nonnegative()) out = fail("negative g for A = " + a.to_string() + ", B = " + b.to_string());
            } catch (const InexactDivision&) {
                out = fail("h_mu does not divide h for A = " + a.to_string() + ", B = " + b.to_string());
            }
        }
    });
    if (out.passed) out.detail = std::to_string(count) + " structure constants over " +
                                 std::to_string(window22().size()) + " matrices";
    return out;
}

bool routes_agree(const PeriodicMatrix& a, const PeriodicMatrix& b) {
    SchurElt via_g = theta_mul(theta(a), theta(b));
    SchurElt via_phi = phi_mul(basis_convert(theta(a), SBasis::Phi), basis_convert(theta(b), SBasis::Phi));
    return via_g == basis_convert(via_phi, SBasis::Theta);
}

Outcome two_routes() {
    long n22 = 0, n33 = 0;
    Outcome out;
    for_composable(window22(), [&](const PeriodicMatrix& a, const PeriodicMatrix& b) {
        if (!out.passed) return;
        ++n22;
        if (!routes_agree(a, b)) out = fail("A = " + a.to_string() + ", B = " + b.to_string());
    });
    if (!out.passed) return out;
    auto w33 = enumerate_theta(3, 3, 3, OmegaWindow{-1, 1});
    for_composable(w33, [&](const PeriodicMatrix& a, const PeriodicMatrix& b) {
        if (!out.passed) return;
        ++n33;
        if (!routes_agree(a, b)) out = fail("(3,3): A = " + a.to_string() + ", B = " + b.to_string());
    });
    if (!out.passed) return out;
    return {true, std::to_string(n22) + " pairs at (2,2), " + std::to_string(n33) + " pairs at (3,3)"};
}

Outcome d_a_agreement() {
    long count = 0;
    for (auto [n, r] : {std::pair{1, 2}, std::pair{2, 2}, std::pair{2, 3}, std::pair{3, 3}})
        for (const auto& a : enumerate_theta(n, r, 5)) {
            ++count;
            if (d_A_combinatorial(a) != d_A_coxeter(a)) return fail("A = " + a.to_string());
        }
    return {true, std::to_string(count) + " matrices"};
}

Outcome theta_on_w0() {
    for (const auto& b : window22()) {
        const Composition mu = b.co();
        if (schur_apply(theta(b), mu, c_elt(longest_in_parabolic(mu))) != c_elt(sigma_plus(b)))
            return fail("B = " + b.to_string());
    }
    return {true, std::to_string(window22().size()) + " matrices"};
}

Outcome bar_fixes_theta() {
    for (const auto& b : window22())
        if (schur_bar(theta(b)) != theta(b)) return fail("B = " + b.to_string());
    return {true, std::to_string(window22().size()) + " matrices"};
}

Outcome idempotent_and_shortcuts() {
    const PeriodicMatrix d = diagonal_matrix(Composition({2, 0}));
    if (theta_mul(theta(d), theta(d)) != theta(d)) return fail("theta_D^2 != theta_D");
    long hits = 0;
    Outcome out;
    for_composable(window22(), [&](const PeriodicMatrix& a, const PeriodicMatrix& b) {
        if (!out.passed) return;
        if (auto c = theta_product_shortcut(a, b)) {
            ++hits;
            if (theta_product(a, b) != theta(*c)) out = fail("shortcut disagrees at A = " + a.to_string());
        }
    });
    if (out.passed) out.detail = "theta_D^2 = theta_D; " + std::to_string(hits) + " shortcut products agree";
    return out;
}

Outcome distinguished() {
    const int L = kWindowL;
    std::vector<AffPerm> expect{AffPerm::identity(2), AffPerm::generator(2, 0), AffPerm::generator(2, 1)};
    canonical_sort(expect);
    auto got = distinguished_involutions(2, L);
    if (got != expect) return fail("found " + std::to_string(got.size()) + " distinguished involutions");
    for (const auto& z : got) {
        AValue av = a_bounded(z, L);
        if (!av.certified || av.value != delta_cap(z)) return fail("a-value of " + z.to_string());
    }
    const JSchurElt one = j_identity_schur(2, 2, L);
    for (const auto& a : window22()) {
        JSchurElt ta = JSchurElt::basis_elt(a);
        if (j_mul(one, ta, L) != ta || j_mul(ta, one, L) != ta) return fail("identity fails on " + a.to_string());
    }
    auto small = enumerate_theta(2, 2, 2, OmegaWindow{-1, 1});
    long triples = 0;
    for (const auto& a : small)
        for (const auto& b : small)
            for (const auto& c : small) {
                if (a.co() != b.ro() || b.co() != c.ro()) continue;
                ++triples;
                JSchurElt ta = JSchurElt::basis_elt(a), tb = JSchurElt::basis_elt(b), tc = JSchurElt::basis_elt(c);
                if (j_mul(j_mul(ta, tb, L), tc, L) != j_mul(ta, j_mul(tb, tc, L), L))
                    return fail("associativity at " + a.to_string());
            }
    return {true, "D = {e, s0, s1}; identity on " + std::to_string(window22().size()) + " matrices; " +
                      std::to_string(triples) + " associative triples"};
}

Outcome lowest_cells() {
    const std::size_t c22 = lowest_cell(2, 2, window22(), kWindowL).cells.size();
    const std::size_t c12 = lowest_cell(1, 2, enumerate_theta(1, 2, kWindowL, kWindowOmega), kWindowL).cells.size();
    std::string detail = "(2,2): " + std::to_string(c22) + ", (1,2): " + std::to_string(c12);
    return {c22 == 4 && c12 == 1, detail};
}

Outcome phi_multiplicative() {
    const int L = kWindowL;
    long pairs = 0;
    Outcome out;
    for_composable(window22(), [&](const PeriodicMatrix& a, const PeriodicMatrix& b) {
        if (!out.passed) return;
        ++pairs;
        JSchurPoly lhs;
        for (const auto& [c, g] : theta_product(a, b).terms()) {
            JSchurPoly pc = lusztig_phi_schur(c, L);
            for (const auto& [u, h] : pc.terms()) lhs.add(u, g * h);
        }
        if (lhs != j_mul(lusztig_phi_schur(a, L), lusztig_phi_schur(b, L), L))
            out = fail("A = " + a.to_string() + ", B = " + b.to_string());
    });
    if (!out.passed) return out;
    JSchurPoly unit, expect;
    for (const auto& lam : Composition::all(2, 2)) unit += lusztig_phi_schur(diagonal_matrix(lam), L);
    const JSchurElt one = j_identity_schur(2, 2, L);
    for (const auto& [d, c] : one.terms()) expect.add(d, LaurentPoly(c));
    if (unit != expect) return fail("Phi(1) is not the identity of J");
    return {true, std::to_string(pairs) + " pairs; Phi(1) = 1"};
}

Outcome q_properties(std::uint64_t seed) {
    SuiteOptions opt;
    opt.n = 2;
    opt.r = 2;
    opt.L = kWindowL;
    opt.omega = kWindowOmega;
    opt.seed = seed;
    Outcome out;
    long skipped = 0;
    std::ostringstream summary;
    for (const auto& c : q_suite(opt)) {
        skipped += c.skipped;
        if (c.status == CheckStatus::Absent) continue;
        if (c.status != CheckStatus::Pass) {
            out.passed = false;
            summary << c.name << " " << to_string(c.status) << " " << c.counterexample << "; ";
        }
    }
    if (out.passed) summary << "Q1-Q11, Q13-Q15 pass";
    summary << " (" << skipped << " instances skipped)";
    out.detail = summary.str();
    return out;
}

Outcome rank_one_group_ring() {
    auto A = [](long j) { return PeriodicMatrix(1, {MatrixEntry{1, j, 1}}); };
    std::vector<long> idx;
    for (long j = -10; j <= 10; ++j) {
        long w = triple_of_matrix(A(j)).w.omega_degree();
        if (w >= -3 && w <= 3) idx.push_back(j);
    }
    for (long j : idx)
        for (long k : idx)
            if (j_basis_product(A(j), A(k), 2) != JSchurElt::basis_elt(A(j + k - 1)))
                return fail("t_A" + std::to_string(j) + " t_A" + std::to_string(k));
    return {idx.size() == 7, std::to_string(idx.size() * idx.size()) + " products"};
}

Outcome length_bruhat_oracles() {
    long lengths = 0, pairs = 0;
    for (int r : {2, 3}) {
        auto dist = reference::bfs_lengths(r, 6);
        auto b = ball(r, 6);
        if (b.size() != dist.size()) return fail("ball size differs from BFS at r = " + std::to_string(r));
        for (const auto& w : b) {
            ++lengths;
            auto it = dist.find(w);
            if (it == dist.end() || it->second != w.length()) return fail("length of " + w.to_string());
        }
    }
    for (auto [r, L] : {std::pair{2, 6}, std::pair{3, 4}}) {
        auto b = ball(r, L);
        for (const auto& y : b)
            for (const auto& w : b) {
                ++pairs;
                if (bruhat_leq(y, w) != reference::subword_leq(y, w))
                    return fail("Bruhat order at y = " + y.to_string() + ", w = " + w.to_string());
            }
    }
    return {true, std::to_string(lengths) + " lengths, " + std::to_string(pairs) + " Bruhat pairs"};
}

}  // namespace

std::vector<CriterionResult> run_acceptance(const AcceptanceOptions& opt,
                                            const std::function<void(const CriterionResult&)>& on_result) {
    const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria{
        {"KL polynomials and bar invariance", kl_bar_oracle},
        {"h positivity and symmetry", h_positivity},
        {"exact division by h_mu", division_exact},
        {"two product routes agree", two_routes},
        {"d_A combinatorial = Coxeter", d_a_agreement},
        {"theta_B(C_w0mu) = C_w+", theta_on_w0},
        {"bar fixes theta", bar_fixes_theta},
        {"idempotent and shortcut products", idempotent_and_shortcuts},
        {"distinguished involutions and J identity", distinguished},
        {"left cells in the lowest cell", lowest_cells},
        {"Phi is a unital homomorphism", phi_multiplicative},
        {"Q-properties", [&] { return q_properties(opt.seed); }},
        {"J_Delta(1,1) is a group ring", rank_one_group_ring},
        {"length and Bruhat oracles", length_bruhat_oracles},
    };
    std::vector<CriterionResult> out;
    for (std::size_t i = 0; i < criteria.size(); ++i) {
        const int id = static_cast<int>(i) + 1;
        if (!opt.only.empty() && std::find(opt.only.begin(), opt.only.end(), id) == opt.only.end()) continue;
        CriterionResult res;
        res.id = id;
        res.title = criteria[i].first;
        auto start = std::chrono::steady_clock::now();
        try {
            Outcome o = criteria[i].second();
            res.passed = o.passed;
            res.detail = o.detail;
        } catch (const std::exception& e) {
            res.passed = false;
            res.detail = std::string("error: ") + e.what();
        }
        res.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        if (on_result) on_result(res);
        out.push_back(std::move(res));
    }
    return out;
}

std::string format_criterion(const CriterionResult& c) {
    std::ostringstream os;
    os.setf(std::ios::fixed);
    os.precision(2);
    os << (c.passed ? "PASS" : "FAIL") << "  " << (c.id < 10 ? " " : "") << c.id << "  " << c.title << ": "
       << c.detail << " (" << c.seconds << "s)";
    return os.str();
}

}  // namespace affschur
