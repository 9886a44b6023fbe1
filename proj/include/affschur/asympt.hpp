#pragma once

// The a-function, distinguished involutions, the asymptotic rings J and
// J_Delta(n, r), Lusztig's homomorphisms into them, cells on finite windows and
// the Q1-Q15 property suite.
//
// Everything here is computed on finite windows.  An a-value is only trusted
// when it is certified (it reaches nu = l(w_0) or Delta(z)); consumers throw
// UncertifiedAValue rather than silently use a lower bound.

#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <type_traits>
#include <utility>
#include <vector>

#include "affschur/affperm.hpp"
#include "affschur/errors.hpp"
#include "affschur/laurent.hpp"
#include "affschur/parabolic.hpp"

namespace affschur {

struct AValue {
    int value = 0;
    bool certified = false;
    std::optional<std::pair<AffPerm, AffPerm>> witness;
    int upper_bound = 0;
};

/// Worker threads used by the h-degree scan (0 picks hardware_concurrency).
void set_scan_threads(unsigned n);
unsigned scan_threads();
/// Drops the cached h-degree scans (used to compare runs).
void reset_a_tables();

/// nu = l(w_0) for the finite symmetric group of rank r.
inline int nu_ceiling(int r) { return finite_longest_length(r); }

/// delta(z) = deg_q P_{rho^k, z} where rho^k is the length-zero part of z.
int delta_small(const AffPerm& z);
/// Delta(z) = l(z) - 2 delta(z).
int delta_cap(const AffPerm& z);

/// Max t-degree of h_{x,y,z} over x, y in the W' ball of radius max(L, l(z)),
/// with rho-translates folded.
AValue a_bounded(const AffPerm& z, int L);
/// a(A) = a(sigma(A)).
AValue a_matrix(const PeriodicMatrix& a, int L);

/// Distinguished involutions in the W' ball of radius L.  Only involutions need
/// a certified a-value; UncertifiedBoundary is thrown if one cannot be certified.
std::vector<AffPerm> distinguished_involutions(int r, int L);

/// D_Delta(n, r): the matrices (mu, d, mu) with d (as maximal representative) a
/// distinguished involution of radius L.
std::vector<PeriodicMatrix> distinguished_matrices(int n, int r, int L);
std::vector<PeriodicMatrix> distinguished_matrices(const Composition& mu, int L);

mpz_class gamma(const AffPerm& x, const AffPerm& y, const AffPerm& z, int L);
mpz_class gamma_mat(const PeriodicMatrix& a, const PeriodicMatrix& b, const PeriodicMatrix& c, int L);

// ---------------------------------------------------------------------------
// Asymptotic rings

template <class Key, class Coeff>
class BasicJElt {
public:
    using Terms = std::map<Key, Coeff>;

    BasicJElt() = default;
    static BasicJElt basis_elt(const Key& k, const Coeff& c = Coeff(1)) {
        BasicJElt out;
        out.add(k, c);
        return out;
    }

    const Terms& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }
    std::size_t size() const { return terms_.size(); }

    Coeff coeff(const Key& k) const {
        auto it = terms_.find(k);
        return it == terms_.end() ? Coeff(0) : it->second;
    }

    void add(const Key& k, const Coeff& c) {
        if (zero(c)) return;
        auto [it, inserted] = terms_.try_emplace(k, c);
        if (!inserted) {
            it->second += c;
            if (zero(it->second)) terms_.erase(it);
        }
    }

    BasicJElt& operator+=(const BasicJElt& o) {
        for (const auto& [k, c] : o.terms_) add(k, c);
        return *this;
    }
    BasicJElt& operator-=(const BasicJElt& o) {
        for (const auto& [k, c] : o.terms_) add(k, Coeff(-c));
        return *this;
    }
    friend BasicJElt operator+(BasicJElt a, const BasicJElt& b) { return a += b; }
    friend BasicJElt operator-(BasicJElt a, const BasicJElt& b) { return a -= b; }
    friend bool operator==(const BasicJElt&, const BasicJElt&) = default;

    static bool zero(const Coeff& c) {
        if constexpr (std::is_same_v<Coeff, mpz_class>)
            return c == 0;
        else
            return c.is_zero();
    }

private:
    Terms terms_;
};

using JWElt = BasicJElt<AffPerm, mpz_class>;
using JSchurElt = BasicJElt<PeriodicMatrix, mpz_class>;
/// J tensored with Z[t, t^-1], the target of phi and Phi.
using JWPoly = BasicJElt<AffPerm, LaurentPoly>;
using JSchurPoly = BasicJElt<PeriodicMatrix, LaurentPoly>;

/// t_x t_y and t_A t_B; every a-value met must be certified.
JWElt j_basis_product(const AffPerm& x, const AffPerm& y, int L);
JSchurElt j_basis_product(const PeriodicMatrix& a, const PeriodicMatrix& b, int L);

/// Product in J (or J tensored with A).  With a window, WindowExceeded is thrown
/// when a nonzero term falls outside it.
template <class Key, class Coeff>
BasicJElt<Key, Coeff> j_mul(const BasicJElt<Key, Coeff>& a, const BasicJElt<Key, Coeff>& b, int L,
                            const std::set<Key>* window = nullptr) {
    BasicJElt<Key, Coeff> out;
    for (const auto& [x, ca] : a.terms())
        for (const auto& [y, cb] : b.terms()) {
            auto prod = j_basis_product(x, y, L);
            for (const auto& [z, g] : prod.terms()) {
                if (window && !window->count(z)) throw WindowExceeded("J product leaves the window at " + z.to_string());
                Coeff c = Coeff(g) * ca;
                c = c * cb;
                out.add(z, c);
            }
        }
    return out;
}

/// sum of t_d over the distinguished involutions of radius L.
JWElt j_identity_w(int r, int L);
/// sum of t_D over D_Delta(n, r).
JSchurElt j_identity_schur(int n, int r, int L);

/// phi(C_w) = sum_u sum_{d in D, a(d) = a(u)} h_{w,d,u} t_u.
JWPoly lusztig_phi_hecke(const AffPerm& w, int L);
/// Phi(theta_A) = sum_B sum_{D in D_Delta, co(A) = ro(D), a(D) = a(B)} g_{A,D,B} t_B.
JSchurPoly lusztig_phi_schur(const PeriodicMatrix& a, int L);

// ---------------------------------------------------------------------------
// Cells on a window

enum class CellFlavor { L, R, LR };
std::string to_string(CellFlavor f);
CellFlavor cell_flavor_from_string(const std::string& s);

template <class Key>
struct CellReport {
    std::string window;
    CellFlavor flavor = CellFlavor::L;
    std::vector<Key> elements;
    /// (i, j) means elements[i] precedes elements[j] in one step.
    std::vector<std::pair<std::size_t, std::size_t>> edges;
    /// reach[i][j]: elements[i] <= elements[j] in the transitive closure.
    std::vector<std::vector<bool>> reach;
    std::vector<std::vector<Key>> cells;
    /// Elements with a product term outside the window.
    std::vector<Key> boundary;
    std::vector<std::string> caveats;

    std::size_t index_of(const Key& k) const {
        for (std::size_t i = 0; i < elements.size(); ++i)
            if (elements[i] == k) return i;
        throw DomainError("element not in the window");
    }
    bool leq(const Key& a, const Key& b) const { return reach[index_of(a)][index_of(b)]; }
    bool equiv(const Key& a, const Key& b) const { return leq(a, b) && leq(b, a); }
};

/// Preorder generated by theta_C theta_B (L), theta_B theta_C (R) or both (LR),
/// with C and B ranging over the window.
CellReport<PeriodicMatrix> cell_preorder(const std::vector<PeriodicMatrix>& window, CellFlavor flavor);
/// Same for the C-basis of the Hecke algebra.
CellReport<AffPerm> hecke_cell_preorder(const std::vector<AffPerm>& window, CellFlavor flavor);

/// Exact left-cell criterion for W: y ~_L w iff t_y t_{w^-1} != 0.
bool hecke_left_equiv(const AffPerm& y, const AffPerm& w, int L);
/// A ~_L B iff t_A t_{B^t} != 0;  A ~_R B iff t_{A^t} t_B != 0.
bool schur_left_equiv(const PeriodicMatrix& a, const PeriodicMatrix& b, int L);
bool schur_right_equiv(const PeriodicMatrix& a, const PeriodicMatrix& b, int L);

/// The part of the lowest two-sided cell inside the window, split into left
/// cells by: A ~_L B iff sigma(A) ~_L sigma(B) and co(A) = co(B).
CellReport<PeriodicMatrix> lowest_cell(int n, int r, const std::vector<PeriodicMatrix>& window, int L);

// ---------------------------------------------------------------------------
// Verification reports

enum class CheckStatus { Pass, Fail, Skipped, Absent };
std::string to_string(CheckStatus s);

struct CheckResult {
    explicit CheckResult(std::string n = {}) : name(std::move(n)) {}

    std::string name;
    CheckStatus status = CheckStatus::Skipped;
    long checked = 0;
    long skipped = 0;
    long failed = 0;
    std::string counterexample;
    std::string note;

    void pass() { ++checked; }
    void fail(const std::string& what) {
        ++checked;
        if (failed++ == 0) counterexample = what;
    }
    void skip() { ++skipped; }
    void finish() {
        if (status == CheckStatus::Absent) return;
        status = failed > 0 ? CheckStatus::Fail : (checked > 0 ? CheckStatus::Pass : CheckStatus::Skipped);
    }
};

struct SuiteOptions {
    int n = 2;
    int r = 2;
    int L = 4;
    OmegaWindow omega{-2, 2};
    std::uint64_t seed = 1;
    int q15_samples = 60;
};

/// (a) nonnegative integer structure constants, (b) the identity is a sum of
/// basis elements, (c) tau(t_A t_B) = [B = A^t], plus cyclic-symmetry spot checks.
std::vector<CheckResult> based_ring_checks(const SuiteOptions& opt);

/// Q1-Q11, Q13-Q15 on the window; Q12 is reported as absent.
std::vector<CheckResult> q_suite(const SuiteOptions& opt);

}  // namespace affschur
