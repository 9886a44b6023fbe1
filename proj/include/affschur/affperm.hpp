#pragma once

// The extended affine symmetric group W of type A~_{r-1}.
//
// An element is a bijection w of Z with w(i + r) = w(i) + r, stored through
// its window (w(1), ..., w(r)).  W is the semidirect product of the Coxeter
// group W' generated by s_0, ..., s_{r-1} with the infinite cyclic group
// generated by the shift rho(i) = i + 1.  Every element factors uniquely as
// rho^a * u with u in W'; a is the omega-degree.

#include <compare>
#include <cstddef>
#include <functional>
#include <memory>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "affschur/memo.hpp"

namespace affschur {

class AffPerm {
public:
    /// Identity of period r.
    explicit AffPerm(int r = 1);

    /// Throws InvalidWindow unless the entries are pairwise incongruent mod r.
    static AffPerm from_window(int r, std::vector<long> window);
    static AffPerm identity(int r) { return AffPerm(r); }
    /// s_i for 0 <= i < r; requires r >= 2.
    static AffPerm generator(int r, int i);
    static AffPerm rho(int r) { return rho_pow(r, 1); }
    static AffPerm rho_pow(int r, long k);

    int period() const { return r_; }
    const std::vector<long>& window() const { return window_; }

    long apply(long i) const;
    /// (sum(window) - r(r+1)/2) / r
    long omega_degree() const;
    bool in_coxeter_part() const { return omega_degree() == 0; }
    bool is_identity() const;

    /// Coxeter length via the floor-sum inversion count.
    int length() const;

    bool has_right_descent(int i) const;
    bool has_left_descent(int i) const;
    std::vector<int> right_descents() const;
    std::vector<int> left_descents() const;

    /// w * s_i and s_i * w.
    AffPerm times_generator(int i) const;
    AffPerm generator_times(int i) const;

    AffPerm inverse() const;
    /// u with this = rho^a * u, a = omega_degree().
    AffPerm coxeter_part() const;
    /// rho^k * this
    AffPerm rho_shifted(long k) const;

    std::string to_string() const;

    friend AffPerm operator*(const AffPerm& u, const AffPerm& v);  // composition u o v
    friend bool operator==(const AffPerm&, const AffPerm&) = default;
    friend auto operator<=>(const AffPerm&, const AffPerm&) = default;

private:
    AffPerm(int r, std::vector<long> window, bool) : r_(r), window_(std::move(window)) {}

    int r_;
    std::vector<long> window_;
};

AffPerm compose(const AffPerm& u, const AffPerm& v);

struct AffPermHash {
    std::size_t operator()(const AffPerm& w) const noexcept {
        std::size_t h = std::hash<int>{}(w.period());
        for (long x : w.window()) h = hash_combine(h, std::hash<long>{}(x));
        return h;
    }
};

struct AffPermPairHash {
    std::size_t operator()(const std::pair<AffPerm, AffPerm>& p) const noexcept {
        return hash_combine(AffPermHash{}(p.first), AffPermHash{}(p.second));
    }
};

/// Ordering used for every printed list: length first, then window.
bool canonical_less(const AffPerm& a, const AffPerm& b);
void canonical_sort(std::vector<AffPerm>& elems);

struct ReducedWord {
    long omega = 0;
    std::vector<int> word;
    friend bool operator==(const ReducedWord&, const ReducedWord&) = default;
};

/// w = rho^omega * s_{word[0]} * ... * s_{word.back()}, with |word| = l(w).
ReducedWord reduced_word(const AffPerm& w);
/// rho^omega * s_{i_1} ... s_{i_k}; the word need not be reduced.
AffPerm from_word(int r, long omega, std::span<const int> word);

/// Per-period caches for Bruhat comparisons and Bruhat lower sets.
class AffineWeyl {
public:
    explicit AffineWeyl(int r) : r_(r) {}

    /// Process-wide shared instance for period r.
    static AffineWeyl& shared(int r);

    int period() const { return r_; }

    /// Bruhat order on W: elements of different omega-degree are incomparable.
    bool bruhat_leq(const AffPerm& y, const AffPerm& w) const;
    /// {y : y <= w}, sorted canonically.
    const std::vector<AffPerm>& bruhat_lower(const AffPerm& w) const;

    std::size_t bruhat_memo_size() const { return leq_memo_.size(); }

private:
    bool leq_coxeter(const AffPerm& y, const AffPerm& w) const;
    const std::vector<AffPerm>& lower_coxeter(const AffPerm& u) const;

    int r_;
    mutable ConcurrentMemo<std::pair<AffPerm, AffPerm>, bool, AffPermPairHash> leq_memo_;
    mutable ConcurrentMemo<AffPerm, std::vector<AffPerm>, AffPermHash> lower_memo_;
};

inline bool bruhat_leq(const AffPerm& y, const AffPerm& w) { return AffineWeyl::shared(y.period()).bruhat_leq(y, w); }
inline const std::vector<AffPerm>& bruhat_lower(const AffPerm& w) {
    return AffineWeyl::shared(w.period()).bruhat_lower(w);
}

/// All u in W' with l(u) <= max_length, sorted canonically.
std::vector<AffPerm> ball(int r, int max_length);

/// Longest element of the finite symmetric group S_r: l(w_0) = r(r-1)/2.
inline int finite_longest_length(int r) { return r * (r - 1) / 2; }

}  // namespace affschur
