#pragma once

// Periodic compositions, Young subgroups, double cosets W_lambda w W_mu, and the
// bijection between coset triples (lambda, w, mu) and periodic matrices.

#include <compare>
#include <cstddef>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "affschur/affperm.hpp"

namespace affschur {

class Composition {
public:
    /// Throws DomainError for an empty list, negative parts, or r = 0.
    explicit Composition(std::vector<int> parts);

    int n() const { return static_cast<int>(parts_.size()); }
    int r() const { return r_; }
    const std::vector<int>& parts() const { return parts_; }
    /// lambda_i for 1 <= i <= n.
    int part(int i) const { return parts_.at(static_cast<std::size_t>(i - 1)); }

    /// I(lambda): the indices 1 <= i <= r-1 with s_i inside a block.
    const std::vector<int>& generators() const { return gens_; }
    bool contains_generator(int i) const;

    /// First and last position of the block R_k, k in Z (empty when first > last).
    std::pair<long, long> block(long k) const;
    /// The block index l in [1, n] containing position p0 in [1, r].
    int block_of(long p0) const;

    /// (1^r, 0^(n-r)); requires n >= r.
    static Composition omega(int n, int r);
    /// Every composition of r into n parts, in lexicographic order.
    static std::vector<Composition> all(int n, int r);

    std::string to_string() const;

    friend bool operator==(const Composition& a, const Composition& b) { return a.parts_ == b.parts_; }
    friend auto operator<=>(const Composition& a, const Composition& b) { return a.parts_ <=> b.parts_; }

private:
    std::vector<int> parts_;
    int r_ = 0;
    std::vector<int> gens_;
    std::vector<int> starts_;  // starts_[i] = lambda_1 + ... + lambda_i
};

/// W_lambda, sorted canonically.
const std::vector<AffPerm>& young_elements(const Composition& lambda);
AffPerm longest_in_parabolic(const Composition& lambda);
int longest_length(const Composition& lambda);

/// Shortest and longest element of W_lambda w W_mu.
AffPerm min_double_rep(const AffPerm& w, const Composition& lambda, const Composition& mu);
AffPerm max_double_rep(const AffPerm& w, const Composition& lambda, const Composition& mu);
bool is_min_double_rep(const AffPerm& w, const Composition& lambda, const Composition& mu);
bool is_max_double_rep(const AffPerm& w, const Composition& lambda, const Composition& mu);

struct CosetTriple {
    Composition lambda;
    AffPerm w;
    Composition mu;

    /// Validates matching n and r and minimality of w.
    CosetTriple(Composition lambda, AffPerm w, Composition mu);

    friend bool operator==(const CosetTriple&, const CosetTriple&) = default;
};

AffPerm plus_rep(const CosetTriple& t);
/// W_lambda w W_mu, sorted canonically.
std::vector<AffPerm> double_coset(const CosetTriple& t);

struct MatrixEntry {
    int row;   // 1..n
    long col;  // any integer
    long val;  // > 0
    friend bool operator==(const MatrixEntry&, const MatrixEntry&) = default;
    friend auto operator<=>(const MatrixEntry&, const MatrixEntry&) = default;
};

/// A periodic Z x Z matrix a_{i,j} = a_{i+n,j+n} stored through its rows 1..n.
class PeriodicMatrix {
public:
    PeriodicMatrix() = default;
    /// Zero entries are dropped; throws InvalidMatrix on rows outside [1, n],
    /// negative or repeated entries, or an empty matrix.
    PeriodicMatrix(int n, std::vector<MatrixEntry> entries);

    int n() const { return n_; }
    int r() const { return r_; }
    const std::vector<MatrixEntry>& entries() const { return entries_; }
    /// a_{i,j} for arbitrary i, j.
    long at(long i, long j) const;

    Composition ro() const;
    Composition co() const;
    PeriodicMatrix transpose() const;
    bool is_diagonal() const;

    std::string to_string() const;

    friend bool operator==(const PeriodicMatrix&, const PeriodicMatrix&) = default;
    friend auto operator<=>(const PeriodicMatrix&, const PeriodicMatrix&) = default;

private:
    int n_ = 0;
    int r_ = 0;
    std::vector<MatrixEntry> entries_;
};

struct PeriodicMatrixHash {
    std::size_t operator()(const PeriodicMatrix& a) const noexcept;
};

/// diag(lambda_1, ..., lambda_n)
PeriodicMatrix diagonal_matrix(const Composition& lambda);

PeriodicMatrix matrix_of_triple(const CosetTriple& t);
CosetTriple triple_of_matrix(const PeriodicMatrix& a);

/// w_A^+ for the triple of A.
AffPerm sigma_plus(const PeriodicMatrix& a);

long d_A_combinatorial(const PeriodicMatrix& a);
long d_A_coxeter(const PeriodicMatrix& a);

struct OmegaWindow {
    long lo = 0;
    long hi = 0;
};

/// All A in Theta(n, r) with l(w_A^+) <= max_length and omega-degree of w_A in
/// the window; default window [-r, r].  Sorted by theta_less.
std::vector<PeriodicMatrix> enumerate_theta(int n, int r, int max_length, std::optional<OmegaWindow> window = {});

/// Canonical ordering of matrices: (l(w_A^+), ro, co, window of w_A).
bool theta_less(const PeriodicMatrix& a, const PeriodicMatrix& b);
void theta_sort(std::vector<PeriodicMatrix>& v);

}  // namespace affschur
