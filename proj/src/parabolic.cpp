#include "affschur/parabolic.hpp"

#include <algorithm>
#include <map>
#include <mutex>
#include <numeric>
#include <set>
#include <sstream>

#include "affschur/errors.hpp"

namespace affschur {

namespace {

long floor_div(long a, long b) {
    long q = a / b;
    if ((a % b != 0) && ((a < 0) != (b < 0))) --q;
    return q;
}

void check_compatible(const Composition& lambda, const Composition& mu) {
    if (lambda.n() != mu.n() || lambda.r() != mu.r())
        throw DomainError("compositions " + lambda.to_string() + " and " + mu.to_string() + " are incompatible");
}

bool left_descent_in(const AffPerm& w, const Composition& lambda, int* which = nullptr) {
    for (int i : lambda.generators())
        if (w.has_left_descent(i)) {
            if (which) *which = i;
            return true;
        }
    return false;
}

bool right_descent_in(const AffPerm& w, const Composition& mu, int* which = nullptr) {
    for (int i : mu.generators())
        if (w.has_right_descent(i)) {
            if (which) *which = i;
            return true;
        }
    return false;
}

}  // namespace

Composition::Composition(std::vector<int> parts) : parts_(std::move(parts)) {
    if (parts_.empty()) throw DomainError("a composition needs at least one part");
    starts_.assign(parts_.size() + 1, 0);
    for (std::size_t i = 0; i < parts_.size(); ++i) {
        if (parts_[i] < 0) throw DomainError("composition parts must be nonnegative");
        starts_[i + 1] = starts_[i] + parts_[i];
    }
    r_ = starts_.back();
    if (r_ < 1) throw DomainError("composition of zero");
    for (std::size_t i = 0; i < parts_.size(); ++i)
        for (int p = starts_[i] + 1; p < starts_[i + 1]; ++p) gens_.push_back(p);
}

bool Composition::contains_generator(int i) const { return std::binary_search(gens_.begin(), gens_.end(), i); }

std::pair<long, long> Composition::block(long k) const {
    const long nn = n();
    long c = floor_div(k - 1, nn);
    long i = k - c * nn;  // 1..n
    long base = c * r_;
    return {base + starts_[static_cast<std::size_t>(i - 1)] + 1, base + starts_[static_cast<std::size_t>(i)]};
}

int Composition::block_of(long p0) const {
    for (int i = 1; i <= n(); ++i)
        if (p0 <= starts_[static_cast<std::size_t>(i)]) return i;
    throw IndexOutOfRange("position " + std::to_string(p0) + " outside [1, r]");
}

Composition Composition::omega(int n, int r) {
    if (n < r) throw DomainError("omega composition requires n >= r");
    std::vector<int> parts(static_cast<std::size_t>(n), 0);
    for (int i = 0; i < r; ++i) parts[static_cast<std::size_t>(i)] = 1;
    return Composition(std::move(parts));
}

std::vector<Composition> Composition::all(int n, int r) {
    if (n < 1 || r < 1) throw DomainError("need n >= 1 and r >= 1");
    std::vector<Composition> out;
    std::vector<int> parts(static_cast<std::size_t>(n), 0);
    // odometer over parts_1..parts_{n-1}, last part takes the remainder
    auto rec = [&](auto&& self, int idx, int remaining) -> void {
        if (idx == n - 1) {
            parts[static_cast<std::size_t>(idx)] = remaining;
            out.emplace_back(parts);
            return;
        }
        for (int v = remaining; v >= 0; --v) {
            parts[static_cast<std::size_t>(idx)] = v;
            self(self, idx + 1, remaining - v);
        }
    };
    rec(rec, 0, r);
    std::sort(out.begin(), out.end());
    return out;
}

std::string Composition::to_string() const {
    std::ostringstream os;
    os << "(";
    for (std::size_t i = 0; i < parts_.size(); ++i) os << (i ? "," : "") << parts_[i];
    os << ")";
    return os.str();
}

const std::vector<AffPerm>& young_elements(const Composition& lambda) {
    static std::mutex mutex;
    static std::map<std::vector<int>, std::vector<AffPerm>> cache;
    std::lock_guard lock(mutex);
    auto it = cache.find(lambda.parts());
    if (it != cache.end()) return it->second;

    const int r = lambda.r();
    std::set<AffPerm> seen{AffPerm::identity(r)};
    std::vector<AffPerm> frontier{AffPerm::identity(r)};
    while (!frontier.empty()) {
        std::vector<AffPerm> next;
        for (const auto& u : frontier)
            for (int i : lambda.generators()) {
                AffPerm v = u.times_generator(i);
                if (seen.insert(v).second) next.push_back(v);
            }
        frontier = std::move(next);
    }
    std::vector<AffPerm> elems(seen.begin(), seen.end());
    canonical_sort(elems);
    return cache.emplace(lambda.parts(), std::move(elems)).first->second;
}

AffPerm longest_in_parabolic(const Composition& lambda) { return young_elements(lambda).back(); }

int longest_length(const Composition& lambda) {
    int total = 0;
    for (int p : lambda.parts()) total += p * (p - 1) / 2;
    return total;
}

AffPerm min_double_rep(const AffPerm& w, const Composition& lambda, const Composition& mu) {
    check_compatible(lambda, mu);
    if (w.period() != lambda.r()) throw PeriodMismatch(w.period(), lambda.r());
    AffPerm x = w;
    int i = 0;
    for (;;) {
        if (left_descent_in(x, lambda, &i)) x = x.generator_times(i);
        else if (right_descent_in(x, mu, &i)) x = x.times_generator(i);
        else return x;
    }
}

AffPerm max_double_rep(const AffPerm& w, const Composition& lambda, const Composition& mu) {
    check_compatible(lambda, mu);
    if (w.period() != lambda.r()) throw PeriodMismatch(w.period(), lambda.r());
    AffPerm x = w;
    for (;;) {
        bool moved = false;
        for (int i : lambda.generators())
            if (!x.has_left_descent(i)) {
                x = x.generator_times(i);
                moved = true;
                break;
            }
        if (moved) continue;
        for (int i : mu.generators())
            if (!x.has_right_descent(i)) {
                x = x.times_generator(i);
                moved = true;
                break;
            }
        if (!moved) return x;
    }
}

bool is_min_double_rep(const AffPerm& w, const Composition& lambda, const Composition& mu) {
    return !left_descent_in(w, lambda) && !right_descent_in(w, mu);
}

bool is_max_double_rep(const AffPerm& w, const Composition& lambda, const Composition& mu) {
    for (int i : lambda.generators())
        if (!w.has_left_descent(i)) return false;
    for (int i : mu.generators())
        if (!w.has_right_descent(i)) return false;
    return true;
}

CosetTriple::CosetTriple(Composition lambda_, AffPerm w_, Composition mu_)
    : lambda(std::move(lambda_)), w(std::move(w_)), mu(std::move(mu_)) {
    check_compatible(lambda, mu);
    if (w.period() != lambda.r()) throw PeriodMismatch(w.period(), lambda.r());
    if (!is_min_double_rep(w, lambda, mu))
        throw DomainError(w.to_string() + " is not the minimal element of its double coset");
}

AffPerm plus_rep(const CosetTriple& t) { return max_double_rep(t.w, t.lambda, t.mu); }

std::vector<AffPerm> double_coset(const CosetTriple& t) {
    std::set<AffPerm> acc;
    for (const auto& a : young_elements(t.lambda)) {
        AffPerm aw = a * t.w;
        for (const auto& b : young_elements(t.mu)) acc.insert(aw * b);
    }
    std::vector<AffPerm> out(acc.begin(), acc.end());
    canonical_sort(out);
    return out;
}

PeriodicMatrix::PeriodicMatrix(int n, std::vector<MatrixEntry> entries) : n_(n) {
    if (n < 1) throw InvalidMatrix("matrix period n must be >= 1");
    for (const auto& e : entries) {
        if (e.row < 1 || e.row > n) throw InvalidMatrix("row index " + std::to_string(e.row) + " outside [1, n]");
        if (e.val < 0) throw InvalidMatrix("negative matrix entry");
        if (e.val > 0) entries_.push_back(e);
    }
    std::sort(entries_.begin(), entries_.end());
    for (std::size_t i = 1; i < entries_.size(); ++i)
        if (entries_[i].row == entries_[i - 1].row && entries_[i].col == entries_[i - 1].col)
            throw InvalidMatrix("repeated matrix entry");
    long sum = 0;
    for (const auto& e : entries_) sum += e.val;
    if (sum == 0) throw InvalidMatrix("zero matrix");
    r_ = static_cast<int>(sum);
}

long PeriodicMatrix::at(long i, long j) const {
    long c = floor_div(i - 1, n_);
    long i0 = i - c * n_;
    long j0 = j - c * n_;
    for (const auto& e : entries_)
        if (e.row == i0 && e.col == j0) return e.val;
    return 0;
}

Composition PeriodicMatrix::ro() const {
    std::vector<int> parts(static_cast<std::size_t>(n_), 0);
    for (const auto& e : entries_) parts[static_cast<std::size_t>(e.row - 1)] += static_cast<int>(e.val);
    return Composition(std::move(parts));
}

Composition PeriodicMatrix::co() const {
    std::vector<int> parts(static_cast<std::size_t>(n_), 0);
    for (const auto& e : entries_) {
        long j0 = e.col - floor_div(e.col - 1, n_) * n_;
        parts[static_cast<std::size_t>(j0 - 1)] += static_cast<int>(e.val);
    }
    return Composition(std::move(parts));
}

PeriodicMatrix PeriodicMatrix::transpose() const {
    std::vector<MatrixEntry> out;
    for (const auto& e : entries_) {
        long m = floor_div(e.col - 1, n_);
        out.push_back({static_cast<int>(e.col - m * n_), e.row - m * n_, e.val});
    }
    return PeriodicMatrix(n_, std::move(out));
}

bool PeriodicMatrix::is_diagonal() const {
    return std::all_of(entries_.begin(), entries_.end(), [](const MatrixEntry& e) { return e.row == e.col; });
}

std::string PeriodicMatrix::to_string() const {
    std::ostringstream os;
    os << "{";
    for (std::size_t i = 0; i < entries_.size(); ++i)
        os << (i ? "," : "") << "a(" << entries_[i].row << "," << entries_[i].col << ")=" << entries_[i].val;
    os << "}";
    return os.str();
}

std::size_t PeriodicMatrixHash::operator()(const PeriodicMatrix& a) const noexcept {
    std::size_t h = std::hash<int>{}(a.n());
    for (const auto& e : a.entries()) {
        h = hash_combine(h, std::hash<int>{}(e.row));
        h = hash_combine(h, std::hash<long>{}(e.col));
        h = hash_combine(h, std::hash<long>{}(e.val));
    }
    return h;
}

PeriodicMatrix diagonal_matrix(const Composition& lambda) {
    std::vector<MatrixEntry> entries;
    for (int i = 1; i <= lambda.n(); ++i)
        if (lambda.part(i) > 0) entries.push_back({i, i, lambda.part(i)});
    return PeriodicMatrix(lambda.n(), std::move(entries));
}

PeriodicMatrix matrix_of_triple(const CosetTriple& t) {
    const int n = t.lambda.n();
    const int r = t.lambda.r();
    const AffPerm winv = t.w.inverse();
    std::map<std::pair<int, long>, long> counts;
    for (int k = 1; k <= n; ++k) {
        auto [lo, hi] = t.lambda.block(k);
        for (long m = lo; m <= hi; ++m) {
            long p = winv.apply(m);
            long c = floor_div(p - 1, r);
            long p0 = p - c * r;
            long l = c * n + t.mu.block_of(p0);
            ++counts[{k, l}];
        }
    }
    std::vector<MatrixEntry> entries;
    for (const auto& [kl, v] : counts) entries.push_back({kl.first, kl.second, v});
    return PeriodicMatrix(n, std::move(entries));
}

CosetTriple triple_of_matrix(const PeriodicMatrix& a) {
    const int n = a.n();
    const int r = a.r();
    Composition lambda = a.ro();
    Composition mu = a.co();

    // Offset of column l inside row k: the total of the entries of row k left of l.
    auto row_offset = [&](long k, long l) {
        long c = floor_div(k - 1, n);
        long i0 = k - c * n;
        long off = 0;
        for (const auto& e : a.entries())
            if (e.row == i0 && e.col + c * n < l) off += e.val;
        return off;
    };

    std::vector<long> window(static_cast<std::size_t>(r), 0);
    for (int l = 1; l <= n; ++l) {
        std::vector<std::pair<long, long>> column;  // (k, a_{k,l})
        for (const auto& e : a.entries()) {
            long diff = e.col - l;
            if (diff % n != 0) continue;
            column.emplace_back(e.row - diff, e.val);
        }
        std::sort(column.begin(), column.end());
        long pos = mu.block(l).first;
        for (const auto& [k, v] : column) {
            long target = lambda.block(k).first + row_offset(k, l);
            for (long s = 0; s < v; ++s) window[static_cast<std::size_t>(pos + s - 1)] = target + s;
            pos += v;
        }
    }
    AffPerm w;
    try {
        w = AffPerm::from_window(r, std::move(window));
    } catch (const InvalidWindow&) {
        throw InvalidMatrix("matrix does not define a periodic permutation");
    }
    if (!is_min_double_rep(w, lambda, mu)) throw InvalidMatrix("piece filling produced a non-minimal representative");
    return CosetTriple(std::move(lambda), std::move(w), std::move(mu));
}

AffPerm sigma_plus(const PeriodicMatrix& a) { return plus_rep(triple_of_matrix(a)); }

long d_A_combinatorial(const PeriodicMatrix& a) {
    // Sum over strip entries a_{i,j} and all translates (k0 + m n, l0 + m n) of
    // strip entries a_{k0,l0} with i >= k and j < l.
    const long n = a.n();
    long total = 0;
    for (const auto& x : a.entries())
        for (const auto& y : a.entries()) {
            long count = floor_div(x.row - y.row, n) - floor_div(x.col - y.col, n);
            if (count > 0) total += x.val * y.val * count;
        }
    return total;
}

long d_A_coxeter(const PeriodicMatrix& a) {
    CosetTriple t = triple_of_matrix(a);
    return plus_rep(t).length() - longest_length(t.mu);
}

std::vector<PeriodicMatrix> enumerate_theta(int n, int r, int max_length, std::optional<OmegaWindow> window) {
    OmegaWindow win = window.value_or(OmegaWindow{-r, r});
    if (win.lo > win.hi) throw DomainError("omega window must be ordered");
    const auto comps = Composition::all(n, r);
    const auto base = ball(r, max_length);
    std::vector<PeriodicMatrix> out;
    for (const auto& lambda : comps)
        for (const auto& mu : comps)
            for (long a = win.lo; a <= win.hi; ++a)
                for (const auto& u : base) {
                    AffPerm x = u.rho_shifted(a);
                    if (!is_min_double_rep(x, lambda, mu)) continue;
                    if (max_double_rep(x, lambda, mu).length() > max_length) continue;
                    out.push_back(matrix_of_triple(CosetTriple(lambda, x, mu)));
                }
    theta_sort(out);
    return out;
}

namespace {

struct ThetaKey {
    int len;
    std::vector<int> ro, co;
    std::vector<long> window;
    auto operator<=>(const ThetaKey&) const = default;
};

ThetaKey theta_key(const PeriodicMatrix& a) {
    CosetTriple t = triple_of_matrix(a);
    return {plus_rep(t).length(), t.lambda.parts(), t.mu.parts(), t.w.window()};
}

}  // namespace

bool theta_less(const PeriodicMatrix& a, const PeriodicMatrix& b) { return theta_key(a) < theta_key(b); }

void theta_sort(std::vector<PeriodicMatrix>& v) {
    std::vector<std::pair<ThetaKey, PeriodicMatrix>> keyed;
    keyed.reserve(v.size());
    for (auto& a : v) keyed.emplace_back(theta_key(a), std::move(a));
    std::sort(keyed.begin(), keyed.end(), [](const auto& x, const auto& y) { return x.first < y.first; });
    v.clear();
    for (auto& [k, a] : keyed) v.push_back(std::move(a));
}

}  // namespace affschur
