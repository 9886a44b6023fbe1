#include "affschur/affperm.hpp"

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

long pos_mod(long a, long b) {
    long m = a % b;
    return m < 0 ? m + b : m;
}

void check_period(int r) {
    if (r < 1) throw InvalidWindow("period must be >= 1, got " + std::to_string(r));
}

}  // namespace

AffPerm::AffPerm(int r) : r_(r) {
    check_period(r);
    window_.resize(static_cast<std::size_t>(r));
    std::iota(window_.begin(), window_.end(), 1L);
}

AffPerm AffPerm::from_window(int r, std::vector<long> window) {
    check_period(r);
    if (window.size() != static_cast<std::size_t>(r))
        throw InvalidWindow("window has " + std::to_string(window.size()) + " entries, expected " + std::to_string(r));
    std::vector<bool> seen(static_cast<std::size_t>(r), false);
    for (long x : window) {
        auto res = static_cast<std::size_t>(pos_mod(x, r));
        if (seen[res]) throw InvalidWindow("window entries are not pairwise incongruent mod r");
        seen[res] = true;
    }
    return AffPerm(r, std::move(window), true);
}

AffPerm AffPerm::generator(int r, int i) {
    check_period(r);
    if (r < 2) throw IndexOutOfRange("period 1 has no Coxeter generators");
    if (i < 0 || i >= r) throw IndexOutOfRange("generator index " + std::to_string(i) + " out of range");
    std::vector<long> win(static_cast<std::size_t>(r));
    for (long j = 1; j <= r; ++j) {
        long m = pos_mod(j, r);
        long out = j;
        if (m == i) out = j + 1;
        else if (m == pos_mod(i + 1, r)) out = j - 1;
        win[static_cast<std::size_t>(j - 1)] = out;
    }
    return AffPerm(r, std::move(win), true);
}

AffPerm AffPerm::rho_pow(int r, long k) {
    AffPerm w(r);
    for (auto& x : w.window_) x += k;
    return w;
}

long AffPerm::apply(long i) const {
    long k = floor_div(i - 1, r_);
    long j = i - k * r_;  // 1..r
    return window_[static_cast<std::size_t>(j - 1)] + k * r_;
}

long AffPerm::omega_degree() const {
    long sum = std::accumulate(window_.begin(), window_.end(), 0L);
    return (sum - static_cast<long>(r_) * (r_ + 1) / 2) / r_;
}

bool AffPerm::is_identity() const {
    for (int i = 0; i < r_; ++i)
        if (window_[static_cast<std::size_t>(i)] != i + 1) return false;
    return true;
}

int AffPerm::length() const {
    long total = 0;
    for (int i = 0; i < r_; ++i)
        for (int j = i + 1; j < r_; ++j) {
            long d = floor_div(window_[static_cast<std::size_t>(j)] - window_[static_cast<std::size_t>(i)], r_);
            total += d < 0 ? -d : d;
        }
    return static_cast<int>(total);
}

bool AffPerm::has_right_descent(int i) const {
    if (r_ < 2) return false;
    return apply(i) > apply(i + 1);
}

bool AffPerm::has_left_descent(int i) const { return r_ >= 2 && inverse().has_right_descent(i); }

std::vector<int> AffPerm::right_descents() const {
    std::vector<int> out;
    for (int i = 0; r_ >= 2 && i < r_; ++i)
        if (has_right_descent(i)) out.push_back(i);
    return out;
}

std::vector<int> AffPerm::left_descents() const { return inverse().right_descents(); }

AffPerm AffPerm::times_generator(int i) const {
    // (w s_i)(j) = w(s_i(j)): swap the values at positions i and i+1.
    std::vector<long> win = window_;
    for (long j = 1; j <= r_; ++j) {
        long m = pos_mod(j, r_);
        long src = j;
        if (m == i) src = j + 1;
        else if (m == pos_mod(i + 1, r_)) src = j - 1;
        win[static_cast<std::size_t>(j - 1)] = apply(src);
    }
    return AffPerm(r_, std::move(win), true);
}

AffPerm AffPerm::generator_times(int i) const {
    std::vector<long> win = window_;
    const long ip1 = pos_mod(i + 1, r_);
    for (auto& x : win) {
        long m = pos_mod(x, r_);
        if (m == i) x += 1;
        else if (m == ip1) x -= 1;
    }
    return AffPerm(r_, std::move(win), true);
}

AffPerm AffPerm::inverse() const {
    std::vector<long> win(static_cast<std::size_t>(r_));
    for (long j = 1; j <= r_; ++j) {
        long v = window_[static_cast<std::size_t>(j - 1)];
        long k = floor_div(v - 1, r_);
        long base = v - k * r_;
        win[static_cast<std::size_t>(base - 1)] = j - k * r_;
    }
    return AffPerm(r_, std::move(win), true);
}

AffPerm AffPerm::coxeter_part() const { return rho_shifted(-omega_degree()); }

AffPerm AffPerm::rho_shifted(long k) const {
    AffPerm w = *this;
    for (auto& x : w.window_) x += k;
    return w;
}

std::string AffPerm::to_string() const {
    std::ostringstream os;
    os << "[";
    for (std::size_t i = 0; i < window_.size(); ++i) os << (i ? "," : "") << window_[i];
    os << "]";
    return os.str();
}

AffPerm operator*(const AffPerm& u, const AffPerm& v) {
    if (u.r_ != v.r_) throw PeriodMismatch(u.r_, v.r_);
    std::vector<long> win(static_cast<std::size_t>(u.r_));
    for (int j = 0; j < u.r_; ++j) win[static_cast<std::size_t>(j)] = u.apply(v.window_[static_cast<std::size_t>(j)]);
    return AffPerm(u.r_, std::move(win), true);
}

AffPerm compose(const AffPerm& u, const AffPerm& v) { return u * v; }

bool canonical_less(const AffPerm& a, const AffPerm& b) {
    int la = a.length(), lb = b.length();
    if (la != lb) return la < lb;
    return a < b;
}

void canonical_sort(std::vector<AffPerm>& elems) {
    std::vector<std::pair<int, AffPerm>> keyed;
    keyed.reserve(elems.size());
    for (auto& e : elems) keyed.emplace_back(e.length(), std::move(e));
    std::sort(keyed.begin(), keyed.end());
    elems.clear();
    for (auto& [l, e] : keyed) elems.push_back(std::move(e));
}

ReducedWord reduced_word(const AffPerm& w) {
    ReducedWord out;
    out.omega = w.omega_degree();
    AffPerm u = w.coxeter_part();
    std::vector<int> reversed;
    while (!u.is_identity()) {
        int s = -1;
        for (int i = 0; i < u.period(); ++i)
            if (u.has_right_descent(i)) {
                s = i;
                break;
            }
        reversed.push_back(s);
        u = u.times_generator(s);
    }
    out.word.assign(reversed.rbegin(), reversed.rend());
    return out;
}

AffPerm from_word(int r, long omega, std::span<const int> word) {
    AffPerm w = AffPerm::rho_pow(r, omega);
    for (int i : word) {
        if (r < 2 || i < 0 || i >= r) throw IndexOutOfRange("generator index " + std::to_string(i) + " out of range");
        w = w.times_generator(i);
    }
    return w;
}

AffineWeyl& AffineWeyl::shared(int r) {
    static std::mutex mutex;
    static std::map<int, std::unique_ptr<AffineWeyl>> instances;
    std::lock_guard lock(mutex);
    auto& slot = instances[r];
    if (!slot) slot = std::make_unique<AffineWeyl>(r);
    return *slot;
}

bool AffineWeyl::bruhat_leq(const AffPerm& y, const AffPerm& w) const {
    if (y.period() != w.period()) throw PeriodMismatch(y.period(), w.period());
    long a = y.omega_degree();
    if (a != w.omega_degree()) return false;
    return leq_coxeter(y.rho_shifted(-a), w.rho_shifted(-a));
}

bool AffineWeyl::leq_coxeter(const AffPerm& y, const AffPerm& w) const {
    const int ly = y.length(), lw = w.length();
    if (ly > lw) return false;
    if (ly == lw) return y == w;
    if (ly == 0) return true;  // y = e
    auto key = std::make_pair(y, w);
    if (const bool* hit = leq_memo_.find(key)) return *hit;

    // Lifting property with a left descent s of w.
    int s = 0;
    while (!w.has_left_descent(s)) ++s;
    AffPerm sw = w.generator_times(s);
    AffPerm sy = y.generator_times(s);
    bool result = y.has_left_descent(s) ? leq_coxeter(sy, sw) : leq_coxeter(y, sw);
    leq_memo_.insert(key, result);
    return result;
}

const std::vector<AffPerm>& AffineWeyl::bruhat_lower(const AffPerm& w) const {
    if (w.period() != r_) throw PeriodMismatch(w.period(), r_);
    long a = w.omega_degree();
    if (a == 0) return lower_coxeter(w);
    if (const auto* hit = lower_memo_.find(w)) return *hit;
    std::vector<AffPerm> out;
    for (const auto& y : lower_coxeter(w.rho_shifted(-a))) out.push_back(y.rho_shifted(a));
    canonical_sort(out);
    return lower_memo_.insert(w, std::move(out));
}

const std::vector<AffPerm>& AffineWeyl::lower_coxeter(const AffPerm& u) const {
    if (const auto* hit = lower_memo_.find(u)) return *hit;
    std::vector<AffPerm> out;
    if (u.is_identity()) {
        out.push_back(u);
    } else {
        // Subword property: lower(v s) = lower(v) U lower(v) s when v s > v.
        int s = 0;
        while (!u.has_right_descent(s)) ++s;
        const auto& below = lower_coxeter(u.times_generator(s));
        std::set<AffPerm> acc(below.begin(), below.end());
        for (const auto& y : below) acc.insert(y.times_generator(s));
        out.assign(acc.begin(), acc.end());
        canonical_sort(out);
    }
    return lower_memo_.insert(u, std::move(out));
}

std::vector<AffPerm> ball(int r, int max_length) {
    std::vector<AffPerm> out;
    if (max_length < 0) return out;
    std::vector<AffPerm> layer{AffPerm::identity(r)};
    out = layer;
    for (int len = 1; len <= max_length && r >= 2; ++len) {
        std::set<AffPerm> next;
        for (const auto& u : layer)
            for (int i = 0; i < r; ++i)
                if (!u.has_right_descent(i)) next.insert(u.times_generator(i));
        layer.assign(next.begin(), next.end());
        out.insert(out.end(), layer.begin(), layer.end());
    }
    canonical_sort(out);
    return out;
}

}  // namespace affschur
