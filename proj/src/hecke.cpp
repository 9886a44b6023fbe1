#include "affschur/hecke.hpp"

#include <map>
#include <memory>
#include <mutex>
#include <sstream>

#include "affschur/errors.hpp"

namespace affschur {

namespace {

const LaurentPoly& q_poly() {
    static const LaurentPoly q = LaurentPoly::q_pow(1);
    return q;
}

// (-1)^k t^e
LaurentPoly signed_t(long k, int e) { return LaurentPoly::monomial(e, mpz_class(k % 2 == 0 ? 1 : -1)); }

void require_T(const HeckeElt& a, const char* what) {
    if (a.basis() != HBasis::T) throw BasisMismatch(std::string(what) + " expects a T-basis element");
}

// Left multiplication by T_rho^k: T_x -> T_{rho^k x}.
HeckeElt shift_left(const HeckeElt& a, long k) {
    if (k == 0) return a;
    HeckeElt out(a.period(), a.basis());
    for (const auto& [w, c] : a.terms()) out.add(w.rho_shifted(k), c);
    return out;
}

// Right multiplication by T_rho^k: T_x -> T_{x rho^k}.
HeckeElt shift_right(const HeckeElt& a, long k) {
    if (k == 0) return a;
    AffPerm rk = AffPerm::rho_pow(a.period(), k);
    HeckeElt out(a.period(), a.basis());
    for (const auto& [w, c] : a.terms()) out.add(w * rk, c);
    return out;
}

// T_x * b for a single basis element.
HeckeElt basis_times(const AffPerm& x, const HeckeElt& b) {
    ReducedWord rw = reduced_word(x);
    HeckeElt acc = b;
    for (auto it = rw.word.rbegin(); it != rw.word.rend(); ++it) acc = mul_generator_left(*it, acc);
    return shift_left(acc, rw.omega);
}

// a * T_y for a single basis element.
HeckeElt times_basis(const HeckeElt& a, const AffPerm& y) {
    ReducedWord rw = reduced_word(y);
    HeckeElt acc = shift_right(a, rw.omega);
    for (int i : rw.word) acc = mul_generator_right(acc, i);
    return acc;
}

}  // namespace

std::string to_string(HBasis b) { return b == HBasis::T ? "T" : "C"; }

// ---- HeckeElt ----

HeckeElt HeckeElt::basis_elt(const AffPerm& w, HBasis basis, const LaurentPoly& c) {
    HeckeElt e(w.period(), basis);
    e.add(w, c);
    return e;
}

LaurentPoly HeckeElt::coeff(const AffPerm& w) const {
    auto it = terms_.find(w);
    return it == terms_.end() ? LaurentPoly() : it->second;
}

void HeckeElt::add(const AffPerm& w, const LaurentPoly& c) {
    if (w.period() != r_) throw PeriodMismatch(r_, w.period());
    if (c.is_zero()) return;
    auto [it, inserted] = terms_.try_emplace(w, c);
    if (!inserted) {
        it->second += c;
        if (it->second.is_zero()) terms_.erase(it);
    }
}

std::vector<AffPerm> HeckeElt::support() const {
    std::vector<AffPerm> out;
    out.reserve(terms_.size());
    for (const auto& [w, c] : terms_) out.push_back(w);
    canonical_sort(out);
    return out;
}

void HeckeElt::check_compatible(const HeckeElt& o) const {
    if (r_ != o.r_) throw PeriodMismatch(r_, o.r_);
    if (basis_ != o.basis_) throw BasisMismatch("cannot combine " + affschur::to_string(basis_) + "-basis and " +
                                                affschur::to_string(o.basis_) + "-basis elements");
}

HeckeElt& HeckeElt::operator+=(const HeckeElt& o) {
    check_compatible(o);
    for (const auto& [w, c] : o.terms_) add(w, c);
    return *this;
}

HeckeElt& HeckeElt::operator-=(const HeckeElt& o) {
    check_compatible(o);
    for (const auto& [w, c] : o.terms_) add(w, -c);
    return *this;
}

HeckeElt operator*(const LaurentPoly& c, const HeckeElt& a) {
    HeckeElt out(a.r_, a.basis_);
    if (c.is_zero()) return out;
    for (const auto& [w, x] : a.terms_) out.add(w, c * x);
    return out;
}

std::string HeckeElt::to_string() const {
    if (terms_.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    for (const auto& w : support()) {
        if (!first) os << " + ";
        first = false;
        os << "(" << coeff(w).to_string() << ")*" << affschur::to_string(basis_) << w.to_string();
    }
    return os.str();
}

// ---- generator actions and products ----

HeckeElt mul_generator_left(int i, const HeckeElt& a) {
    require_T(a, "mul_generator_left");
    HeckeElt out(a.period());
    for (const auto& [w, c] : a.terms()) {
        AffPerm sw = w.generator_times(i);
        if (!w.has_left_descent(i)) {
            out.add(sw, c);
        } else {
            out.add(sw, q_poly() * c);
            out.add(w, (q_poly() - LaurentPoly(1)) * c);
        }
    }
    return out;
}

HeckeElt mul_generator_right(const HeckeElt& a, int i) {
    require_T(a, "mul_generator_right");
    HeckeElt out(a.period());
    for (const auto& [w, c] : a.terms()) {
        AffPerm ws = w.times_generator(i);
        if (!w.has_right_descent(i)) {
            out.add(ws, c);
        } else {
            out.add(ws, q_poly() * c);
            out.add(w, (q_poly() - LaurentPoly(1)) * c);
        }
    }
    return out;
}

HeckeElt h_mul(const HeckeElt& a, const HeckeElt& b) {
    require_T(a, "h_mul");
    require_T(b, "h_mul");
    if (a.period() != b.period()) throw PeriodMismatch(a.period(), b.period());
    HeckeElt out(a.period());
    if (a.size() <= b.size()) {
        for (const auto& [x, c] : a.terms()) out += c * basis_times(x, b);
    } else {
        for (const auto& [y, c] : b.terms()) out += c * times_basis(a, y);
    }
    return out;
}

// ---- HeckeAlgebra ----

HeckeAlgebra& HeckeAlgebra::shared(int r) {
    static std::mutex mutex;
    static std::map<int, std::unique_ptr<HeckeAlgebra>> instances;
    std::lock_guard lock(mutex);
    auto& slot = instances[r];
    if (!slot) slot = std::make_unique<HeckeAlgebra>(r);
    return *slot;
}

LaurentPoly HeckeAlgebra::kl_poly(const AffPerm& y, const AffPerm& w) const {
    if (y.period() != r_) throw PeriodMismatch(r_, y.period());
    if (w.period() != r_) throw PeriodMismatch(r_, w.period());
    long a = w.omega_degree();
    if (y.omega_degree() != a) return {};
    return kl_normalized(y.rho_shifted(-a), w.rho_shifted(-a));
}

LaurentPoly HeckeAlgebra::kl_normalized(const AffPerm& y, const AffPerm& w) const {
    if (y == w) return LaurentPoly(1);
    const int ly = y.length(), lw = w.length();
    if (ly >= lw) return {};
    auto key = std::make_pair(y, w);
    if (const KLEntry* hit = kl_memo_.find(key)) {
        if (hit->preloaded) preloaded_hits_.fetch_add(1, std::memory_order_relaxed);
        return hit->p;
    }
    if (!bruhat_leq(y, w)) return kl_memo_.insert(key, KLEntry{}).p;

    int s = w.left_descents().front();
    AffPerm v = w.generator_times(s);
    AffPerm sy = y.generator_times(s);
    const bool c = y.has_left_descent(s);

    LaurentPoly p = LaurentPoly::q_pow(c ? 0 : 1) * kl_normalized(sy, v) + LaurentPoly::q_pow(c ? 1 : 0) * kl_normalized(y, v);
    for (const auto& [z, mu] : mu_list(v)) {
        if (!z.has_left_descent(s) || z.length() < ly || !bruhat_leq(y, z)) continue;
        p -= LaurentPoly::monomial(lw - z.length(), mpz_class(mu)) * kl_normalized(y, z);
    }
    return kl_memo_.insert(key, KLEntry{std::move(p), false}).p;
}

long HeckeAlgebra::kl_mu(const AffPerm& y, const AffPerm& w) const {
    int d = w.length() - y.length() - 1;
    if (d < 0 || d % 2 != 0) return 0;
    return kl_poly(y, w).coeff(d).get_si();
}

const HeckeAlgebra::MuList& HeckeAlgebra::mu_list(const AffPerm& v) const {
    if (const MuList* hit = mu_memo_.find(v)) return *hit;
    MuList out;
    const int lv = v.length();
    for (const auto& z : bruhat_lower(v)) {
        int d = lv - z.length() - 1;
        if (d < 0 || d % 2 != 0) continue;
        mpz_class m = kl_normalized(z, v).coeff(d);
        if (m != 0) out.emplace_back(z, m.get_si());
    }
    return mu_memo_.insert(v, std::move(out));
}

bool HeckeAlgebra::preload(const AffPerm& y, const AffPerm& w, const LaurentPoly& p) {
    long a = w.omega_degree();
    auto key = std::make_pair(y.rho_shifted(-a), w.rho_shifted(-a));
    if (kl_memo_.find(key)) return false;
    kl_memo_.insert(key, KLEntry{p, true});
    return true;
}

void HeckeAlgebra::for_each_kl(
    const std::function<void(const AffPerm&, const AffPerm&, const LaurentPoly&)>& f) const {
    kl_memo_.for_each([&](const std::pair<AffPerm, AffPerm>& k, const KLEntry& e) { f(k.first, k.second, e.p); });
}

const HeckeElt& HeckeAlgebra::bar_T(const AffPerm& w) const {
    if (const HeckeElt* hit = bar_memo_.find(w)) return *hit;
    HeckeElt out(r_);
    long a = w.omega_degree();
    if (a != 0) {
        out = shift_left(bar_T(w.rho_shifted(-a)), a);
    } else if (w.is_identity()) {
        out.add(w, LaurentPoly(1));
    } else {
        // bar(T_u) = bar(T_{us}) T_s^{-1}, T_s^{-1} = q^-1 T_s + (q^-1 - 1)
        int s = w.right_descents().front();
        const HeckeElt& prev = bar_T(w.times_generator(s));
        LaurentPoly qi = LaurentPoly::q_pow(-1);
        out = qi * mul_generator_right(prev, s) + (qi - LaurentPoly(1)) * prev;
    }
    return bar_memo_.insert(w, std::move(out));
}

const HeckeElt& HeckeAlgebra::c_elt(const AffPerm& w) const {
    if (const HeckeElt* hit = celt_memo_.find(w)) return *hit;
    HeckeElt out(r_);
    const int lw = w.length();
    for (const auto& y : bruhat_lower(w)) out.add(y, LaurentPoly::t_pow(-lw) * kl_poly(y, w));
    return celt_memo_.insert(w, std::move(out));
}

const HeckeElt& HeckeAlgebra::c_product(const AffPerm& x, const AffPerm& y) const {
    // C_{rho^a x'} C_{y' rho^b} = T_rho^a C_{x'} C_{y'} T_rho^b, so only Coxeter
    // pairs are stored; the shifted product is cached under the original key too.
    auto key = std::make_pair(x, y);
    if (const HeckeElt* hit = cprod_memo_.find(key)) return *hit;
    long a = x.omega_degree(), b = y.omega_degree();
    HeckeElt out(r_, HBasis::C);
    if (a != 0 || b != 0) {
        AffPerm y0 = y * AffPerm::rho_pow(r_, -b);
        const HeckeElt& base = c_product(x.rho_shifted(-a), y0);
        AffPerm rb = AffPerm::rho_pow(r_, b);
        for (const auto& [z, c] : base.terms()) out.add(z.rho_shifted(a) * rb, c);
    } else {
        out = t_to_c(h_mul(c_elt(x), c_elt(y)));
    }
    return cprod_memo_.insert(key, std::move(out));
}

// ---- free functions ----

HeckeElt h_bar(const HeckeElt& a) {
    require_T(a, "h_bar");
    const HeckeAlgebra& H = HeckeAlgebra::shared(a.period());
    HeckeElt out(a.period());
    for (const auto& [w, c] : a.terms()) out += c.bar() * H.bar_T(w);
    return out;
}

LaurentPoly kl_poly(const AffPerm& y, const AffPerm& w) {
    if (y.period() != w.period()) throw PeriodMismatch(y.period(), w.period());
    return HeckeAlgebra::shared(w.period()).kl_poly(y, w);
}

long kl_mu(const AffPerm& y, const AffPerm& w) {
    if (y.period() != w.period()) throw PeriodMismatch(y.period(), w.period());
    return HeckeAlgebra::shared(w.period()).kl_mu(y, w);
}

HeckeElt c_elt(const AffPerm& w) { return HeckeAlgebra::shared(w.period()).c_elt(w); }

HeckeElt cprime_elt(const AffPerm& w) {
    HeckeElt out(w.period());
    const int lw = w.length();
    for (const auto& y : bruhat_lower(w)) {
        int ly = y.length();
        out.add(y, signed_t(lw - ly, lw - 2 * ly) * kl_poly(y, w).bar());
    }
    return out;
}

HeckeElt t_to_c(const HeckeElt& a) {
    require_T(a, "t_to_c");
    const HeckeAlgebra& H = HeckeAlgebra::shared(a.period());
    HeckeElt rem = a;
    HeckeElt out(a.period(), HBasis::C);
    while (!rem.is_zero()) {
        // Any term of maximal length is the leading term of its C_y.
        AffPerm y = rem.support().back();
        LaurentPoly c = rem.coeff(y) * LaurentPoly::t_pow(y.length());
        out.add(y, c);
        rem -= c * H.c_elt(y);
    }
    return out;
}

HeckeElt c_to_t(const HeckeElt& a) {
    if (a.basis() != HBasis::C) throw BasisMismatch("c_to_t expects a C-basis element");
    const HeckeAlgebra& H = HeckeAlgebra::shared(a.period());
    HeckeElt out(a.period());
    for (const auto& [w, c] : a.terms()) out += c * H.c_elt(w);
    return out;
}

LaurentPoly h_struct(const AffPerm& x, const AffPerm& y, const AffPerm& z) {
    if (x.period() != y.period()) throw PeriodMismatch(x.period(), y.period());
    if (x.period() != z.period()) throw PeriodMismatch(x.period(), z.period());
    return HeckeAlgebra::shared(x.period()).c_product(x, y).coeff(z);
}

HeckeElt x_lambda(const Composition& lambda) {
    HeckeElt out(lambda.r());
    for (const auto& w : young_elements(lambda)) out.add(w, LaurentPoly(1));
    return out;
}

HeckeElt y_lambda(const Composition& lambda) { return j_inv(x_lambda(lambda)); }

HeckeElt coset_sum_TD(const CosetTriple& t) {
    HeckeElt out(t.lambda.r());
    for (const auto& w : double_coset(t)) out.add(w, LaurentPoly(1));
    return out;
}

HeckeElt j_inv(const HeckeElt& a) {
    require_T(a, "j_inv");
    HeckeElt out(a.period());
    for (const auto& [w, c] : a.terms()) {
        int l = w.length();
        out.add(w, c.bar() * signed_t(l, -2 * l));
    }
    return out;
}

HeckeElt psi(const HeckeElt& a) {
    require_T(a, "psi");
    const HeckeAlgebra& H = HeckeAlgebra::shared(a.period());
    HeckeElt out(a.period());
    for (const auto& [w, c] : a.terms()) {
        int l = w.length();
        out += (c.sign_twisted() * signed_t(l, 2 * l)) * H.bar_T(w);
    }
    return out;
}

bool is_in_H_IJ(const HeckeElt& a, const Composition& lambda, const Composition& mu) {
    require_T(a, "is_in_H_IJ");
    HeckeElt qa = q_poly() * a;
    for (int i : lambda.generators())
        if (mul_generator_left(i, a) != qa) return false;
    for (int i : mu.generators())
        if (mul_generator_right(a, i) != qa) return false;
    return true;
}

}  // namespace affschur
