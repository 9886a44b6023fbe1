#include "affschur/schur.hpp"

#include <sstream>

#include "affschur/errors.hpp"
#include "affschur/memo.hpp"

namespace affschur {

namespace {

struct MatrixPairHash {
    std::size_t operator()(const std::pair<PeriodicMatrix, PeriodicMatrix>& p) const noexcept {
        return hash_combine(PeriodicMatrixHash{}(p.first), PeriodicMatrixHash{}(p.second));
    }
};

struct MatrixInfo {
    CosetTriple triple;
    AffPerm wplus;
    int lplus;
    int lw0mu;
};

const MatrixInfo& info(const PeriodicMatrix& a) {
    static ConcurrentMemo<PeriodicMatrix, MatrixInfo, PeriodicMatrixHash> memo;
    if (const MatrixInfo* hit = memo.find(a)) return *hit;
    CosetTriple t = triple_of_matrix(a);
    AffPerm wp = plus_rep(t);
    int lp = wp.length();
    int l0 = longest_length(t.mu);
    return memo.insert(a, MatrixInfo{std::move(t), std::move(wp), lp, l0});
}

PeriodicMatrix matrix_of(const Composition& lambda, const AffPerm& w, const Composition& mu) {
    return matrix_of_triple(CosetTriple(lambda, w, mu));
}

AffPerm min_left_rep(AffPerm w, const Composition& mu) {
    for (bool moved = true; moved;) {
        moved = false;
        for (int i : mu.generators())
            if (w.has_left_descent(i)) {
                w = w.generator_times(i);
                moved = true;
            }
    }
    return w;
}

void require_basis(const SchurElt& a, SBasis b, const char* what) {
    if (a.basis() != b)
        throw BasisMismatch(std::string(what) + " expects a " + to_string(b) + "-basis element, got " +
                            to_string(a.basis()));
}

// phi and e share coefficients, as do phihat and [A].
SchurElt relabel(const SchurElt& a, SBasis target) {
    SchurElt out(a.n(), a.r(), target);
    for (const auto& [m, c] : a.terms()) out.add(m, c);
    return out;
}

SchurElt phihat_to_phi(const SchurElt& a) {
    SchurElt out(a.n(), a.r(), SBasis::Phi);
    for (const auto& [m, c] : a.terms()) {
        const MatrixInfo& mi = info(m);
        out.add(m, LaurentPoly::t_pow(mi.lw0mu - mi.lplus) * c);
    }
    return out;
}

SchurElt phi_to_phihat(const SchurElt& a) {
    SchurElt out(a.n(), a.r(), SBasis::PhiHat);
    for (const auto& [m, c] : a.terms()) {
        const MatrixInfo& mi = info(m);
        out.add(m, LaurentPoly::t_pow(mi.lplus - mi.lw0mu) * c);
    }
    return out;
}

// [A] = t^{-d_A} e_A
SchurElt bracket_to_e(const SchurElt& a) {
    SchurElt out(a.n(), a.r(), SBasis::E);
    for (const auto& [m, c] : a.terms()) out.add(m, LaurentPoly::t_pow(static_cast<int>(-d_A_combinatorial(m))) * c);
    return out;
}

SchurElt e_to_bracket(const SchurElt& a) {
    SchurElt out(a.n(), a.r(), SBasis::Bracket);
    for (const auto& [m, c] : a.terms()) out.add(m, LaurentPoly::t_pow(static_cast<int>(d_A_combinatorial(m))) * c);
    return out;
}

SchurElt phihat_to_theta(const SchurElt& a) {
    SchurElt rem = a;
    SchurElt out(a.n(), a.r(), SBasis::Theta);
    while (!rem.is_zero()) {
        // theta_B = phihat_B + terms of strictly smaller l(z+)
        const PeriodicMatrix* top = nullptr;
        for (const auto& [m, c] : rem.terms())
            if (!top || info(m).lplus > info(*top).lplus) top = &m;
        PeriodicMatrix b = *top;
        LaurentPoly c = rem.coeff(b);
        out.add(b, c);
        rem -= c * theta_in_phihat(b);
    }
    return out;
}

SchurElt to_phi(const SchurElt& a) {
    switch (a.basis()) {
        case SBasis::Phi:
            return a;
        case SBasis::E:
            return relabel(a, SBasis::Phi);
        case SBasis::PhiHat:
            return phihat_to_phi(a);
        case SBasis::Bracket:
            return relabel(bracket_to_e(a), SBasis::Phi);
        case SBasis::Theta: {
            SchurElt out(a.n(), a.r(), SBasis::Phi);
            for (const auto& [m, c] : a.terms()) out += c * theta_in_phi(m);
            return out;
        }
    }
    throw Error("unknown Schur basis");
}

SchurElt from_phi(const SchurElt& a, SBasis target) {
    switch (target) {
        case SBasis::Phi:
            return a;
        case SBasis::E:
            return relabel(a, SBasis::E);
        case SBasis::PhiHat:
            return phi_to_phihat(a);
        case SBasis::Bracket:
            return e_to_bracket(relabel(a, SBasis::E));
        case SBasis::Theta:
            return phihat_to_theta(phi_to_phihat(a));
    }
    throw Error("unknown Schur basis");
}

const SchurElt& phi_pair_product(const PeriodicMatrix& a, const PeriodicMatrix& b) {
    static ConcurrentMemo<std::pair<PeriodicMatrix, PeriodicMatrix>, SchurElt, MatrixPairHash> memo;
    auto key = std::make_pair(a, b);
    if (const SchurElt* hit = memo.find(key)) return *hit;
    // phi_A phi_B (x_nu) = phi_A(T_{D_B})
    HeckeElt h = phi_apply(a, coset_sum_TD(info(b).triple));
    return memo.insert(key, decompose_in_TD(h, a.ro(), b.co()));
}

const SchurElt& bar_of_phi(const PeriodicMatrix& b) {
    static ConcurrentMemo<PeriodicMatrix, SchurElt, PeriodicMatrixHash> memo;
    if (const SchurElt* hit = memo.find(b)) return *hit;
    // bar(phi_B)(x_mu) = t^{l(w0mu)} bar(phi_B(C_{w0mu})) = t^{2 l(w0mu)} bar(T_{D_B})
    const MatrixInfo& mi = info(b);
    HeckeElt h = LaurentPoly::t_pow(2 * mi.lw0mu) * h_bar(coset_sum_TD(mi.triple));
    return memo.insert(b, decompose_in_TD(h, mi.triple.lambda, mi.triple.mu));
}

bool generators_contained(const Composition& small, const Composition& big) {
    for (int i : small.generators())
        if (!big.contains_generator(i)) return false;
    return true;
}

}  // namespace

std::string to_string(SBasis b) {
    switch (b) {
        case SBasis::Phi:
            return "phi";
        case SBasis::PhiHat:
            return "phihat";
        case SBasis::Theta:
            return "theta";
        case SBasis::E:
            return "e";
        case SBasis::Bracket:
            return "bracket";
    }
    return "?";
}

SBasis sbasis_from_string(const std::string& s) {
    for (SBasis b : {SBasis::Phi, SBasis::PhiHat, SBasis::Theta, SBasis::E, SBasis::Bracket})
        if (to_string(b) == s) return b;
    throw DomainError("unknown Schur basis '" + s + "'");
}

// ---- SchurElt ----

SchurElt SchurElt::basis_elt(const PeriodicMatrix& a, SBasis basis, const LaurentPoly& c) {
    SchurElt e(a.n(), a.r(), basis);
    e.add(a, c);
    return e;
}

LaurentPoly SchurElt::coeff(const PeriodicMatrix& a) const {
    auto it = terms_.find(a);
    return it == terms_.end() ? LaurentPoly() : it->second;
}

void SchurElt::add(const PeriodicMatrix& a, const LaurentPoly& c) {
    if (a.n() != n_ || a.r() != r_)
        throw DomainError("matrix " + a.to_string() + " does not lie in Theta(" + std::to_string(n_) + ", " +
                          std::to_string(r_) + ")");
    if (c.is_zero()) return;
    auto [it, inserted] = terms_.try_emplace(a, c);
    if (!inserted) {
        it->second += c;
        if (it->second.is_zero()) terms_.erase(it);
    }
}

std::vector<PeriodicMatrix> SchurElt::support() const {
    std::vector<PeriodicMatrix> out;
    for (const auto& [m, c] : terms_) out.push_back(m);
    theta_sort(out);
    return out;
}

void SchurElt::check_compatible(const SchurElt& o) const {
    if (n_ != o.n_ || r_ != o.r_) throw DomainError("Schur elements of different (n, r)");
    if (basis_ != o.basis_)
        throw BasisMismatch("cannot combine " + affschur::to_string(basis_) + " and " +
                            affschur::to_string(o.basis_) + " elements");
}

SchurElt& SchurElt::operator+=(const SchurElt& o) {
    check_compatible(o);
    for (const auto& [m, c] : o.terms_) add(m, c);
    return *this;
}

SchurElt& SchurElt::operator-=(const SchurElt& o) {
    check_compatible(o);
    for (const auto& [m, c] : o.terms_) add(m, -c);
    return *this;
}

SchurElt operator*(const LaurentPoly& c, const SchurElt& a) {
    SchurElt out(a.n_, a.r_, a.basis_);
    if (c.is_zero()) return out;
    for (const auto& [m, x] : a.terms_) out.add(m, c * x);
    return out;
}

std::string SchurElt::to_string() const {
    if (terms_.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    for (const auto& m : support()) {
        if (!first) os << " + ";
        first = false;
        os << "(" << coeff(m).to_string() << ")*" << affschur::to_string(basis_) << m.to_string();
    }
    return os.str();
}

// ---- operations ----

LaurentPoly poincare_h(const Composition& mu) {
    LaurentPoly sum;
    for (const auto& w : young_elements(mu)) sum.add_term(2 * w.length(), mpz_class(1));
    return LaurentPoly::t_pow(-longest_length(mu)) * sum;
}

HeckeElt phi_apply(const PeriodicMatrix& a, const HeckeElt& h) {
    if (h.basis() != HBasis::T) throw BasisMismatch("phi_apply expects a T-basis element");
    if (h.period() != a.r()) throw PeriodMismatch(a.r(), h.period());
    const MatrixInfo& mi = info(a);
    const Composition& mu = mi.triple.mu;
    // h = x_mu h' with h' supported on shortest left coset representatives
    HeckeElt hp(h.period());
    for (const auto& [w, c] : h.terms())
        if (min_left_rep(w, mu) == w) hp.add(w, c);
    if (h_mul(x_lambda(mu), hp) != h)
        throw NotInModule("element is not in x_mu H for mu = " + mu.to_string());
    return h_mul(coset_sum_TD(mi.triple), hp);
}

HeckeElt schur_apply(const SchurElt& a, const Composition& mu, const HeckeElt& h) {
    SchurElt p = to_phi(a);
    HeckeElt out(a.r());
    for (const auto& [m, c] : p.terms())
        if (m.co() == mu) out += c * phi_apply(m, h);
    return out;
}

SchurElt decompose_in_TD(const HeckeElt& h, const Composition& lambda, const Composition& mu) {
    if (h.basis() != HBasis::T) throw BasisMismatch("decompose_in_TD expects a T-basis element");
    SchurElt out(lambda.n(), lambda.r(), SBasis::Phi);
    HeckeElt rebuilt(h.period());
    for (const auto& [w, c] : h.terms()) {
        if (min_double_rep(w, lambda, mu) != w) continue;
        CosetTriple t(lambda, w, mu);
        out.add(matrix_of_triple(t), c);
        rebuilt += c * coset_sum_TD(t);
    }
    if (rebuilt != h) throw NotInModule("element is not a combination of double-coset sums");
    return out;
}

SchurElt phi_mul(const SchurElt& a, const SchurElt& b) {
    require_basis(a, SBasis::Phi, "phi_mul");
    require_basis(b, SBasis::Phi, "phi_mul");
    if (a.n() != b.n() || a.r() != b.r()) throw DomainError("phi_mul: different (n, r)");
    SchurElt out(a.n(), a.r(), SBasis::Phi);
    for (const auto& [ma, ca] : a.terms())
        for (const auto& [mb, cb] : b.terms())
            if (ma.co() == mb.ro()) out += (ca * cb) * phi_pair_product(ma, mb);
    return out;
}

LaurentPoly alpha_coeff(const AffPerm& z, const CosetTriple& triple) {
    CosetTriple tz(triple.lambda, z, triple.mu);
    AffPerm zp = plus_rep(tz), wp = plus_rep(triple);
    return LaurentPoly::t_pow(-wp.length()) * kl_poly(zp, wp);
}

const SchurElt& theta_in_phihat(const PeriodicMatrix& b) {
    static ConcurrentMemo<PeriodicMatrix, SchurElt, PeriodicMatrixHash> memo;
    if (const SchurElt* hit = memo.find(b)) return *hit;
    const MatrixInfo& mi = info(b);
    const Composition& lambda = mi.triple.lambda;
    const Composition& mu = mi.triple.mu;
    SchurElt out(b.n(), b.r(), SBasis::PhiHat);
    for (const auto& y : bruhat_lower(mi.wplus)) {
        if (!is_max_double_rep(y, lambda, mu)) continue;
        AffPerm z = min_double_rep(y, lambda, mu);
        out.add(matrix_of(lambda, z, mu), LaurentPoly::t_pow(y.length() - mi.lplus) * kl_poly(y, mi.wplus));
    }
    return memo.insert(b, std::move(out));
}

const SchurElt& theta_in_phi(const PeriodicMatrix& b) {
    static ConcurrentMemo<PeriodicMatrix, SchurElt, PeriodicMatrixHash> memo;
    if (const SchurElt* hit = memo.find(b)) return *hit;
    return memo.insert(b, phihat_to_phi(theta_in_phihat(b)));
}

SchurElt basis_convert(const SchurElt& a, SBasis target) {
    if (a.basis() == target) return a;
    return from_phi(to_phi(a), target);
}

LaurentPoly g_struct(const PeriodicMatrix& a, const PeriodicMatrix& b, const PeriodicMatrix& c) {
    if (a.n() != b.n() || a.n() != c.n() || a.r() != b.r() || a.r() != c.r())
        throw DomainError("g_struct: matrices from different Theta(n, r)");
    Composition mu = a.co();
    if (mu != b.ro() || c.ro() != a.ro() || c.co() != b.co()) return {};
    LaurentPoly h = h_struct(info(a).wplus, info(b).wplus, info(c).wplus);
    return exact_div(h, poincare_h(mu));
}

const SchurElt& theta_product(const PeriodicMatrix& a, const PeriodicMatrix& b) {
    static ConcurrentMemo<std::pair<PeriodicMatrix, PeriodicMatrix>, SchurElt, MatrixPairHash> memo;
    auto key = std::make_pair(a, b);
    if (const SchurElt* hit = memo.find(key)) return *hit;
    SchurElt out(a.n(), a.r(), SBasis::Theta);
    const MatrixInfo& ia = info(a);
    const MatrixInfo& ib = info(b);
    if (ia.triple.mu == ib.triple.lambda) {
        const Composition& lambda = ia.triple.lambda;
        const Composition& nu = ib.triple.mu;
        LaurentPoly hmu = poincare_h(ia.triple.mu);
        const HeckeElt& prod = HeckeAlgebra::shared(a.r()).c_product(ia.wplus, ib.wplus);
        for (const auto& [z, h] : prod.terms()) {
            if (!is_max_double_rep(z, lambda, nu))
                throw Error("C-product term " + z.to_string() + " is not a longest double coset representative");
            out.add(matrix_of(lambda, min_double_rep(z, lambda, nu), nu), exact_div(h, hmu));
        }
    }
    return memo.insert(key, std::move(out));
}

std::optional<PeriodicMatrix> theta_product_shortcut(const PeriodicMatrix& a, const PeriodicMatrix& b) {
    const MatrixInfo& ia = info(a);
    const MatrixInfo& ib = info(b);
    const Composition& lambda = ia.triple.lambda;
    const Composition& mu = ia.triple.mu;
    const Composition& nu = ib.triple.mu;
    if (mu != ib.triple.lambda) return std::nullopt;
    if (ia.triple.w.is_identity() && generators_contained(lambda, mu))
        return matrix_of(lambda, min_double_rep(ib.wplus, lambda, nu), nu);
    if (ib.triple.w.is_identity() && generators_contained(nu, mu))
        return matrix_of(lambda, min_double_rep(ia.wplus, lambda, nu), nu);
    return std::nullopt;
}

SchurElt theta_mul(const SchurElt& a, const SchurElt& b) {
    require_basis(a, SBasis::Theta, "theta_mul");
    require_basis(b, SBasis::Theta, "theta_mul");
    if (a.n() != b.n() || a.r() != b.r()) throw DomainError("theta_mul: different (n, r)");
    SchurElt out(a.n(), a.r(), SBasis::Theta);
    for (const auto& [ma, ca] : a.terms())
        for (const auto& [mb, cb] : b.terms()) {
            if (ma.co() != mb.ro()) continue;
            if (auto c = theta_product_shortcut(ma, mb)) {
                out.add(*c, ca * cb);
            } else {
                out += (ca * cb) * theta_product(ma, mb);
            }
        }
    return out;
}

SchurElt schur_bar(const SchurElt& a) {
    SchurElt p = to_phi(a);
    SchurElt out(a.n(), a.r(), SBasis::Phi);
    for (const auto& [m, c] : p.terms()) out += c.bar() * bar_of_phi(m);
    return from_phi(out, a.basis());
}

SchurElt schur_identity(int n, int r) {
    SchurElt out(n, r, SBasis::Theta);
    for (const auto& l : Composition::all(n, r)) out.add(diagonal_matrix(l), LaurentPoly(1));
    return out;
}

}  // namespace affschur
