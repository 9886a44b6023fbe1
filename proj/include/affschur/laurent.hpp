#pragma once

// Exact sparse Laurent polynomials in one indeterminate t.
//
// The coefficient ring of every algebra in this library is A = Z[t, t^-1],
// with q = t^2.  Polynomials are stored as an ordered map exponent -> coefficient
// holding no zero entries, so structural equality is mathematical equality.

#include <gmpxx.h>

#include <climits>
#include <compare>
#include <initializer_list>
#include <map>
#include <string>
#include <utility>

#include "affschur/errors.hpp"

namespace affschur {

/// Degree reported for the zero polynomial.
inline constexpr int kNegInfDegree = INT_MIN;

template <class Coeff>
class BasicLaurent {
public:
    using Terms = std::map<int, Coeff>;

    BasicLaurent() = default;

    /// The constant polynomial c.
    BasicLaurent(const Coeff& c) {  // NOLINT(google-explicit-constructor)
        if (c != 0) terms_.emplace(0, c);
    }
    BasicLaurent(long c) : BasicLaurent(Coeff(c)) {}  // NOLINT
    BasicLaurent(int c) : BasicLaurent(Coeff(c)) {}   // NOLINT

    BasicLaurent(std::initializer_list<std::pair<const int, Coeff>> init) {
        for (const auto& [e, c] : init) add_term(e, c);
    }

    /// c * t^e
    static BasicLaurent monomial(int e, const Coeff& c = Coeff(1)) {
        BasicLaurent p;
        p.add_term(e, c);
        return p;
    }
    static BasicLaurent t_pow(int e) { return monomial(e); }
    static BasicLaurent q_pow(int e) { return monomial(2 * e); }

    const Terms& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }
    std::size_t size() const { return terms_.size(); }

    /// Highest exponent, or kNegInfDegree for zero.
    int deg() const { return terms_.empty() ? kNegInfDegree : terms_.rbegin()->first; }
    /// Lowest exponent, or INT_MAX for zero.
    int low_deg() const { return terms_.empty() ? INT_MAX : terms_.begin()->first; }

    Coeff coeff(int e) const {
        auto it = terms_.find(e);
        return it == terms_.end() ? Coeff(0) : it->second;
    }

    void add_term(int e, const Coeff& c) {
        if (c == 0) return;
        auto [it, inserted] = terms_.try_emplace(e, c);
        if (!inserted) {
            it->second += c;
            if (it->second == 0) terms_.erase(it);
        }
    }

    /// True when every exponent is even, i.e. the polynomial lies in Z[q, q^-1].
    bool lies_in_q() const {
        for (const auto& [e, c] : terms_)
            if (e % 2 != 0) return false;
        return true;
    }

    bool all_nonnegative() const {
        for (const auto& [e, c] : terms_)
            if (c < 0) return false;
        return true;
    }

    BasicLaurent bar() const {
        BasicLaurent p;
        for (const auto& [e, c] : terms_) p.terms_.emplace(-e, c);
        return p;
    }

    /// Multiplication by t^k.
    BasicLaurent shifted(int k) const {
        if (k == 0) return *this;
        BasicLaurent p;
        for (const auto& [e, c] : terms_) p.terms_.emplace_hint(p.terms_.end(), e + k, c);
        return p;
    }

    /// The substitution t -> -t.
    BasicLaurent sign_twisted() const {
        BasicLaurent p;
        for (const auto& [e, c] : terms_) p.terms_.emplace_hint(p.terms_.end(), e, (e % 2 != 0) ? Coeff(-c) : c);
        return p;
    }

    BasicLaurent& operator+=(const BasicLaurent& o) {
        for (const auto& [e, c] : o.terms_) add_term(e, c);
        return *this;
    }
    BasicLaurent& operator-=(const BasicLaurent& o) {
        for (const auto& [e, c] : o.terms_) add_term(e, Coeff(-c));
        return *this;
    }
    BasicLaurent& operator*=(const BasicLaurent& o) { return *this = *this * o; }

    friend BasicLaurent operator+(BasicLaurent a, const BasicLaurent& b) { return a += b; }
    friend BasicLaurent operator-(BasicLaurent a, const BasicLaurent& b) { return a -= b; }
    friend BasicLaurent operator-(const BasicLaurent& a) {
        BasicLaurent p;
        for (const auto& [e, c] : a.terms_) p.terms_.emplace_hint(p.terms_.end(), e, Coeff(-c));
        return p;
    }
    friend BasicLaurent operator*(const BasicLaurent& a, const BasicLaurent& b) {
        BasicLaurent p;
        if (a.is_zero() || b.is_zero()) return p;
        if (b.size() == 1) return a.scaled_monomial(b.terms_.begin()->first, b.terms_.begin()->second);
        if (a.size() == 1) return b.scaled_monomial(a.terms_.begin()->first, a.terms_.begin()->second);
        for (const auto& [ea, ca] : a.terms_)
            for (const auto& [eb, cb] : b.terms_) p.add_term(ea + eb, Coeff(ca * cb));
        return p;
    }
    friend BasicLaurent operator*(const Coeff& s, const BasicLaurent& a) {
        if (s == 0) return {};
        BasicLaurent p;
        for (const auto& [e, c] : a.terms_) p.terms_.emplace_hint(p.terms_.end(), e, Coeff(s * c));
        return p;
    }

    friend bool operator==(const BasicLaurent& a, const BasicLaurent& b) { return a.terms_ == b.terms_; }

    /// Human-readable form such as "t^-1 + 2 + t".
    std::string to_string() const {
        if (terms_.empty()) return "0";
        std::string out;
        bool first = true;
        for (const auto& [e, c] : terms_) {
            Coeff mag = c < 0 ? Coeff(-c) : c;
            if (first) {
                if (c < 0) out += "-";
            } else {
                out += c < 0 ? " - " : " + ";
            }
            first = false;
            std::string cs = coeff_string(mag);
            if (e == 0) {
                out += cs;
            } else {
                if (cs != "1") out += cs + "*";
                out += "t";
                if (e != 1) out += "^" + std::to_string(e);
            }
        }
        return out;
    }

private:
    BasicLaurent scaled_monomial(int k, const Coeff& s) const {
        BasicLaurent p;
        for (const auto& [e, c] : terms_) p.terms_.emplace_hint(p.terms_.end(), e + k, Coeff(c * s));
        return p;
    }
    static std::string coeff_string(const Coeff& c) {
        if constexpr (requires { c.get_str(); }) {
            return c.get_str();
        } else {
            return std::to_string(c);
        }
    }

    Terms terms_;
};

using LaurentPoly = BasicLaurent<mpz_class>;
using RationalLaurent = BasicLaurent<mpq_class>;

/// The quotient a / b in Z[t, t^-1]; throws InexactDivision or DivisionByZero.
LaurentPoly exact_div(const LaurentPoly& a, const LaurentPoly& b);

/// Exact evaluation at t = v.  Throws ZeroBase when v = 0.
mpq_class evaluate(const LaurentPoly& p, const mpq_class& v);

/// Same polynomial with rational coefficients.
RationalLaurent to_rational(const LaurentPoly& p);

/// t + t^-1
inline LaurentPoly t_plus_t_inv() { return LaurentPoly{{-1, mpz_class(1)}, {1, mpz_class(1)}}; }

}  // namespace affschur
