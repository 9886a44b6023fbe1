#pragma once

// The extended affine Hecke algebra over Z[t, t^-1] (q = t^2): T-basis
// arithmetic, the bar involution, Kazhdan-Lusztig polynomials, the bases C and
// C', structure constants h_{x,y,z}, and the involutions j and Psi.

#include <atomic>
#include <cstddef>
#include <functional>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "affschur/affperm.hpp"
#include "affschur/laurent.hpp"
#include "affschur/memo.hpp"
#include "affschur/parabolic.hpp"

namespace affschur {

enum class HBasis { T, C };

std::string to_string(HBasis b);

class HeckeElt {
public:
    using Terms = std::map<AffPerm, LaurentPoly>;

    explicit HeckeElt(int r = 1, HBasis basis = HBasis::T) : r_(r), basis_(basis) {}
    /// c * T_w (or c * C_w).
    static HeckeElt basis_elt(const AffPerm& w, HBasis basis = HBasis::T, const LaurentPoly& c = LaurentPoly(1));

    int period() const { return r_; }
    HBasis basis() const { return basis_; }
    const Terms& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }
    std::size_t size() const { return terms_.size(); }

    LaurentPoly coeff(const AffPerm& w) const;
    void add(const AffPerm& w, const LaurentPoly& c);

    /// Support sorted by (length, window).
    std::vector<AffPerm> support() const;

    HeckeElt& operator+=(const HeckeElt& o);
    HeckeElt& operator-=(const HeckeElt& o);
    friend HeckeElt operator+(HeckeElt a, const HeckeElt& b) { return a += b; }
    friend HeckeElt operator-(HeckeElt a, const HeckeElt& b) { return a -= b; }
    friend HeckeElt operator*(const LaurentPoly& c, const HeckeElt& a);
    friend bool operator==(const HeckeElt&, const HeckeElt&) = default;

    std::string to_string() const;

private:
    void check_compatible(const HeckeElt& o) const;

    int r_;
    HBasis basis_;
    Terms terms_;
};

/// Per-period engine holding the KL memo tables and derived caches.
class HeckeAlgebra {
public:
    explicit HeckeAlgebra(int r) : r_(r) {}
    static HeckeAlgebra& shared(int r);

    int period() const { return r_; }

    /// P_{y,w} as a polynomial in q, stored in t with even exponents.
    LaurentPoly kl_poly(const AffPerm& y, const AffPerm& w) const;
    long kl_mu(const AffPerm& y, const AffPerm& w) const;

    /// bar(T_w) and C_w expanded in the T basis.
    const HeckeElt& bar_T(const AffPerm& w) const;
    const HeckeElt& c_elt(const AffPerm& w) const;
    /// C_x C_y in the C basis.
    const HeckeElt& c_product(const AffPerm& x, const AffPerm& y) const;

    /// Seed the KL table, e.g. from a cache file.  Entries are keyed by
    /// omega-normalized pairs; returns false if the pair was already known.
    bool preload(const AffPerm& y, const AffPerm& w, const LaurentPoly& p);
    /// Calls f(y, w, P) for every computed KL polynomial (normalized pairs).
    void for_each_kl(const std::function<void(const AffPerm&, const AffPerm&, const LaurentPoly&)>& f) const;
    std::size_t kl_table_size() const { return kl_memo_.size(); }
    /// Lookups answered by preloaded entries.
    std::size_t preloaded_hits() const { return preloaded_hits_.load(); }

private:
    struct KLEntry {
        LaurentPoly p;
        bool preloaded = false;
    };
    using MuList = std::vector<std::pair<AffPerm, long>>;

    LaurentPoly kl_normalized(const AffPerm& y, const AffPerm& w) const;
    const MuList& mu_list(const AffPerm& v) const;

    int r_;
    mutable ConcurrentMemo<std::pair<AffPerm, AffPerm>, KLEntry, AffPermPairHash> kl_memo_;
    mutable ConcurrentMemo<AffPerm, MuList, AffPermHash> mu_memo_;
    mutable ConcurrentMemo<AffPerm, HeckeElt, AffPermHash> bar_memo_;
    mutable ConcurrentMemo<AffPerm, HeckeElt, AffPermHash> celt_memo_;
    mutable ConcurrentMemo<std::pair<AffPerm, AffPerm>, HeckeElt, AffPermPairHash> cprod_memo_;
    mutable std::atomic<std::size_t> preloaded_hits_{0};
};

/// Product in the T basis; throws BasisMismatch for C-tagged input.
HeckeElt h_mul(const HeckeElt& a, const HeckeElt& b);
/// T_s * a and a * T_s for the generator s_i.
HeckeElt mul_generator_left(int i, const HeckeElt& a);
HeckeElt mul_generator_right(const HeckeElt& a, int i);

HeckeElt h_bar(const HeckeElt& a);

LaurentPoly kl_poly(const AffPerm& y, const AffPerm& w);
long kl_mu(const AffPerm& y, const AffPerm& w);

/// C_w and C'_w expanded in the T basis.
HeckeElt c_elt(const AffPerm& w);
HeckeElt cprime_elt(const AffPerm& w);

HeckeElt t_to_c(const HeckeElt& a);
HeckeElt c_to_t(const HeckeElt& a);

/// Coefficient of C_z in C_x C_y.
LaurentPoly h_struct(const AffPerm& x, const AffPerm& y, const AffPerm& z);

HeckeElt x_lambda(const Composition& lambda);
HeckeElt y_lambda(const Composition& lambda);
/// Sum of T_x over the double coset of the triple.
HeckeElt coset_sum_TD(const CosetTriple& t);

HeckeElt j_inv(const HeckeElt& a);
HeckeElt psi(const HeckeElt& a);

/// T_s a = q a = a T_s' for all s in I(lambda), s' in I(mu).
bool is_in_H_IJ(const HeckeElt& a, const Composition& lambda, const Composition& mu);

}  // namespace affschur
