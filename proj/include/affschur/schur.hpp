#pragma once

// The affine q-Schur algebra S(n, r) = End(sum_lambda x_lambda H): the standard
// basis phi_A, its normalization phihat_A, the Kazhdan-Lusztig basis theta_A,
// the bar involution and structure constants.

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "affschur/hecke.hpp"
#include "affschur/laurent.hpp"
#include "affschur/parabolic.hpp"

namespace affschur {

/// e_A is phi_A under the geometric identification and [A] is phihat_A; they
/// are kept as separate tags so conversions through t^{d_A} can be checked.
enum class SBasis { Phi, PhiHat, Theta, E, Bracket };

std::string to_string(SBasis b);
SBasis sbasis_from_string(const std::string& s);

class SchurElt {
public:
    using Terms = std::map<PeriodicMatrix, LaurentPoly>;

    SchurElt(int n, int r, SBasis basis) : n_(n), r_(r), basis_(basis) {}
    static SchurElt basis_elt(const PeriodicMatrix& a, SBasis basis, const LaurentPoly& c = LaurentPoly(1));

    int n() const { return n_; }
    int r() const { return r_; }
    SBasis basis() const { return basis_; }
    const Terms& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }
    std::size_t size() const { return terms_.size(); }

    LaurentPoly coeff(const PeriodicMatrix& a) const;
    void add(const PeriodicMatrix& a, const LaurentPoly& c);
    /// Support in theta_less order.
    std::vector<PeriodicMatrix> support() const;

    SchurElt& operator+=(const SchurElt& o);
    SchurElt& operator-=(const SchurElt& o);
    friend SchurElt operator+(SchurElt a, const SchurElt& b) { return a += b; }
    friend SchurElt operator-(SchurElt a, const SchurElt& b) { return a -= b; }
    friend SchurElt operator*(const LaurentPoly& c, const SchurElt& a);
    friend bool operator==(const SchurElt&, const SchurElt&) = default;

    std::string to_string() const;

private:
    void check_compatible(const SchurElt& o) const;

    int n_;
    int r_;
    SBasis basis_;
    Terms terms_;
};

/// t^{-l(w_{0,mu})} * sum over W_mu of t^{2 l(w)}.
LaurentPoly poincare_h(const Composition& mu);

/// phi_A(h) for h in x_mu H, mu = co(A); NotInModule otherwise.
HeckeElt phi_apply(const PeriodicMatrix& a, const HeckeElt& h);
/// Action of an arbitrary element on h, taken as an element of x_mu H.
HeckeElt schur_apply(const SchurElt& a, const Composition& mu, const HeckeElt& h);

/// Writes an element of H_{lambda mu} in the basis T_D of double-coset sums,
/// returned as coefficients of phi_{(lambda, d, mu)}.  Throws NotInModule when
/// the element is not constant on the double cosets it meets.
SchurElt decompose_in_TD(const HeckeElt& h, const Composition& lambda, const Composition& mu);

/// Composition product in the phi basis.
SchurElt phi_mul(const SchurElt& a, const SchurElt& b);

/// alpha_{z,w} = t^{-l(w+)} P_{z+, w+} for z, w in the same (lambda, mu).
LaurentPoly alpha_coeff(const AffPerm& z, const CosetTriple& triple);

const SchurElt& theta_in_phihat(const PeriodicMatrix& b);
const SchurElt& theta_in_phi(const PeriodicMatrix& b);

SchurElt basis_convert(const SchurElt& a, SBasis target);

/// Coefficient of theta_C in theta_A theta_B.
LaurentPoly g_struct(const PeriodicMatrix& a, const PeriodicMatrix& b, const PeriodicMatrix& c);
/// theta_A theta_B expanded in the theta basis.
const SchurElt& theta_product(const PeriodicMatrix& a, const PeriodicMatrix& b);
/// The single C with theta_A theta_B = theta_C when one factor is (lambda, 1, mu)
/// with nested parabolics on the appropriate side.
std::optional<PeriodicMatrix> theta_product_shortcut(const PeriodicMatrix& a, const PeriodicMatrix& b);

SchurElt theta_mul(const SchurElt& a, const SchurElt& b);

SchurElt schur_bar(const SchurElt& a);

/// sum over lambda of theta_{diag(lambda)}.
SchurElt schur_identity(int n, int r);

}  // namespace affschur
