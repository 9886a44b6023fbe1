#include "affschur/laurent.hpp"

#include <vector>

namespace affschur {

LaurentPoly exact_div(const LaurentPoly& a, const LaurentPoly& b) {
    if (b.is_zero()) throw DivisionByZero();
    if (a.is_zero()) return {};

    // Strip the lowest powers of t so both sides become ordinary polynomials
    // with nonzero constant term, then run long division from the top.
    const int a_low = a.low_deg();
    const int b_low = b.low_deg();
    const int b_deg = b.deg() - b_low;
    std::vector<mpz_class> num(static_cast<std::size_t>(a.deg() - a_low + 1));
    std::vector<mpz_class> den(static_cast<std::size_t>(b_deg + 1));
    for (const auto& [e, c] : a.terms()) num[static_cast<std::size_t>(e - a_low)] = c;
    for (const auto& [e, c] : b.terms()) den[static_cast<std::size_t>(e - b_low)] = c;

    const int num_deg = static_cast<int>(num.size()) - 1;
    if (num_deg < b_deg) throw InexactDivision();

    const mpz_class& lead = den.back();
    LaurentPoly quotient;
    for (int k = num_deg - b_deg; k >= 0; --k) {
        mpz_class& top = num[static_cast<std::size_t>(k + b_deg)];
        if (top == 0) continue;
        if (!mpz_divisible_p(top.get_mpz_t(), lead.get_mpz_t())) throw InexactDivision();
        mpz_class qk = top / lead;
        for (int i = 0; i <= b_deg; ++i) num[static_cast<std::size_t>(k + i)] -= qk * den[static_cast<std::size_t>(i)];
        quotient.add_term(k + a_low - b_low, qk);
    }
    for (const auto& c : num)
        if (c != 0) throw InexactDivision();
    return quotient;
}

mpq_class evaluate(const LaurentPoly& p, const mpq_class& v) {
    if (v == 0) throw ZeroBase();
    mpq_class sum = 0;
    for (const auto& [e, c] : p.terms()) {
        mpq_class power = 1;
        mpq_class base = e >= 0 ? v : mpq_class(1) / v;
        for (int i = 0; i < (e >= 0 ? e : -e); ++i) power *= base;
        sum += mpq_class(c) * power;
    }
    sum.canonicalize();
    return sum;
}

RationalLaurent to_rational(const LaurentPoly& p) {
    RationalLaurent out;
    for (const auto& [e, c] : p.terms()) out.add_term(e, mpq_class(c));
    return out;
}

}  // namespace affschur
