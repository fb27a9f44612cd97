#pragma once

#include <map>
#include <utility>

#include "qjf/rational.hpp"

namespace qjf {

// Laurent polynomial in the half-period variable u with rational coefficients.
// Convention: u^2 = p, so the exponent of u is twice the p-exponent; even
// u-exponents are integral p-powers, odd ones carry the p^{1/2} bookkeeping.
// Only nonzero terms are stored.
class ULaurent {
public:
    ULaurent() = default;

    static ULaurent one() { return monomial(0, Rat(1)); }
    static ULaurent monomial(int exp, const Rat& c);

    bool is_zero() const { return t_.empty(); }
    const std::map<int, Rat>& terms() const { return t_; }
    Rat coeff(int exp) const;
    int min_exp() const;  // requires nonzero
    int max_exp() const;  // requires nonzero

    void add_term(int exp, const Rat& c);  // accumulate, drop exact zeros

    ULaurent operator-() const;
    ULaurent operator+(const ULaurent& o) const;
    ULaurent operator-(const ULaurent& o) const;
    ULaurent operator*(const ULaurent& o) const;
    ULaurent scaled(const Rat& c) const;
    ULaurent shifted(int dexp) const;  // multiply by u^dexp

    // u |-> u^r on exponents; r may be negative (r = -1 is the reversal).
    ULaurent powered_u(int r) const;
    ULaurent reversed() const { return powered_u(-1); }

    // (u/2) d/du: the logarithmic derivative matching d/dx with p = e^x,
    // i.e. u^k picks up the factor k/2.
    ULaurent dx() const;

    bool operator==(const ULaurent& o) const { return t_ == o.t_; }

private:
    std::map<int, Rat> t_;
};

// Division with remainder on ordinary polynomials (min exponent >= 0,
// divisor nonzero): a = q*b + r with deg r < deg b.
std::pair<ULaurent, ULaurent> poly_divmod(const ULaurent& a, const ULaurent& b);

// Monic gcd of ordinary polynomials; gcd(0, 0) = 0.
ULaurent poly_gcd(ULaurent a, ULaurent b);

}  // namespace qjf
