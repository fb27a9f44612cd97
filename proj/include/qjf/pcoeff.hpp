#pragma once

#include <map>

#include "qjf/laurent_poly.hpp"

namespace qjf {

enum class UParity { even, odd, mixed };

// One Fourier coefficient: a rational function num/den of u.  Canonical form
// keeps den an ordinary polynomial with nonzero constant term and monic
// leading coefficient, with gcd(num, den) = 1 after the u-power of num is set
// aside.  A nonzero constant term in den is exactly what makes the ascending
// u-expansion and u |-> 1/u loss-free, so the invariant is maintained by every
// operation rather than checked by callers.
class PCoeff {
public:
    PCoeff() = default;                        // zero
    explicit PCoeff(const Rat& c);
    explicit PCoeff(ULaurent num);             // denominator 1
    PCoeff(ULaurent num, ULaurent den);        // canonicalizes

    static PCoeff monomial(int uexp, const Rat& c);

    bool is_zero() const { return num_.is_zero(); }
    const ULaurent& num() const { return num_; }
    const ULaurent& den() const { return den_; }
    bool den_is_one() const { return den_ == ULaurent::one(); }

    PCoeff operator-() const;
    PCoeff operator+(const PCoeff& o) const;
    PCoeff operator-(const PCoeff& o) const;
    PCoeff operator*(const PCoeff& o) const;
    PCoeff operator/(const PCoeff& o) const;   // throws ZeroLeadingCoefficient on zero divisor
    PCoeff scaled(const Rat& c) const;

    PCoeff dx() const;                         // (u/2) d/du by the quotient rule
    PCoeff p_inverse() const;                  // u |-> 1/u
    PCoeff substitute_u_power(int r) const;    // u |-> u^r, r nonzero

    // Parity of the function under u |-> -u.
    UParity parity() const;

    // Honest Laurent coefficients of the ascending expansion around u = 0,
    // up to and including u^max_uexp.  Throws NotExpandable if the denominator
    // has a vanishing constant term (impossible in canonical form; defensive).
    std::map<int, Rat> expand_ascending(int max_uexp) const;

    // Exact equality of rational functions (cross-multiplied).
    bool operator==(const PCoeff& o) const;

private:
    void canonicalize();

    ULaurent num_;
    ULaurent den_ = ULaurent::one();
};

}  // namespace qjf
