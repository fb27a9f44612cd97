#pragma once

#include <map>
#include <vector>

#include "qjf/rational.hpp"

namespace qjf {

// Honest Laurent coefficients c(d, r) of a series over a finite window of
// half-integral p-exponents r.  The window bounds are stored doubled
// (rmin2 = 2*rmin, rmax2 = 2*rmax) so half-integers stay in integer
// arithmetic: the u-exponent of a term equals 2r.  Inside the declared range
// an absent entry is an exact zero; outside it the value is simply unknown,
// and asking for it is an error.
class LaurentView {
public:
    LaurentView(long pole_order, long qmax, int rmin2, int rmax2);

    long pole_order() const { return pole_order_; }
    long qmax() const { return qmax_; }
    int rmin2() const { return rmin2_; }
    int rmax2() const { return rmax2_; }

    bool in_range(long d, int uexp) const {
        return d >= -pole_order_ && d <= qmax_ && uexp >= rmin2_ && uexp <= rmax2_;
    }

    Rat coeff(long d, int uexp) const;  // throws std::out_of_range outside the window
    void set(long d, int uexp, const Rat& c);
    void add(long d, int uexp, const Rat& c);

    const std::map<long, std::map<int, Rat>>& rows() const { return c_; }

    LaurentView operator-() const;
    LaurentView operator+(const LaurentView& o) const;  // windows intersect, qmax min
    LaurentView operator-(const LaurentView& o) const;
    // Windowed convolution, clipped to the intersected window; exact whenever
    // the factors' u-supports fit inside their windows.
    LaurentView operator*(const LaurentView& o) const;
    LaurentView scaled(const Rat& c) const;

    bool is_zero() const;

    // Fiber-type series are only defined up to an additive constant; when the
    // flag is set, equality ignores the (d, r) = (0, 0) entry.
    bool modulo_constant() const { return modulo_constant_; }
    void set_modulo_constant(bool f) { modulo_constant_ = f; }

    // Equality over the intersection of ranges and windows.
    bool operator==(const LaurentView& o) const;

private:
    long pole_order_, qmax_;
    int rmin2_, rmax2_;
    bool modulo_constant_ = false;
    std::map<long, std::map<int, Rat>> c_;  // d -> (u-exponent -> coefficient)
};

// Scan of the index transformation law c(d - l*r + m*l^2, r - 2*l*m) = c(d, r)
// over a window, for the doubled index index2 = 2m and each shift l in
// lambdas.  Sites whose partner falls outside the window are skipped; sites
// whose partner has a fractional q-exponent are skipped too (only possible
// for odd u-exponents at odd index2).
struct SymmetryViolation {
    long d;
    int uexp;
    long lambda;
};

struct SymmetryReport {
    long checked = 0;
    std::vector<SymmetryViolation> violations;
    bool ok() const { return violations.empty(); }
};

// Throws WindowTooSmall when no site at all could be compared for any
// nonzero shift.
SymmetryReport check_elliptic_symmetry(const LaurentView& v, long index2,
                                       const std::vector<long>& lambdas);

}  // namespace qjf
