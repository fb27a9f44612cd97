#pragma once

#include <map>
#include <optional>

#include "qjf/pcoeff.hpp"

namespace qjf {

enum class FormKind { holomorphic_quasi, meromorphic_quasi, unknown };

// Optional grading tag carried by a series.  index2 is the doubled index, so
// half-integral indices stay in integer arithmetic; level is the arithmetic
// level of the q-expansion.
struct FormMeta {
    long weight = 0;
    long index2 = 0;
    long level = 1;
    FormKind kind = FormKind::unknown;

    bool operator==(const FormMeta&) const = default;
};

class LaurentView;

// Truncated Fourier expansion: exponents d of q run over [-pole_order, qmax],
// each coefficient a rational function of u (u^2 = p).  Values are immutable
// once built; arithmetic returns new series whose qmax is the largest order
// still exact given the operands' truncations.
class FourierSeries {
public:
    FourierSeries() = default;  // zero with qmax 0
    explicit FourierSeries(long qmax, long pole_order = 0);
    static FourierSeries constant(const Rat& c, long qmax);

    long qmax() const { return qmax_; }
    long pole_order() const { return pole_order_; }
    const std::map<long, PCoeff>& coeffs() const { return c_; }
    bool is_zero() const { return c_.empty(); }

    // Stored coefficient: zero when absent in range, including the known-zero
    // region below -pole_order; asking beyond qmax is a contract violation.
    PCoeff coeff(long d) const;

    // Smallest exponent with a nonzero coefficient; qmax + 1 for the zero series.
    long min_known_exp() const;

    void set_coeff(long d, PCoeff c);  // builder use; drops zeros, enforces range

    const std::optional<FormMeta>& meta() const { return meta_; }
    FourierSeries with_meta(FormMeta m) const;
    FourierSeries without_meta() const;

    FourierSeries operator-() const;
    FourierSeries operator+(const FourierSeries& o) const;
    FourierSeries operator-(const FourierSeries& o) const;
    FourierSeries operator*(const FourierSeries& o) const;
    FourierSeries scaled(const Rat& c) const;
    FourierSeries scaled_coeff(const PCoeff& c) const;
    FourierSeries truncated(long new_qmax) const;

    // Multiplicative inverse via the triangular recurrence on the leading
    // coefficient; throws ZeroLeadingCoefficient for the zero series.  The
    // result's qmax shrinks by twice the leading exponent.
    FourierSeries invert() const;

    FourierSeries dtau() const;               // q d/dq, weight +2
    FourierSeries dx() const;                 // p d/dp on coefficients, weight +1
    FourierSeries substitute_p_power(long r) const;  // p |-> p^r on coefficients
    FourierSeries p_inverse() const { return substitute_p_power(-1); }

    // Honest window of Laurent coefficients (doubled u-exponents rmin2..rmax2),
    // via ascending expansion of each coefficient.
    LaurentView to_laurent(int rmin2, int rmax2) const;

    // Equality over the shared (pole_order, qmax) range; metadata ignored.
    bool operator==(const FourierSeries& o) const;

    FourierSeries pow(unsigned long e) const;

private:
    long pole_order_ = 0;
    long qmax_ = 0;
    std::map<long, PCoeff> c_;
    std::optional<FormMeta> meta_;
};

}  // namespace qjf
