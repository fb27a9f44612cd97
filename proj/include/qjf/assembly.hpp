#pragma once

#include <array>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "qjf/fock.hpp"
#include "qjf/genpoly.hpp"
#include "qjf/laurent_view.hpp"
#include "qjf/series.hpp"

namespace qjf {

// Identifies one bracket series: genus, number of points, the insertion tuple
// and the tautological tag.  Insertions are canonically sorted so equivalent
// keys collide.
struct GWSeriesKey {
    long g = 0;
    long n = 1;
    std::vector<WeightedPartition> insertions;
    std::string taut = "1";

    void canonicalize();
    auto operator<=>(const GWSeriesKey&) const = default;
};

std::string key_to_string(const GWSeriesKey& key);  // for error messages

// Input table of curve counts.  A finite table cannot distinguish "zero
// series" from "never computed", so looking up a key with no stored series is
// an error unless the caller opts into default_zero; absent (d, r) pairs
// inside a stored series are honest zeros.  The stored (d, r) are the
// exponents of q^d (-p)^r.
class GWTable {
public:
    void set(GWSeriesKey key, long d, long r, const Rat& value);
    bool has_series(const GWSeriesKey& key) const;
    std::size_t series_count() const { return rows_.size(); }

    // The stored series on the requested window, as coefficients of q^d p^r
    // (the (-1)^r of the (-p)^r convention is folded in here).
    // Errors: MissingTableEntry (names the key) unless default_zero.
    LaurentView series(const GWSeriesKey& key, long pole_order, long qmax,
                       int rmin2, int rmax2, bool default_zero) const;

    const std::map<GWSeriesKey, std::map<std::pair<long, long>, Rat>>& rows() const {
        return rows_;
    }

private:
    std::map<GWSeriesKey, std::map<std::pair<long, long>, Rat>> rows_;
};

// Weight and scale exponents of the multiple-cover lift of one bracket:
// k = n(2g - 2 + N) + sum_i wt(lambda_i), e = sum_i (deg - n - wt)(lambda_i).
struct LiftExponents {
    long k = 0;
    long e = 0;
};
LiftExponents lift_exponents(long g, long n,
                             const std::vector<WeightedPartition>& insertions,
                             const K3Model& model);

// The imprimitive bracket from the primitive one: ell^e * T_{k,ell} f, where
// T is the coefficient-level operator of weight k.  The window must cover the
// source sites the operator reads (errors propagate from it).
LaurentView multiple_cover_lift(const LaurentView& f, long k, long e, long ell);

// The r = 0 invariant plus the finitely many r >= 1 invariants of a
// fiber-class bracket; (a, b) are the exponents of the closed double sum.
struct FiberInput {
    long a = 0;
    long b = 0;
    Rat inv0 = 0;
    std::vector<std::pair<long, Rat>> invr;  // (r >= 1, value)
};

// Closed form of the fiber-class generating series, defined modulo an
// additive constant (the view has modulo_constant set and its q^0 p^0 entry
// normalized to zero):
//   inv0 * sum_{d,k >= 1} k^a d^b q^{kd}
//   + sum_{r >= 1} (-1)^r invr(r) * ((-1/(b+1)) (p d/dp)^a A_{b+1})|_{p -> p^r}
// with A_. the translation-coefficient functions.
// Errors: NegativeExponent when a or b is negative.
LaurentView fiber_class_series(const FiberInput& inp, long qmax, int rmin2,
                               int rmax2);

// (-1)^{n-1} Theta^{2n-2} / Delta: the closed evaluation of the two-point
// bracket of Lagrangian fiber classes (n >= 1).
GenPoly lagrangian_two_point(long n);

// Theta^2 (P + 2 G2): the kernel of the corrected two-point function.
// Series-identical to minus Theta^2 times the second log-derivative of Theta;
// its G2-anomaly is 2 Theta^2.
GenPoly two_point_kernel();

// kernel^n * Theta^{-2} / Delta (n >= 0).
GenPoly two_point_correction(long n);

// Theta series of the rescaled even rank-8 root lattice: sum over lattice
// vectors v of q^{twist * (v,v)/2}, by exact ball enumeration of the Cartan
// Gram form (twist >= 1; twist 2 gives the level-2 rescaling).
FourierSeries e8_theta(long qmax, long twist);

// Degree-zero correction term of the trace series: the ring factor
// (1/2) trace * kernel^n Theta^{-2} / Delta times the level-2 factor E4(q^2).
struct DtCorrection {
    GenPoly base;                // generator-ring factor
    FourierSeries level_factor;  // E4(q^2) through qmax
    FormMeta meta;               // weight -6, index2 2n-2, level 2
    FourierSeries series;        // expanded product through qmax
};
DtCorrection dt_correction(long n, const Rat& trace, long qmax);

// Residual of the genus-0 three-point anomaly identity: the G2-anomaly of the
// three-point series (computed by the meromorphic-ansatz fit followed by the
// symbolic anomaly) minus the right-hand side built from the table -- the six
// two-point brackets against U-modified cup products, minus the Gram-inverse
// double sum of the T-derivation terms.  A zero residual means the table
// satisfies the anomaly identity at this truncation.
// Errors: MissingTableEntry, FitFailed/NotInSpan/InsufficientPrecision from
// the fits, DimensionMismatch when a lambda is not a partition of n.
LaurentView hae_residual_g0n3(const GWTable& table,
                              const std::array<WeightedPartition, 3>& lambdas,
                              long n, long qmax, int rmin2, int rmax2,
                              const K3Model& model, bool default_zero = false);

}  // namespace qjf
