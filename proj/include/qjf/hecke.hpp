#pragma once

#include <vector>

#include "qjf/anomaly.hpp"
#include "qjf/laurent_view.hpp"
#include "qjf/series.hpp"

namespace qjf {

// Parameters of the weight-k formal Hecke operator.
struct HeckeSpec {
    long k = 0;
    long ell = 1;  // >= 1
};

// Coefficient-level operator on an honest window: the output entry at (n, r) is
//   sum over a | gcd(ell, n, r) of a^{k-1} c(ell*n/a^2, r/a),
// with gcd(ell, 0, 0) = ell and negative arguments divided via their absolute
// values.  The q-range contracts to floor(qmax/ell), the pole deepens to
// ell*pole_order, and the u-window is kept.  Sources falling outside the
// u-window raise SourceRangeInsufficient listing the missing sites; so do
// entries at odd u-exponents, whose half-integral p-exponents admit no divisor
// sum.
LaurentView hecke_formal(const LaurentView& f, const HeckeSpec& spec);

// Convenience overload for series whose coefficients are Laurent polynomials
// in u: the window is the ell-fold stretch of the series' own u-support, which
// is honest because polynomial coefficients vanish identically beyond it.
// index2 and level tags scale by ell.
FourierSeries hecke_formal(const FourierSeries& f, const HeckeSpec& spec);

// Scaling operator: places c(d, r) at (N*d, N*r); index2 and level scale by N.
FourierSeries bscale(const FourierSeries& f, long N);

// Section operator: selects c(b*n, r) at (n, r).  Tagged with index2 and level
// scaled by b so scale-and-select composites carry the same bookkeeping as the
// direct operator.
FourierSeries ub(const FourierSeries& f, long b);

// The direct operator assembled as sum over a*b = ell of a^{k-1} bscale_a∘ub_b.
FourierSeries hecke_composite(const FourierSeries& f, long k, long ell);

// Decomposition of the weight-k operator through weight-kprime ones:
// T_{k,ell} = sum of c * bscale_e ∘ T_{kprime,d} over e*d = ell, where c is
// the Dirichlet convolution of a^{k-1} against mu(b) b^{kprime-1} at e.
struct MobiusTerm {
    long e = 1;
    Rat c = 0;
    long d = 1;
};
std::vector<MobiusTerm> mobius_decomposition(long k, long kprime, long ell);

// Entrywise action on an almost-holomorphic completion: entry (r, s) maps
// through the weight-(k - 2r - s) operator scaled by ell^{r+s}, so the (0,0)
// entry reproduces hecke_formal and the (1,0)/(0,1) entries match the
// anomaly-derivative relations.
AHForm hecke_ah(const AHForm& F, const HeckeSpec& spec);

// Scaling lift of a completion: beyond the plain coefficient scaling, entry
// (r, s) picks up N^{-r} (the non-holomorphic variable of the G2-direction
// rescales with the period, the A-direction one is scale-invariant).
AHForm bscale_ah(const AHForm& F, long N);

}  // namespace qjf
