#pragma once

#include <array>
#include <map>
#include <vector>

#include "qjf/genpoly.hpp"
#include "qjf/laurent_view.hpp"
#include "qjf/series.hpp"

namespace qjf {

// Monomials G2^a G4^b G6^c of the given weight, the graded basis the
// quasi-modular fit solves against.
std::vector<Mono> quasimodular_monomials(long weight);

// Expresses a q-only series as a quasi-modular polynomial of the given weight.
// The system is deliberately overdetermined: every supplied order beyond the
// graded dimension acts as a consistency check, so the precondition demands
// dimension + 5 known coefficients.  With modulo_constant the q^0 equation is
// dropped (for series only defined up to an additive constant; still unique
// for positive weight).
// Errors: NotQuasimodular, InsufficientPrecision.
GenPoly fit_quasimodular(const FourierSeries& s, long weight,
                         bool modulo_constant = false);

// Result of reconstructing a two-variable series from its coefficient data:
//   even:  f = Theta^{2m} sum_{i=0..m}  fi[i](q) P^{m-i}
//   odd:   f = Theta^{2m} Pp sum_{i=2..m} fi[i](q) P^{m-i}
// with each fi a q-only series.  Slots below the first admissible i stay zero.
struct Reconstruction {
    long m = 0;
    bool odd = false;
    std::vector<FourierSeries> fi;  // indexed by i, size m + 1

    GenPoly term_poly(long i) const;       // Theta^{2m} (Pp) P^{m-i}
    FourierSeries resum(long qmax) const;  // expand-and-sum, for round trips
};

// The window is scanned for the elliptic transformation law and the full
// coefficients for u <-> 1/u parity before the q-order induction runs.
// Errors: SymmetryViolated, ResidualNonzero, WindowTooSmall.
Reconstruction reconstruct(const LaurentView& view, const FourierSeries& f,
                           long m, bool odd);

// Coefficients of the fixed meromorphic ansatz
//   f = (Theta^{2n-2}/Delta) sum_{i<=2n, j<=n-1, s<=1} c_{ijs}(q) A^i P^j Pp^s.
// dmax is the largest q-order through which every c_{ijs} is pinned by the
// supplied data; coefficients hold only orders <= the requested output depth.
struct JacobiAnsatzFit {
    long n = 0;
    long dmax = 0;
    std::map<std::array<int, 3>, FourierSeries> coeff;  // key {i, j, s}

    FourierSeries at(int i, int j, int s) const;  // zero series when absent
    FourierSeries resum(long qmax) const;
};

// Solves for the c_{ijs} in one exact global system over all q-orders at once:
// the leading (q^0) coefficients of the ansatz monomials are linearly
// dependent, so no order-by-order triangular pass exists and low-order
// unknowns are only pinned by higher-order data.  dmax_out = -1 returns every
// pinned order; asking beyond the pinned range is InsufficientPrecision.
// Errors: NotInSpan (message names the first failing q-order),
// InsufficientPrecision.
JacobiAnsatzFit fit_jacobi_ansatz(const FourierSeries& f, long n,
                                  long dmax_out = -1);

}  // namespace qjf
