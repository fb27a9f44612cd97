#pragma once

#include <vector>

#include "qjf/genpoly.hpp"
#include "qjf/series.hpp"

namespace qjf {

// Closed Fourier expansion of the n-th translation coefficient: constant term
// the symmetrized Bernoulli number B_n (the convention with B_1 = 0), an extra
// principal part at n = 1, and the double divisor sum
// -n sum_{k,d >= 1} d^{n-1} (p^k + (-1)^n p^{-k}) q^{kd}.
FourierSeries a_n_fourier(long n, long qmax);

// Oracle for the same family: entry n is n! times the w^{n-1} coefficient of
// the translation ratio Theta(z + w) / (Theta(z) Theta(w)), computed by
// Taylor-expanding the numerator in w and convolving against the w-expansion
// of 1/Theta(w).
std::vector<FourierSeries> theta_translate_ratio(long nmax, long qmax);

struct AnFunction {
    long n = 0;
    FourierSeries fourier;
    bool has_sym = false;
    GenPoly sym;  // representative in the free generators {A, G2, P, Pp, G4}
};

// Fourier expansion plus, for n <= nmax_symbolic, a fitted polynomial
// representative; the representation in the free generators is unique, and a
// disagreement with the closed expansion is FitFailed.
AnFunction a_n(long n, long qmax, long nmax_symbolic = 6);

}  // namespace qjf
