#pragma once

#include "qjf/genpoly.hpp"
#include "qjf/series.hpp"

namespace qjf {

// Exact q-expansion of one generator through q^qmax, with grading metadata.
// Expansions are cached; the cache only ever grows and is read-only once an
// order has been computed.  Throws UnknownGenerator for names outside the
// table (CLI path), never for the enum overloads.
FourierSeries expand_generator(Gen g, long qmax);
FourierSeries expand_generator(const std::string& name, long qmax);

// Substitution homomorphism GenPoly -> series.
FourierSeries expand(const GenPoly& f, long qmax);

// G_k = -B_k/(2k) + sum_{n>=1} sigma_{k-1}(n) q^n for even k >= 2.
FourierSeries eisenstein_series(long k, long qmax);

// Modular discriminant q prod (1-q^n)^24 (helper for DeltaInv and tests).
FourierSeries discriminant_series(long qmax);

// Level-2 Eisenstein series 1 + 24 sum_n (sum of odd divisors of n) q^n,
// the natural output basis for the worked degree-2 Hecke example.
FourierSeries f2_series(long qmax);

// Heuristic order at which two representations of the same graded form must
// agree: 20 + 2|weight| + 12 * DeltaInv-degree, taken over both operands.
long equality_check_qmax(const GenPoly& a, const GenPoly& b);

// Truncation-checked semantic equality at the heuristic order.
bool equal_by_expansion(const GenPoly& a, const GenPoly& b);

}  // namespace qjf
