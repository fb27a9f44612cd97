#pragma once

#include <map>

#include "qjf/genpoly.hpp"
#include "qjf/series.hpp"

namespace qjf {

// Expansion around z = 0 (p = e^z): a finite window of z-exponents, each
// coefficient a q-series free of u.  For a homogeneous input of weight k the
// z^r coefficient is quasi-modular of weight r + k.
struct ZExpansion {
    long zmin = 0;
    long zmax = 0;
    std::map<long, FourierSeries> c;

    FourierSeries coeff(long r) const;  // exact zero when absent, up to zmax
};

ZExpansion z_expand(const GenPoly& f, long zmax, long qmax);

// One generator's expansion around z = 0 through z^zmax, as a sparse map from
// z-exponent to q-series.  Exposed for the translation-ratio oracle, which
// convolves against the Theta inverse in the translation variable.
using ZSeries = std::map<long, FourierSeries>;
ZSeries generator_z_series(Gen g, long zmax, long qmax);

}  // namespace qjf
