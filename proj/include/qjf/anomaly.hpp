#pragma once

#include <map>
#include <utility>

#include "qjf/genpoly.hpp"
#include "qjf/series.hpp"

namespace qjf {

// Formal anomaly partials.  Only the G2- and A-directions are exposed: the
// quotient relations among the generators never involve G2 or A, so these two
// partials descend to well-defined derivations.
GenPoly anomaly(const GenPoly& f, Gen which);  // which in {G2, A}

// Derivative rule tables for the generators, fitted once by ansatz against
// q-expansions and cross-checked exactly on the full expansion to q^25;
// throws RuleTableUnverified (at first use) if any rule fails its check.
const GenPoly& dx_rule(Gen g);
const GenPoly& dtau_rule(Gen g);

// Leibniz extension of the rule tables.
GenPoly dx_symbolic(const GenPoly& f);
GenPoly dtau_symbolic(const GenPoly& f);

// Almost-holomorphic completion: the array f_{i,j} = (1/i!j!) d^i/dG2^i
// d^j/dA^j f, expanded.  Finitely many entries are nonzero since both
// partials strictly lower the generator degree.
struct AHForm {
    long weight = 0;   // weight of the (0,0) entry's source
    long index2 = 0;
    long level = 1;
    std::map<std::pair<int, int>, FourierSeries> entries;

    FourierSeries entry(int i, int j) const;  // zero series when absent
};

AHForm ah_completion(const GenPoly& f, long qmax);

}  // namespace qjf
