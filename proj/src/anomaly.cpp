#include "qjf/anomaly.hpp"

#include <vector>

#include "qjf/errors.hpp"
#include "qjf/generators.hpp"
#include "qjf/laurent_view.hpp"
#include "qjf/linalg.hpp"

namespace qjf {

GenPoly anomaly(const GenPoly& f, Gen which) {
    if (which != Gen::G2 && which != Gen::A)
        throw UnknownOperator("anomaly direction must be G2 or A");
    return f.partial(which);
}

namespace {

// Monomials of the exact target weight in the index-0 generators.  G6 must be
// in the span (the weight-8 image of the tau-derivative of G6 needs it) even
// though it makes some fits non-unique; any representative passing the exact
// cross-check below is a valid rule on the quotient.
const std::vector<Gen> kSpanGens = {Gen::A, Gen::G2, Gen::P, Gen::Pp, Gen::G4, Gen::G6};

void enum_monomials(size_t i, long remaining, Mono cur, std::vector<Mono>& out) {
    if (remaining == 0) {
        out.push_back(cur);
        return;
    }
    if (i == kSpanGens.size() || remaining < 0) return;
    const Gen g = kSpanGens[i];
    const long w = gen_weight(g);
    for (long e = 0; e * w <= remaining; ++e) {
        Mono m = cur;
        m.exp(g) = static_cast<int>(e);
        enum_monomials(i + 1, remaining - e * w, m, out);
    }
}

std::vector<Mono> index0_monomials(long weight) {
    std::vector<Mono> out;
    if (weight >= 0) enum_monomials(0, weight, Mono{}, out);
    return out;
}

GenPoly fit_rule(Gen g, bool tau) {
    const long target_weight = gen_weight(g) + (tau ? 2 : 1);
    GenPoly pre = GenPoly::constant(1);
    long span_weight = target_weight;
    if (g == Gen::Theta) {
        pre = GenPoly::generator(Gen::Theta);
        span_weight += 1;
    } else if (g == Gen::ThetaInv) {
        pre = GenPoly::generator(Gen::ThetaInv);
        span_weight -= 1;
    } else if (g == Gen::DeltaInv) {
        pre = GenPoly::generator(Gen::DeltaInv);
        span_weight += 12;
    }

    std::vector<GenPoly> cands;
    for (const Mono& m : index0_monomials(span_weight))
        cands.push_back(pre * GenPoly::monomial(m, 1));

    const long q_check = 21 + (g == Gen::DeltaInv ? 12 : 0);
    const char* label = tau ? "dtau" : "dx";
    if (cands.empty()) {
        const FourierSeries src = expand_generator(g, q_check);
        if ((tau ? src.dtau() : src.dx()).is_zero()) return GenPoly();
        throw RuleTableUnverified(std::string(label) + " rule for " + gen_name(g) +
                                  ": empty span but nonzero derivative");
    }

    // Solve on a cheap sample first; only the resulting rule pays for a deep
    // expansion in the mandatory cross-check, with one retry on a larger
    // sample should the first window have been too small to pin the fit.
    const int W2 = 12;
    const long pole = g == Gen::DeltaInv ? 1 : 0;
    for (long q_solve : {8L, 14L}) {
        std::vector<LaurentView> views;
        views.reserve(cands.size());
        for (const auto& c : cands) views.push_back(expand(c, q_solve).to_laurent(-W2, W2));
        const FourierSeries src = expand_generator(g, q_solve);
        const LaurentView tv = (tau ? src.dtau() : src.dx()).to_laurent(-W2, W2);

        std::vector<std::vector<Rat>> mat;
        std::vector<Rat> rhs;
        for (long d = -pole; d <= q_solve; ++d)
            for (int e = -W2; e <= W2; ++e) {
                std::vector<Rat> row(cands.size());
                bool any = false;
                for (size_t i = 0; i < cands.size(); ++i) {
                    row[i] = views[i].coeff(d, e);
                    any = any || row[i] != 0;
                }
                const Rat t = tv.coeff(d, e);
                if (any || t != 0) {
                    mat.push_back(std::move(row));
                    rhs.push_back(t);
                }
            }

        const LinearSolution sol = solve_exact(std::move(mat), std::move(rhs));
        if (!sol.consistent) continue;
        GenPoly rule;
        for (size_t i = 0; i < cands.size(); ++i)
            rule = rule + cands[i].scaled(sol.particular[i]);

        // Mandatory cross-check: exact coefficient equality of the expansions.
        const FourierSeries deep = expand_generator(g, q_check);
        if (expand(rule, q_check) == (tau ? deep.dtau() : deep.dx())) return rule;
    }
    throw RuleTableUnverified(std::string(label) + " rule for " + gen_name(g) +
                              ": expansion cross-check failed");
}

struct RuleTables {
    std::array<GenPoly, kNumGens> dx, dtau;
};

const RuleTables& rule_tables() {
    static const RuleTables tables = [] {
        RuleTables t;
        for (Gen g : kAllGens) {
            t.dx[static_cast<size_t>(g)] = fit_rule(g, false);
            t.dtau[static_cast<size_t>(g)] = fit_rule(g, true);
        }
        return t;
    }();
    return tables;
}

GenPoly leibniz(const GenPoly& f, const std::array<GenPoly, kNumGens>& rules) {
    GenPoly out;
    for (const auto& [m, c] : f.terms()) {
        for (Gen g : kAllGens) {
            const int a = m.exp(g);
            if (a == 0) continue;
            Mono rest = m;
            rest.exp(g) = a - 1;
            out = out + GenPoly::monomial(rest, c * a) * rules[static_cast<size_t>(g)];
        }
    }
    return out;
}

}  // namespace

const GenPoly& dx_rule(Gen g) { return rule_tables().dx[static_cast<size_t>(g)]; }
const GenPoly& dtau_rule(Gen g) { return rule_tables().dtau[static_cast<size_t>(g)]; }

GenPoly dx_symbolic(const GenPoly& f) { return leibniz(f, rule_tables().dx); }
GenPoly dtau_symbolic(const GenPoly& f) { return leibniz(f, rule_tables().dtau); }

FourierSeries AHForm::entry(int i, int j) const {
    auto it = entries.find({i, j});
    if (it != entries.end()) return it->second;
    long q = 0;
    if (!entries.empty()) q = entries.begin()->second.qmax();
    return FourierSeries(q, 0);
}

AHForm ah_completion(const GenPoly& f, long qmax) {
    AHForm out;
    if (f.is_homogeneous() && !f.is_zero()) {
        out.weight = f.weight();
        out.index2 = f.index2();
    }
    GenPoly gi = f;
    for (int i = 0; !gi.is_zero(); ++i) {
        GenPoly gij = gi;
        for (int j = 0; !gij.is_zero(); ++j) {
            const Rat norm = 1 / (factorial_rat(static_cast<unsigned long>(i)) *
                                  factorial_rat(static_cast<unsigned long>(j)));
            const FourierSeries e = expand(gij.scaled(norm), qmax);
            if (!e.is_zero()) out.entries.emplace(std::make_pair(i, j), e);
            gij = gij.partial(Gen::A);
        }
        gi = gi.partial(Gen::G2);
    }
    return out;
}

}  // namespace qjf
