#include "qjf/zexpand.hpp"

#include <stdexcept>

#include "qjf/generators.hpp"

namespace qjf {

namespace {

ZSeries z_constant(const FourierSeries& s) { return {{0, s}}; }

ZSeries z_mul(const ZSeries& a, const ZSeries& b, long zmax) {
    ZSeries out;
    for (const auto& [ea, ca] : a)
        for (const auto& [eb, cb] : b) {
            if (ea + eb > zmax) continue;
            const FourierSeries prod = ca * cb;
            auto it = out.find(ea + eb);
            if (it == out.end())
                out.emplace(ea + eb, prod);
            else
                it->second = it->second + prod;
        }
    for (auto it = out.begin(); it != out.end();)
        it = it->second.is_zero() ? out.erase(it) : std::next(it);
    return out;
}

ZSeries z_scaled(const ZSeries& a, const Rat& c) {
    ZSeries out;
    for (const auto& [e, s] : a) out.emplace(e, s.scaled(c));
    return out;
}

ZSeries z_add(ZSeries a, const ZSeries& b) {
    for (const auto& [e, s] : b) {
        auto it = a.find(e);
        if (it == a.end())
            a.emplace(e, s);
        else
            it->second = it->second + s;
    }
    return a;
}

ZSeries z_shift(const ZSeries& a, long de) {
    ZSeries out;
    for (const auto& [e, s] : a) out.emplace(e + de, s);
    return out;
}

// exp of a z-series with valuation >= 1.
ZSeries z_exp(const ZSeries& a, long zmax, long qmax) {
    if (!a.empty() && a.begin()->first < 1)
        throw std::logic_error("z_exp needs positive valuation");
    ZSeries acc = z_constant(FourierSeries::constant(1, qmax));
    ZSeries power = acc;
    Rat fact = 1;
    for (long j = 1; j * (a.empty() ? zmax + 1 : a.begin()->first) <= zmax; ++j) {
        power = z_mul(power, a, zmax);
        fact *= j;
        acc = z_add(acc, z_scaled(power, 1 / fact));
    }
    return acc;
}

// -2 sum_{k >= 2 even, k <= kmax} G_k z^k / k!
ZSeries eisenstein_tail(long kmax, long qmax, const Rat& scale) {
    ZSeries out;
    for (long k = 2; k <= kmax; k += 2)
        out.emplace(k, eisenstein_series(k, qmax)
                           .scaled(scale / factorial_rat(static_cast<unsigned long>(k)))
                           .without_meta());
    return out;
}

}  // namespace

ZSeries generator_z_series(Gen g, long zmax, long qmax) {
    switch (g) {
        case Gen::Theta:
            // z * exp(-2 sum G_k z^k / k!)
            return z_shift(z_exp(eisenstein_tail(zmax + 1, qmax, -2), zmax + 1, qmax), 1);
        case Gen::ThetaInv:
            return z_shift(z_exp(eisenstein_tail(zmax + 3, qmax, 2), zmax + 1, qmax), -1);
        case Gen::A: {
            // 1/z - 2 sum_{k even >= 2} G_k z^{k-1} / (k-1)!
            ZSeries out;
            out.emplace(-1, FourierSeries::constant(1, qmax));
            for (long k = 2; k - 1 <= zmax; k += 2)
                out.emplace(k - 1,
                            eisenstein_series(k, qmax)
                                .scaled(Rat(-2) / factorial_rat(static_cast<unsigned long>(k - 1)))
                                .without_meta());
            return out;
        }
        case Gen::P: {
            // 1/z^2 + 2 sum_{k even >= 4} G_k z^{k-2} / (k-2)!  (no G_2 term)
            ZSeries out;
            out.emplace(-2, FourierSeries::constant(1, qmax));
            for (long k = 4; k - 2 <= zmax; k += 2)
                out.emplace(k - 2,
                            eisenstein_series(k, qmax)
                                .scaled(Rat(2) / factorial_rat(static_cast<unsigned long>(k - 2)))
                                .without_meta());
            return out;
        }
        case Gen::Pp: {
            // term-wise z-derivative of the P expansion
            ZSeries p = generator_z_series(Gen::P, zmax + 1, qmax);
            ZSeries out;
            for (const auto& [e, s] : p)
                if (e != 0 && e - 1 <= zmax) out.emplace(e - 1, s.scaled(Rat(e)));
            return out;
        }
        case Gen::G2:
            return z_constant(eisenstein_series(2, qmax).without_meta());
        case Gen::G4:
            return z_constant(eisenstein_series(4, qmax).without_meta());
        case Gen::G6:
            return z_constant(eisenstein_series(6, qmax).without_meta());
        case Gen::DeltaInv:
            return z_constant(expand_generator(Gen::DeltaInv, qmax).without_meta());
    }
    throw std::logic_error("unhandled generator");
}

FourierSeries ZExpansion::coeff(long r) const {
    const auto it = c.find(r);
    if (it != c.end()) return it->second;
    // Everything below the computed valuation is an exact zero; only above the
    // window the value is unknown.
    if (r > zmax) throw std::out_of_range("z-exponent beyond the window");
    long q = 0;
    if (!c.empty()) q = c.begin()->second.qmax();
    return FourierSeries(q, 0);
}

ZExpansion z_expand(const GenPoly& f, long zmax, long qmax) {
    ZExpansion out;
    out.zmax = zmax;
    ZSeries acc;
    for (const auto& [m, coeff] : f.terms()) {
        // Factors with poles at z = 0 can pull high intermediate exponents back
        // below zmax, so products need that much headroom before clipping.
        long headroom = 0;
        for (Gen g : kAllGens) {
            const long val =
                g == Gen::P ? 2 : (g == Gen::Pp ? 3 : (g == Gen::A || g == Gen::ThetaInv ? 1 : 0));
            headroom += val * m.exp(g);
        }
        const long work = zmax + headroom;
        ZSeries term = z_constant(FourierSeries::constant(coeff, qmax));
        for (Gen g : kAllGens) {
            const int e = m.exp(g);
            if (e == 0) continue;
            const ZSeries zs = generator_z_series(g, work, qmax);
            for (int i = 0; i < e; ++i) term = z_mul(term, zs, work);
        }
        acc = z_add(acc, term);
    }
    for (const auto& [e, s] : acc) {
        if (e > zmax || s.is_zero()) continue;
        out.c.emplace(e, s);
        out.zmin = std::min(out.zmin, e);
    }
    return out;
}

}  // namespace qjf
