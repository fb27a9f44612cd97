#include "qjf/hecke.hpp"

#include <algorithm>
#include <sstream>
#include <stdexcept>

#include "qjf/errors.hpp"
#include "qjf/rational.hpp"

namespace qjf {

namespace {

long floor_div(long a, long b) {  // b > 0
    return a >= 0 ? a / b : -((-a + b - 1) / b);
}

void require_ell(long ell) {
    if (ell < 1) throw std::invalid_argument("Hecke operator needs ell >= 1");
}

}  // namespace

LaurentView hecke_formal(const LaurentView& f, const HeckeSpec& spec) {
    require_ell(spec.ell);
    const long ell = spec.ell;
    for (const auto& [d, row] : f.rows())
        for (const auto& [e, c] : row)
            if (e % 2 != 0 && c != 0) {
                std::ostringstream os;
                os << "no divisor sum at half-integral p-exponent: (d, uexp) = (" << d << ", "
                   << e << ")";
                throw SourceRangeInsufficient(os.str());
            }
    const long pole_out = ell * f.pole_order();
    const long qmax_out = f.qmax() / ell;
    LaurentView out(pole_out, qmax_out, f.rmin2(), f.rmax2());
    std::vector<std::pair<long, int>> missing;
    for (long n = -pole_out; n <= qmax_out; ++n) {
        for (int e = f.rmin2(); e <= f.rmax2(); ++e) {
            if (e % 2 != 0) continue;
            Rat acc = 0;
            for (long a : divisors(ell)) {
                if (n % a != 0 || (e / 2) % a != 0) continue;
                const long dsrc = (ell / a) * (n / a);
                const int esrc = static_cast<int>(e / a);
                if (dsrc < -f.pole_order()) continue;  // exact zero below the pole
                if (!f.in_range(dsrc, esrc)) {
                    missing.emplace_back(dsrc, esrc);
                    continue;
                }
                acc += rat_pow(Rat(a), spec.k - 1) * f.coeff(dsrc, esrc);
            }
            if (acc != 0) out.set(n, e, acc);
        }
    }
    if (!missing.empty()) {
        std::sort(missing.begin(), missing.end());
        missing.erase(std::unique(missing.begin(), missing.end()), missing.end());
        std::ostringstream os;
        os << "window lacks source coefficients at";
        for (const auto& [d, e] : missing) os << " (" << d << ", " << e << ")";
        throw SourceRangeInsufficient(os.str());
    }
    return out;
}

FourierSeries hecke_formal(const FourierSeries& f, const HeckeSpec& spec) {
    require_ell(spec.ell);
    int emin = 0, emax = 0;
    for (const auto& [d, c] : f.coeffs()) {
        if (!c.den_is_one()) {
            std::ostringstream os;
            os << "coefficient at q^" << d
               << " is not a Laurent polynomial in u; no finite window is honest";
            throw SourceRangeInsufficient(os.str());
        }
        emin = std::min(emin, c.num().min_exp());
        emax = std::max(emax, c.num().max_exp());
    }
    const int stretch = static_cast<int>(spec.ell);
    const LaurentView hv = hecke_formal(f.to_laurent(stretch * emin, stretch * emax), spec);
    FourierSeries out(hv.qmax(), hv.pole_order());
    for (const auto& [d, row] : hv.rows()) {
        ULaurent num;
        for (const auto& [e, c] : row) num.add_term(e, c);
        out.set_coeff(d, PCoeff(num));
    }
    if (f.meta()) {
        FormMeta m = *f.meta();
        m.index2 *= spec.ell;
        m.level *= spec.ell;
        out = out.with_meta(m);
    }
    return out;
}

FourierSeries bscale(const FourierSeries& f, long N) {
    if (N < 1) throw std::invalid_argument("bscale needs N >= 1");
    if (N == 1) return f;
    FourierSeries out(N * f.qmax(), N * f.pole_order());
    for (const auto& [d, c] : f.coeffs()) out.set_coeff(N * d, c.substitute_u_power(static_cast<int>(N)));
    if (f.meta()) {
        FormMeta m = *f.meta();
        m.index2 *= N;
        m.level *= N;
        out = out.with_meta(m);
    }
    return out;
}

FourierSeries ub(const FourierSeries& f, long b) {
    if (b < 1) throw std::invalid_argument("ub needs b >= 1");
    if (b == 1) return f;
    FourierSeries out(f.qmax() / b, f.pole_order() / b);
    for (const auto& [d, c] : f.coeffs())
        if (d % b == 0) out.set_coeff(d / b, c);
    if (f.meta()) {
        FormMeta m = *f.meta();
        m.index2 *= b;
        m.level *= b;
        out = out.with_meta(m);
    }
    return out;
}

FourierSeries hecke_composite(const FourierSeries& f, long k, long ell) {
    require_ell(ell);
    FourierSeries acc;
    bool first = true;
    for (long a : divisors(ell)) {
        const FourierSeries t =
            bscale(ub(f, ell / a), a).scaled(rat_pow(Rat(a), k - 1));
        acc = first ? t : acc + t;
        first = false;
    }
    return acc;
}

std::vector<MobiusTerm> mobius_decomposition(long k, long kprime, long ell) {
    require_ell(ell);
    std::vector<MobiusTerm> out;
    for (long e : divisors(ell)) {
        Rat c = 0;
        for (long a : divisors(e)) {
            const long b = e / a;
            c += rat_pow(Rat(a), k - 1) * Rat(mobius_mu(b)) * rat_pow(Rat(b), kprime - 1);
        }
        out.push_back({e, c, ell / e});
    }
    return out;
}

AHForm hecke_ah(const AHForm& F, const HeckeSpec& spec) {
    require_ell(spec.ell);
    AHForm out;
    out.weight = F.weight;
    out.index2 = F.index2 * spec.ell;
    out.level = F.level * spec.ell;
    for (const auto& [rs, fe] : F.entries) {
        const long r = rs.first, s = rs.second;
        FourierSeries acc;
        bool first = true;
        for (long a : divisors(spec.ell)) {
            const Rat scale =
                rat_pow(Rat(spec.ell), r + s) * rat_pow(Rat(a), spec.k - 2 * r - s - 1);
            const FourierSeries t = bscale(ub(fe, spec.ell / a), a).scaled(scale);
            acc = first ? t : acc + t;
            first = false;
        }
        if (!acc.is_zero()) out.entries.emplace(rs, acc.without_meta());
    }
    return out;
}

AHForm bscale_ah(const AHForm& F, long N) {
    if (N < 1) throw std::invalid_argument("bscale needs N >= 1");
    AHForm out;
    out.weight = F.weight;
    out.index2 = F.index2 * N;
    out.level = F.level * N;
    for (const auto& [rs, fe] : F.entries) {
        const FourierSeries t = bscale(fe, N).scaled(rat_pow(Rat(N), -rs.first));
        if (!t.is_zero()) out.entries.emplace(rs, t.without_meta());
    }
    return out;
}

}  // namespace qjf
