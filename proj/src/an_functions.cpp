#include "qjf/an_functions.hpp"

#include <algorithm>
#include <stdexcept>
#include <string>
#include <utility>

#include "qjf/errors.hpp"
#include "qjf/generators.hpp"
#include "qjf/laurent_view.hpp"
#include "qjf/linalg.hpp"
#include "qjf/zexpand.hpp"

namespace qjf {

FourierSeries a_n_fourier(long n, long qmax) {
    if (n < 0) throw std::invalid_argument("a_n_fourier: negative n");
    if (n == 0)
        return FourierSeries::constant(1, qmax).with_meta({0, 0, 1, FormKind::holomorphic_quasi});
    FourierSeries out(qmax, 0);
    auto bern = bernoulli_numbers(static_cast<unsigned long>(n));
    bern[1] = 0;
    PCoeff q0{ULaurent::monomial(0, bern[static_cast<size_t>(n)])};
    if (n == 1) {
        ULaurent num;
        num.add_term(2, 1);
        num.add_term(0, 1);
        ULaurent den;
        den.add_term(2, 2);
        den.add_term(0, -2);
        q0 = q0 + PCoeff(num, den);  // (p + 1) / (2 (p - 1))
    }
    if (!q0.is_zero()) out.set_coeff(0, q0);
    for (long d = 1; d <= qmax; ++d) {
        ULaurent acc;
        for (const long k : divisors(d)) {
            const Rat v = -Rat(n) * rat_pow(Rat(d / k), n - 1);
            acc.add_term(static_cast<int>(2 * k), v);
            acc.add_term(static_cast<int>(-2 * k), n % 2 == 0 ? v : -v);
        }
        if (!acc.is_zero()) out.set_coeff(d, PCoeff(acc));
    }
    return out.with_meta({n, 0, 1, FormKind::meromorphic_quasi});
}

std::vector<FourierSeries> theta_translate_ratio(long nmax, long qmax) {
    if (nmax < 0) throw std::invalid_argument("theta_translate_ratio: negative nmax");
    const FourierSeries thinv = expand_generator(Gen::ThetaInv, qmax).without_meta();
    std::vector<FourierSeries> s;  // s[k] = dx^k(Theta) / Theta
    FourierSeries dth = expand_generator(Gen::Theta, qmax).without_meta();
    for (long k = 0; k <= nmax; ++k) {
        s.push_back(dth * thinv);
        dth = dth.dx();
    }
    const ZSeries tiw = generator_z_series(Gen::ThetaInv, std::max<long>(nmax - 1, 0), qmax);
    std::vector<FourierSeries> out;
    for (long n = 0; n <= nmax; ++n) {
        FourierSeries acc(qmax, 0);
        for (long k = 0; k <= n; ++k) {
            const auto it = tiw.find(n - 1 - k);
            if (it == tiw.end()) continue;
            acc = acc + (s[static_cast<size_t>(k)] * it->second)
                            .scaled(1 / factorial_rat(static_cast<unsigned long>(k)));
        }
        out.push_back(acc.scaled(factorial_rat(static_cast<unsigned long>(n))));
    }
    return out;
}

namespace {

// Monomials A^a G2^b P^c Pp^d G4^e of the given weight.
std::vector<Mono> free_weight_monomials(long weight) {
    std::vector<Mono> out;
    for (int a = 0; a <= weight; ++a)
        for (int b = 0; a + 2 * b <= weight; ++b)
            for (int c = 0; a + 2 * b + 2 * c <= weight; ++c)
                for (int d = 0; a + 2 * b + 2 * c + 3 * d <= weight; ++d) {
                    const long rem = weight - a - 2 * b - 2 * c - 3 * d;
                    if (rem % 4 != 0) continue;
                    Mono m;
                    m.exp(Gen::A) = a;
                    m.exp(Gen::G2) = b;
                    m.exp(Gen::P) = c;
                    m.exp(Gen::Pp) = d;
                    m.exp(Gen::G4) = static_cast<int>(rem / 4);
                    out.push_back(m);
                }
    return out;
}

GenPoly fit_in_free_generators(const FourierSeries& target, long weight, long q_solve) {
    const auto monos = free_weight_monomials(weight);
    const int r2 = static_cast<int>(2 * q_solve + 8);
    std::vector<LaurentView> views;
    views.reserve(monos.size());
    for (const Mono& m : monos)
        views.push_back(expand(GenPoly::monomial(m, 1), q_solve).to_laurent(-r2, r2));
    const LaurentView tv = target.to_laurent(-r2, r2);
    std::vector<std::vector<Rat>> a;
    std::vector<Rat> b;
    for (long d = 0; d <= q_solve; ++d)
        for (int ue = -r2; ue <= r2; ++ue) {
            std::vector<Rat> row(monos.size());
            bool any = false;
            for (size_t t = 0; t < monos.size(); ++t) {
                row[t] = views[t].coeff(d, ue);
                if (row[t] != 0) any = true;
            }
            const Rat rv = tv.coeff(d, ue);
            if (!any && rv == 0) continue;
            a.push_back(std::move(row));
            b.push_back(rv);
        }
    const LinearSolution sol = solve_exact(std::move(a), std::move(b));
    if (!sol.consistent) throw FitFailed("free-generator system inconsistent");
    GenPoly out;
    for (size_t t = 0; t < monos.size(); ++t) {
        if (!sol.pinned[t]) throw FitFailed("free-generator fit left a coefficient free");
        if (sol.particular[t] != 0) out.add_term(monos[t], sol.particular[t]);
    }
    return out;
}

}  // namespace

AnFunction a_n(long n, long qmax, long nmax_symbolic) {
    AnFunction out;
    out.n = n;
    out.fourier = a_n_fourier(n, qmax);
    if (n > nmax_symbolic) return out;
    const long check_q = std::max<long>(qmax, 12);
    std::string why;
    for (const long q_solve : {6L, 10L}) {
        GenPoly sym;
        try {
            sym = fit_in_free_generators(a_n_fourier(n, q_solve), n, q_solve);
        } catch (const FitFailed& e) {
            why = e.what();
            continue;
        }
        if (expand(sym, check_q) == a_n_fourier(n, check_q)) {
            out.has_sym = true;
            out.sym = sym;
            return out;
        }
        why = "fitted representative disagrees with the closed expansion";
    }
    throw FitFailed(why);
}

}  // namespace qjf
