#include "qjf/fit.hpp"

#include <algorithm>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <utility>

#include "qjf/errors.hpp"
#include "qjf/generators.hpp"
#include "qjf/linalg.hpp"

namespace qjf {

namespace {

Rat binomial(long n, long k) {
    if (k < 0 || k > n) return 0;
    Rat out = 1;
    for (long j = 1; j <= k; ++j) out = out * Rat(n - k + j) / Rat(j);
    return out;
}

// A coefficient constant in u, or NotQuasimodular.
Rat scalar_of(const PCoeff& c) {
    if (c.is_zero()) return 0;
    if (!c.den_is_one() || c.num().min_exp() != 0 || c.num().max_exp() != 0)
        throw NotQuasimodular("coefficient depends on u");
    return c.num().coeff(0);
}

}  // namespace

std::vector<Mono> quasimodular_monomials(long weight) {
    std::vector<Mono> out;
    if (weight < 0) return out;
    for (int a = 0; 2 * a <= weight; ++a)
        for (int b = 0; 2 * a + 4 * b <= weight; ++b) {
            const long rem = weight - 2 * a - 4 * b;
            if (rem % 6 != 0) continue;
            Mono m;
            m.exp(Gen::G2) = a;
            m.exp(Gen::G4) = b;
            m.exp(Gen::G6) = static_cast<int>(rem / 6);
            out.push_back(m);
        }
    return out;
}

GenPoly fit_quasimodular(const FourierSeries& s, long weight, bool modulo_constant) {
    for (const auto& [d, c] : s.coeffs())
        if (d < 0 && !c.is_zero()) throw NotQuasimodular("series has a pole in q");
    const auto monos = quasimodular_monomials(weight);
    const long dim = static_cast<long>(monos.size());
    const long d0 = modulo_constant ? 1 : 0;
    if (s.qmax() + 1 - d0 < dim + 5)
        throw InsufficientPrecision("quasi-modular fit at weight " + std::to_string(weight) +
                                    " needs " + std::to_string(dim + 5) + " coefficients");
    std::vector<FourierSeries> basis;
    basis.reserve(monos.size());
    for (const Mono& m : monos) basis.push_back(expand(GenPoly::monomial(m, 1), s.qmax()));
    std::vector<std::vector<Rat>> a;
    std::vector<Rat> b;
    for (long d = d0; d <= s.qmax(); ++d) {
        std::vector<Rat> row(monos.size());
        for (size_t t = 0; t < monos.size(); ++t) row[t] = scalar_of(basis[t].coeff(d));
        a.push_back(std::move(row));
        b.push_back(scalar_of(s.coeff(d)));
    }
    const LinearSolution sol = solve_exact(std::move(a), std::move(b));
    if (!sol.consistent) throw NotQuasimodular("overdetermined system inconsistent");
    GenPoly out;
    for (size_t t = 0; t < monos.size(); ++t) {
        if (!sol.pinned[t]) {
            // Only the pure constant can stay free, and only because its q^0
            // equation was dropped; it defaults to zero.
            if (modulo_constant && monos[t].is_trivial()) continue;
            throw InsufficientPrecision("quasi-modular fit left a coefficient free");
        }
        if (sol.particular[t] != 0) out.add_term(monos[t], sol.particular[t]);
    }
    return out;
}

namespace {

// r / (u^2 - u^{-2}) as a Laurent polynomial, when divisible.
std::optional<ULaurent> divide_by_w(const ULaurent& r) {
    if (r.is_zero()) return ULaurent{};
    const ULaurent a = r.shifted(2);  // u^2 r = (u^4 - 1) quotient
    const int t = std::min(0, a.min_exp());
    ULaurent den;
    den.add_term(4, 1);
    den.add_term(0, -1);
    auto [q, rem] = poly_divmod(a.shifted(-t), den);
    if (!rem.is_zero()) return std::nullopt;
    return q.shifted(t);
}

// Coefficients of a u <-> 1/u symmetric even Laurent polynomial as a
// polynomial in y = (u - 1/u)^2, peeled from the top exponent; nullopt when
// the input is not of that shape or exceeds degree maxdeg.
std::optional<std::vector<Rat>> y_coefficients(ULaurent r, const std::vector<ULaurent>& ypow,
                                               long maxdeg) {
    std::vector<Rat> out(static_cast<size_t>(std::max<long>(maxdeg + 1, 0)), Rat(0));
    while (!r.is_zero()) {
        const int e = r.max_exp();
        if (e < 0 || e % 2 != 0 || e / 2 > maxdeg) return std::nullopt;
        const Rat c = r.coeff(e);
        out[static_cast<size_t>(e / 2)] = c;
        r = r - ypow[static_cast<size_t>(e / 2)].scaled(c);
    }
    return out;
}

}  // namespace

GenPoly Reconstruction::term_poly(long i) const {
    Mono mo;
    mo.exp(Gen::Theta) = static_cast<int>(2 * m);
    mo.exp(Gen::P) = static_cast<int>(m - i);
    if (odd) mo.exp(Gen::Pp) = 1;
    return GenPoly::monomial(mo, 1);
}

FourierSeries Reconstruction::resum(long qmax) const {
    const long pole = fi.empty() ? 0 : fi.front().pole_order();
    FourierSeries acc(qmax, pole);
    for (long i = odd ? 2 : 0; i <= m; ++i) {
        const FourierSeries& c = fi[static_cast<size_t>(i)];
        if (c.is_zero()) continue;
        acc = acc + expand(term_poly(i), qmax + pole) * c;
    }
    return acc;
}

Reconstruction reconstruct(const LaurentView& view, const FourierSeries& f, long m, bool odd) {
    if (m < 0) throw std::invalid_argument("reconstruct: negative index");
    const SymmetryReport rep = check_elliptic_symmetry(view, 2 * m, {-1, 1});
    if (!rep.ok())
        throw SymmetryViolated("elliptic transformation law fails at " +
                               std::to_string(rep.violations.size()) + " site(s)");
    for (const auto& [d, c] : f.coeffs())
        if (!(c.p_inverse() == (odd ? -c : c)))
            throw SymmetryViolated("u <-> 1/u parity fails at q-order " + std::to_string(d));

    const long base = odd ? 2 : 0;
    const long pole = f.pole_order();
    const long qmax = f.qmax();
    const long deep = qmax + pole;

    // The q^0 part of Theta^{2m} P^{m-i} is y^i + higher powers of
    // y = (u - 1/u)^2 (and the odd basis carries one factor
    // -(u^2 - 1/u^2)/y^2 more), so each q-order solves unitriangularly once
    // the remainder is written in y.
    std::vector<FourierSeries> basis(static_cast<size_t>(m) + 1);
    for (long i = base; i <= m; ++i)
        basis[static_cast<size_t>(i)] = expand(Reconstruction{m, odd, {}}.term_poly(i), deep);

    ULaurent y;
    y.add_term(2, 1);
    y.add_term(0, -2);
    y.add_term(-2, 1);
    std::vector<ULaurent> ypow{ULaurent::one()};
    for (long j = 1; j <= m; ++j) ypow.push_back(ypow.back() * y);

    std::vector<std::map<long, Rat>> vals(static_cast<size_t>(m) + 1);
    for (long d = -pole; d <= qmax; ++d) {
        PCoeff r = f.coeff(d);
        for (long i = base; i <= m; ++i)
            for (const auto& [e, v] : vals[static_cast<size_t>(i)]) {
                const long d2 = d - e;
                if (d2 >= 1) r = r - basis[static_cast<size_t>(i)].coeff(d2).scaled(v);
            }
        ULaurent rn;
        if (!r.is_zero()) {
            if (!r.den_is_one())
                throw ResidualNonzero("remainder keeps a denominator at q-order " +
                                      std::to_string(d));
            rn = r.num();
        }
        if (odd) {
            auto q = divide_by_w(rn);
            if (!q)
                throw ResidualNonzero("remainder not divisible by u^2 - 1/u^2 at q-order " +
                                      std::to_string(d));
            rn = -*q;
        }
        const auto rc = y_coefficients(rn, ypow, m - base);
        if (!rc)
            throw ResidualNonzero("remainder outside the expected y-range at q-order " +
                                  std::to_string(d));
        std::vector<Rat> x(static_cast<size_t>(m) + 1, Rat(0));
        for (long i = base; i <= m; ++i) {
            Rat v = (*rc)[static_cast<size_t>(i - base)];
            for (long ip = base; ip < i; ++ip)
                v -= x[static_cast<size_t>(ip)] * binomial(m - ip, i - ip) /
                     rat_pow(Rat(12), i - ip);
            x[static_cast<size_t>(i)] = v;
            if (v != 0) vals[static_cast<size_t>(i)][d] = v;
        }
    }

    Reconstruction rec;
    rec.m = m;
    rec.odd = odd;
    rec.fi.assign(static_cast<size_t>(m) + 1, FourierSeries(qmax, pole));
    for (long i = base; i <= m; ++i)
        for (const auto& [d, v] : vals[static_cast<size_t>(i)])
            rec.fi[static_cast<size_t>(i)].set_coeff(d, PCoeff(v));
    return rec;
}

namespace {

std::vector<std::array<int, 3>> ansatz_monomials(long n) {
    std::vector<std::array<int, 3>> out;
    for (int i = 0; i <= 2 * n; ++i)
        for (int j = 0; j <= n - 1; ++j)
            for (int s = 0; s <= 1; ++s) out.push_back({i, j, s});
    return out;
}

Mono ansatz_mono(const std::array<int, 3>& ijs) {
    Mono mo;
    mo.exp(Gen::A) = ijs[0];
    mo.exp(Gen::P) = ijs[1];
    mo.exp(Gen::Pp) = ijs[2];
    return mo;
}

}  // namespace

FourierSeries JacobiAnsatzFit::at(int i, int j, int s) const {
    const auto it = coeff.find({i, j, s});
    if (it != coeff.end()) return it->second;
    return FourierSeries(coeff.empty() ? 0 : coeff.begin()->second.qmax(), 0);
}

FourierSeries JacobiAnsatzFit::resum(long qmax) const {
    FourierSeries acc(qmax, 1);
    for (const auto& [ijs, c] : coeff) {
        Mono mo = ansatz_mono(ijs);
        mo.exp(Gen::Theta) = static_cast<int>(2 * n - 2);
        mo.exp(Gen::DeltaInv) = 1;
        acc = acc + expand(GenPoly::monomial(mo, 1), qmax + 1) * c;
    }
    return acc;
}

JacobiAnsatzFit fit_jacobi_ansatz(const FourierSeries& f, long n, long dmax_out) {
    if (n < 1) throw std::invalid_argument("fit_jacobi_ansatz: n must be >= 1");
    const auto monos = ansatz_monomials(n);
    const long tcount = static_cast<long>(monos.size());

    // Strip the prefactor: p = f Delta / Theta^{2n-2} must equal the bare
    // polynomial sum of the ansatz.
    const long q1 = f.qmax() + f.pole_order() + 1;
    FourierSeries p = f * discriminant_series(q1);
    if (n >= 2)
        p = p * expand_generator(Gen::ThetaInv, q1).pow(static_cast<unsigned long>(2 * n - 2));
    for (long d = -p.pole_order(); d < 0; ++d)
        if (!p.coeff(d).is_zero())
            throw NotInSpan("pole survives at q-order " + std::to_string(d));

    const long dsol = p.qmax();

    // Clearing denominators: the coefficient denominator of A^i P^j Pp^s
    // divides (u^2 - 1)^{i + 2j + 3s}, bounded by 4n + 1.
    ULaurent u2m1;
    u2m1.add_term(2, 1);
    u2m1.add_term(0, -1);
    ULaurent dpoly = ULaurent::one();
    for (long j = 0; j < 4 * n + 1; ++j) dpoly = dpoly * u2m1;
    const PCoeff dclear{dpoly};

    std::vector<std::vector<ULaurent>> w(monos.size());
    for (size_t t = 0; t < monos.size(); ++t) {
        const FourierSeries ms = expand(GenPoly::monomial(ansatz_mono(monos[t]), 1), dsol);
        w[t].resize(static_cast<size_t>(dsol) + 1);
        for (long e = 0; e <= dsol; ++e) {
            const PCoeff cleared = ms.coeff(e) * dclear;
            if (!cleared.den_is_one())
                throw std::logic_error("ansatz coefficient denominator out of bounds");
            w[t][static_cast<size_t>(e)] = cleared.num();
        }
    }
    std::vector<ULaurent> rhs(static_cast<size_t>(dsol) + 1);
    for (long d = 0; d <= dsol; ++d) {
        const PCoeff cleared = p.coeff(d) * dclear;
        if (!cleared.den_is_one())
            throw NotInSpan("denominator outside the ansatz at q-order " + std::to_string(d));
        rhs[static_cast<size_t>(d)] = cleared.num();
    }

    // One global exact system, rows indexed by (q-order, u-exponent), columns
    // by (coefficient order d1, monomial).
    const auto build = [&](long top) {
        std::pair<std::vector<std::vector<Rat>>, std::vector<Rat>> sys;
        const size_t cols = static_cast<size_t>(tcount * (top + 1));
        for (long d = 0; d <= top; ++d) {
            std::set<int> exps;
            for (const auto& [ue, c] : rhs[static_cast<size_t>(d)].terms()) exps.insert(ue);
            for (size_t t = 0; t < monos.size(); ++t)
                for (long e = 0; e <= d; ++e)
                    for (const auto& [ue, c] : w[t][static_cast<size_t>(e)].terms())
                        exps.insert(ue);
            for (const int ue : exps) {
                std::vector<Rat> row(cols, Rat(0));
                for (long d1 = 0; d1 <= d; ++d1)
                    for (long t = 0; t < tcount; ++t)
                        row[static_cast<size_t>(d1 * tcount + t)] =
                            w[static_cast<size_t>(t)][static_cast<size_t>(d - d1)].coeff(ue);
                sys.first.push_back(std::move(row));
                sys.second.push_back(rhs[static_cast<size_t>(d)].coeff(ue));
            }
        }
        return sys;
    };

    auto [a, b] = build(dsol);
    const LinearSolution sol = solve_exact(std::move(a), std::move(b));
    if (!sol.consistent) {
        for (long top = 0; top <= dsol; ++top) {
            auto [pa, pb] = build(top);
            if (!solve_exact(std::move(pa), std::move(pb)).consistent)
                throw NotInSpan("ansatz system inconsistent at q-order " + std::to_string(top));
        }
        throw NotInSpan("ansatz system inconsistent");  // prefix at dsol is the full system
    }

    long pinned_through = dsol;
    for (long c = 0; c < tcount * (dsol + 1); ++c)
        if (!sol.pinned[static_cast<size_t>(c)])
            pinned_through = std::min(pinned_through, c / tcount - 1);
    const long outd = dmax_out < 0 ? pinned_through : dmax_out;
    if (outd > pinned_through)
        throw InsufficientPrecision("coefficients pinned only through q-order " +
                                    std::to_string(pinned_through));
    if (outd < 0) throw InsufficientPrecision("no coefficient order is pinned");

    JacobiAnsatzFit fit;
    fit.n = n;
    fit.dmax = outd;
    for (long t = 0; t < tcount; ++t) {
        FourierSeries c(outd, 0);
        for (long d1 = 0; d1 <= outd; ++d1) {
            const Rat& v = sol.particular[static_cast<size_t>(d1 * tcount + t)];
            if (v != 0) c.set_coeff(d1, PCoeff(v));
        }
        if (!c.is_zero()) fit.coeff.emplace(monos[static_cast<size_t>(t)], c);
    }
    return fit;
}

}  // namespace qjf
