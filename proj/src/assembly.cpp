#include "qjf/assembly.hpp"

#include <algorithm>
#include <functional>
#include <stdexcept>
#include <utility>

#include "qjf/an_functions.hpp"
#include "qjf/anomaly.hpp"
#include "qjf/errors.hpp"
#include "qjf/fit.hpp"
#include "qjf/generators.hpp"
#include "qjf/hecke.hpp"

namespace qjf {

namespace {

// Largest integer <= x.
long rat_floor_long(const Rat& x) {
    mpz_class q;
    mpz_fdiv_q(q.get_mpz_t(), x.get_num().get_mpz_t(), x.get_den().get_mpz_t());
    return q.get_si();
}

// Reads a window back as a series with Laurent-polynomial coefficients; only
// faithful when the true u-support through this q-depth fits in the window,
// which is the table precondition for the fit-based steps.
FourierSeries window_to_series(const LaurentView& v) {
    FourierSeries out(v.qmax(), v.pole_order());
    for (const auto& [d, row] : v.rows()) {
        ULaurent num;
        for (const auto& [uexp, c] : row) num.add_term(uexp, c);
        if (!num.is_zero()) out.set_coeff(d, PCoeff(std::move(num)));
    }
    return out;
}

void accumulate_view(LaurentView& acc, const LaurentView& v, const Rat& c) {
    for (const auto& [d, row] : v.rows())
        for (const auto& [uexp, val] : row)
            if (acc.in_range(d, uexp)) acc.add(d, uexp, Rat(c * val));
}

// Multilinear extension of the table lookup over the slot vectors.
LaurentView bracket_series(const GWTable& table, long g, long n,
                           const std::vector<const FockVector*>& slots,
                           long pole, long qmax, int rmin2, int rmax2,
                           bool default_zero) {
    LaurentView out(pole, qmax, rmin2, rmax2);
    std::vector<WeightedPartition> picked(slots.size());
    std::function<void(std::size_t, const Rat&)> rec = [&](std::size_t s,
                                                           const Rat& coeff) {
        if (s == slots.size()) {
            GWSeriesKey key{g, n, picked, "1"};
            LaurentView part =
                table.series(key, pole, qmax, rmin2, rmax2, default_zero);
            accumulate_view(out, part, coeff);
            return;
        }
        for (const auto& [mu, c] : slots[s]->terms()) {
            picked[s] = mu;
            rec(s + 1, Rat(coeff * c));
        }
    };
    rec(0, Rat(1));
    return out;
}

}  // namespace

void GWSeriesKey::canonicalize() {
    for (auto& mu : insertions) mu.canonicalize();
    std::sort(insertions.begin(), insertions.end());
}

std::string key_to_string(const GWSeriesKey& key) {
    std::string s = "g=" + std::to_string(key.g) + " n=" + std::to_string(key.n) +
                    " taut=" + key.taut + " ins=";
    for (const auto& mu : key.insertions) {
        s += "[";
        for (const auto& [m, c] : mu.parts)
            s += "(" + std::to_string(m) + "," + std::to_string(c) + ")";
        s += "]";
    }
    return s;
}

void GWTable::set(GWSeriesKey key, long d, long r, const Rat& value) {
    key.canonicalize();
    rows_[std::move(key)][{d, r}] = value;
}

bool GWTable::has_series(const GWSeriesKey& key) const {
    GWSeriesKey k = key;
    k.canonicalize();
    return rows_.count(k) > 0;
}

LaurentView GWTable::series(const GWSeriesKey& key, long pole_order, long qmax,
                            int rmin2, int rmax2, bool default_zero) const {
    GWSeriesKey k = key;
    k.canonicalize();
    LaurentView out(pole_order, qmax, rmin2, rmax2);
    auto it = rows_.find(k);
    if (it == rows_.end()) {
        if (!default_zero)
            throw MissingTableEntry("no stored series for " + key_to_string(k));
        return out;
    }
    for (const auto& [dr, v] : it->second) {
        long d = dr.first, r = dr.second;
        int uexp = static_cast<int>(2 * r);
        if (!out.in_range(d, uexp)) continue;
        out.set(d, uexp, r % 2 == 0 ? v : Rat(-v));
    }
    return out;
}

LiftExponents lift_exponents(long g, long n,
                             const std::vector<WeightedPartition>& insertions,
                             const K3Model& model) {
    LiftExponents out;
    out.k = n * (2 * g - 2 + static_cast<long>(insertions.size()));
    for (const auto& mu : insertions) {
        Gradings gr = gradings(mu, model);
        out.k += gr.wt;
        out.e += gr.deg - n - gr.wt;
    }
    return out;
}

LaurentView multiple_cover_lift(const LaurentView& f, long k, long e, long ell) {
    LaurentView out = hecke_formal(f, HeckeSpec{k, ell});
    return out.scaled(rat_pow(Rat(ell), e));
}

LaurentView fiber_class_series(const FiberInput& inp, long qmax, int rmin2,
                               int rmax2) {
    if (inp.a < 0 || inp.b < 0)
        throw NegativeExponent("fiber-class series: exponents must be nonnegative");
    LaurentView out(0, qmax, rmin2, rmax2);
    if (inp.inv0 != 0 && out.in_range(0, 0)) {
        for (long k = 1; k <= qmax; ++k) {
            Rat ka = rat_pow(Rat(k), inp.a);
            for (long d = 1; k * d <= qmax; ++d)
                out.add(k * d, 0, Rat(inp.inv0 * ka * rat_pow(Rat(d), inp.b)));
        }
    }
    for (const auto& [r, v] : inp.invr) {
        if (r < 1)
            throw std::invalid_argument("fiber-class series: r must be >= 1");
        FourierSeries t = a_n_fourier(inp.b + 1, qmax);
        for (long i = 0; i < inp.a; ++i) t = t.dx();
        Rat sign = (r % 2 == 0) ? Rat(1) : Rat(-1);
        Rat c = sign * v * (Rat(-1) / Rat(inp.b + 1));
        t = t.scaled(c).substitute_p_power(r);
        out = out + t.to_laurent(rmin2, rmax2);
    }
    if (out.in_range(0, 0)) out.set(0, 0, Rat(0));
    out.set_modulo_constant(true);
    return out;
}

GenPoly lagrangian_two_point(long n) {
    if (n < 1)
        throw std::invalid_argument("two-point evaluation needs n >= 1");
    Mono m;
    m.exp(Gen::Theta) = static_cast<int>(2 * n - 2);
    m.exp(Gen::DeltaInv) = 1;
    return GenPoly::monomial(m, n % 2 == 0 ? Rat(-1) : Rat(1));
}

GenPoly two_point_kernel() {
    GenPoly inner =
        GenPoly::generator(Gen::P) + GenPoly::generator(Gen::G2).scaled(Rat(2));
    return GenPoly::generator(Gen::Theta, 2) * inner;
}

GenPoly two_point_correction(long n) {
    if (n < 0) throw std::invalid_argument("two-point correction needs n >= 0");
    GenPoly out = two_point_kernel().pow(static_cast<unsigned long>(n));
    out = out * GenPoly::generator(Gen::ThetaInv, 2);
    return out * GenPoly::generator(Gen::DeltaInv);
}

FourierSeries e8_theta(long qmax, long twist) {
    if (twist < 1) throw std::invalid_argument("theta series: twist must be >= 1");
    if (qmax < 0) throw std::invalid_argument("theta series: qmax must be >= 0");
    // Positive-definite Cartan Gram: minus one rank-8 block of the shipped
    // complement lattice.
    constexpr int R = 8;
    const auto comp = K3Model::standard_complement_gram();
    std::vector<std::vector<Rat>> a(R, std::vector<Rat>(R));
    for (int i = 0; i < R; ++i)
        for (int j = 0; j < R; ++j) a[i][j] = Rat(-comp[4 + i][4 + j]);
    // Square completion Q(x) = sum_i c[i] (x_i + sum_{j > i} u[i][j] x_j)^2,
    // exact over the rationals.
    std::vector<Rat> c(R);
    std::vector<std::vector<Rat>> u(R, std::vector<Rat>(R, Rat(0)));
    for (int i = 0; i < R; ++i) {
        c[i] = a[i][i];
        for (int j = i + 1; j < R; ++j) u[i][j] = a[i][j] / c[i];
        for (int j = i + 1; j < R; ++j)
            for (int k = j; k < R; ++k)
                a[j][k] = Rat(a[j][k] - a[i][j] * a[i][k] / c[i]);
    }
    const long bound = 2 * (qmax / twist);  // enumerate (v, v) <= bound
    std::vector<unsigned long> counts(static_cast<std::size_t>(bound) + 1, 0);
    std::vector<long> x(R, 0);
    // Level-by-level descent: walk each coordinate outward from the real
    // center while the remaining budget admits it.
    std::function<void(int, const Rat&)> descend = [&](int i, const Rat& used) {
        if (i < 0) {
            ++counts[static_cast<std::size_t>(rat_to_long(used))];
            return;
        }
        Rat s(0);
        for (int j = i + 1; j < R; ++j)
            if (x[j] != 0) s += u[i][j] * x[j];
        Rat rem = Rat(bound) - used;
        long center = rat_floor_long(Rat(-s));
        for (long m = center;; --m) {
            Rat term = Rat(c[i] * (Rat(m) + s) * (Rat(m) + s));
            if (term > rem) break;
            x[i] = m;
            descend(i - 1, Rat(used + term));
        }
        for (long m = center + 1;; ++m) {
            Rat term = Rat(c[i] * (Rat(m) + s) * (Rat(m) + s));
            if (term > rem) break;
            x[i] = m;
            descend(i - 1, Rat(used + term));
        }
        x[i] = 0;
    };
    descend(R - 1, Rat(0));
    FourierSeries out(qmax);
    for (long norm = 0; norm <= bound; ++norm) {
        if (counts[static_cast<std::size_t>(norm)] == 0) continue;
        long d = twist * norm / 2;  // even lattice: norm is even
        if (d <= qmax)
            out.set_coeff(d, PCoeff(Rat(counts[static_cast<std::size_t>(norm)])));
    }
    return out.with_meta({4, 0, twist, FormKind::holomorphic_quasi});
}

DtCorrection dt_correction(long n, const Rat& trace, long qmax) {
    DtCorrection out;
    Rat half_trace = trace / Rat(2);
    out.base = two_point_correction(n).scaled(half_trace);
    FourierSeries e4(qmax);
    e4.set_coeff(0, PCoeff(Rat(1)));
    for (long m = 1; 2 * m <= qmax; ++m)
        e4.set_coeff(2 * m, PCoeff(Rat(240 * divisor_power_sum(3, m))));
    out.level_factor = e4.with_meta({4, 0, 2, FormKind::holomorphic_quasi});
    out.meta = {-6, 2 * n - 2, 2, FormKind::meromorphic_quasi};
    FourierSeries prod = expand(out.base, qmax) * out.level_factor;
    out.series = prod.with_meta(out.meta);
    return out;
}

LaurentView hae_residual_g0n3(const GWTable& table,
                              const std::array<WeightedPartition, 3>& lambdas,
                              long n, long qmax, int rmin2, int rmax2,
                              const K3Model& model, bool default_zero) {
    std::array<WeightedPartition, 3> lam = lambdas;
    long swt = 0;
    for (auto& l : lam) {
        l.canonicalize();
        if (l.n() != n)
            throw DimensionMismatch("anomaly residual: insertion is not a partition of n");
        swt += gradings(l, model).wt;
    }
    const long pole = 1;

    // Left side: the G2-anomaly of the three-point series.  Fit the series to
    // the meromorphic ansatz, refit each q-coefficient as a quasi-modular
    // polynomial at its bookkept weight, then differentiate symbolically.
    GWSeriesKey key3{0, n, {lam[0], lam[1], lam[2]}, "1"};
    key3.canonicalize();
    long depth = qmax;
    if (table.has_series(key3))
        for (const auto& [dr, v] : table.rows().at(key3))
            depth = std::max(depth, dr.first);
    FourierSeries f =
        window_to_series(table.series(key3, pole, depth, rmin2, rmax2, default_zero));
    long qres = qmax;
    GenPoly dg2;
    if (!f.is_zero()) {
        JacobiAnsatzFit fit = fit_jacobi_ansatz(f, n, -1);
        qres = std::min(qmax, fit.dmax);
        Mono pref;
        pref.exp(Gen::Theta) = static_cast<int>(2 * n - 2);
        pref.exp(Gen::DeltaInv) = 1;
        GenPoly total;
        for (const auto& [ijs, cs] : fit.coeff) {
            if (cs.is_zero()) continue;
            long w = 3 * n + swt - ijs[0] - 2 * ijs[1] - 3 * ijs[2];
            GenPoly cp = fit_quasimodular(cs, w);
            Mono m = pref;
            m.exp(Gen::A) = ijs[0];
            m.exp(Gen::P) = ijs[1];
            m.exp(Gen::Pp) = ijs[2];
            total = total + cp * GenPoly::monomial(m, Rat(1));
        }
        dg2 = anomaly(total, Gen::G2);
    }
    LaurentView lhs = expand(dg2, qres).to_laurent(rmin2, rmax2);

    // Right side, first the six U-channels.
    LinearOperator uop = llv_u(n, model);
    std::array<FockVector, 3> bas = {FockVector::basis(lam[0]),
                                     FockVector::basis(lam[1]),
                                     FockVector::basis(lam[2])};
    LaurentView rhs(pole, qres, rmin2, rmax2);
    for (int i = 0; i < 3; ++i) {
        int j = (i + 1) % 3, k = (i + 2) % 3;
        FockVector cupjk = cup_operator(lam[j], n, model).apply(bas[k]);
        FockVector ucup = uop.apply(cupjk);
        FockVector ui = uop.apply(bas[i]);
        accumulate_view(rhs,
                        bracket_series(table, 0, n, {&bas[i], &ucup}, pole, qres,
                                       rmin2, rmax2, default_zero),
                        Rat(2));
        accumulate_view(rhs,
                        bracket_series(table, 0, n, {&ui, &cupjk}, pole, qres,
                                       rmin2, rmax2, default_zero),
                        Rat(-2));
    }

    // Then the double T-derivation sum against the inverse Gram of the
    // orthogonal complement: pairing each basis direction with its dual
    // absorbs the inverse-matrix weights.
    for (int a = 4; a < 24; ++a) {
        LinearOperator ta = commutator(llv_e(unit_class_of(a), n, model), uop);
        LinearOperator tda = commutator(llv_e(model.dual(a), n, model), uop);
        std::array<FockVector, 3> tav, tdav, tatdav;
        for (int s = 0; s < 3; ++s) {
            tav[s] = ta.apply(bas[s]);
            tdav[s] = tda.apply(bas[s]);
            tatdav[s] = ta.apply(tdav[s]);
        }
        for (int si = 0; si < 3; ++si) {
            for (int sj = 0; sj < 3; ++sj) {
                std::vector<const FockVector*> slots = {&bas[0], &bas[1], &bas[2]};
                if (si == sj) {
                    slots[si] = &tatdav[si];
                } else {
                    slots[si] = &tav[si];
                    slots[sj] = &tdav[sj];
                }
                accumulate_view(rhs,
                                bracket_series(table, 0, n, slots, pole, qres,
                                               rmin2, rmax2, default_zero),
                                Rat(-1));
            }
        }
    }

    return lhs - rhs;
}

}  // namespace qjf
