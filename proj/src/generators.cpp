#include "qjf/generators.hpp"

#include <stdexcept>

#include "qjf/errors.hpp"

namespace qjf {

namespace {

PCoeff u_monomial(int e, const Rat& c = Rat(1)) { return PCoeff::monomial(e, c); }

// prod_{m=1..qmax} (1 - q^m)
FourierSeries euler_product(long qmax) {
    FourierSeries acc = FourierSeries::constant(1, qmax);
    for (long m = 1; m <= qmax; ++m) {
        FourierSeries f = FourierSeries::constant(1, qmax);
        f.set_coeff(m, PCoeff(Rat(-1)));
        acc = acc * f;
    }
    return acc;
}

FourierSeries theta_series(long qmax) {
    // (u - u^{-1}) prod (1 - u^2 q^m)(1 - u^{-2} q^m) / prod (1 - q^m)^2
    FourierSeries acc = FourierSeries::constant(1, qmax);
    for (long m = 1; m <= qmax; ++m) {
        FourierSeries f = FourierSeries::constant(1, qmax);
        f.set_coeff(m, u_monomial(2, -1));
        FourierSeries g = FourierSeries::constant(1, qmax);
        g.set_coeff(m, u_monomial(-2, -1));
        acc = acc * f * g;
    }
    const FourierSeries euler_inv = euler_product(qmax).invert();
    acc = acc * euler_inv * euler_inv;
    return acc.scaled_coeff(u_monomial(1) - u_monomial(-1));
}

FourierSeries a_series(long qmax) {
    FourierSeries s(qmax, 0);
    // q^0: -(1 + u^2) / (2 (1 - u^2))
    ULaurent num, den;
    num.add_term(0, -1);
    num.add_term(2, -1);
    den.add_term(0, 2);
    den.add_term(2, -2);
    s.set_coeff(0, PCoeff(num, den));
    for (long n = 1; n <= qmax; ++n) {
        PCoeff c;
        for (long m : divisors(n))
            c = c + u_monomial(static_cast<int>(-2 * m)) - u_monomial(static_cast<int>(2 * m));
        s.set_coeff(n, c);
    }
    return s;
}

FourierSeries p_series(long qmax) {
    FourierSeries s(qmax, 0);
    // q^0: 1/12 + u^2/(1 - u^2)^2
    ULaurent den;
    den.add_term(0, 1);
    den.add_term(2, -1);
    s.set_coeff(0, PCoeff(Rat(1, 12)) + PCoeff(ULaurent::monomial(2, 1)) /
                                            PCoeff(den * den));
    for (long d = 1; d <= qmax; ++d) {
        PCoeff c;
        for (long k : divisors(d)) {
            const Rat kk(k);
            c = c + u_monomial(static_cast<int>(2 * k), kk) +
                u_monomial(0, -2 * kk) + u_monomial(static_cast<int>(-2 * k), kk);
        }
        s.set_coeff(d, c);
    }
    return s;
}

FourierSeries compute_generator(Gen g, long qmax) {
    switch (g) {
        case Gen::Theta:
            return theta_series(qmax);
        case Gen::A:
            return a_series(qmax);
        case Gen::G2:
            return eisenstein_series(2, qmax);
        case Gen::P:
            return p_series(qmax);
        case Gen::Pp:
            return p_series(qmax).dx();
        case Gen::G4:
            return eisenstein_series(4, qmax);
        case Gen::G6:
            return eisenstein_series(6, qmax);
        case Gen::DeltaInv:
            return discriminant_series(qmax + 2).invert();
        case Gen::ThetaInv:
            return theta_series(qmax).invert();
    }
    throw UnknownGenerator();
}

}  // namespace

FourierSeries expand_generator(Gen g, long qmax) {
    static std::map<int, FourierSeries> cache;
    auto it = cache.find(static_cast<int>(g));
    if (it == cache.end() || it->second.qmax() < qmax) {
        // Grow geometrically so interleaved requests do not recompute.
        const long grow = it == cache.end() ? qmax : std::max(qmax, 2 * it->second.qmax());
        FourierSeries s = compute_generator(g, grow).with_meta(
            {gen_weight(g), gen_index2(g), 1, gen_kind(g)});
        it = cache.insert_or_assign(static_cast<int>(g), std::move(s)).first;
    }
    return it->second.truncated(qmax);
}

FourierSeries expand_generator(const std::string& name, long qmax) {
    const auto g = gen_from_name(name);
    if (!g) throw UnknownGenerator("no generator named " + name);
    return expand_generator(*g, qmax);
}

FourierSeries expand(const GenPoly& f, long qmax) {
    FourierSeries out(qmax, 0);
    bool first = true;
    for (const auto& [m, c] : f.terms()) {
        const long budget = qmax + m.exp(Gen::DeltaInv);  // pole orders to re-truncate
        FourierSeries prod = FourierSeries::constant(1, budget);
        FormKind kind = FormKind::holomorphic_quasi;
        for (Gen g : kAllGens) {
            const int e = m.exp(g);
            if (e == 0) continue;
            if (gen_kind(g) == FormKind::meromorphic_quasi) kind = FormKind::meromorphic_quasi;
            const FourierSeries gs = expand_generator(g, budget);
            for (int i = 0; i < e; ++i) prod = prod * gs;
        }
        if (prod.qmax() > qmax) prod = prod.truncated(qmax);
        prod = prod.scaled(c).with_meta({m.weight(), m.index2(), 1, kind});
        out = first ? prod : out + prod;
        first = false;
    }
    if (first) out = out.with_meta({0, 0, 1, FormKind::holomorphic_quasi});
    return out;
}

FourierSeries eisenstein_series(long k, long qmax) {
    if (k < 2 || k % 2 != 0) throw std::logic_error("eisenstein_series: even k >= 2 required");
    const auto b = bernoulli_numbers(static_cast<unsigned long>(k));
    FourierSeries s(qmax, 0);
    s.set_coeff(0, PCoeff(-b[static_cast<size_t>(k)] / (2 * k)));
    for (long n = 1; n <= qmax; ++n)
        s.set_coeff(n, PCoeff(divisor_power_sum(k - 1, n)));
    return s.with_meta({k, 0, 1, FormKind::holomorphic_quasi});
}

FourierSeries discriminant_series(long qmax) {
    FourierSeries eta = euler_product(qmax);
    FourierSeries p24 = FourierSeries::constant(1, qmax);
    for (int i = 0; i < 24; ++i) p24 = p24 * eta;
    FourierSeries out(qmax, 0);
    for (const auto& [d, c] : p24.coeffs())
        if (d + 1 <= qmax) out.set_coeff(d + 1, c);
    return out.with_meta({12, 0, 1, FormKind::holomorphic_quasi});
}

FourierSeries f2_series(long qmax) {
    FourierSeries s(qmax, 0);
    s.set_coeff(0, PCoeff(Rat(1)));
    for (long n = 1; n <= qmax; ++n) {
        Rat odd_sum = 0;
        for (long d : divisors(n))
            if (d % 2 == 1) odd_sum += d;
        s.set_coeff(n, PCoeff(24 * odd_sum));
    }
    return s.with_meta({2, 0, 2, FormKind::holomorphic_quasi});
}

long equality_check_qmax(const GenPoly& a, const GenPoly& b) {
    long w = 0;
    int dd = 0;
    for (const GenPoly* p : {&a, &b}) {
        for (const auto& [m, c] : p->terms()) {
            w = std::max(w, std::abs(m.weight()));
            dd = std::max(dd, m.exp(Gen::DeltaInv));
        }
    }
    return 20 + 2 * w + 12 * dd;
}

bool equal_by_expansion(const GenPoly& a, const GenPoly& b) {
    if (a == b) return true;
    const long q = equality_check_qmax(a, b);
    return expand(a, q) == expand(b, q);
}

}  // namespace qjf
