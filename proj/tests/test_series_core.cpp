#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "qjf/errors.hpp"
#include "qjf/laurent_view.hpp"
#include "qjf/pcoeff.hpp"
#include "qjf/series.hpp"

using namespace qjf;

namespace {

// Independent Delta oracle: q * prod_{n>=1} (1 - q^n)^24 by plain
// multiplication, no library generator involved.
FourierSeries delta_by_product(long qmax) {
    FourierSeries acc = FourierSeries::constant(1, qmax);
    for (long n = 1; n <= qmax; ++n) {
        FourierSeries f = FourierSeries::constant(1, qmax);
        f.set_coeff(n, PCoeff(Rat(-1)));
        for (int i = 0; i < 24; ++i) acc = acc * f;
    }
    // shift by q: rebuild with exponents +1
    FourierSeries out(qmax, 0);
    for (const auto& [d, c] : acc.coeffs())
        if (d + 1 <= qmax) out.set_coeff(d + 1, c);
    return out;
}

PCoeff upoly(std::initializer_list<std::pair<int, Rat>> terms) {
    ULaurent f;
    for (const auto& [e, c] : terms) f.add_term(e, c);
    return PCoeff(f);
}

}  // namespace

TEST_CASE("polynomial division and gcd") {
    ULaurent a, b;
    // a = u^5 - u, b = u^3 - u: gcd u^3 - u? both divisible by u(u^2-1)
    a.add_term(5, 1);
    a.add_term(1, -1);
    b.add_term(3, 1);
    b.add_term(1, -1);
    auto [q, r] = poly_divmod(a, b);
    CHECK(q * b + r == a);
    CHECK((r.is_zero() || r.max_exp() < b.max_exp()));
    ULaurent g = poly_gcd(a, b);
    CHECK(poly_divmod(a, g).second.is_zero());
    CHECK(poly_divmod(b, g).second.is_zero());
    CHECK(g.coeff(g.max_exp()) == 1);  // monic
}

TEST_CASE("coefficient canonical form keeps the denominator expandable") {
    // (u^3 - u) / (u^2 - u^4) = -(u^2-1)/(u(u^2-1)) * ... reduce by hand:
    // num u(u^2-1), den -u^2(u^2-1): canonical = -u^{-1} / 1
    ULaurent num, den;
    num.add_term(3, 1);
    num.add_term(1, -1);
    den.add_term(2, 1);
    den.add_term(4, -1);
    PCoeff f(num, den);
    CHECK(f.den_is_one());
    CHECK(f == PCoeff::monomial(-1, -1));
    // Denominator normalization: monic leading coefficient, nonzero constant.
    ULaurent d2;
    d2.add_term(0, Rat(2));
    d2.add_term(2, Rat(-2));
    PCoeff g(ULaurent::one(), d2);  // 1/(2 - 2u^2)
    CHECK(g.den().coeff(0) != 0);
    CHECK(g.den().coeff(g.den().max_exp()) == 1);
    auto exp = g.expand_ascending(6);
    CHECK(exp[0] == Rat(1, 2));  // 1/(2 - 2u^2) = (1/2)(1 + u^2 + ...)
    CHECK(exp[4] == Rat(1, 2));
}

TEST_CASE("ascending expansion of 1/(1-u^2) is the geometric series") {
    ULaurent den;
    den.add_term(0, 1);
    den.add_term(2, -1);
    PCoeff f(ULaurent::one(), den);
    auto e = f.expand_ascending(10);
    for (int k = 0; k <= 10; k += 2) CHECK(e[k] == 1);
    CHECK(e.find(3) == e.end());
}

TEST_CASE("coefficient field operations and parity") {
    ULaurent den;
    den.add_term(0, 1);
    den.add_term(2, -1);
    const PCoeff f(ULaurent::one(), den);          // even
    const PCoeff g = PCoeff::monomial(1, 1) - PCoeff::monomial(-1, 1);  // odd
    CHECK(f.parity() == UParity::even);
    CHECK(g.parity() == UParity::odd);
    CHECK((f + g).parity() == UParity::mixed);
    CHECK((g * g).parity() == UParity::even);
    // field laws on a sample triple
    const PCoeff h = upoly({{-2, Rat(1, 3)}, {0, 2}, {1, -1}});
    CHECK((f + g) * h == f * h + g * h);
    CHECK(f / g * g == f);
    CHECK_THROWS_AS(f / PCoeff(), ZeroLeadingCoefficient);
}

TEST_CASE("p inversion moves the pole to the other chart") {
    // A = -(1+u^2)/(2(1-u^2)) is odd under u -> 1/u.
    ULaurent num, den;
    num.add_term(0, -1);
    num.add_term(2, -1);
    den.add_term(0, 2);
    den.add_term(2, -2);
    const PCoeff a(num, den);
    CHECK(a.p_inverse() == -a);
    CHECK(a.p_inverse().p_inverse() == a);
    // dx then invert commutes with invert then -dx? dx anti-commutes with u->1/u.
    CHECK(a.dx().p_inverse() == -(a.p_inverse().dx()));
}

TEST_CASE("logarithmic derivative acts as k/2 on u^k") {
    const PCoeff m = PCoeff::monomial(3, 2);
    CHECK(m.dx() == PCoeff::monomial(3, 3));  // 2 * (3/2) = 3
    const PCoeff q = upoly({{-4, 1}}) / upoly({{0, 1}, {2, 1}});
    // quotient rule result stays canonical and exact
    const PCoeff lhs = q.dx();
    const PCoeff rhs =
        (upoly({{-4, -2}}) * upoly({{0, 1}, {2, 1}}) - upoly({{-4, 1}}) * upoly({{2, 1}})) /
        (upoly({{0, 1}, {2, 1}}) * upoly({{0, 1}, {2, 1}}));
    CHECK(lhs == rhs);
}

TEST_CASE("series inverse against the product-formula discriminant") {
    const long Q = 12;
    const FourierSeries delta = delta_by_product(Q);
    const FourierSeries inv = delta.invert();
    CHECK(inv.pole_order() == 1);
    CHECK(inv.qmax() == Q - 2);
    // frozen leading coefficients of the inverse discriminant
    CHECK(inv.coeff(-1) == PCoeff(Rat(1)));
    CHECK(inv.coeff(0) == PCoeff(Rat(24)));
    CHECK(inv.coeff(1) == PCoeff(Rat(324)));
    CHECK(inv.coeff(2) == PCoeff(Rat(3200)));
    CHECK(inv.coeff(3) == PCoeff(Rat(25650)));
    // two-sided product collapses to 1 over the exact range
    const FourierSeries prod = delta * inv;
    CHECK(prod == FourierSeries::constant(1, prod.qmax()));
    CHECK(prod.qmax() >= Q - 3);
}

TEST_CASE("inverting a series with no constant term tracks the pole") {
    FourierSeries f(6, 0);
    f.set_coeff(1, PCoeff(Rat(2)));
    f.set_coeff(2, PCoeff(Rat(1)));
    const FourierSeries g = f.invert();
    CHECK(g.pole_order() == 1);
    CHECK(g.coeff(-1) == PCoeff(Rat(1, 2)));
    CHECK((f * g) == FourierSeries::constant(1, (f * g).qmax()));
    CHECK_THROWS_AS(FourierSeries(5).invert(), ZeroLeadingCoefficient);
}

TEST_CASE("derivations commute and shift the weight tags") {
    FourierSeries f(8, 1);
    f.set_coeff(-1, upoly({{-2, 1}, {2, 1}}));
    f.set_coeff(0, upoly({{0, Rat(1, 2)}}));
    f.set_coeff(3, upoly({{-1, 1}, {1, -1}}) / upoly({{0, 1}, {4, 3}}));
    CHECK(f.dx().dtau() == f.dtau().dx());
    const FourierSeries tagged = f.with_meta({5, 2, 1, FormKind::meromorphic_quasi});
    CHECK(tagged.dtau().meta()->weight == 7);
    CHECK(tagged.dx().meta()->weight == 6);
    CHECK(tagged.substitute_p_power(3).meta()->index2 == 6);
    CHECK(tagged.p_inverse().p_inverse() == tagged);
}

TEST_CASE("multiplication keeps only orders that are exact") {
    // f known to q^4 with support starting at q^2; g known to q^3, support at q^0.
    FourierSeries f(4, 0), g(3, 0);
    f.set_coeff(2, PCoeff(Rat(1)));
    g.set_coeff(0, PCoeff(Rat(1)));
    g.set_coeff(3, PCoeff(Rat(5)));
    const FourierSeries h = f * g;
    // exact through min(4 + 0, 3 + 2) = 4
    CHECK(h.qmax() == 4);
    CHECK(h.coeff(2) == PCoeff(Rat(1)));
    // meta arithmetic: weights add on multiplication, levels take the lcm
    const auto fm = f.with_meta({2, 2, 2, FormKind::holomorphic_quasi});
    const auto gm = g.with_meta({3, 0, 3, FormKind::holomorphic_quasi});
    const auto hm = fm * gm;
    REQUIRE(hm.meta().has_value());
    CHECK(hm.meta()->weight == 5);
    CHECK(hm.meta()->index2 == 2);
    CHECK(hm.meta()->level == 6);
}

TEST_CASE("laurent view extraction clips the window honestly") {
    FourierSeries f(3, 0);
    ULaurent den;
    den.add_term(0, 1);
    den.add_term(2, -1);
    f.set_coeff(0, PCoeff(ULaurent::monomial(-2, 1), den));  // u^{-2}/(1-u^2)
    f.set_coeff(2, upoly({{-3, 4}, {5, 7}}));
    const LaurentView v = f.to_laurent(-4, 4);
    CHECK(v.coeff(0, -2) == 1);
    CHECK(v.coeff(0, 0) == 1);
    CHECK(v.coeff(0, 4) == 1);
    CHECK(v.coeff(0, 3) == 0);    // absent in range: exact zero
    CHECK(v.coeff(2, -3) == 4);
    CHECK_THROWS_AS(v.coeff(2, 5), std::out_of_range);   // beyond the window
    CHECK_THROWS_AS(v.coeff(4, 0), std::out_of_range);   // beyond the truncation
}

TEST_CASE("windowed convolution matches the series product on fitting supports") {
    FourierSeries f(5, 0), g(5, 0);
    f.set_coeff(0, upoly({{-2, 1}, {0, -2}, {2, 1}}));
    f.set_coeff(1, upoly({{-1, 3}}));
    g.set_coeff(0, upoly({{0, 1}}));
    g.set_coeff(2, upoly({{-2, 5}, {2, -5}}));
    const int W = 8;  // wide enough for every product exponent
    const LaurentView lhs = (f * g).to_laurent(-W, W);
    const LaurentView rhs = f.to_laurent(-W, W) * g.to_laurent(-W, W);
    CHECK(lhs == rhs);
}

TEST_CASE("index transformation scan accepts invariant data and flags corruption") {
    // For doubled index 2, the combination 16d - e^2 is preserved by every
    // shift; filling the window from any function of it must pass the scan.
    const long Q = 6;
    LaurentView v(0, Q, -8, 8);
    for (long d = 0; d <= Q; ++d)
        for (int e = -8; e <= 8; e += 2) {
            const long inv = 16 * d - static_cast<long>(e) * e;
            v.set(d, e, Rat(inv * inv + 3));
        }
    const std::vector<long> lams = {-2, -1, 1, 2};
    SymmetryReport rep = check_elliptic_symmetry(v, 2, lams);
    CHECK(rep.ok());
    CHECK(rep.checked > 0);

    v.set(3, 2, v.coeff(3, 2) + 1);  // corrupt one site
    SymmetryReport bad = check_elliptic_symmetry(v, 2, lams);
    CHECK(!bad.ok());
    bool hit = false;
    for (const auto& viol : bad.violations)
        hit = hit || (viol.d == 3 && viol.uexp == 2);
    CHECK(hit);

    // A window too narrow for any partner must refuse rather than pass.
    LaurentView tiny(0, 0, 0, 0);
    tiny.set(0, 0, 1);
    CHECK_THROWS_AS(check_elliptic_symmetry(tiny, 2, lams), WindowTooSmall);
}
