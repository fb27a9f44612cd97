#include "qjf/laurent_poly.hpp"

#include <stdexcept>

namespace qjf {

ULaurent ULaurent::monomial(int exp, const Rat& c) {
    ULaurent r;
    if (c != 0) r.t_[exp] = c;
    return r;
}

Rat ULaurent::coeff(int exp) const {
    auto it = t_.find(exp);
    return it == t_.end() ? Rat(0) : it->second;
}

int ULaurent::min_exp() const {
    if (t_.empty()) throw std::logic_error("min_exp of zero polynomial");
    return t_.begin()->first;
}

int ULaurent::max_exp() const {
    if (t_.empty()) throw std::logic_error("max_exp of zero polynomial");
    return t_.rbegin()->first;
}

void ULaurent::add_term(int exp, const Rat& c) {
    if (c == 0) return;
    auto [it, fresh] = t_.try_emplace(exp, c);
    if (!fresh) {
        it->second += c;
        if (it->second == 0) t_.erase(it);
    }
}

ULaurent ULaurent::operator-() const {
    ULaurent r;
    for (const auto& [e, c] : t_) r.t_[e] = -c;
    return r;
}

ULaurent ULaurent::operator+(const ULaurent& o) const {
    ULaurent r = *this;
    for (const auto& [e, c] : o.t_) r.add_term(e, c);
    return r;
}

ULaurent ULaurent::operator-(const ULaurent& o) const {
    ULaurent r = *this;
    for (const auto& [e, c] : o.t_) r.add_term(e, -c);
    return r;
}

ULaurent ULaurent::operator*(const ULaurent& o) const {
    ULaurent r;
    for (const auto& [e1, c1] : t_)
        for (const auto& [e2, c2] : o.t_) r.add_term(e1 + e2, c1 * c2);
    return r;
}

ULaurent ULaurent::scaled(const Rat& c) const {
    ULaurent r;
    if (c == 0) return r;
    for (const auto& [e, cc] : t_) r.t_[e] = cc * c;
    return r;
}

ULaurent ULaurent::shifted(int dexp) const {
    ULaurent r;
    for (const auto& [e, c] : t_) r.t_[e + dexp] = c;
    return r;
}

ULaurent ULaurent::powered_u(int r) const {
    if (r == 0) throw std::logic_error("powered_u: exponent scale must be nonzero");
    ULaurent out;
    for (const auto& [e, c] : t_) out.t_[e * r] = c;
    return out;
}

ULaurent ULaurent::dx() const {
    ULaurent r;
    for (const auto& [e, c] : t_)
        if (e != 0) r.t_[e] = c * Rat(e) / 2;
    return r;
}

std::pair<ULaurent, ULaurent> poly_divmod(const ULaurent& a, const ULaurent& b) {
    if (b.is_zero()) throw std::logic_error("poly_divmod: division by zero");
    if (!a.is_zero() && a.min_exp() < 0)
        throw std::logic_error("poly_divmod: dividend has negative exponents");
    if (b.min_exp() < 0) throw std::logic_error("poly_divmod: divisor has negative exponents");
    ULaurent q, r = a;
    const int db = b.max_exp();
    const Rat lb = b.coeff(db);
    while (!r.is_zero() && r.max_exp() >= db) {
        const int de = r.max_exp() - db;
        const Rat f = r.coeff(r.max_exp()) / lb;
        q.add_term(de, f);
        r = r - b.shifted(de).scaled(f);
    }
    return {q, r};
}

ULaurent poly_gcd(ULaurent a, ULaurent b) {
    while (!b.is_zero()) {
        auto [q, r] = poly_divmod(a, b);
        (void)q;
        a = b;
        b = r;
    }
    if (a.is_zero()) return a;
    return a.scaled(1 / a.coeff(a.max_exp()));  // monic
}

}  // namespace qjf
