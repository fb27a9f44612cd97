#include "qjf/pcoeff.hpp"

#include "qjf/errors.hpp"

namespace qjf {

PCoeff::PCoeff(const Rat& c) : num_(ULaurent::monomial(0, c)) {}

PCoeff::PCoeff(ULaurent num) : num_(std::move(num)) {}

PCoeff::PCoeff(ULaurent num, ULaurent den) : num_(std::move(num)), den_(std::move(den)) {
    canonicalize();
}

PCoeff PCoeff::monomial(int uexp, const Rat& c) { return PCoeff(ULaurent::monomial(uexp, c)); }

void PCoeff::canonicalize() {
    if (den_.is_zero()) throw ZeroLeadingCoefficient("zero denominator");
    if (num_.is_zero()) {
        den_ = ULaurent::one();
        return;
    }
    // Set the u-powers aside so that both parts are ordinary polynomials with
    // nonzero constant term; the whole shift lands on the numerator.
    const int en = num_.min_exp(), ed = den_.min_exp();
    ULaurent n0 = num_.shifted(-en), d0 = den_.shifted(-ed);
    if (d0.max_exp() == 0) {  // scalar denominator: no gcd work needed
        const Rat lead = d0.coeff(0);
        num_ = n0.shifted(en - ed).scaled(1 / lead);
        den_ = ULaurent::one();
        return;
    }
    const ULaurent g = poly_gcd(n0, d0);
    if (!(g == ULaurent::one())) {
        n0 = poly_divmod(n0, g).first;
        d0 = poly_divmod(d0, g).first;
    }
    const Rat lead = d0.coeff(d0.max_exp());
    num_ = n0.shifted(en - ed).scaled(1 / lead);
    den_ = d0.scaled(1 / lead);
}

PCoeff PCoeff::operator-() const {
    PCoeff r;
    r.num_ = -num_;
    r.den_ = den_;
    return r;
}

PCoeff PCoeff::operator+(const PCoeff& o) const {
    if (den_is_one() && o.den_is_one()) {
        PCoeff r;
        r.num_ = num_ + o.num_;
        return r;
    }
    if (den_ == o.den_) return PCoeff(num_ + o.num_, den_);
    return PCoeff(num_ * o.den_ + o.num_ * den_, den_ * o.den_);
}

PCoeff PCoeff::operator-(const PCoeff& o) const {
    if (den_is_one() && o.den_is_one()) {
        PCoeff r;
        r.num_ = num_ - o.num_;
        return r;
    }
    if (den_ == o.den_) return PCoeff(num_ - o.num_, den_);
    return PCoeff(num_ * o.den_ - o.num_ * den_, den_ * o.den_);
}

PCoeff PCoeff::operator*(const PCoeff& o) const {
    if (den_is_one() && o.den_is_one()) {
        PCoeff r;
        r.num_ = num_ * o.num_;
        return r;
    }
    return PCoeff(num_ * o.num_, den_ * o.den_);
}

PCoeff PCoeff::operator/(const PCoeff& o) const {
    if (o.is_zero()) throw ZeroLeadingCoefficient("division by zero coefficient");
    return PCoeff(num_ * o.den_, den_ * o.num_);
}

PCoeff PCoeff::scaled(const Rat& c) const {
    PCoeff r;
    r.num_ = num_.scaled(c);
    r.den_ = c == 0 ? ULaurent::one() : den_;
    return r;
}

PCoeff PCoeff::dx() const {
    // (n/d)' = (n'd - nd')/d^2 with ' = (u/2) d/du.
    return PCoeff(num_.dx() * den_ - num_ * den_.dx(), den_ * den_);
}

PCoeff PCoeff::p_inverse() const { return substitute_u_power(-1); }

PCoeff PCoeff::substitute_u_power(int r) const {
    if (is_zero()) return PCoeff();
    return PCoeff(num_.powered_u(r), den_.powered_u(r));
}

UParity PCoeff::parity() const {
    if (is_zero()) return UParity::even;
    auto negate_odd = [](const ULaurent& f) {
        ULaurent r;
        for (const auto& [e, c] : f.terms()) r.add_term(e, (e & 1) ? -c : c);
        return r;
    };
    const PCoeff flipped(negate_odd(num_), negate_odd(den_));
    if (flipped == *this) return UParity::even;
    if (flipped == -*this) return UParity::odd;
    return UParity::mixed;
}

std::map<int, Rat> PCoeff::expand_ascending(int max_uexp) const {
    std::map<int, Rat> out;
    if (is_zero()) return out;
    const Rat c0 = den_.coeff(0);
    if (c0 == 0) throw NotExpandable("denominator constant term vanishes");
    const int base = num_.min_exp();
    const int need = max_uexp - base;  // depth of the inverse expansion
    if (need < 0) return out;
    // inv[k] of 1/den via the ascending recurrence.
    std::vector<Rat> inv(static_cast<size_t>(need) + 1);
    inv[0] = 1 / c0;
    for (int k = 1; k <= need; ++k) {
        Rat acc = 0;
        for (const auto& [j, dj] : den_.terms())
            if (j >= 1 && j <= k) acc += dj * inv[static_cast<size_t>(k - j)];
        inv[static_cast<size_t>(k)] = -acc / c0;
    }
    for (const auto& [e, c] : num_.terms())
        for (int k = 0; e + k <= max_uexp && k <= need; ++k)
            if (inv[static_cast<size_t>(k)] != 0) {
                Rat& slot = out[e + k];
                slot += c * inv[static_cast<size_t>(k)];
            }
    for (auto it = out.begin(); it != out.end();)
        it = (it->second == 0) ? out.erase(it) : std::next(it);
    return out;
}

bool PCoeff::operator==(const PCoeff& o) const {
    return num_ * o.den_ == o.num_ * den_;
}

}  // namespace qjf
