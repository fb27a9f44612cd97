#include "qjf/series.hpp"

#include <numeric>
#include <stdexcept>

#include "qjf/errors.hpp"
#include "qjf/laurent_view.hpp"

namespace qjf {

namespace {

FormKind combine_kind(FormKind a, FormKind b) {
    if (a == FormKind::unknown || b == FormKind::unknown) return FormKind::unknown;
    if (a == FormKind::meromorphic_quasi || b == FormKind::meromorphic_quasi)
        return FormKind::meromorphic_quasi;
    return FormKind::holomorphic_quasi;
}

std::optional<FormMeta> meta_mul(const std::optional<FormMeta>& a,
                                 const std::optional<FormMeta>& b) {
    if (!a || !b) return std::nullopt;
    return FormMeta{a->weight + b->weight, a->index2 + b->index2,
                    std::lcm(a->level, b->level), combine_kind(a->kind, b->kind)};
}

std::optional<FormMeta> meta_add(const std::optional<FormMeta>& a,
                                 const std::optional<FormMeta>& b) {
    if (!a || !b) return std::nullopt;
    if (a->weight != b->weight || a->index2 != b->index2) return std::nullopt;
    return FormMeta{a->weight, a->index2, std::lcm(a->level, b->level),
                    combine_kind(a->kind, b->kind)};
}

}  // namespace

FourierSeries::FourierSeries(long qmax, long pole_order)
    : pole_order_(pole_order), qmax_(qmax) {
    if (pole_order < 0) throw std::logic_error("negative pole_order");
}

FourierSeries FourierSeries::constant(const Rat& c, long qmax) {
    FourierSeries s(qmax);
    s.set_coeff(0, PCoeff(c));
    return s;
}

PCoeff FourierSeries::coeff(long d) const {
    if (d > qmax_) throw std::out_of_range("coefficient beyond truncation order");
    auto it = c_.find(d);
    return it == c_.end() ? PCoeff() : it->second;
}

long FourierSeries::min_known_exp() const {
    return c_.empty() ? qmax_ + 1 : c_.begin()->first;
}

void FourierSeries::set_coeff(long d, PCoeff c) {
    if (d < -pole_order_ || d > qmax_)
        throw std::out_of_range("coefficient outside [-pole_order, qmax]");
    if (c.is_zero())
        c_.erase(d);
    else
        c_[d] = std::move(c);
}

FourierSeries FourierSeries::with_meta(FormMeta m) const {
    FourierSeries s = *this;
    s.meta_ = m;
    return s;
}

FourierSeries FourierSeries::without_meta() const {
    FourierSeries s = *this;
    s.meta_.reset();
    return s;
}

FourierSeries FourierSeries::operator-() const {
    FourierSeries s = *this;
    for (auto& [d, c] : s.c_) c = -c;
    return s;
}

FourierSeries FourierSeries::operator+(const FourierSeries& o) const {
    FourierSeries s(std::min(qmax_, o.qmax_), std::max(pole_order_, o.pole_order_));
    s.meta_ = meta_add(meta_, o.meta_);
    for (const auto& [d, c] : c_)
        if (d <= s.qmax_) s.set_coeff(d, c);
    for (const auto& [d, c] : o.c_)
        if (d <= s.qmax_) s.set_coeff(d, s.coeff(d) + c);
    return s;
}

FourierSeries FourierSeries::operator-(const FourierSeries& o) const { return *this + (-o); }

FourierSeries FourierSeries::operator*(const FourierSeries& o) const {
    // The top exact order: splits with one factor beyond its qmax must be
    // killed by the other factor's known-zero region below its support.
    const long q1 = qmax_ + o.min_known_exp();
    const long q2 = o.qmax_ + min_known_exp();
    FourierSeries s(std::min(q1, q2), pole_order_ + o.pole_order_);
    s.meta_ = meta_mul(meta_, o.meta_);
    for (const auto& [d1, c1] : c_)
        for (const auto& [d2, c2] : o.c_) {
            const long d = d1 + d2;
            if (d <= s.qmax_) s.set_coeff(d, s.coeff(d) + c1 * c2);
        }
    return s;
}

FourierSeries FourierSeries::scaled(const Rat& c) const {
    return scaled_coeff(PCoeff(c));
}

FourierSeries FourierSeries::scaled_coeff(const PCoeff& c) const {
    FourierSeries s(qmax_, pole_order_);
    s.meta_ = meta_;
    if (c.is_zero()) return s;
    for (const auto& [d, cc] : c_) s.set_coeff(d, cc * c);
    return s;
}

FourierSeries FourierSeries::truncated(long new_qmax) const {
    if (new_qmax > qmax_) throw std::out_of_range("truncated: cannot extend a series");
    FourierSeries s(new_qmax, pole_order_);
    s.meta_ = meta_;
    for (const auto& [d, c] : c_)
        if (d <= new_qmax) s.set_coeff(d, c);
    return s;
}

FourierSeries FourierSeries::invert() const {
    if (c_.empty()) throw ZeroLeadingCoefficient("inverting the zero series");
    const long d0 = min_known_exp();
    const PCoeff lead = coeff(d0);
    const long out_qmax = qmax_ - 2 * d0;
    FourierSeries g(out_qmax, std::max<long>(0, d0));
    if (meta_) {
        FormKind k = meta_->kind == FormKind::unknown ? FormKind::unknown
                                                      : FormKind::meromorphic_quasi;
        g.meta_ = FormMeta{-meta_->weight, -meta_->index2, meta_->level, k};
    }
    if (out_qmax < -d0) return g;  // nothing representable at this truncation
    g.set_coeff(-d0, PCoeff(Rat(1)) / lead);
    for (long m = 1; m + -d0 <= out_qmax; ++m) {
        PCoeff acc;
        for (long j = 1; j <= m; ++j) {
            const PCoeff cj = (d0 + j > qmax_) ? PCoeff() : coeff(d0 + j);
            if (cj.is_zero()) continue;
            acc = acc + cj * g.coeff(-d0 + m - j);
        }
        if (!acc.is_zero()) g.set_coeff(-d0 + m, -(acc / lead));
    }
    return g;
}

FourierSeries FourierSeries::dtau() const {
    FourierSeries s(qmax_, pole_order_);
    if (meta_) s.meta_ = FormMeta{meta_->weight + 2, meta_->index2, meta_->level, meta_->kind};
    for (const auto& [d, c] : c_)
        if (d != 0) s.set_coeff(d, c.scaled(Rat(d)));
    return s;
}

FourierSeries FourierSeries::dx() const {
    FourierSeries s(qmax_, pole_order_);
    if (meta_) s.meta_ = FormMeta{meta_->weight + 1, meta_->index2, meta_->level, meta_->kind};
    for (const auto& [d, c] : c_) s.set_coeff(d, c.dx());
    return s;
}

FourierSeries FourierSeries::substitute_p_power(long r) const {
    if (r == 0) throw std::logic_error("substitute_p_power: r must be nonzero");
    FourierSeries s(qmax_, pole_order_);
    if (meta_) s.meta_ = FormMeta{meta_->weight, meta_->index2 * r, meta_->level, meta_->kind};
    for (const auto& [d, c] : c_) s.set_coeff(d, c.substitute_u_power(static_cast<int>(r)));
    return s;
}

LaurentView FourierSeries::to_laurent(int rmin2, int rmax2) const {
    LaurentView v(pole_order_, qmax_, rmin2, rmax2);
    for (const auto& [d, c] : c_)
        for (const auto& [e, a] : c.expand_ascending(rmax2))
            if (e >= rmin2) v.set(d, e, a);
    return v;
}

bool FourierSeries::operator==(const FourierSeries& o) const {
    const long shared = std::min(qmax_, o.qmax_);
    for (const auto& [d, c] : c_)
        if (d <= shared && !(c == o.coeff(d))) return false;
    for (const auto& [d, c] : o.c_)
        if (d <= shared && c_.find(d) == c_.end() && !c.is_zero()) return false;
    return true;
}

FourierSeries FourierSeries::pow(unsigned long e) const {
    if (e == 0) return constant(1, qmax_);
    FourierSeries acc = *this;
    for (unsigned long i = 1; i < e; ++i) acc = acc * *this;
    return acc;
}

}  // namespace qjf
