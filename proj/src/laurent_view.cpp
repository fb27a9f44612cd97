#include "qjf/laurent_view.hpp"

#include <algorithm>
#include <stdexcept>

#include "qjf/errors.hpp"

namespace qjf {

LaurentView::LaurentView(long pole_order, long qmax, int rmin2, int rmax2)
    : pole_order_(pole_order), qmax_(qmax), rmin2_(rmin2), rmax2_(rmax2) {
    if (pole_order < 0) throw std::logic_error("negative pole_order");
    if (rmin2 > rmax2) throw std::logic_error("empty u-window");
}

Rat LaurentView::coeff(long d, int uexp) const {
    if (!in_range(d, uexp)) throw std::out_of_range("coefficient outside the declared window");
    auto row = c_.find(d);
    if (row == c_.end()) return 0;
    auto it = row->second.find(uexp);
    return it == row->second.end() ? Rat(0) : it->second;
}

void LaurentView::set(long d, int uexp, const Rat& c) {
    if (!in_range(d, uexp)) throw std::out_of_range("coefficient outside the declared window");
    if (c == 0) {
        auto row = c_.find(d);
        if (row != c_.end()) {
            row->second.erase(uexp);
            if (row->second.empty()) c_.erase(row);
        }
    } else {
        c_[d][uexp] = c;
    }
}

void LaurentView::add(long d, int uexp, const Rat& c) { set(d, uexp, coeff(d, uexp) + c); }

LaurentView LaurentView::operator-() const {
    LaurentView v = *this;
    for (auto& [d, row] : v.c_)
        for (auto& [e, c] : row) c = -c;
    return v;
}

LaurentView LaurentView::operator+(const LaurentView& o) const {
    LaurentView v(std::max(pole_order_, o.pole_order_), std::min(qmax_, o.qmax_),
                  std::max(rmin2_, o.rmin2_), std::min(rmax2_, o.rmax2_));
    for (const auto& [d, row] : c_)
        for (const auto& [e, c] : row)
            if (v.in_range(d, e)) v.add(d, e, c);
    for (const auto& [d, row] : o.c_)
        for (const auto& [e, c] : row)
            if (v.in_range(d, e)) v.add(d, e, c);
    return v;
}

LaurentView LaurentView::operator-(const LaurentView& o) const { return *this + (-o); }

LaurentView LaurentView::operator*(const LaurentView& o) const {
    LaurentView v(pole_order_ + o.pole_order_, std::min(qmax_, o.qmax_),
                  std::max(rmin2_, o.rmin2_), std::min(rmax2_, o.rmax2_));
    for (const auto& [d1, row1] : c_)
        for (const auto& [d2, row2] : o.c_) {
            if (d1 + d2 > v.qmax_) continue;
            for (const auto& [e1, a1] : row1)
                for (const auto& [e2, a2] : row2)
                    if (v.in_range(d1 + d2, e1 + e2)) v.add(d1 + d2, e1 + e2, a1 * a2);
        }
    return v;
}

LaurentView LaurentView::scaled(const Rat& c) const {
    LaurentView v(pole_order_, qmax_, rmin2_, rmax2_);
    v.modulo_constant_ = modulo_constant_;
    if (c == 0) return v;
    for (const auto& [d, row] : c_)
        for (const auto& [e, a] : row) v.c_[d][e] = a * c;
    return v;
}

bool LaurentView::is_zero() const {
    for (const auto& [d, row] : c_)
        if (!row.empty()) return false;
    return true;
}

bool LaurentView::operator==(const LaurentView& o) const {
    const long dlo = std::max(-pole_order_, -o.pole_order_);
    const long dhi = std::min(qmax_, o.qmax_);
    const int elo = std::max(rmin2_, o.rmin2_);
    const int ehi = std::min(rmax2_, o.rmax2_);
    const bool skip00 = modulo_constant_ || o.modulo_constant_;
    for (long d = dlo; d <= dhi; ++d)
        for (int e = elo; e <= ehi; ++e) {
            if (skip00 && d == 0 && e == 0) continue;
            if (coeff(d, e) != o.coeff(d, e)) return false;
        }
    return true;
}

SymmetryReport check_elliptic_symmetry(const LaurentView& v, long index2,
                                       const std::vector<long>& lambdas) {
    SymmetryReport rep;
    for (long lam : lambdas) {
        if (lam == 0) continue;
        for (long d = -v.pole_order(); d <= v.qmax(); ++d)
            for (int e = v.rmin2(); e <= v.rmax2(); ++e) {
                // Doubled bookkeeping: the p-exponent is e/2, the index is
                // index2/2, and the shifted q-exponent doubles to
                // 2d - lam*e + index2*lam^2.
                const long num2 = 2 * d - lam * e + index2 * lam * lam;
                if (num2 % 2 != 0) continue;  // partner at fractional q-order
                const long dp = num2 / 2;
                const long ep_l = static_cast<long>(e) - 2 * lam * index2;
                if (ep_l < v.rmin2() || ep_l > v.rmax2()) continue;
                const int ep = static_cast<int>(ep_l);
                if (dp < -v.pole_order() || dp > v.qmax()) continue;
                if (dp == d && ep == e) continue;  // fixed site, nothing to compare
                ++rep.checked;
                if (v.coeff(d, e) != v.coeff(dp, ep))
                    rep.violations.push_back({d, e, lam});
            }
    }
    if (rep.checked == 0)
        throw WindowTooSmall("no site of the window admits a symmetry comparison");
    return rep;
}

}  // namespace qjf
