#include "qjf/genpoly.hpp"

#include <algorithm>
#include <stdexcept>

namespace qjf {

namespace {
constexpr const char* kNames[kNumGens] = {"Theta", "A",  "G2",       "P",       "Pp",
                                          "G4",    "G6", "DeltaInv", "ThetaInv"};
constexpr long kWeights[kNumGens] = {-1, 1, 2, 2, 3, 4, 6, -12, 1};
constexpr long kIndex2[kNumGens] = {1, 0, 0, 0, 0, 0, 0, 0, -1};
}  // namespace

const char* gen_name(Gen g) { return kNames[static_cast<size_t>(g)]; }

std::optional<Gen> gen_from_name(const std::string& s) {
    for (int i = 0; i < kNumGens; ++i)
        if (s == kNames[i]) return static_cast<Gen>(i);
    return std::nullopt;
}

long gen_weight(Gen g) { return kWeights[static_cast<size_t>(g)]; }
long gen_index2(Gen g) { return kIndex2[static_cast<size_t>(g)]; }

FormKind gen_kind(Gen g) {
    switch (g) {
        case Gen::Theta:
        case Gen::G2:
        case Gen::G4:
        case Gen::G6:
            return FormKind::holomorphic_quasi;
        default:
            return FormKind::meromorphic_quasi;
    }
}

long Mono::weight() const {
    long w = 0;
    for (int i = 0; i < kNumGens; ++i) w += kWeights[i] * e[static_cast<size_t>(i)];
    return w;
}

long Mono::index2() const {
    return exp(Gen::Theta) - exp(Gen::ThetaInv);
}

bool Mono::is_trivial() const {
    return std::all_of(e.begin(), e.end(), [](int x) { return x == 0; });
}

GenPoly GenPoly::constant(const Rat& c) {
    GenPoly p;
    p.add_term(Mono{}, c);
    return p;
}

GenPoly GenPoly::generator(Gen g, int power) {
    Mono m;
    m.exp(g) = power;
    return monomial(m, 1);
}

GenPoly GenPoly::monomial(Mono m, const Rat& c) {
    GenPoly p;
    p.add_term(m, c);
    return p;
}

void GenPoly::add_term(Mono m, const Rat& c) {
    if (c == 0) return;
    for (int i = 0; i < kNumGens; ++i)
        if (m.e[static_cast<size_t>(i)] < 0)
            throw std::logic_error("negative generator exponent");
    // Theta * ThetaInv = 1 exactly; keep monomials reduced.
    const int cancel = std::min(m.exp(Gen::Theta), m.exp(Gen::ThetaInv));
    m.exp(Gen::Theta) -= cancel;
    m.exp(Gen::ThetaInv) -= cancel;
    auto [it, fresh] = t_.try_emplace(m, c);
    if (!fresh) {
        it->second += c;
        if (it->second == 0) t_.erase(it);
    }
}

GenPoly GenPoly::operator-() const {
    GenPoly p;
    for (const auto& [m, c] : t_) p.t_[m] = -c;
    return p;
}

GenPoly GenPoly::operator+(const GenPoly& o) const {
    GenPoly p = *this;
    for (const auto& [m, c] : o.t_) p.add_term(m, c);
    return p;
}

GenPoly GenPoly::operator-(const GenPoly& o) const { return *this + (-o); }

GenPoly GenPoly::operator*(const GenPoly& o) const {
    GenPoly p;
    for (const auto& [m1, c1] : t_)
        for (const auto& [m2, c2] : o.t_) {
            Mono m;
            for (size_t i = 0; i < kNumGens; ++i) m.e[i] = m1.e[i] + m2.e[i];
            p.add_term(m, c1 * c2);
        }
    return p;
}

GenPoly GenPoly::scaled(const Rat& c) const {
    GenPoly p;
    if (c == 0) return p;
    for (const auto& [m, cc] : t_) p.t_[m] = cc * c;
    return p;
}

GenPoly GenPoly::pow(unsigned long n) const {
    GenPoly acc = constant(1);
    for (unsigned long i = 0; i < n; ++i) acc = acc * *this;
    return acc;
}

bool GenPoly::is_homogeneous() const {
    if (t_.empty()) return true;
    const long w = t_.begin()->first.weight();
    const long i2 = t_.begin()->first.index2();
    for (const auto& [m, c] : t_)
        if (m.weight() != w || m.index2() != i2) return false;
    return true;
}

long GenPoly::weight() const {
    if (t_.empty()) return 0;
    if (!is_homogeneous()) throw std::logic_error("weight of inhomogeneous polynomial");
    return t_.begin()->first.weight();
}

long GenPoly::index2() const {
    if (t_.empty()) return 0;
    if (!is_homogeneous()) throw std::logic_error("index of inhomogeneous polynomial");
    return t_.begin()->first.index2();
}

int GenPoly::delta_inv_degree() const {
    int d = 0;
    for (const auto& [m, c] : t_) d = std::max(d, m.exp(Gen::DeltaInv));
    return d;
}

GenPoly GenPoly::partial(Gen g) const {
    GenPoly p;
    for (const auto& [m, c] : t_) {
        const int a = m.exp(g);
        if (a == 0) continue;
        Mono dm = m;
        dm.exp(g) = a - 1;
        p.add_term(dm, c * a);
    }
    return p;
}

}  // namespace qjf
