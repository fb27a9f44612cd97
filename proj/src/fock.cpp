#include "qjf/fock.hpp"

#include <algorithm>
#include <array>
#include <set>
#include <stdexcept>

#include "qjf/errors.hpp"

namespace qjf {

namespace {

Rat factorial(long k) { return factorial_rat(static_cast<unsigned long>(k)); }

// Pairing of a dense class with a single basis class.
Rat pair_with(const K3Class& alpha, int t, const K3Model& model) {
    Rat out = 0;
    for (int a = 0; a < 24; ++a)
        if (alpha[a] != 0) out += alpha[a] * model.pairing(a, t);
    return out;
}

void accumulate(FockVector& out, const FockVector& w, const Rat& c) {
    for (const auto& [mu, d] : w.terms()) out.add_term(mu, c * d);
}

}  // namespace

K3Class unit_class_of(int index) {
    if (index < 0 || index >= 24) throw std::invalid_argument("class index out of range");
    K3Class out(24, Rat(0));
    out[index] = 1;
    return out;
}

void WeightedPartition::canonicalize() {
    std::sort(parts.begin(), parts.end(), [](const auto& a, const auto& b) {
        if (a.first != b.first) return a.first > b.first;
        return a.second < b.second;
    });
}

long WeightedPartition::n() const {
    long s = 0;
    for (const auto& p : parts) s += p.first;
    return s;
}

Rat parts_product(const WeightedPartition& mu) {
    Rat out = 1;
    for (const auto& p : mu.parts) out *= Rat(p.first);
    return out;
}

Rat aut_order(const WeightedPartition& mu) {
    Rat out = 1;
    size_t i = 0;
    while (i < mu.parts.size()) {
        size_t j = i;
        while (j < mu.parts.size() && mu.parts[j] == mu.parts[i]) ++j;
        out *= factorial(static_cast<long>(j - i));
        i = j;
    }
    return out;
}

Gradings gradings(const WeightedPartition& mu, const K3Model& model) {
    Gradings g;
    g.length = mu.length();
    g.deg = mu.n() - mu.length();
    for (const auto& [m, c] : mu.parts) {
        g.deg += model.degree(c);
        g.wt += model.wt(c);
        if (c == model.index("W")) g.deg_wf += 1;
        if (c == model.index("F")) g.deg_wf -= 1;
    }
    return g;
}

namespace {

// Enumerate partitions of n with parts <= maxpart, classes assigned so that
// equal parts carry nondecreasing class indices (the canonical order).
void enumerate_basis(long n, long maxpart, WeightedPartition& cur,
                     std::vector<WeightedPartition>& out, const K3Model& model) {
    if (n == 0) {
        WeightedPartition mu = cur;
        mu.canonicalize();
        out.push_back(std::move(mu));
        return;
    }
    for (long m = std::min(n, maxpart); m >= 1; --m) {
        int cmin = 0;
        if (!cur.parts.empty() && cur.parts.back().first == m)
            cmin = cur.parts.back().second;
        for (int c = cmin; c < model.rank(); ++c) {
            cur.parts.emplace_back(m, c);
            enumerate_basis(n - m, m, cur, out, model);
            cur.parts.pop_back();
        }
    }
}

}  // namespace

std::vector<WeightedPartition> fock_basis(long n, const K3Model& model) {
    std::vector<WeightedPartition> out;
    WeightedPartition cur;
    enumerate_basis(n, n, cur, out, model);
    return out;
}

FockVector FockVector::vacuum() {
    FockVector v(0);
    v.add_term(WeightedPartition{}, 1);
    return v;
}

FockVector FockVector::basis(const WeightedPartition& mu) {
    FockVector v(mu.n());
    v.add_term(mu, 1);
    return v;
}

Rat FockVector::coeff(const WeightedPartition& mu) const {
    auto it = terms_.find(mu);
    return it == terms_.end() ? Rat(0) : it->second;
}

void FockVector::add_term(const WeightedPartition& mu, const Rat& c) {
    if (c == 0) return;
    auto [it, fresh] = terms_.emplace(mu, c);
    if (!fresh) {
        it->second += c;
        if (it->second == 0) terms_.erase(it);
    }
}

FockVector FockVector::operator+(const FockVector& o) const {
    if (is_zero()) return o;
    if (o.is_zero()) return *this;
    if (n_ != o.n_)
        throw DimensionMismatch("cannot add Fock vectors of degrees " +
                                std::to_string(n_) + " and " + std::to_string(o.n_));
    FockVector out = *this;
    for (const auto& [mu, c] : o.terms_) out.add_term(mu, c);
    return out;
}

FockVector FockVector::operator-(const FockVector& o) const {
    return *this + o.scaled(Rat(-1));
}

FockVector FockVector::scaled(const Rat& c) const {
    FockVector out(n_);
    if (c == 0) return out;
    for (const auto& [mu, d] : terms_) out.terms_[mu] = d * c;
    return out;
}

bool FockVector::operator==(const FockVector& o) const {
    if (terms_.empty() && o.terms_.empty()) return true;
    return n_ == o.n_ && terms_ == o.terms_;
}

FockVector nakajima_apply(long k, const K3Class& alpha, const FockVector& v,
                          const K3Model& model) {
    FockVector out(v.n() + k);
    if (k == 0) return out;  // q_0 acts as zero
    if (k > 0) {
        for (const auto& [mu, c] : v.terms()) {
            for (int a = 0; a < model.rank(); ++a) {
                if (alpha[a] == 0) continue;
                WeightedPartition nu = mu;
                nu.parts.emplace_back(k, a);
                nu.canonicalize();
                out.add_term(nu, c * alpha[a]);
            }
        }
        return out;
    }
    long m = -k;
    for (const auto& [mu, c] : v.terms()) {
        for (size_t i = 0; i < mu.parts.size(); ++i) {
            if (mu.parts[i].first != m) continue;
            Rat pc = pair_with(alpha, mu.parts[i].second, model);
            if (pc == 0) continue;
            WeightedPartition nu = mu;
            nu.parts.erase(nu.parts.begin() + static_cast<long>(i));
            out.add_term(nu, c * Rat(k) * pc);
        }
    }
    return out;
}

FockVector nakajima_apply(long k, int class_index, const FockVector& v,
                          const K3Model& model) {
    return nakajima_apply(k, unit_class_of(class_index), v, model);
}

namespace {

// Permanent of a small matrix, skipping zero entries early.
Rat permanent(const std::vector<std::vector<Rat>>& f) {
    size_t k = f.size();
    std::function<Rat(size_t, unsigned)> rec = [&](size_t row, unsigned used) -> Rat {
        if (row == k) return Rat(1);
        Rat s = 0;
        for (size_t col = 0; col < k; ++col) {
            if (used & (1u << col)) continue;
            if (f[row][col] == 0) continue;
            s += f[row][col] * rec(row + 1, used | (1u << col));
        }
        return s;
    };
    return rec(0, 0);
}

// Pairing of two basis partitions.  Moving each creation operator of mu
// across the pairing (adjoint of q_k is (-1)^k q_{-k}) contracts it against
// exactly one part of nu of the same size, contributing (-1)^(m+1) m times
// the class pairing; the total is the sum over all such matchings.
Rat basis_pairing(const WeightedPartition& mu, const WeightedPartition& nu,
                  const K3Model& model) {
    size_t l = mu.parts.size();
    if (nu.parts.size() != l) return Rat(0);
    // Canonical order sorts parts descending, so the part multisets agree
    // exactly when they agree position by position.
    for (size_t i = 0; i < l; ++i)
        if (mu.parts[i].first != nu.parts[i].first) return Rat(0);
    Rat total = 1;
    size_t i = 0;
    while (i < l) {
        long m = mu.parts[i].first;
        size_t j = i;
        while (j < l && mu.parts[j].first == m) ++j;
        size_t k = j - i;
        std::vector<std::vector<Rat>> f(k, std::vector<Rat>(k));
        for (size_t r = 0; r < k; ++r)
            for (size_t c = 0; c < k; ++c)
                f[r][c] = model.pairing(mu.parts[i + r].second, nu.parts[i + c].second);
        Rat p = permanent(f);
        if (p == 0) return Rat(0);
        total *= p * rat_pow(Rat(m % 2 == 0 ? -m : m), static_cast<long>(k));
        i = j;
    }
    return total;
}

}  // namespace

Rat fock_pairing(const FockVector& v, const FockVector& w, const K3Model& model) {
    if (v.is_zero() || w.is_zero()) return Rat(0);
    if (v.n() != w.n())
        throw DimensionMismatch("cannot pair Fock vectors of degrees " +
                                std::to_string(v.n()) + " and " + std::to_string(w.n()));
    Rat total = 0;
    for (const auto& [mu, c] : v.terms())
        for (const auto& [nu, d] : w.terms()) {
            Rat p = basis_pairing(mu, nu, model);
            if (p != 0) total += c * d * p;
        }
    return total;
}

FockVector class_of_partition(const WeightedPartition& mu) {
    WeightedPartition nu = mu;
    nu.canonicalize();
    return FockVector::basis(nu).scaled(Rat(1) / parts_product(nu));
}

namespace {

FockVector creation_chain(const std::vector<std::pair<long, K3Class>>& parts,
                          const K3Model& model) {
    FockVector v = FockVector::vacuum();
    for (const auto& [m, cls] : parts) v = nakajima_apply(m, cls, v, model);
    return v;
}

}  // namespace

FockVector hilb_unit(long n, const K3Model& model) {
    if (n < 0) throw std::invalid_argument("n must be nonnegative");
    std::vector<std::pair<long, K3Class>> parts(n, {1, unit_class_of(0)});
    return creation_chain(parts, model).scaled(Rat(1) / factorial(n));
}

FockVector hilb_divisor(const K3Class& alpha, long n, const K3Model& model) {
    if (n < 1) throw std::invalid_argument("n must be at least 1");
    std::vector<std::pair<long, K3Class>> parts(n - 1, {1, unit_class_of(0)});
    parts.push_back({1, alpha});
    return creation_chain(parts, model).scaled(Rat(1) / factorial(n - 1));
}

FockVector hilb_delta(long n, const K3Model& model) {
    if (n < 2) throw std::invalid_argument("n must be at least 2");
    std::vector<std::pair<long, K3Class>> parts(n - 2, {1, unit_class_of(0)});
    parts.push_back({2, unit_class_of(0)});
    return creation_chain(parts, model).scaled(Rat(-1) / (Rat(2) * factorial(n - 2)));
}

FockVector hilb_fiber_curve(long n, const K3Model& model) {
    if (n < 1) throw std::invalid_argument("n must be at least 1");
    std::vector<std::pair<long, K3Class>> parts(n - 1, {1, unit_class_of(1)});
    parts.push_back({1, unit_class_of(model.index("F"))});
    return creation_chain(parts, model);
}

FockVector hilb_section_curve(long n, const K3Model& model) {
    if (n < 1) throw std::invalid_argument("n must be at least 1");
    std::vector<std::pair<long, K3Class>> parts(n - 1, {1, unit_class_of(1)});
    parts.push_back({1, unit_class_of(model.index("W"))});
    return creation_chain(parts, model);
}

FockVector hilb_exceptional_curve(long n, const K3Model& model) {
    if (n < 2) throw std::invalid_argument("n must be at least 2");
    std::vector<std::pair<long, K3Class>> parts(n - 2, {1, unit_class_of(1)});
    parts.push_back({2, unit_class_of(1)});
    return creation_chain(parts, model);
}

LinearOperator::LinearOperator()
    : cache_(std::make_shared<std::map<WeightedPartition, FockVector>>()) {}

LinearOperator::LinearOperator(long shift, Rule rule)
    : shift_(shift), rule_(std::move(rule)),
      cache_(std::make_shared<std::map<WeightedPartition, FockVector>>()) {}

FockVector LinearOperator::apply(const FockVector& v) const {
    FockVector out(v.n() + shift_);
    if (!rule_) return out;
    for (const auto& [mu, c] : v.terms()) {
        auto it = cache_->find(mu);
        if (it == cache_->end())
            it = cache_->emplace(mu, rule_(FockVector::basis(mu))).first;
        accumulate(out, it->second, c);
    }
    return out;
}

LinearOperator LinearOperator::operator+(const LinearOperator& o) const {
    if (shift_ != o.shift_)
        throw ShiftMismatch("cannot add operators of shifts " + std::to_string(shift_) +
                            " and " + std::to_string(o.shift_));
    LinearOperator a = *this, b = o;
    return LinearOperator(shift_, [a, b](const FockVector& v) {
        return a.apply(v) + b.apply(v);
    });
}

LinearOperator LinearOperator::operator-(const LinearOperator& o) const {
    return *this + o.scaled(Rat(-1));
}

LinearOperator LinearOperator::scaled(const Rat& c) const {
    LinearOperator a = *this;
    return LinearOperator(shift_, [a, c](const FockVector& v) {
        return a.apply(v).scaled(c);
    });
}

LinearOperator compose(const LinearOperator& a, const LinearOperator& b) {
    LinearOperator a2 = a, b2 = b;
    return LinearOperator(a.shift() + b.shift(), [a2, b2](const FockVector& v) {
        return a2.apply(b2.apply(v));
    });
}

LinearOperator commutator(const LinearOperator& a, const LinearOperator& b) {
    return compose(a, b) - compose(b, a);
}

namespace {

// c * q_m(cre) q_{-m}(ann), one term of a quadratic operator.
struct QuadTerm {
    Rat c;
    long m = 1;
    K3Class cre;
    K3Class ann;
};

LinearOperator quadratic_operator(std::vector<QuadTerm> terms, const K3Model& model) {
    return LinearOperator(0, [terms = std::move(terms), &model](const FockVector& v) {
        FockVector out(v.n());
        for (const auto& t : terms) {
            FockVector w = nakajima_apply(-t.m, t.ann, v, model);
            if (w.is_zero()) continue;
            w = nakajima_apply(t.m, t.cre, w, model);
            accumulate(out, w, t.c);
        }
        return out;
    });
}

// One component of a three-index diagonal class; slot r carries the class
// applied with the r-th index of the triple.
struct CubicComp {
    Rat c;
    std::array<K3Class, 3> slot;
};

// Sum over ordered triples (i, j, k), all nonzero with i + j + k = 0, of
// weight(i, j, k) * :q_i(s1) q_j(s2) q_k(s3): applied to v.  Normal order
// sorts the indices descending; equal indices commute, so ties are safe.
LinearOperator cubic_operator(std::vector<CubicComp> comps, long n,
                              std::function<Rat(long, long, long)> weight,
                              const K3Model& model) {
    return LinearOperator(0, [comps = std::move(comps), n, weight = std::move(weight),
                              &model](const FockVector& v) {
        FockVector out(v.n());
        for (long i = -n; i <= n; ++i) {
            if (i == 0) continue;
            for (long j = -n; j <= n; ++j) {
                if (j == 0) continue;
                long k = -i - j;
                if (k == 0 || k < -n || k > n) continue;
                Rat wgt = weight(i, j, k);
                if (wgt == 0) continue;
                std::array<std::pair<long, int>, 3> ord = {{{i, 0}, {j, 1}, {k, 2}}};
                std::stable_sort(ord.begin(), ord.end(),
                                 [](const auto& a, const auto& b) { return a.first > b.first; });
                for (const auto& comp : comps) {
                    FockVector w = v;
                    for (int t = 2; t >= 0 && !w.is_zero(); --t)
                        w = nakajima_apply(ord[t].first, comp.slot[ord[t].second], w, model);
                    if (!w.is_zero()) accumulate(out, w, comp.c * wgt);
                }
            }
        }
        return out;
    });
}

K3Class cup_class(const K3Class& x, int a, const K3Model& model) {
    K3Class out(24, Rat(0));
    for (int i = 0; i < 24; ++i) {
        if (x[i] == 0) continue;
        std::vector<Rat> c = model.cup(i, a);
        for (int j = 0; j < 24; ++j)
            if (c[j] != 0) out[j] += x[i] * c[j];
    }
    return out;
}

bool is_zero_class(const K3Class& x) {
    for (const Rat& c : x)
        if (c != 0) return false;
    return true;
}

}  // namespace

LinearOperator llv_e(const K3Class& alpha, long n, const K3Model& model) {
    // Cup product with the divisor class of alpha: the diagonal pushforward
    // of alpha decomposes as the sum over a of D_a (x) (alpha cup gamma_a).
    std::vector<QuadTerm> terms;
    for (long m = 1; m <= n; ++m) {
        for (int a = 0; a < 24; ++a) {
            K3Class ann = cup_class(alpha, a, model);
            if (is_zero_class(ann)) continue;
            terms.push_back({Rat(-1), m, model.dual(a), std::move(ann)});
        }
    }
    return quadratic_operator(std::move(terms), model);
}

LinearOperator llv_f(const K3Class& alpha, long n, const K3Model& model) {
    std::vector<QuadTerm> terms;
    for (long m = 1; m <= n; ++m) {
        Rat c = Rat(-1) / Rat(m * m);
        terms.push_back({c, m, alpha, unit_class_of(0)});
        terms.push_back({c, m, unit_class_of(0), alpha});
    }
    return quadratic_operator(std::move(terms), model);
}

LinearOperator llv_h(long n, const K3Model& model) {
    std::vector<QuadTerm> terms;
    for (long m = 1; m <= n; ++m) {
        Rat c = Rat(1) / Rat(m);
        terms.push_back({c, m, unit_class_of(0), unit_class_of(1)});
        terms.push_back({-c, m, unit_class_of(1), unit_class_of(0)});
    }
    return quadratic_operator(std::move(terms), model);
}

LinearOperator llv_u(long n, const K3Model& model) {
    return llv_f(unit_class_of(model.index("F")), n, model);
}

LinearOperator llv_wt(long n, const K3Model& model) {
    int w = model.index("W"), f = model.index("F");
    std::vector<QuadTerm> terms;
    for (long m = 1; m <= n; ++m) {
        Rat c = Rat(1) / Rat(m);
        terms.push_back({c, m, unit_class_of(0), unit_class_of(1)});
        terms.push_back({-c, m, unit_class_of(1), unit_class_of(0)});
        terms.push_back({c, m, unit_class_of(f), unit_class_of(w)});
        terms.push_back({-c, m, unit_class_of(w), unit_class_of(f)});
    }
    return quadratic_operator(std::move(terms), model);
}

LinearOperator llv_e_delta(long n, const K3Model& model) {
    // Cup product with the half non-reduced locus, through the small
    // diagonal of three factors: the point-unit components plus, for each
    // middle class, its three arrangements with a point class.
    std::vector<CubicComp> comps;
    K3Class one = unit_class_of(0), pt = unit_class_of(1);
    comps.push_back({Rat(1), {pt, pt, one}});
    comps.push_back({Rat(1), {pt, one, pt}});
    comps.push_back({Rat(1), {one, pt, pt}});
    for (int t = 2; t < 24; ++t) {
        K3Class g = unit_class_of(t), d = model.dual(t);
        comps.push_back({Rat(1), {d, g, pt}});
        comps.push_back({Rat(1), {d, pt, g}});
        comps.push_back({Rat(1), {pt, d, g}});
    }
    return cubic_operator(std::move(comps), n,
                          [](long, long, long) -> Rat { return Rat(-1) / Rat(6); }, model);
}

LinearOperator llv_t_delta(long n, const K3Model& model) {
    // The fiber-shift generator: the first slot carries the fiber-sum
    // insertion and its index weights the term by 1/i.
    std::vector<CubicComp> comps;
    K3Class one = unit_class_of(0), pt = unit_class_of(1);
    int f = model.index("F");
    K3Class fc = unit_class_of(f);
    for (int a = 0; a < 24; ++a)
        comps.push_back({Rat(1), {fc, unit_class_of(a), model.dual(a)}});
    comps.push_back({Rat(1), {one, fc, pt}});
    comps.push_back({Rat(1), {one, pt, fc}});
    return cubic_operator(std::move(comps), n,
                          [](long i, long, long) -> Rat { return Rat(1) / Rat(2 * i); }, model);
}

LinearOperator llv_operator(const std::string& name, long n, const K3Model& model) {
    if (name == "h") return llv_h(n, model);
    if (name == "U") return llv_u(n, model);
    if (name == "Wt") return llv_wt(n, model);
    if (name == "T_delta") return llv_t_delta(n, model);
    if (name == "e_delta") return llv_e_delta(n, model);
    if (name == "f_delta")
        throw UnsupportedClass("f_delta is not part of the operator presentation");
    bool is_e = name.rfind("e_", 0) == 0;
    bool is_f = name.rfind("f_", 0) == 0;
    if (is_e || is_f) {
        std::string lab = name.substr(2);
        int idx;
        try {
            idx = model.index(lab);
        } catch (const UnsupportedClass&) {
            throw UnknownOperator("unknown operator name: " + name);
        }
        if (!model.is_middle(idx))
            throw UnsupportedClass("operator " + name + " requires a middle-cohomology class");
        return is_e ? llv_e(unit_class_of(idx), n, model)
                    : llv_f(unit_class_of(idx), n, model);
    }
    throw UnknownOperator("unknown operator name: " + name);
}

LLVElement LLVElement::wedge(int a, int b, const Rat& c) {
    LLVElement x;
    x.add_wedge(a, b, c);
    return x;
}

void LLVElement::add_wedge(int a, int b, const Rat& c) {
    if (a == b || c == 0) return;
    Rat d = c;
    int lo = a, hi = b;
    if (lo > hi) {
        std::swap(lo, hi);
        d = -d;
    }
    auto key = std::make_pair(lo, hi);
    auto [it, fresh] = terms_.emplace(key, d);
    if (!fresh) {
        it->second += d;
        if (it->second == 0) terms_.erase(it);
    }
}

LLVElement LLVElement::operator+(const LLVElement& o) const {
    LLVElement out = *this;
    for (const auto& [k, c] : o.terms_) out.add_wedge(k.first, k.second, c);
    return out;
}

LLVElement LLVElement::operator-(const LLVElement& o) const {
    return *this + o.scaled(Rat(-1));
}

LLVElement LLVElement::scaled(const Rat& c) const {
    LLVElement out;
    if (c == 0) return out;
    for (const auto& [k, d] : terms_) out.terms_[k] = d * c;
    return out;
}

namespace {

// The extended pairing: intersection form on the middle cohomology, delta
// self-pairing 2 - 2n, and the hyperbolic pair (e, f).
Rat ext_pairing(int a, int b, long n, const K3Model& model) {
    if (a < 24 && b < 24) return model.pairing(a, b);
    if (a == kLLVDelta && b == kLLVDelta) return Rat(2 - 2 * n);
    if ((a == kLLVe && b == kLLVf) || (a == kLLVf && b == kLLVe)) return Rat(1);
    return Rat(0);
}

}  // namespace

LLVElement llv_bracket(const LLVElement& x, const LLVElement& y, long n,
                       const K3Model& model) {
    LLVElement out;
    for (const auto& [xa, xc] : x.terms()) {
        for (const auto& [ya, yc] : y.terms()) {
            int a = xa.first, b = xa.second, c = ya.first, d = ya.second;
            Rat s = xc * yc;
            out.add_wedge(b, c, s * ext_pairing(a, d, n, model));
            out.add_wedge(b, d, -s * ext_pairing(a, c, n, model));
            out.add_wedge(a, c, -s * ext_pairing(b, d, n, model));
            out.add_wedge(a, d, s * ext_pairing(b, c, n, model));
        }
    }
    return out;
}

LinearOperator act(const LLVElement& x, long n, const K3Model& model) {
    LinearOperator out;
    bool first = true;
    auto add = [&](const LinearOperator& op, const Rat& c) {
        LinearOperator piece = op.scaled(c);
        out = first ? piece : out + piece;
        first = false;
    };
    int fidx = model.index("F");
    for (const auto& [key, c] : x.terms()) {
        int a = key.first, b = key.second;  // a < b
        if (b < 24) {
            // Both factors middle: x ^ y acts as [e(x), f(y)] - (x,y) h.
            add(commutator(llv_e(unit_class_of(a), n, model),
                           llv_f(unit_class_of(b), n, model)) -
                    llv_h(n, model).scaled(model.pairing(a, b)),
                c);
        } else if (b == kLLVDelta) {
            // alpha ^ delta = -(delta ^ alpha); delta pairs to zero with the
            // middle cohomology, and delta ^ F is the fiber-shift generator.
            if (a == fidx)
                add(llv_t_delta(n, model), -c);
            else
                add(commutator(llv_e_delta(n, model), llv_f(unit_class_of(a), n, model)),
                    -c);
        } else if (b == kLLVe) {
            if (a == kLLVDelta)
                add(llv_e_delta(n, model), -c);
            else
                add(llv_e(unit_class_of(a), n, model), -c);
        } else {  // b == kLLVf
            if (a == kLLVDelta)
                throw UnsupportedClass("delta ^ f has no operator in this presentation");
            if (a == kLLVe)
                add(llv_h(n, model), c);
            else
                add(llv_f(unit_class_of(a), n, model), c);
        }
    }
    return out;
}

LinearOperator monodromy_involution(long n, const K3Model&) {
    return LinearOperator(0, [n](const FockVector& v) {
        FockVector out(n);
        for (const auto& [mu, c] : v.terms()) {
            bool flip = (n + mu.length()) % 2 != 0;
            out.add_term(mu, flip ? -c : c);
        }
        return out;
    });
}

LinearOperator monodromy_shift(const Rat& lambda, long n, const K3Model& model) {
    LinearOperator t = llv_t_delta(n, model);
    return LinearOperator(0, [lambda, n, t](const FockVector& v) {
        // exp(lambda T) as a finite sum: T lowers the weight grading, whose
        // eigenvalues on degree n are bounded, so the series terminates.
        FockVector out = v;
        FockVector cur = v;
        Rat c = 1;
        for (long j = 1; !cur.is_zero(); ++j) {
            if (j > 2 * n + 2)
                throw std::logic_error("shift exponential failed to terminate");
            cur = t.apply(cur);
            c = c * lambda / Rat(j);
            accumulate(out, cur, c);
        }
        return out;
    });
}

std::vector<DiagonalTerm> kunneth_diagonal(long n, const K3Model& model) {
    std::vector<DiagonalTerm> out;
    for (const WeightedPartition& mu : fock_basis(n, model)) {
        DiagonalTerm t;
        t.coeff = Rat((n + mu.length()) % 2 == 0 ? 1 : -1) / aut_order(mu);
        t.left = mu;
        std::vector<std::pair<long, K3Class>> dual_parts;
        for (const auto& [m, c] : mu.parts) dual_parts.push_back({m, model.dual(c)});
        t.right = creation_chain(dual_parts, model).scaled(Rat(1) / parts_product(mu));
        out.push_back(std::move(t));
    }
    return out;
}

namespace {

void u_class_emit(long b, int xl, int xr, long n,
                  std::vector<std::pair<long, int>>& tuple,
                  std::vector<DiagonalTerm>& out, const K3Model& model) {
    long m = static_cast<long>(tuple.size());
    DiagonalTerm t;
    t.coeff = Rat((m + n + 1) % 2 == 0 ? 1 : -1) / (factorial(m) * Rat(b));
    t.left.parts.emplace_back(b, xl);
    Rat prod = Rat(b);
    std::vector<std::pair<long, K3Class>> dual_parts{{b, unit_class_of(xr)}};
    for (const auto& [bi, a] : tuple) {
        t.left.parts.emplace_back(bi, a);
        dual_parts.push_back({bi, model.dual(a)});
        prod *= Rat(bi);
    }
    t.left.canonicalize();
    t.right = creation_chain(dual_parts, model).scaled(Rat(1) / prod);
    out.push_back(std::move(t));
}

void u_class_rec(long rest, long b, int xl, int xr, long n,
                 std::vector<std::pair<long, int>>& tuple,
                 std::vector<DiagonalTerm>& out, const K3Model& model) {
    if (rest == 0) {
        u_class_emit(b, xl, xr, n, tuple, out, model);
        return;
    }
    for (long bi = 1; bi <= rest; ++bi) {
        for (int a = 0; a < model.rank(); ++a) {
            tuple.emplace_back(bi, a);
            u_class_rec(rest - bi, b, xl, xr, n, tuple, out, model);
            tuple.pop_back();
        }
    }
}

}  // namespace

std::vector<DiagonalTerm> u_class(long n, const K3Model& model) {
    // One factor carries the base diagonal (fiber class against unit, both
    // ways); the remaining parts carry the surface diagonal.  Tuples of
    // surface parts are ordered, compensated by the 1/m! in the coefficient.
    std::vector<DiagonalTerm> out;
    int f = model.index("F");
    for (long b = n; b >= 1; --b) {
        for (int s = 0; s < 2; ++s) {
            int xl = s == 0 ? f : 0;
            int xr = s == 0 ? 0 : f;
            std::vector<std::pair<long, int>> tuple;
            u_class_rec(n - b, b, xl, xr, n, tuple, out, model);
        }
    }
    return out;
}

FockVector diagonal_contract(const std::vector<DiagonalTerm>& terms,
                             const FockVector& gamma, const K3Model& model) {
    FockVector out(gamma.n());
    std::map<WeightedPartition, std::vector<size_t>> by_left;
    for (size_t i = 0; i < terms.size(); ++i) by_left[terms[i].left].push_back(i);
    for (const auto& [nu, c] : gamma.terms()) {
        // Only left partitions whose classes pair nonzero part by part can
        // contribute; enumerate those instead of scanning every term.
        std::vector<std::vector<int>> partners;
        for (const auto& [m, cls] : nu.parts) {
            std::vector<int> p;
            for (int t = 0; t < model.rank(); ++t)
                if (model.pairing(cls, t) != 0) p.push_back(t);
            partners.push_back(std::move(p));
        }
        std::set<WeightedPartition> cands;
        std::vector<int> choice(nu.parts.size());
        std::function<void(size_t)> rec = [&](size_t idx) {
            if (idx == nu.parts.size()) {
                WeightedPartition mu;
                for (size_t i = 0; i < choice.size(); ++i)
                    mu.parts.emplace_back(nu.parts[i].first, choice[i]);
                mu.canonicalize();
                cands.insert(std::move(mu));
                return;
            }
            for (int t : partners[idx]) {
                choice[idx] = t;
                rec(idx + 1);
            }
        };
        rec(0);
        for (const WeightedPartition& mu : cands) {
            auto it = by_left.find(mu);
            if (it == by_left.end()) continue;
            Rat p = basis_pairing(nu, mu, model);
            if (p == 0) continue;
            for (size_t i : it->second)
                accumulate(out, terms[i].right, terms[i].coeff * c * p);
        }
    }
    return out;
}

LinearOperator cup_operator(const WeightedPartition& mu0, long n, const K3Model& model) {
    WeightedPartition mu = mu0;
    mu.canonicalize();
    if (mu.n() != n)
        throw DimensionMismatch("partition of " + std::to_string(mu.n()) +
                                " does not live on the degree-" + std::to_string(n) +
                                " component");
    long ones = 0;
    std::vector<std::pair<long, int>> special;
    for (const auto& p : mu.parts) {
        if (p.first == 1 && p.second == 0)
            ++ones;
        else
            special.push_back(p);
    }
    if (special.empty()) {
        // The unit partition: cup with n! times the unit class.
        return LinearOperator(0, [](const FockVector& v) { return v; }).scaled(factorial(n));
    }
    if (special.size() == 1 && special[0].first == 1 && model.is_middle(special[0].second))
        return llv_e(unit_class_of(special[0].second), n, model).scaled(factorial(n - 1));
    if (special.size() == 1 && special[0].first == 2 && special[0].second == 0)
        return llv_e_delta(n, model).scaled(-factorial(n - 2));
    throw UnsupportedClass("no named cup operator for this partition shape");
}

}  // namespace qjf
