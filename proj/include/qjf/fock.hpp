#pragma once

#include <functional>
#include <map>
#include <memory>
#include <string>
#include <utility>
#include <vector>

#include "qjf/k3_model.hpp"
#include "qjf/rational.hpp"

namespace qjf {

// A cohomology class of the surface as dense coordinates in the 24-class
// basis of K3Model.
using K3Class = std::vector<Rat>;

// Basis class with the given index.
K3Class unit_class_of(int index);

// A weighted partition: parts (m, c) with m >= 1 and c a basis-class index.
// Canonical order: parts descending, ties broken by ascending class index.
// These label the creation-operator monomials spanning the Fock space; the
// basis vector [mu] is the product of q_m(gamma_c) over the parts applied to
// the vacuum (creation operators commute, so the order is pure bookkeeping).
struct WeightedPartition {
    std::vector<std::pair<long, int>> parts;

    void canonicalize();
    long n() const;  // sum of the parts
    long length() const { return static_cast<long>(parts.size()); }

    auto operator<=>(const WeightedPartition&) const = default;
};

// Product of the parts of mu.
Rat parts_product(const WeightedPartition& mu);
// Order of the automorphism group: product over distinct (part, class) pairs
// of the factorial of their multiplicities.
Rat aut_order(const WeightedPartition& mu);

// The four gradings carried by a basis vector.
struct Gradings {
    long deg = 0;     // complex degree: n - length + sum of class degrees
    long wt = 0;      // sl2-weight: sum of class weights
    long deg_wf = 0;  // (number of W parts) - (number of F parts)
    long length = 0;
};
Gradings gradings(const WeightedPartition& mu, const K3Model& model);

// All weighted partitions of n in a fixed deterministic order.
std::vector<WeightedPartition> fock_basis(long n, const K3Model& model);

// A vector in the degree-n part of the Fock space: a finite rational
// combination of weighted partitions of n.
class FockVector {
public:
    FockVector() = default;
    explicit FockVector(long n) : n_(n) {}

    // The vacuum vector: coefficient 1 on the empty partition of n = 0.
    static FockVector vacuum();
    // The basis vector of a single partition.
    static FockVector basis(const WeightedPartition& mu);

    long n() const { return n_; }
    bool is_zero() const { return terms_.empty(); }
    const std::map<WeightedPartition, Rat>& terms() const { return terms_; }
    Rat coeff(const WeightedPartition& mu) const;

    void add_term(const WeightedPartition& mu, const Rat& c);

    // Addition requires matching degrees unless one side is zero.
    FockVector operator+(const FockVector& o) const;
    FockVector operator-(const FockVector& o) const;
    FockVector scaled(const Rat& c) const;

    // Zero vectors compare equal regardless of recorded degree.
    bool operator==(const FockVector& o) const;

private:
    long n_ = 0;
    std::map<WeightedPartition, Rat> terms_;
};

// Nakajima operator q_k(alpha) applied to v.  k > 0 adds a part (k, c) for
// each basis component c of alpha; k < 0 removes parts of size -k, each
// removal weighted by k times the pairing of alpha with the removed class;
// q_0 acts as zero.
FockVector nakajima_apply(long k, const K3Class& alpha, const FockVector& v,
                          const K3Model& model);
FockVector nakajima_apply(long k, int class_index, const FockVector& v,
                          const K3Model& model);

// Poincare pairing of two Fock vectors, computed by moving creation
// operators across: the adjoint of q_k is (-1)^k q_{-k}.  Throws
// DimensionMismatch when both sides are nonzero of different degrees.
Rat fock_pairing(const FockVector& v, const FockVector& w, const K3Model& model);

// The partition class: [mu] divided by the product of its parts.  These are
// the geometric cycle classes whose products the cup operators compute.
FockVector class_of_partition(const WeightedPartition& mu);

// Distinguished classes on the Hilbert scheme of n points.
FockVector hilb_unit(long n, const K3Model& model);
// Divisor class attached to a middle-cohomology class alpha.
FockVector hilb_divisor(const K3Class& alpha, long n, const K3Model& model);
// Half the class of the non-reduced locus, with its customary minus sign.
FockVector hilb_delta(long n, const K3Model& model);
// Curve classes: a fixed fiber / section swept with n - 1 points, and the
// exceptional curve over a doubled point.
FockVector hilb_fiber_curve(long n, const K3Model& model);
FockVector hilb_section_curve(long n, const K3Model& model);
FockVector hilb_exceptional_curve(long n, const K3Model& model);

// A degree-preserving-up-to-shift linear operator on the Fock space, given
// by a rule on vectors; images of basis vectors are memoized.
class LinearOperator {
public:
    using Rule = std::function<FockVector(const FockVector&)>;

    LinearOperator();
    LinearOperator(long shift, Rule rule);

    long shift() const { return shift_; }
    FockVector apply(const FockVector& v) const;

    // Sums require equal shifts.
    LinearOperator operator+(const LinearOperator& o) const;
    LinearOperator operator-(const LinearOperator& o) const;
    LinearOperator scaled(const Rat& c) const;

private:
    long shift_ = 0;
    Rule rule_;
    // Shared across copies so compositions reuse cached columns.
    std::shared_ptr<std::map<WeightedPartition, FockVector>> cache_;
};

LinearOperator compose(const LinearOperator& a, const LinearOperator& b);
LinearOperator commutator(const LinearOperator& a, const LinearOperator& b);

// The Looijenga--Lunts--Verbitsky operators on the degree-n Fock space.
// e(alpha) is cup product with the divisor class of alpha; e_delta is cup
// product with the half non-reduced locus; f(alpha) is the opposite sl2
// direction; h their commutator normalization; U = f(fiber class);
// T_delta the fiber-shift generator; Wt the weight grading operator.
LinearOperator llv_e(const K3Class& alpha, long n, const K3Model& model);
LinearOperator llv_e_delta(long n, const K3Model& model);
LinearOperator llv_f(const K3Class& alpha, long n, const K3Model& model);
LinearOperator llv_h(long n, const K3Model& model);
LinearOperator llv_u(long n, const K3Model& model);
LinearOperator llv_t_delta(long n, const K3Model& model);
LinearOperator llv_wt(long n, const K3Model& model);

// Name-based dispatch used by the command line: "h", "U", "Wt", "T_delta",
// "e_delta", "e_<label>", "f_<label>" with <label> a middle-cohomology
// label.  Unknown names throw UnknownOperator; "f_delta" is not part of the
// algebra presentation here and throws UnsupportedClass.
LinearOperator llv_operator(const std::string& name, long n, const K3Model& model);

// An element of the wedge square of the extended Mukai lattice, spanned by
// the middle cohomology basis (indices 2..23 of the model), delta, and the
// hyperbolic pair e, f.
inline constexpr int kLLVDelta = 24;
inline constexpr int kLLVe = 25;
inline constexpr int kLLVf = 26;

class LLVElement {
public:
    LLVElement() = default;
    static LLVElement wedge(int a, int b, const Rat& c = Rat(1));

    const std::map<std::pair<int, int>, Rat>& terms() const { return terms_; }
    LLVElement operator+(const LLVElement& o) const;
    LLVElement operator-(const LLVElement& o) const;
    LLVElement scaled(const Rat& c) const;
    bool operator==(const LLVElement& o) const { return terms_ == o.terms_; }

    void add_wedge(int a, int b, const Rat& c);

private:
    // Keys normalized to a < b; the pair (a, a) vanishes.
    std::map<std::pair<int, int>, Rat> terms_;
};

// Lie bracket of wedges through the extended pairing, which restricts to
// the intersection form on the middle cohomology, pairs e with f, and gives
// delta self-pairing 2 - 2n; hence the dependence on n.
LLVElement llv_bracket(const LLVElement& x, const LLVElement& y, long n,
                       const K3Model& model);

// The representation: wedges act as the operators above.  a ^ b with both
// factors in the middle cohomology acts as [e(a), f(b)] - (a,b) h; wedges
// of delta with f are outside the presentation and throw UnsupportedClass.
LinearOperator act(const LLVElement& x, long n, const K3Model& model);

// Monodromy operators: the fiberwise involution (diagonal with entries
// (-1)^(n + length)) and the fiber-translation shift exp(lambda T_delta).
LinearOperator monodromy_involution(long n, const K3Model& model);
LinearOperator monodromy_shift(const Rat& lambda, long n, const K3Model& model);

// One term of a Kuenneth-type decomposition of a class on the product of
// two Hilbert schemes: coeff * [left] (x) right.
struct DiagonalTerm {
    Rat coeff;
    WeightedPartition left;
    FockVector right;
};

// The class of the diagonal: one term per basis partition of n.
std::vector<DiagonalTerm> kunneth_diagonal(long n, const K3Model& model);

// Decomposition of the correspondence inducing U.
std::vector<DiagonalTerm> u_class(long n, const K3Model& model);

// Contraction of a decomposition against gamma in the first slot:
// sum of coeff * <gamma, [left]> * right.
FockVector diagonal_contract(const std::vector<DiagonalTerm>& terms,
                             const FockVector& gamma, const K3Model& model);

// Cup product with the partition class of mu, for the shapes realized by
// named operators: the all-ones partition (a multiple of the identity), a
// divisor shape (1,alpha),(1,1)^(n-1), and the delta shape
// (2,1),(1,1)^(n-2).  Other shapes throw UnsupportedClass.
LinearOperator cup_operator(const WeightedPartition& mu, long n,
                            const K3Model& model);

}  // namespace qjf
