#pragma once

#include <string>
#include <vector>

#include "qjf/rational.hpp"

namespace qjf {

// Cohomology of an elliptic K3 surface with a section, in a fixed rational
// basis of 24 classes:
//
//   index 0      "one"  unit class (degree 0)
//   index 1      "pt"   point class (degree 2)
//   index 2      "W"    section class (degree 1)
//   index 3      "F"    fiber class (degree 1)
//   index 4..23  "b1".."b20"  a basis of the orthogonal complement of <W, F>
//
// Degrees are complex degrees, so the middle cohomology sits in degree 1.
// The intersection form pairs "one" with "pt", puts the hyperbolic matrix
// [[0,1],[1,0]] on (W, F), and uses a configurable 20x20 Gram matrix on the
// complement.  The default complement is U + U + E8(-1) + E8(-1), the unique
// even unimodular lattice of signature (2, 18) once W and F are split off.
//
// Each class also carries an sl2-weight used by the vertical/horizontal
// grading of the Fock space: wt(one) = -1, wt(pt) = +1, wt(W) = +1,
// wt(F) = -1, and wt(b_i) = 0.
class K3Model {
public:
    // Builds the model from a 20x20 integer Gram matrix for b1..b20.
    // The matrix must be symmetric, even on the diagonal, and nondegenerate.
    explicit K3Model(const std::vector<std::vector<long>>& complement_gram);

    // The default model (complement U + U + E8(-1)^2), constructed once.
    static const K3Model& standard();

    // Gram matrix of the default complement, for serialization and checks.
    static std::vector<std::vector<long>> standard_complement_gram();

    int rank() const { return 24; }

    const std::string& label(int i) const;
    // Index of a label; throws UnsupportedClass for unknown names.
    int index(const std::string& lab) const;

    // Complex degree: 0 for "one", 1 on the middle cohomology, 2 for "pt".
    int degree(int i) const;

    // sl2-weight of the basis class.
    long wt(int i) const;

    bool is_middle(int i) const { return degree(i) == 1; }

    // Intersection pairing of two basis classes.
    const Rat& pairing(int a, int b) const;

    // Triple intersection number of three basis classes.
    Rat triple(int a, int b, int c) const;

    // Dual basis: dual(i) is the class D_i with (D_i, gamma_j) = delta_ij,
    // expressed as coordinates in the same 24-class basis.
    const std::vector<Rat>& dual(int i) const;

    // Cup product of two basis classes, as coordinates in the basis.
    std::vector<Rat> cup(int a, int b) const;

private:
    std::vector<std::string> labels_;
    std::vector<int> degree_;
    std::vector<long> wt_;
    std::vector<std::vector<Rat>> gram_;   // full 24x24 pairing
    std::vector<std::vector<Rat>> dual_;   // dual_[i] = coordinates of D_i
};

}  // namespace qjf
