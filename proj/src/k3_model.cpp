#include "qjf/k3_model.hpp"

#include <stdexcept>

#include "qjf/errors.hpp"
#include "qjf/linalg.hpp"

namespace qjf {

namespace {

// E8 Cartan matrix negated: diagonal -2, off-diagonal +1 along the E8
// Dynkin diagram (nodes 1-3-4-5-6-7-8 in a chain, node 2 attached to 4).
void put_e8_minus(std::vector<std::vector<long>>& g, int off) {
    for (int i = 0; i < 8; ++i) g[off + i][off + i] = -2;
    auto edge = [&](int a, int b) {
        g[off + a - 1][off + b - 1] = 1;
        g[off + b - 1][off + a - 1] = 1;
    };
    edge(1, 3);
    edge(3, 4);
    edge(4, 5);
    edge(5, 6);
    edge(6, 7);
    edge(7, 8);
    edge(2, 4);
}

void put_hyperbolic(std::vector<std::vector<long>>& g, int off) {
    g[off][off + 1] = 1;
    g[off + 1][off] = 1;
}

}  // namespace

std::vector<std::vector<long>> K3Model::standard_complement_gram() {
    std::vector<std::vector<long>> g(20, std::vector<long>(20, 0));
    put_hyperbolic(g, 0);
    put_hyperbolic(g, 2);
    put_e8_minus(g, 4);
    put_e8_minus(g, 12);
    return g;
}

K3Model::K3Model(const std::vector<std::vector<long>>& complement_gram) {
    if (complement_gram.size() != 20)
        throw std::invalid_argument("complement Gram matrix must be 20x20");
    for (const auto& row : complement_gram)
        if (row.size() != 20)
            throw std::invalid_argument("complement Gram matrix must be 20x20");
    for (int i = 0; i < 20; ++i) {
        if (complement_gram[i][i] % 2 != 0)
            throw std::invalid_argument("complement Gram matrix must be even");
        for (int j = 0; j < i; ++j)
            if (complement_gram[i][j] != complement_gram[j][i])
                throw std::invalid_argument("complement Gram matrix must be symmetric");
    }

    labels_ = {"one", "pt", "W", "F"};
    for (int i = 1; i <= 20; ++i) labels_.push_back("b" + std::to_string(i));

    degree_.assign(24, 1);
    degree_[0] = 0;
    degree_[1] = 2;

    wt_.assign(24, 0);
    wt_[0] = -1;
    wt_[1] = 1;
    wt_[2] = 1;   // W
    wt_[3] = -1;  // F

    gram_.assign(24, std::vector<Rat>(24, Rat(0)));
    gram_[0][1] = 1;
    gram_[1][0] = 1;
    gram_[2][3] = 1;  // (W, F) hyperbolic
    gram_[3][2] = 1;
    for (int i = 0; i < 20; ++i)
        for (int j = 0; j < 20; ++j) gram_[4 + i][4 + j] = Rat(complement_gram[i][j]);

    // Middle-cohomology nondegeneracy: invert the 22x22 block column by
    // column; an inconsistent solve means the Gram matrix is singular.
    std::vector<std::vector<Rat>> mid(22, std::vector<Rat>(22));
    for (int i = 0; i < 22; ++i)
        for (int j = 0; j < 22; ++j) mid[i][j] = gram_[2 + i][2 + j];

    dual_.assign(24, std::vector<Rat>(24, Rat(0)));
    dual_[0][1] = 1;  // dual of "one" is "pt"
    dual_[1][0] = 1;
    for (int i = 0; i < 22; ++i) {
        std::vector<Rat> e(22, Rat(0));
        e[i] = 1;
        LinearSolution sol = solve_exact(mid, e);
        bool all_pinned = sol.consistent;
        for (bool p : sol.pinned) all_pinned = all_pinned && p;
        if (!all_pinned)
            throw std::invalid_argument("complement Gram matrix must be nondegenerate");
        for (int j = 0; j < 22; ++j) dual_[2 + i][2 + j] = sol.particular[j];
    }
}

const K3Model& K3Model::standard() {
    static const K3Model model(standard_complement_gram());
    return model;
}

const std::string& K3Model::label(int i) const { return labels_.at(i); }

int K3Model::index(const std::string& lab) const {
    for (int i = 0; i < 24; ++i)
        if (labels_[i] == lab) return i;
    throw UnsupportedClass("unknown cohomology class label: " + lab);
}

int K3Model::degree(int i) const { return degree_.at(i); }

long K3Model::wt(int i) const { return wt_.at(i); }

const Rat& K3Model::pairing(int a, int b) const { return gram_.at(a).at(b); }

Rat K3Model::triple(int a, int b, int c) const {
    // Sort the three degrees; the integral is nonzero only in total degree 2.
    int d[3] = {degree(a), degree(b), degree(c)};
    if (d[0] + d[1] + d[2] != 2) return Rat(0);
    // (0,0,2): one * one * pt.
    if (d[0] == 2 || d[1] == 2 || d[2] == 2) return Rat(1);
    // (0,1,1): the unit drops out, leaving the pairing of the other two.
    if (d[0] == 0) return pairing(b, c);
    if (d[1] == 0) return pairing(a, c);
    return pairing(a, b);
}

const std::vector<Rat>& K3Model::dual(int i) const { return dual_.at(i); }

std::vector<Rat> K3Model::cup(int a, int b) const {
    std::vector<Rat> out(24, Rat(0));
    int da = degree(a), db = degree(b);
    if (da + db > 2) return out;
    if (da == 0) {
        out[b] = 1;
        return out;
    }
    if (db == 0) {
        out[a] = 1;
        return out;
    }
    // Two middle classes multiply into the point class.
    out[1] = pairing(a, b);
    return out;
}

}  // namespace qjf
