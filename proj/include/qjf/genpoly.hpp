#pragma once

#include <array>
#include <map>
#include <optional>
#include <string>

#include "qjf/rational.hpp"
#include "qjf/series.hpp"

namespace qjf {

// The nine ring generators.  P is the doubly periodic function of the pair
// (p, q), Pp its first-variable derivative; DeltaInv and ThetaInv admit the
// meromorphic elements the assembly layer needs.
enum class Gen : int {
    Theta = 0,
    A,
    G2,
    P,
    Pp,
    G4,
    G6,
    DeltaInv,
    ThetaInv,
};

inline constexpr int kNumGens = 9;
inline constexpr std::array<Gen, kNumGens> kAllGens = {
    Gen::Theta, Gen::A,  Gen::G2,       Gen::P,       Gen::Pp,
    Gen::G4,    Gen::G6, Gen::DeltaInv, Gen::ThetaInv};

const char* gen_name(Gen g);
std::optional<Gen> gen_from_name(const std::string& s);
long gen_weight(Gen g);
long gen_index2(Gen g);
FormKind gen_kind(Gen g);

// Exponent vector of one monomial.  Theta and ThetaInv never both appear;
// multiplication cancels them against each other.
struct Mono {
    std::array<int, kNumGens> e{};

    int exp(Gen g) const { return e[static_cast<size_t>(g)]; }
    int& exp(Gen g) { return e[static_cast<size_t>(g)]; }
    long weight() const;
    long index2() const;
    bool is_trivial() const;

    auto operator<=>(const Mono&) const = default;
};

// Polynomial in the generators with rational coefficients.  This is a quotient
// presentation: structural equality of representations is decidable directly,
// equality of the underlying forms goes through expansion (see
// equal_by_expansion).
class GenPoly {
public:
    GenPoly() = default;
    static GenPoly constant(const Rat& c);
    static GenPoly generator(Gen g, int power = 1);
    static GenPoly monomial(Mono m, const Rat& c);

    const std::map<Mono, Rat>& terms() const { return t_; }
    bool is_zero() const { return t_.empty(); }
    void add_term(Mono m, const Rat& c);  // merges Theta against ThetaInv

    GenPoly operator-() const;
    GenPoly operator+(const GenPoly& o) const;
    GenPoly operator-(const GenPoly& o) const;
    GenPoly operator*(const GenPoly& o) const;
    GenPoly scaled(const Rat& c) const;
    GenPoly pow(unsigned long n) const;

    bool is_homogeneous() const;
    long weight() const;   // requires homogeneous; 0 for the zero polynomial
    long index2() const;   // likewise
    int delta_inv_degree() const;  // max DeltaInv exponent over monomials

    // Formal partial derivative in one generator.  Well-defined on the
    // quotient for G2 and A because no defining relation involves them.
    GenPoly partial(Gen g) const;

    // Structural equality of representations.
    bool operator==(const GenPoly& o) const { return t_ == o.t_; }

private:
    std::map<Mono, Rat> t_;
};

}  // namespace qjf
