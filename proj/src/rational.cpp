#include "qjf/rational.hpp"

#include <numeric>
#include <stdexcept>

namespace qjf {

Rat rat_from_string(const std::string& s) {
    if (s.empty()) throw std::invalid_argument("empty rational literal");
    mpq_class q;
    if (q.set_str(s, 10) != 0)
        throw std::invalid_argument("malformed rational literal: " + s);
    q.canonicalize();
    if (q.get_den() == 0) throw std::invalid_argument("zero denominator: " + s);
    return q;
}

std::string rat_to_string(const Rat& r) {
    return r.get_num().get_str() + "/" + r.get_den().get_str();
}

Rat rat_pow(const Rat& r, long e) {
    if (e == 0) return Rat(1);
    bool neg = e < 0;
    unsigned long ae = neg ? static_cast<unsigned long>(-e) : static_cast<unsigned long>(e);
    Rat p;
    mpz_pow_ui(p.get_num_mpz_t(), r.get_num_mpz_t(), ae);
    mpz_pow_ui(p.get_den_mpz_t(), r.get_den_mpz_t(), ae);
    p.canonicalize();
    if (neg) {
        if (p == 0) throw std::domain_error("rat_pow: zero to negative power");
        p = 1 / p;
    }
    return p;
}

bool rat_is_integer(const Rat& r) { return r.get_den() == 1; }

long rat_to_long(const Rat& r) {
    if (!rat_is_integer(r) || !r.get_num().fits_slong_p())
        throw std::domain_error("rat_to_long: not a small integer");
    return r.get_num().get_si();
}

Rat factorial_rat(unsigned long n) {
    mpz_class f;
    mpz_fac_ui(f.get_mpz_t(), n);
    return Rat(f);
}

std::vector<Rat> bernoulli_numbers(unsigned long nmax) {
    // Recurrence sum_{j=0}^{m} C(m+1, j) B_j = 0 for m >= 1, seeded by B_0 = 1.
    std::vector<Rat> b(nmax + 1);
    b[0] = 1;
    for (unsigned long m = 1; m <= nmax; ++m) {
        Rat acc = 0;
        for (unsigned long j = 0; j < m; ++j) {
            mpz_class c;
            mpz_bin_uiui(c.get_mpz_t(), m + 1, j);
            acc += Rat(c) * b[j];
        }
        b[m] = -acc / Rat(m + 1);
    }
    return b;
}

Rat divisor_power_sum(long k, long n) {
    if (n < 1) throw std::domain_error("divisor_power_sum: n must be positive");
    Rat acc = 0;
    for (long d : divisors(n)) acc += rat_pow(Rat(d), k);
    return acc;
}

std::vector<long> divisors(long n) {
    if (n < 1) throw std::domain_error("divisors: n must be positive");
    std::vector<long> lo, hi;
    for (long d = 1; d * d <= n; ++d) {
        if (n % d == 0) {
            lo.push_back(d);
            if (d != n / d) hi.push_back(n / d);
        }
    }
    lo.insert(lo.end(), hi.rbegin(), hi.rend());
    return lo;
}

long mobius_mu(long n) {
    if (n < 1) throw std::domain_error("mobius_mu: n must be positive");
    long mu = 1;
    for (long p = 2; p * p <= n; ++p) {
        if (n % p == 0) {
            n /= p;
            if (n % p == 0) return 0;  // square factor
            mu = -mu;
        }
    }
    if (n > 1) mu = -mu;
    return mu;
}

long gcd_long(long a, long b) { return std::gcd(a, b); }

}  // namespace qjf
