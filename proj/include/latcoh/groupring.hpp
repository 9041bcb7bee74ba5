#pragma once

#include "latcoh/intmatrix.hpp"
#include "latcoh/polyz.hpp"

#include <string>
#include <vector>

namespace latcoh {

/// Cyclic group of order n with a distinguished generator.
struct CyclicGroup {
    long order = 1;

    bool operator==(const CyclicGroup&) const = default;
};

/// The subgroup of order d of a cyclic group of order n; it is generated by
/// sigma^(n/d).  Identity is by the divisor d, not by generator choice.
struct Subgroup {
    long parent_order = 1;
    long order = 1;

    long generator_exponent() const { return parent_order / order; }
    bool operator==(const Subgroup&) const = default;
};

/// The m-th cyclotomic polynomial with exact integer coefficients.
struct CyclotomicPoly {
    long index = 1;
    PolyZ coeffs;

    long degree() const { return poly_deg(coeffs); }
};

/// Base ring descriptor: Z, Z localized at a prime, or Z[zeta_m] on the
/// power basis 1, zeta, ..., zeta^(phi(m)-1) with Phi_m-reduction.
struct BaseRing {
    enum class Kind { Integers, LocalizedAtP, Cyclotomic };

    Kind kind = Kind::Integers;
    long p = 0; // prime, for LocalizedAtP
    long m = 0; // cyclotomic index, for Cyclotomic

    static BaseRing integers() { return {Kind::Integers, 0, 0}; }
    static BaseRing localized(long p);
    static BaseRing cyclotomic(long m);

    bool is_cyclotomic() const { return kind == Kind::Cyclotomic; }
    bool is_localized() const { return kind == Kind::LocalizedAtP; }
    /// Z-rank of the ring (phi(m) for cyclotomic, 1 otherwise).
    long z_rank() const;
    /// Companion matrix of Phi_m: the zeta-action on the power basis.
    IntMatrix zeta_matrix() const;
    /// Product of two ring elements on the power basis.
    std::vector<mpz_class> multiply(const std::vector<mpz_class>& a,
                                    const std::vector<mpz_class>& b) const;
    std::string to_string() const;

    bool operator==(const BaseRing&) const = default;
};

/// Hypothesis report for one prime divisor of the group order.
struct PrimeHypothesis {
    long p = 0;
    bool not_invertible = false;
    bool unramified = false;

    bool holds() const { return not_invertible && unramified; }
};

struct HypothesisReport {
    std::vector<PrimeHypothesis> primes;

    bool all_hold() const {
        for (const auto& h : primes)
            if (!h.holds()) return false;
        return true;
    }
};

// Elementary number theory used throughout.
std::vector<long> divisors(long n);             // ascending
std::vector<long> prime_factors(long n);        // distinct, ascending
long euler_phi(long n);
int mobius(long k);
bool is_prime(long n);

/// One subgroup per divisor of the order, ascending.
std::vector<Subgroup> subgroups(const CyclicGroup& g);
Subgroup subgroup_of_order(const CyclicGroup& g, long d);

/// Phi_m by iterated exact division of X^m - 1.
CyclotomicPoly cyclotomic(long m);

/// Checks, for every prime p dividing the group order, that p is not
/// invertible and unramified in the base ring.
HypothesisReport validate_hypotheses(const BaseRing& r, const CyclicGroup& g);

} // namespace latcoh
