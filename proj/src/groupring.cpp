#include "latcoh/groupring.hpp"

#include "latcoh/errors.hpp"

#include <sstream>

namespace latcoh {

std::vector<long> divisors(long n) {
    std::vector<long> small, large;
    for (long d = 1; d * d <= n; ++d) {
        if (n % d) continue;
        small.push_back(d);
        if (d != n / d) large.push_back(n / d);
    }
    small.insert(small.end(), large.rbegin(), large.rend());
    return small;
}

std::vector<long> prime_factors(long n) {
    std::vector<long> ps;
    for (long p = 2; p * p <= n; ++p) {
        if (n % p) continue;
        ps.push_back(p);
        while (n % p == 0) n /= p;
    }
    if (n > 1) ps.push_back(n);
    return ps;
}

long euler_phi(long n) {
    long r = n;
    for (long p : prime_factors(n)) r -= r / p;
    return r;
}

int mobius(long k) {
    if (k < 1) throw InvariantViolation("mobius: argument must be positive");
    int sign = 1;
    for (long p = 2; p * p <= k; ++p) {
        if (k % p) continue;
        k /= p;
        if (k % p == 0) return 0;
        sign = -sign;
    }
    if (k > 1) sign = -sign;
    return sign;
}

bool is_prime(long n) {
    if (n < 2) return false;
    for (long p = 2; p * p <= n; ++p)
        if (n % p == 0) return false;
    return true;
}

std::vector<Subgroup> subgroups(const CyclicGroup& g) {
    std::vector<Subgroup> out;
    for (long d : divisors(g.order)) out.push_back(Subgroup{g.order, d});
    return out;
}

Subgroup subgroup_of_order(const CyclicGroup& g, long d) {
    if (d < 1 || g.order % d != 0) throw BadDivisor("subgroup order must divide the group order");
    return Subgroup{g.order, d};
}

CyclotomicPoly cyclotomic(long m) {
    if (m < 1) throw InvariantViolation("cyclotomic: index must be positive");
    // Phi_m = (X^m - 1) / prod_{d | m, d < m} Phi_d, built bottom-up so the
    // computation is self-contained (no global cache to share).
    std::vector<PolyZ> phi_of(static_cast<size_t>(m) + 1);
    for (long d : divisors(m)) {
        PolyZ num = poly_xn_minus_one(d);
        for (long e : divisors(d))
            if (e != d) num = poly_div_exact(num, phi_of[static_cast<size_t>(e)]);
        phi_of[static_cast<size_t>(d)] = std::move(num);
    }
    return CyclotomicPoly{m, std::move(phi_of[static_cast<size_t>(m)])};
}

BaseRing BaseRing::localized(long p) {
    if (!is_prime(p)) throw InvariantViolation("localization requires a prime");
    return {Kind::LocalizedAtP, p, 0};
}

BaseRing BaseRing::cyclotomic(long m) {
    if (m < 2) throw InvariantViolation("cyclotomic base ring requires m >= 2");
    return {Kind::Cyclotomic, 0, m};
}

long BaseRing::z_rank() const { return kind == Kind::Cyclotomic ? euler_phi(m) : 1; }

IntMatrix BaseRing::zeta_matrix() const {
    if (kind != Kind::Cyclotomic) throw InvariantViolation("zeta_matrix: ring has no zeta");
    const CyclotomicPoly phi = latcoh::cyclotomic(m);
    const long deg = phi.degree();
    IntMatrix c(deg, deg);
    for (long i = 0; i + 1 < deg; ++i) c(i + 1, i) = 1;
    for (long i = 0; i < deg; ++i) c(i, deg - 1) = -phi.coeffs[static_cast<size_t>(i)];
    return c;
}

std::vector<mpz_class> BaseRing::multiply(const std::vector<mpz_class>& a,
                                          const std::vector<mpz_class>& b) const {
    if (kind != Kind::Cyclotomic) {
        if (a.size() != 1 || b.size() != 1)
            throw InvariantViolation("ring multiply: scalar ring expects rank-1 elements");
        return {a[0] * b[0]};
    }
    const CyclotomicPoly phi = latcoh::cyclotomic(m);
    const size_t deg = static_cast<size_t>(phi.degree());
    if (a.size() != deg || b.size() != deg)
        throw InvariantViolation("ring multiply: element length must be phi(m)");
    PolyZ rem;
    PolyZ prod = poly_divmod_monic(poly_mul(PolyZ(a), PolyZ(b)), phi.coeffs, rem);
    (void)prod;
    rem.resize(deg);
    return rem;
}

std::string BaseRing::to_string() const {
    std::ostringstream os;
    switch (kind) {
        case Kind::Integers: os << "Z"; break;
        case Kind::LocalizedAtP: os << "Z_(" << p << ")"; break;
        case Kind::Cyclotomic: os << "Z[zeta_" << m << "]"; break;
    }
    return os.str();
}

HypothesisReport validate_hypotheses(const BaseRing& r, const CyclicGroup& g) {
    HypothesisReport rep;
    for (long p : prime_factors(g.order)) {
        PrimeHypothesis h;
        h.p = p;
        switch (r.kind) {
            case BaseRing::Kind::Integers:
                h.not_invertible = true;
                h.unramified = true;
                break;
            case BaseRing::Kind::LocalizedAtP:
                // Primes other than r.p become units after localization.
                h.not_invertible = (p == r.p);
                h.unramified = true;
                break;
            case BaseRing::Kind::Cyclotomic:
                h.not_invertible = true;
                h.unramified = (r.m % p != 0);
                break;
        }
        rep.primes.push_back(h);
    }
    return rep;
}

} // namespace latcoh
