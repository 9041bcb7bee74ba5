#include "latcoh/dedekind.hpp"

#include "latcoh/errors.hpp"
#include "latcoh/groupring.hpp"

#include <algorithm>
#include <sstream>

namespace latcoh {

namespace {

long mod_pos(long a, long p) {
    long r = a % p;
    return r < 0 ? r + p : r;
}

long inv_mod(long a, long p) {
    // p is prime and small; Fermat by fast exponentiation.
    long r = 1, base = mod_pos(a, p), e = p - 2;
    while (e) {
        if (e & 1) r = r * base % p;
        base = base * base % p;
        e >>= 1;
    }
    return r;
}

PolyModP trim(PolyModP f) {
    while (!f.coeffs.empty() && f.coeffs.back() == 0) f.coeffs.pop_back();
    return f;
}

} // namespace

std::string PolyModP::to_string() const {
    PolyZ z;
    for (long c : coeffs) z.emplace_back(c);
    return poly_to_string(z);
}

PolyModP reduce_mod_p(const PolyZ& f, long p) {
    PolyModP out;
    out.p = p;
    for (const auto& c : f) {
        mpz_class r = c % p;
        if (r < 0) r += p;
        out.coeffs.push_back(r.get_si());
    }
    return trim(std::move(out));
}

PolyModP pm_add(const PolyModP& a, const PolyModP& b) {
    PolyModP c{a.p, std::vector<long>(std::max(a.coeffs.size(), b.coeffs.size()), 0)};
    for (size_t i = 0; i < c.coeffs.size(); ++i) {
        long s = 0;
        if (i < a.coeffs.size()) s += a.coeffs[i];
        if (i < b.coeffs.size()) s += b.coeffs[i];
        c.coeffs[i] = mod_pos(s, a.p);
    }
    return trim(std::move(c));
}

PolyModP pm_sub(const PolyModP& a, const PolyModP& b) {
    PolyModP c{a.p, std::vector<long>(std::max(a.coeffs.size(), b.coeffs.size()), 0)};
    for (size_t i = 0; i < c.coeffs.size(); ++i) {
        long s = 0;
        if (i < a.coeffs.size()) s += a.coeffs[i];
        if (i < b.coeffs.size()) s -= b.coeffs[i];
        c.coeffs[i] = mod_pos(s, a.p);
    }
    return trim(std::move(c));
}

PolyModP pm_mul(const PolyModP& a, const PolyModP& b) {
    if (a.is_zero() || b.is_zero()) return PolyModP{a.p, {}};
    PolyModP c{a.p, std::vector<long>(a.coeffs.size() + b.coeffs.size() - 1, 0)};
    for (size_t i = 0; i < a.coeffs.size(); ++i) {
        if (a.coeffs[i] == 0) continue;
        for (size_t j = 0; j < b.coeffs.size(); ++j)
            c.coeffs[i + j] = (c.coeffs[i + j] + a.coeffs[i] * b.coeffs[j]) % a.p;
    }
    return trim(std::move(c));
}

PolyModP pm_divmod(const PolyModP& a, const PolyModP& b, PolyModP& rem) {
    if (b.is_zero()) throw InvariantViolation("polymod: division by zero");
    rem = a;
    PolyModP q{a.p, {}};
    const long db = b.degree();
    const long lead_inv = inv_mod(b.coeffs.back(), a.p);
    while (!rem.is_zero() && rem.degree() >= db) {
        const long shift = rem.degree() - db;
        const long c = rem.coeffs.back() * lead_inv % a.p;
        if (static_cast<long>(q.coeffs.size()) < shift + 1)
            q.coeffs.resize(static_cast<size_t>(shift + 1), 0);
        q.coeffs[static_cast<size_t>(shift)] = c;
        for (long i = 0; i <= db; ++i) {
            long& r = rem.coeffs[static_cast<size_t>(i + shift)];
            r = mod_pos(r - c * b.coeffs[static_cast<size_t>(i)], a.p);
        }
        rem = trim(std::move(rem));
    }
    return trim(std::move(q));
}

PolyModP pm_monic(PolyModP f) {
    if (f.is_zero()) return f;
    const long inv = inv_mod(f.coeffs.back(), f.p);
    for (auto& c : f.coeffs) c = c * inv % f.p;
    return f;
}

PolyModP pm_gcd(PolyModP a, PolyModP b) {
    while (!b.is_zero()) {
        PolyModP rem;
        pm_divmod(a, b, rem);
        a = std::move(b);
        b = std::move(rem);
    }
    return pm_monic(std::move(a));
}

PolyModP pm_derivative(const PolyModP& f) {
    PolyModP d{f.p, {}};
    for (size_t i = 1; i < f.coeffs.size(); ++i)
        d.coeffs.push_back(static_cast<long>(i) % f.p * f.coeffs[i] % f.p);
    return trim(std::move(d));
}

PolyModP radical_mod_p(const PolyModP& f) {
    if (f.is_zero()) throw InvariantViolation("radical: zero polynomial");
    if (f.degree() == 0) return PolyModP{f.p, {1}};
    PolyModP fp = pm_derivative(f);
    if (fp.is_zero()) {
        // f = g(X^p): same irreducible factors as its p-th root.
        PolyModP root{f.p, {}};
        for (size_t i = 0; i < f.coeffs.size(); i += static_cast<size_t>(f.p))
            root.coeffs.push_back(f.coeffs[i]);
        return radical_mod_p(trim(std::move(root)));
    }
    PolyModP g = pm_gcd(f, fp);
    if (g.degree() == 0) return pm_monic(f);
    PolyModP rem;
    PolyModP w = pm_divmod(f, g, rem);
    // rad(f) = lcm(rad(f / g), rad(g)); both factors have smaller degree.
    PolyModP a = radical_mod_p(w);
    PolyModP b = radical_mod_p(g);
    PolyModP prod = pm_mul(a, b);
    return pm_monic(pm_divmod(prod, pm_gcd(a, b), rem));
}

DedekindVerdict dedekind_criterion(const PolyZ& f, long p) {
    if (f.empty() || f.back() != 1) throw NotMonic("dedekind criterion: f must be monic");
    if (!is_prime(p)) throw InvariantViolation("dedekind criterion: p must be prime");

    DedekindVerdict v;
    v.p = p;
    const PolyModP f_bar = reduce_mod_p(f, p);
    v.g_bar = radical_mod_p(f_bar);
    PolyModP rem;
    v.h_bar = pm_divmod(f_bar, v.g_bar, rem);
    if (!rem.is_zero()) throw InternalError("dedekind criterion: radical does not divide f");

    // Monic lifts with coefficients in [0, p).
    auto lift = [](const PolyModP& q) {
        PolyZ out;
        for (long c : q.coeffs) out.emplace_back(c);
        return out;
    };
    PolyZ gh = poly_mul(lift(v.g_bar), lift(v.h_bar));
    PolyZ diff = poly_sub(gh, f);
    PolyZ big_f;
    for (const auto& c : diff) {
        if (c % p != 0) throw InternalError("dedekind criterion: g h != f (mod p)");
        big_f.push_back(c / p);
    }
    big_f = poly_trim(std::move(big_f));
    v.f_bar_quotient = reduce_mod_p(big_f, p);

    v.gcd = pm_gcd(pm_gcd(v.g_bar, v.h_bar), v.f_bar_quotient);
    v.maximal = v.gcd.degree() == 0;
    return v;
}

MaximalityReport verify_theorem_3_3(long n) {
    if (n < 1) throw InvariantViolation("verify: n must be positive");
    MaximalityReport rep;
    rep.n = n;
    rep.skipped_note =
        "primes not dividing n are unramified in the cyclotomic order and need no check";
    const PolyZ phi = cyclotomic(n).coeffs;
    for (long p : prime_factors(n)) rep.checked.push_back(dedekind_criterion(phi, p));
    return rep;
}

} // namespace latcoh
