#pragma once

#include "latcoh/polyz.hpp"

#include <string>
#include <vector>

namespace latcoh {

/// Polynomial over F_p; coefficients ascending in [0, p), no trailing zeros.
struct PolyModP {
    long p = 2;
    std::vector<long> coeffs;

    long degree() const { return static_cast<long>(coeffs.size()) - 1; }
    bool is_zero() const { return coeffs.empty(); }
    bool is_one() const { return coeffs.size() == 1 && coeffs[0] == 1; }
    std::string to_string() const;

    bool operator==(const PolyModP&) const = default;
};

PolyModP reduce_mod_p(const PolyZ& f, long p);
PolyModP pm_add(const PolyModP& a, const PolyModP& b);
PolyModP pm_sub(const PolyModP& a, const PolyModP& b);
PolyModP pm_mul(const PolyModP& a, const PolyModP& b);
PolyModP pm_divmod(const PolyModP& a, const PolyModP& b, PolyModP& rem);
PolyModP pm_gcd(PolyModP a, PolyModP b); // monic
PolyModP pm_derivative(const PolyModP& f);
PolyModP pm_monic(PolyModP f);

/// Product of the distinct irreducible factors of f (the squarefree part),
/// with the char-p corner f = g(X^p) handled by taking p-th roots.
PolyModP radical_mod_p(const PolyModP& f);

/// Dedekind's p-maximality test for Z[X]/<f>, f monic.  The verdict is
/// "maximal at p" iff gcd(g-bar, h-bar, F-bar) = 1 where g-bar is the
/// radical of f mod p, h-bar its cofactor, and F = (g h - f)/p for the
/// monic lifts g, h with coefficients in [0, p).
struct DedekindVerdict {
    long p = 0;
    bool maximal = false;
    PolyModP g_bar;
    PolyModP h_bar;
    PolyModP f_bar_quotient; // F mod p
    PolyModP gcd;
};

DedekindVerdict dedekind_criterion(const PolyZ& f, long p);

struct MaximalityReport {
    long n = 0;
    std::vector<DedekindVerdict> checked; // one verdict per prime p | n
    std::string skipped_note;             // why p with p not dividing n are skipped

    bool all_maximal() const {
        for (const auto& v : checked)
            if (!v.maximal) return false;
        return true;
    }
};

/// Runs the criterion on Phi_n at every prime dividing n.
MaximalityReport verify_theorem_3_3(long n);

} // namespace latcoh
