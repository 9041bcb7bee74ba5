#pragma once

#include "latcoh/intmatrix.hpp"

#include <gmpxx.h>

#include <string>
#include <vector>

namespace latcoh {

/// Polynomial over Z, coefficients ascending, no trailing zeros.
/// The zero polynomial is the empty vector.
using PolyZ = std::vector<mpz_class>;

PolyZ poly_trim(PolyZ p);
long poly_deg(const PolyZ& p); // -1 for the zero polynomial
PolyZ poly_add(const PolyZ& a, const PolyZ& b);
PolyZ poly_sub(const PolyZ& a, const PolyZ& b);
PolyZ poly_mul(const PolyZ& a, const PolyZ& b);
/// Division by a monic divisor; remainder is returned through rem.
PolyZ poly_divmod_monic(const PolyZ& a, const PolyZ& monic, PolyZ& rem);
/// Exact division by a monic divisor; throws on nonzero remainder.
PolyZ poly_div_exact(const PolyZ& a, const PolyZ& monic);
/// X^n - 1.
PolyZ poly_xn_minus_one(long n);
mpz_class poly_eval(const PolyZ& p, const mpz_class& x);
/// p(M) by Horner's rule.
IntMatrix poly_eval_matrix(const PolyZ& p, const IntMatrix& m);
std::string poly_to_string(const PolyZ& p);

} // namespace latcoh
