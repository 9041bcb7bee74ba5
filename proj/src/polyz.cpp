#include "latcoh/polyz.hpp"

#include "latcoh/errors.hpp"

#include <sstream>

namespace latcoh {

PolyZ poly_trim(PolyZ p) {
    while (!p.empty() && p.back() == 0) p.pop_back();
    return p;
}

long poly_deg(const PolyZ& p) { return static_cast<long>(p.size()) - 1; }

PolyZ poly_add(const PolyZ& a, const PolyZ& b) {
    PolyZ c(std::max(a.size(), b.size()));
    for (size_t i = 0; i < c.size(); ++i) {
        if (i < a.size()) c[i] += a[i];
        if (i < b.size()) c[i] += b[i];
    }
    return poly_trim(std::move(c));
}

PolyZ poly_sub(const PolyZ& a, const PolyZ& b) {
    PolyZ c(std::max(a.size(), b.size()));
    for (size_t i = 0; i < c.size(); ++i) {
        if (i < a.size()) c[i] += a[i];
        if (i < b.size()) c[i] -= b[i];
    }
    return poly_trim(std::move(c));
}

PolyZ poly_mul(const PolyZ& a, const PolyZ& b) {
    if (a.empty() || b.empty()) return {};
    PolyZ c(a.size() + b.size() - 1);
    for (size_t i = 0; i < a.size(); ++i) {
        if (a[i] == 0) continue;
        for (size_t j = 0; j < b.size(); ++j) c[i + j] += a[i] * b[j];
    }
    return poly_trim(std::move(c));
}

PolyZ poly_divmod_monic(const PolyZ& a, const PolyZ& monic, PolyZ& rem) {
    if (monic.empty() || monic.back() != 1) throw NotMonic("poly division requires a monic divisor");
    rem = a;
    const long dm = poly_deg(monic);
    if (dm == 0) {
        PolyZ q = rem;
        rem.clear();
        return q;
    }
    PolyZ q;
    while (poly_deg(rem) >= dm) {
        const long shift = poly_deg(rem) - dm;
        mpz_class c = rem.back();
        if (static_cast<long>(q.size()) < shift + 1) q.resize(static_cast<size_t>(shift + 1));
        q[static_cast<size_t>(shift)] = c;
        for (long i = 0; i <= dm; ++i)
            rem[static_cast<size_t>(i + shift)] -= c * monic[static_cast<size_t>(i)];
        rem = poly_trim(std::move(rem));
    }
    return poly_trim(std::move(q));
}

PolyZ poly_div_exact(const PolyZ& a, const PolyZ& monic) {
    PolyZ rem;
    PolyZ q = poly_divmod_monic(a, monic, rem);
    if (!rem.empty()) throw InternalError("poly_div_exact: nonzero remainder");
    return q;
}

PolyZ poly_xn_minus_one(long n) {
    PolyZ p(static_cast<size_t>(n + 1));
    p[0] = -1;
    p[static_cast<size_t>(n)] = 1;
    return p;
}

mpz_class poly_eval(const PolyZ& p, const mpz_class& x) {
    mpz_class r = 0;
    for (size_t i = p.size(); i-- > 0;) r = r * x + p[i];
    return r;
}

IntMatrix poly_eval_matrix(const PolyZ& p, const IntMatrix& m) {
    if (!m.is_square()) throw InvariantViolation("poly_eval_matrix: matrix not square");
    IntMatrix r(m.rows(), m.rows());
    for (size_t i = p.size(); i-- > 0;) {
        r = mul(r, m);
        for (long k = 0; k < m.rows(); ++k) r(k, k) += p[i];
    }
    return r;
}

std::string poly_to_string(const PolyZ& p) {
    if (p.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    for (size_t i = p.size(); i-- > 0;) {
        if (p[i] == 0) continue;
        mpz_class c = p[i];
        if (first) {
            if (c < 0) os << "-", c = -c;
        } else {
            os << (c < 0 ? " - " : " + ");
            if (c < 0) c = -c;
        }
        if (i == 0 || c != 1) os << c.get_str();
        if (i > 0) {
            os << "X";
            if (i > 1) os << "^" << i;
        }
        first = false;
    }
    return os.str();
}

} // namespace latcoh
