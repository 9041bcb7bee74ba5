#include "latcoh/intmatrix.hpp"

#include "latcoh/errors.hpp"
#include "latcoh/parallel.hpp"

#include <sstream>
#include <utility>

namespace latcoh {

IntMatrix IntMatrix::identity(long n) {
    IntMatrix m(n, n);
    for (long i = 0; i < n; ++i) m(i, i) = 1;
    return m;
}

IntMatrix IntMatrix::from_rows(const std::vector<std::vector<long>>& rows) {
    const long r = static_cast<long>(rows.size());
    const long c = r ? static_cast<long>(rows[0].size()) : 0;
    IntMatrix m(r, c);
    for (long i = 0; i < r; ++i) {
        if (static_cast<long>(rows[i].size()) != c)
            throw InvariantViolation("from_rows: ragged row data");
        for (long j = 0; j < c; ++j) m(i, j) = rows[static_cast<size_t>(i)][static_cast<size_t>(j)];
    }
    return m;
}

bool IntMatrix::is_zero() const {
    for (const auto& x : e_)
        if (x != 0) return false;
    return true;
}

bool IntMatrix::is_identity() const {
    if (rows_ != cols_) return false;
    for (long i = 0; i < rows_; ++i)
        for (long j = 0; j < cols_; ++j)
            if ((*this)(i, j) != (i == j ? 1 : 0)) return false;
    return true;
}

void IntMatrix::swap_rows(long i, long j) {
    if (i == j) return;
    for (long k = 0; k < cols_; ++k) std::swap((*this)(i, k), (*this)(j, k));
}

void IntMatrix::swap_cols(long i, long j) {
    if (i == j) return;
    for (long k = 0; k < rows_; ++k) std::swap((*this)(k, i), (*this)(k, j));
}

IntMatrix IntMatrix::transpose() const {
    IntMatrix t(cols_, rows_);
    for (long i = 0; i < rows_; ++i)
        for (long j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
    return t;
}

IntMatrix IntMatrix::col(long j) const {
    IntMatrix c(rows_, 1);
    for (long i = 0; i < rows_; ++i) c(i, 0) = (*this)(i, j);
    return c;
}

std::string IntMatrix::to_string() const {
    std::ostringstream os;
    for (long i = 0; i < rows_; ++i) {
        for (long j = 0; j < cols_; ++j) {
            if (j) os << ' ';
            os << (*this)(i, j).get_str();
        }
        os << '\n';
    }
    return os.str();
}

namespace {

void require_same_shape(const IntMatrix& a, const IntMatrix& b, const char* what) {
    if (a.rows() != b.rows() || a.cols() != b.cols())
        throw InvariantViolation(std::string(what) + ": shape mismatch");
}

} // namespace

IntMatrix operator+(const IntMatrix& a, const IntMatrix& b) {
    require_same_shape(a, b, "add");
    IntMatrix c(a.rows(), a.cols());
    for (long i = 0; i < a.rows(); ++i)
        for (long j = 0; j < a.cols(); ++j) c(i, j) = a(i, j) + b(i, j);
    return c;
}

IntMatrix operator-(const IntMatrix& a, const IntMatrix& b) {
    require_same_shape(a, b, "sub");
    IntMatrix c(a.rows(), a.cols());
    for (long i = 0; i < a.rows(); ++i)
        for (long j = 0; j < a.cols(); ++j) c(i, j) = a(i, j) - b(i, j);
    return c;
}

IntMatrix operator-(const IntMatrix& a) {
    IntMatrix c(a.rows(), a.cols());
    for (long i = 0; i < a.rows(); ++i)
        for (long j = 0; j < a.cols(); ++j) c(i, j) = -a(i, j);
    return c;
}

IntMatrix operator*(const mpz_class& s, const IntMatrix& a) {
    IntMatrix c(a.rows(), a.cols());
    for (long i = 0; i < a.rows(); ++i)
        for (long j = 0; j < a.cols(); ++j) c(i, j) = s * a(i, j);
    return c;
}

IntMatrix mul_serial(const IntMatrix& a, const IntMatrix& b) {
    if (a.cols() != b.rows()) throw InvariantViolation("mul: inner dimension mismatch");
    IntMatrix c(a.rows(), b.cols());
    mpz_class acc;
    for (long i = 0; i < a.rows(); ++i) {
        for (long j = 0; j < b.cols(); ++j) {
            acc = 0;
            for (long k = 0; k < a.cols(); ++k) acc += a(i, k) * b(k, j);
            c(i, j) = acc;
        }
    }
    return c;
}

IntMatrix mul_parallel(const IntMatrix& a, const IntMatrix& b) {
    if (a.cols() != b.rows()) throw InvariantViolation("mul: inner dimension mismatch");
    IntMatrix c(a.rows(), b.cols());
    // Each output row is independent; exact arithmetic makes the result
    // schedule-invariant.
#pragma omp parallel for schedule(static)
    for (long i = 0; i < a.rows(); ++i) {
        mpz_class acc;
        for (long j = 0; j < b.cols(); ++j) {
            acc = 0;
            for (long k = 0; k < a.cols(); ++k) acc += a(i, k) * b(k, j);
            c(i, j) = acc;
        }
    }
    return c;
}

IntMatrix mul(const IntMatrix& a, const IntMatrix& b) {
    if (par::enabled() && a.rows() >= par::kRowThreshold) return mul_parallel(a, b);
    return mul_serial(a, b);
}

IntMatrix mat_pow(const IntMatrix& a, long e) {
    if (!a.is_square()) throw InvariantViolation("mat_pow: matrix not square");
    if (e < 0) throw InvariantViolation("mat_pow: negative exponent");
    IntMatrix r = IntMatrix::identity(a.rows());
    IntMatrix base = a;
    while (e > 0) {
        if (e & 1) r = mul(r, base);
        e >>= 1;
        if (e) base = mul(base, base);
    }
    return r;
}

IntMatrix kron(const IntMatrix& a, const IntMatrix& b) {
    IntMatrix c(a.rows() * b.rows(), a.cols() * b.cols());
    for (long i = 0; i < a.rows(); ++i)
        for (long j = 0; j < a.cols(); ++j) {
            if (a(i, j) == 0) continue;
            for (long k = 0; k < b.rows(); ++k)
                for (long l = 0; l < b.cols(); ++l)
                    c(i * b.rows() + k, j * b.cols() + l) = a(i, j) * b(k, l);
        }
    return c;
}

IntMatrix hstack(const IntMatrix& a, const IntMatrix& b) {
    if (a.rows() != b.rows()) throw InvariantViolation("hstack: row mismatch");
    IntMatrix c(a.rows(), a.cols() + b.cols());
    for (long i = 0; i < a.rows(); ++i) {
        for (long j = 0; j < a.cols(); ++j) c(i, j) = a(i, j);
        for (long j = 0; j < b.cols(); ++j) c(i, a.cols() + j) = b(i, j);
    }
    return c;
}

IntMatrix vstack(const IntMatrix& a, const IntMatrix& b) {
    if (a.cols() != b.cols()) throw InvariantViolation("vstack: column mismatch");
    IntMatrix c(a.rows() + b.rows(), a.cols());
    for (long i = 0; i < a.rows(); ++i)
        for (long j = 0; j < a.cols(); ++j) c(i, j) = a(i, j);
    for (long i = 0; i < b.rows(); ++i)
        for (long j = 0; j < a.cols(); ++j) c(a.rows() + i, j) = b(i, j);
    return c;
}

IntMatrix block_diag(const IntMatrix& a, const IntMatrix& b) {
    IntMatrix c(a.rows() + b.rows(), a.cols() + b.cols());
    for (long i = 0; i < a.rows(); ++i)
        for (long j = 0; j < a.cols(); ++j) c(i, j) = a(i, j);
    for (long i = 0; i < b.rows(); ++i)
        for (long j = 0; j < b.cols(); ++j) c(a.rows() + i, a.cols() + j) = b(i, j);
    return c;
}

IntMatrix submatrix(const IntMatrix& a, const std::vector<long>& rows,
                    const std::vector<long>& cols) {
    IntMatrix c(static_cast<long>(rows.size()), static_cast<long>(cols.size()));
    for (size_t i = 0; i < rows.size(); ++i)
        for (size_t j = 0; j < cols.size(); ++j)
            c(static_cast<long>(i), static_cast<long>(j)) = a(rows[i], cols[j]);
    return c;
}

mpz_class det(const IntMatrix& a) {
    if (!a.is_square()) throw InvariantViolation("det: matrix not square");
    const long n = a.rows();
    if (n == 0) return 1;
    // Bareiss fraction-free elimination.
    IntMatrix m = a;
    mpz_class prev = 1;
    int sign = 1;
    for (long k = 0; k + 1 < n; ++k) {
        if (m(k, k) == 0) {
            long piv = -1;
            for (long i = k + 1; i < n; ++i)
                if (m(i, k) != 0) {
                    piv = i;
                    break;
                }
            if (piv < 0) return 0;
            m.swap_rows(k, piv);
            sign = -sign;
        }
        for (long i = k + 1; i < n; ++i) {
            for (long j = k + 1; j < n; ++j) {
                mpz_class t = m(i, j) * m(k, k) - m(i, k) * m(k, j);
                mpz_divexact(m(i, j).get_mpz_t(), t.get_mpz_t(), prev.get_mpz_t());
            }
            m(i, k) = 0;
        }
        prev = m(k, k);
    }
    return sign > 0 ? m(n - 1, n - 1) : mpz_class(-m(n - 1, n - 1));
}

} // namespace latcoh
