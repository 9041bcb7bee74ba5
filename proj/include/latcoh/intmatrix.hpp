#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <string>
#include <vector>

namespace latcoh {

/// Dense matrix of arbitrary-precision integers, row-major.
/// Vectors are columns and matrices act on the left, everywhere.
class IntMatrix {
  public:
    IntMatrix() : rows_(0), cols_(0) {}
    IntMatrix(long rows, long cols)
        : rows_(rows), cols_(cols), e_(static_cast<size_t>(rows * cols)) {}

    static IntMatrix identity(long n);
    static IntMatrix zero(long rows, long cols) { return IntMatrix(rows, cols); }
    /// Build from nested initializer data (tests, small fixtures).
    static IntMatrix from_rows(const std::vector<std::vector<long>>& rows);

    long rows() const { return rows_; }
    long cols() const { return cols_; }

    mpz_class& operator()(long i, long j) { return e_[static_cast<size_t>(i * cols_ + j)]; }
    const mpz_class& operator()(long i, long j) const {
        return e_[static_cast<size_t>(i * cols_ + j)];
    }

    bool operator==(const IntMatrix& o) const {
        return rows_ == o.rows_ && cols_ == o.cols_ && e_ == o.e_;
    }
    bool operator!=(const IntMatrix& o) const { return !(*this == o); }

    bool is_zero() const;
    bool is_identity() const;
    bool is_square() const { return rows_ == cols_; }

    void swap_rows(long i, long j);
    void swap_cols(long i, long j);

    IntMatrix transpose() const;
    IntMatrix col(long j) const;
    std::string to_string() const;

  private:
    long rows_, cols_;
    std::vector<mpz_class> e_;
};

IntMatrix operator+(const IntMatrix& a, const IntMatrix& b);
IntMatrix operator-(const IntMatrix& a, const IntMatrix& b);
IntMatrix operator-(const IntMatrix& a);
IntMatrix operator*(const mpz_class& c, const IntMatrix& a);

/// Product dispatching to the OpenMP kernel when par::enabled() and the
/// output is large enough; otherwise the serial reference.
IntMatrix mul(const IntMatrix& a, const IntMatrix& b);
IntMatrix mul_serial(const IntMatrix& a, const IntMatrix& b);
IntMatrix mul_parallel(const IntMatrix& a, const IntMatrix& b);
inline IntMatrix operator*(const IntMatrix& a, const IntMatrix& b) { return mul(a, b); }

IntMatrix mat_pow(const IntMatrix& a, long e);
IntMatrix kron(const IntMatrix& a, const IntMatrix& b);
IntMatrix hstack(const IntMatrix& a, const IntMatrix& b);
IntMatrix vstack(const IntMatrix& a, const IntMatrix& b);
/// Block-diagonal sum.
IntMatrix block_diag(const IntMatrix& a, const IntMatrix& b);
/// Submatrix with the given row and column index sets.
IntMatrix submatrix(const IntMatrix& a, const std::vector<long>& rows,
                    const std::vector<long>& cols);

/// Exact determinant (fraction-free elimination).
mpz_class det(const IntMatrix& a);

} // namespace latcoh
