#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace taufold {

using Scalar = std::uint32_t;

bool is_prime(Scalar p);

/// Arithmetic in the prime field F_p.
struct Field {
  Scalar p = 2;

  Field() = default;
  explicit Field(Scalar modulus);

  Scalar add(Scalar a, Scalar b) const { return static_cast<Scalar>((a + b) % p); }
  Scalar sub(Scalar a, Scalar b) const { return static_cast<Scalar>((a + p - b) % p); }
  Scalar mul(Scalar a, Scalar b) const {
    return static_cast<Scalar>((static_cast<std::uint64_t>(a) * b) % p);
  }
  Scalar neg(Scalar a) const { return a == 0 ? 0 : p - a; }
  Scalar inv(Scalar a) const;
  Scalar reduce(long long v) const;
};

/// Dense row-major matrix over F_p.
class Matrix {
 public:
  Matrix() = default;
  Matrix(int rows, int cols, Scalar p);

  static Matrix identity(int n, Scalar p);
  static Matrix from_rows(const std::vector<std::vector<Scalar>>& rows, Scalar p, int cols = -1);

  int rows() const { return rows_; }
  int cols() const { return cols_; }
  Scalar modulus() const { return p_; }
  Field field() const;

  Scalar at(int r, int c) const { return a_[static_cast<std::size_t>(r) * cols_ + c]; }
  Scalar& at(int r, int c) { return a_[static_cast<std::size_t>(r) * cols_ + c]; }
  void set(int r, int c, Scalar v) { at(r, c) = v % p_; }

  const std::vector<Scalar>& data() const { return a_; }
  std::vector<Scalar> row(int r) const;
  void set_row(int r, const std::vector<Scalar>& v);

  bool is_zero() const;
  Matrix transpose() const;
  Matrix operator*(const Matrix& o) const;
  Matrix operator+(const Matrix& o) const;
  Matrix operator-(const Matrix& o) const;
  Matrix scaled(Scalar s) const;
  std::vector<Scalar> apply(const std::vector<Scalar>& v) const;

  Matrix submatrix(int r0, int c0, int nr, int nc) const;
  void paste(const Matrix& block, int r0, int c0);
  Matrix stack_below(const Matrix& o) const;
  Matrix stack_right(const Matrix& o) const;
  Matrix select_rows(const std::vector<int>& idx) const;

  bool operator==(const Matrix& o) const {
    return rows_ == o.rows_ && cols_ == o.cols_ && p_ == o.p_ && a_ == o.a_;
  }
  bool operator!=(const Matrix& o) const { return !(*this == o); }
  bool operator<(const Matrix& o) const;

  std::string to_string() const;

 private:
  int rows_ = 0;
  int cols_ = 0;
  Scalar p_ = 2;
  std::vector<Scalar> a_;
};

struct RrefResult {
  Matrix reduced;
  int rank = 0;
  std::vector<int> pivots;
};

RrefResult rref(const Matrix& m);
int rank(const Matrix& m);

/// Rows form the canonical null-space basis read off the RREF (one row per free column).
Matrix kernel_basis(const Matrix& m);

/// Canonical solution with free variables set to 0, or nullopt if inconsistent.
/// Throws std::invalid_argument on a dimension mismatch.
std::optional<std::vector<Scalar>> solve(const Matrix& m, const std::vector<Scalar>& rhs);

/// Row space basis in RREF with zero rows dropped.
Matrix row_basis(const Matrix& m);

/// Solves x * m = target for a row vector x (target in the row space of m).
std::optional<std::vector<Scalar>> solve_left(const Matrix& m, const std::vector<Scalar>& target);

/// Indices of rows of `candidates` that extend the row space of `base`, chosen greedily in order.
std::vector<int> complement_rows(const Matrix& base, const Matrix& candidates);

bool is_invertible(const Matrix& m);
std::optional<Matrix> inverse(const Matrix& m);

}  // namespace taufold
