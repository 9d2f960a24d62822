#include "taufold/exactmat.hpp"

#include <sstream>
#include <stdexcept>

namespace taufold {

bool is_prime(Scalar p) {
  if (p < 2) return false;
  for (Scalar d = 2; static_cast<std::uint64_t>(d) * d <= p; ++d)
    if (p % d == 0) return false;
  return true;
}

namespace {

void check_modulus(Scalar p) {
  thread_local Scalar last_ok = 2;
  if (p == 2 || p == last_ok) return;
  if (!is_prime(p) || p > 65521) throw std::invalid_argument("field modulus must be a prime below 65536");
  last_ok = p;
}

}  // namespace

Field::Field(Scalar modulus) : p(modulus) { check_modulus(modulus); }

Scalar Field::inv(Scalar a) const {
  a %= p;
  if (a == 0) throw std::domain_error("inverse of zero");
  // Fermat: a^(p-2)
  std::uint64_t result = 1, base = a, e = p - 2;
  while (e) {
    if (e & 1) result = result * base % p;
    base = base * base % p;
    e >>= 1;
  }
  return static_cast<Scalar>(result);
}

Scalar Field::reduce(long long v) const {
  long long r = v % static_cast<long long>(p);
  if (r < 0) r += p;
  return static_cast<Scalar>(r);
}

Matrix::Matrix(int rows, int cols, Scalar p) : rows_(rows), cols_(cols), p_(p) {
  if (rows < 0 || cols < 0) throw std::invalid_argument("negative matrix shape");
  check_modulus(p);
  a_.assign(static_cast<std::size_t>(rows) * cols, 0);
}

Matrix Matrix::identity(int n, Scalar p) {
  Matrix m(n, n, p);
  for (int i = 0; i < n; ++i) m.at(i, i) = 1;
  return m;
}

Matrix Matrix::from_rows(const std::vector<std::vector<Scalar>>& rows, Scalar p, int cols) {
  int c = cols >= 0 ? cols : (rows.empty() ? 0 : static_cast<int>(rows[0].size()));
  Matrix m(static_cast<int>(rows.size()), c, p);
  for (int r = 0; r < m.rows_; ++r) {
    if (static_cast<int>(rows[r].size()) != c) throw std::invalid_argument("ragged matrix rows");
    for (int j = 0; j < c; ++j) m.at(r, j) = rows[r][j] % p;
  }
  return m;
}

Field Matrix::field() const { return Field(p_); }

std::vector<Scalar> Matrix::row(int r) const {
  return std::vector<Scalar>(a_.begin() + static_cast<std::ptrdiff_t>(r) * cols_,
                             a_.begin() + static_cast<std::ptrdiff_t>(r + 1) * cols_);
}

void Matrix::set_row(int r, const std::vector<Scalar>& v) {
  if (static_cast<int>(v.size()) != cols_) throw std::invalid_argument("row length mismatch");
  for (int j = 0; j < cols_; ++j) at(r, j) = v[j] % p_;
}

bool Matrix::is_zero() const {
  for (Scalar x : a_)
    if (x) return false;
  return true;
}

Matrix Matrix::transpose() const {
  Matrix t(cols_, rows_, p_);
  for (int r = 0; r < rows_; ++r)
    for (int c = 0; c < cols_; ++c) t.at(c, r) = at(r, c);
  return t;
}

Matrix Matrix::operator*(const Matrix& o) const {
  if (cols_ != o.rows_ || p_ != o.p_) throw std::invalid_argument("matrix product shape mismatch");
  Matrix out(rows_, o.cols_, p_);
  for (int i = 0; i < rows_; ++i) {
    for (int k = 0; k < cols_; ++k) {
      std::uint64_t x = at(i, k);
      if (!x) continue;
      for (int j = 0; j < o.cols_; ++j) {
        Scalar y = o.at(k, j);
        if (y) out.at(i, j) = static_cast<Scalar>((out.at(i, j) + x * y) % p_);
      }
    }
  }
  return out;
}

Matrix Matrix::operator+(const Matrix& o) const {
  if (rows_ != o.rows_ || cols_ != o.cols_) throw std::invalid_argument("matrix sum shape mismatch");
  Matrix out(*this);
  for (std::size_t i = 0; i < a_.size(); ++i) out.a_[i] = (a_[i] + o.a_[i]) % p_;
  return out;
}

Matrix Matrix::operator-(const Matrix& o) const {
  if (rows_ != o.rows_ || cols_ != o.cols_) throw std::invalid_argument("matrix difference shape mismatch");
  Matrix out(*this);
  for (std::size_t i = 0; i < a_.size(); ++i) out.a_[i] = (a_[i] + p_ - o.a_[i]) % p_;
  return out;
}

Matrix Matrix::scaled(Scalar s) const {
  Matrix out(*this);
  for (auto& x : out.a_) x = static_cast<Scalar>(static_cast<std::uint64_t>(x) * s % p_);
  return out;
}

std::vector<Scalar> Matrix::apply(const std::vector<Scalar>& v) const {
  if (static_cast<int>(v.size()) != cols_) throw std::invalid_argument("vector length mismatch");
  std::vector<Scalar> out(rows_, 0);
  for (int i = 0; i < rows_; ++i) {
    std::uint64_t acc = 0;
    for (int j = 0; j < cols_; ++j) acc += static_cast<std::uint64_t>(at(i, j)) * v[j];
    out[i] = static_cast<Scalar>(acc % p_);
  }
  return out;
}

Matrix Matrix::submatrix(int r0, int c0, int nr, int nc) const {
  Matrix out(nr, nc, p_);
  for (int r = 0; r < nr; ++r)
    for (int c = 0; c < nc; ++c) out.at(r, c) = at(r0 + r, c0 + c);
  return out;
}

void Matrix::paste(const Matrix& block, int r0, int c0) {
  if (r0 + block.rows_ > rows_ || c0 + block.cols_ > cols_) throw std::invalid_argument("paste out of range");
  for (int r = 0; r < block.rows_; ++r)
    for (int c = 0; c < block.cols_; ++c) at(r0 + r, c0 + c) = block.at(r, c);
}

Matrix Matrix::stack_below(const Matrix& o) const {
  if (cols_ != o.cols_) throw std::invalid_argument("vertical stack width mismatch");
  Matrix out(rows_ + o.rows_, cols_, p_);
  out.paste(*this, 0, 0);
  out.paste(o, rows_, 0);
  return out;
}

Matrix Matrix::stack_right(const Matrix& o) const {
  if (rows_ != o.rows_) throw std::invalid_argument("horizontal stack height mismatch");
  Matrix out(rows_, cols_ + o.cols_, p_);
  out.paste(*this, 0, 0);
  out.paste(o, 0, cols_);
  return out;
}

Matrix Matrix::select_rows(const std::vector<int>& idx) const {
  Matrix out(static_cast<int>(idx.size()), cols_, p_);
  for (std::size_t i = 0; i < idx.size(); ++i)
    for (int c = 0; c < cols_; ++c) out.at(static_cast<int>(i), c) = at(idx[i], c);
  return out;
}

bool Matrix::operator<(const Matrix& o) const {
  if (rows_ != o.rows_) return rows_ < o.rows_;
  if (cols_ != o.cols_) return cols_ < o.cols_;
  return a_ < o.a_;
}

std::string Matrix::to_string() const {
  std::ostringstream os;
  os << "[";
  for (int r = 0; r < rows_; ++r) {
    if (r) os << ",";
    os << "[";
    for (int c = 0; c < cols_; ++c) os << (c ? "," : "") << at(r, c);
    os << "]";
  }
  os << "]";
  return os.str();
}

RrefResult rref(const Matrix& m) {
  RrefResult res{m, 0, {}};
  Matrix& a = res.reduced;
  const Field f(m.modulus());
  const int rows = a.rows(), cols = a.cols();
  int r = 0;
  for (int c = 0; c < cols && r < rows; ++c) {
    int piv = -1;
    for (int i = r; i < rows; ++i)
      if (a.at(i, c)) {
        piv = i;
        break;
      }
    if (piv < 0) continue;
    if (piv != r)
      for (int j = 0; j < cols; ++j) std::swap(a.at(piv, j), a.at(r, j));
    Scalar inv = f.inv(a.at(r, c));
    if (inv != 1)
      for (int j = c; j < cols; ++j) a.at(r, j) = f.mul(a.at(r, j), inv);
    for (int i = 0; i < rows; ++i) {
      if (i == r) continue;
      Scalar factor = a.at(i, c);
      if (!factor) continue;
      for (int j = c; j < cols; ++j) {
        Scalar y = a.at(r, j);
        if (y) a.at(i, j) = f.sub(a.at(i, j), f.mul(factor, y));
      }
    }
    res.pivots.push_back(c);
    ++r;
  }
  res.rank = r;
  return res;
}

int rank(const Matrix& m) { return rref(m).rank; }

Matrix kernel_basis(const Matrix& m) {
  RrefResult rr = rref(m);
  const int cols = m.cols();
  std::vector<char> is_pivot(cols, 0);
  for (int c : rr.pivots) is_pivot[c] = 1;
  const Field f(m.modulus());
  std::vector<int> free_cols;
  for (int c = 0; c < cols; ++c)
    if (!is_pivot[c]) free_cols.push_back(c);
  Matrix k(static_cast<int>(free_cols.size()), cols, m.modulus());
  for (std::size_t i = 0; i < free_cols.size(); ++i) {
    int fc = free_cols[i];
    k.at(static_cast<int>(i), fc) = 1;
    for (int r = 0; r < rr.rank; ++r) k.at(static_cast<int>(i), rr.pivots[r]) = f.neg(rr.reduced.at(r, fc));
  }
  return k;
}

std::optional<std::vector<Scalar>> solve(const Matrix& m, const std::vector<Scalar>& rhs) {
  if (static_cast<int>(rhs.size()) != m.rows()) throw std::invalid_argument("solve: rhs length does not match row count");
  Matrix aug(m.rows(), m.cols() + 1, m.modulus());
  aug.paste(m, 0, 0);
  for (int r = 0; r < m.rows(); ++r) aug.at(r, m.cols()) = rhs[r] % m.modulus();
  RrefResult rr = rref(aug);
  if (!rr.pivots.empty() && rr.pivots.back() == m.cols()) return std::nullopt;
  std::vector<Scalar> x(m.cols(), 0);
  for (int r = 0; r < rr.rank; ++r) x[rr.pivots[r]] = rr.reduced.at(r, m.cols());
  return x;
}

Matrix row_basis(const Matrix& m) {
  RrefResult rr = rref(m);
  return rr.reduced.submatrix(0, 0, rr.rank, m.cols());
}

std::optional<std::vector<Scalar>> solve_left(const Matrix& m, const std::vector<Scalar>& target) {
  return solve(m.transpose(), target);
}

std::vector<int> complement_rows(const Matrix& base, const Matrix& candidates) {
  if (base.cols() != candidates.cols()) throw std::invalid_argument("complement_rows width mismatch");
  Matrix acc = row_basis(base);
  int r = acc.rows();
  std::vector<int> chosen;
  for (int i = 0; i < candidates.rows(); ++i) {
    Matrix trial = acc.stack_below(candidates.submatrix(i, 0, 1, candidates.cols()));
    RrefResult rr = rref(trial);
    if (rr.rank > r) {
      chosen.push_back(i);
      acc = rr.reduced.submatrix(0, 0, rr.rank, trial.cols());
      r = rr.rank;
    }
  }
  return chosen;
}

bool is_invertible(const Matrix& m) { return m.rows() == m.cols() && rank(m) == m.rows(); }

std::optional<Matrix> inverse(const Matrix& m) {
  if (m.rows() != m.cols()) return std::nullopt;
  const int n = m.rows();
  RrefResult rr = rref(m.stack_right(Matrix::identity(n, m.modulus())));
  for (int i = 0; i < n; ++i)
    if (rr.reduced.at(i, i) != 1) return std::nullopt;
  if (rr.rank < n || (n > 0 && rr.pivots[n - 1] != n - 1)) return std::nullopt;
  return rr.reduced.submatrix(0, n, n, n);
}

}  // namespace taufold
