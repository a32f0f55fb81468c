#include "sdq/matrix.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>

#include <fmt/format.h>

namespace sdq {

Matrix::Matrix(Index rows, Index cols, double fill)
    : rows_(rows), cols_(cols), data_(rows * cols, fill) {}

Matrix::Matrix(Index rows, Index cols, std::vector<double> entries)
    : rows_(rows), cols_(cols), data_(std::move(entries)) {
  if (data_.size() != rows * cols) {
    throw DimensionError(fmt::format("matrix {}x{} given {} entries", rows,
                                     cols, data_.size()));
  }
  require_finite(data_, "matrix entries");
}

Matrix::Matrix(std::initializer_list<std::initializer_list<double>> rows) {
  rows_ = rows.size();
  cols_ = rows_ == 0 ? 0 : rows.begin()->size();
  data_.reserve(rows_ * cols_);
  for (const auto& r : rows) {
    if (r.size() != cols_) throw DimensionError("ragged matrix literal");
    data_.insert(data_.end(), r.begin(), r.end());
  }
  require_finite(data_, "matrix entries");
}

Matrix Matrix::identity(Index n) {
  Matrix m(n, n);
  for (Index i = 0; i < n; ++i) m(i, i) = 1.0;
  return m;
}

Matrix Matrix::diagonal(std::span<const double> d) {
  Matrix m(d.size(), d.size());
  for (Index i = 0; i < d.size(); ++i) m(i, i) = d[i];
  return m;
}

Matrix Matrix::column(std::span<const double> v) {
  return Matrix(v.size(), 1, std::vector<double>(v.begin(), v.end()));
}

Vector Matrix::col(Index j) const {
  Vector v(rows_);
  for (Index i = 0; i < rows_; ++i) v[i] = (*this)(i, j);
  return v;
}

Matrix Matrix::transpose() const {
  Matrix t(cols_, rows_);
  for (Index i = 0; i < rows_; ++i)
    for (Index j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
  return t;
}

Matrix Matrix::select_columns(std::span<const Index> cols) const {
  Matrix s(rows_, cols.size());
  for (Index k = 0; k < cols.size(); ++k) {
    if (cols[k] >= cols_) throw DimensionError("column index out of range");
  }
  for (Index i = 0; i < rows_; ++i)
    for (Index k = 0; k < cols.size(); ++k) s(i, k) = (*this)(i, cols[k]);
  return s;
}

Matrix Matrix::top_rows(Index count) const {
  if (count > rows_) throw DimensionError("top_rows: count exceeds rows");
  return Matrix(count, cols_,
                std::vector<double>(data_.begin(),
                                    data_.begin() + count * cols_));
}

bool Matrix::all_finite() const {
  return std::all_of(data_.begin(), data_.end(),
                     [](double x) { return std::isfinite(x); });
}

double Matrix::max_abs() const { return norm_inf(data_); }

Matrix& Matrix::operator*=(double s) {
  for (double& x : data_) x *= s;
  return *this;
}

Matrix operator*(double s, Matrix a) {
  a *= s;
  return a;
}

Matrix operator+(const Matrix& a, const Matrix& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols())
    throw DimensionError("matrix sum shape mismatch");
  Matrix c = a;
  auto cd = c.data();
  auto bd = b.data();
  for (Index k = 0; k < cd.size(); ++k) cd[k] += bd[k];
  return c;
}

Matrix operator-(const Matrix& a, const Matrix& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols())
    throw DimensionError("matrix difference shape mismatch");
  Matrix c = a;
  auto cd = c.data();
  auto bd = b.data();
  for (Index k = 0; k < cd.size(); ++k) cd[k] -= bd[k];
  return c;
}

Matrix matmul(const Matrix& a, const Matrix& b) {
  if (a.cols() != b.rows()) {
    throw DimensionError(fmt::format("matmul: {}x{} times {}x{}", a.rows(),
                                     a.cols(), b.rows(), b.cols()));
  }
  Matrix c(a.rows(), b.cols());
  // i-k-j order keeps the inner loop contiguous in both b and c.
  for (Index i = 0; i < a.rows(); ++i) {
    auto crow = c.row(i);
    for (Index k = 0; k < a.cols(); ++k) {
      const double aik = a(i, k);
      if (aik == 0.0) continue;
      auto brow = b.row(k);
      for (Index j = 0; j < crow.size(); ++j) crow[j] += aik * brow[j];
    }
  }
  return c;
}

Matrix matmul_tn(const Matrix& a, const Matrix& b) {
  if (a.rows() != b.rows()) throw DimensionError("matmul_tn: row mismatch");
  Matrix c(a.cols(), b.cols());
  for (Index k = 0; k < a.rows(); ++k) {
    auto arow = a.row(k);
    auto brow = b.row(k);
    for (Index i = 0; i < arow.size(); ++i) {
      const double aki = arow[i];
      if (aki == 0.0) continue;
      auto crow = c.row(i);
      for (Index j = 0; j < brow.size(); ++j) crow[j] += aki * brow[j];
    }
  }
  return c;
}

Vector matvec(const Matrix& a, std::span<const double> x) {
  if (a.cols() != x.size()) throw DimensionError("matvec: length mismatch");
  Vector y(a.rows());
  for (Index i = 0; i < a.rows(); ++i) y[i] = dot(a.row(i), x);
  return y;
}

Vector matvec_t(const Matrix& a, std::span<const double> x) {
  if (a.rows() != x.size()) throw DimensionError("matvec_t: length mismatch");
  Vector y(a.cols(), 0.0);
  for (Index i = 0; i < a.rows(); ++i) {
    const double xi = x[i];
    auto arow = a.row(i);
    for (Index j = 0; j < y.size(); ++j) y[j] += arow[j] * xi;
  }
  return y;
}

double max_abs_diff(const Matrix& a, const Matrix& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols())
    throw DimensionError("max_abs_diff: shape mismatch");
  double m = 0.0;
  auto ad = a.data();
  auto bd = b.data();
  for (Index k = 0; k < ad.size(); ++k) m = std::max(m, std::abs(ad[k] - bd[k]));
  return m;
}

double dot(std::span<const double> a, std::span<const double> b) {
  if (a.size() != b.size()) throw DimensionError("dot: length mismatch");
  double s = 0.0;
  for (Index k = 0; k < a.size(); ++k) s += a[k] * b[k];
  return s;
}

double norm2(std::span<const double> v) {
  // Scaled accumulation avoids overflow for the large D^{-r} entries.
  double scale = 0.0;
  double ssq = 1.0;
  for (double x : v) {
    if (x == 0.0) continue;
    const double ax = std::abs(x);
    if (scale < ax) {
      ssq = 1.0 + ssq * (scale / ax) * (scale / ax);
      scale = ax;
    } else {
      ssq += (ax / scale) * (ax / scale);
    }
  }
  return scale * std::sqrt(ssq);
}

double norm1(std::span<const double> v) {
  double s = 0.0;
  for (double x : v) s += std::abs(x);
  return s;
}

double norm_inf(std::span<const double> v) {
  double m = 0.0;
  for (double x : v) m = std::max(m, std::abs(x));
  return m;
}

Vector subtract(std::span<const double> a, std::span<const double> b) {
  if (a.size() != b.size()) throw DimensionError("subtract: length mismatch");
  Vector d(a.size());
  for (Index k = 0; k < a.size(); ++k) d[k] = a[k] - b[k];
  return d;
}

void require_finite(std::span<const double> v, const char* what) {
  for (double x : v) {
    if (!std::isfinite(x))
      throw NonFiniteError(fmt::format("{}: non-finite value", what));
  }
}

Matrix read_matrix(std::istream& in) {
  long long rows = 0;
  long long cols = 0;
  if (!(in >> rows >> cols) || rows <= 0 || cols <= 0)
    throw std::runtime_error("matrix fixture: bad header");
  std::vector<double> entries;
  entries.reserve(static_cast<Index>(rows * cols));
  for (long long k = 0; k < rows * cols; ++k) {
    double x = 0.0;
    if (!(in >> x)) {
      throw std::runtime_error(
          fmt::format("matrix fixture: expected {} entries, got {}",
                      rows * cols, k));
    }
    entries.push_back(x);
  }
  return Matrix(static_cast<Index>(rows), static_cast<Index>(cols),
                std::move(entries));
}

Matrix read_matrix_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path);
  return read_matrix(in);
}

void write_matrix(std::ostream& out, const Matrix& a) {
  out << a.rows() << ' ' << a.cols() << '\n';
  for (Index i = 0; i < a.rows(); ++i) {
    for (Index j = 0; j < a.cols(); ++j) {
      if (j) out << ' ';
      out << fmt::format("{:.17g}", a(i, j));
    }
    out << '\n';
  }
}

Vector read_vector(std::istream& in) {
  Vector v;
  std::string token;
  while (in >> token) {
    std::replace(token.begin(), token.end(), ',', ' ');
    std::istringstream parts(token);
    double x = 0.0;
    while (parts >> x) v.push_back(x);
    if (!parts.eof()) throw std::runtime_error("vector: bad token " + token);
  }
  require_finite(v, "vector input");
  return v;
}

Vector read_vector_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path);
  return read_vector(in);
}

}  // namespace sdq
