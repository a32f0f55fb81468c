#pragma once

#include <cstddef>
#include <iosfwd>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace sdq {

using Vector = std::vector<double>;
using Index = std::size_t;
using IndexSet = std::vector<Index>;

// Thrown when operand shapes do not conform.
class DimensionError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// Thrown when a NaN or infinity reaches an operation.
class NonFiniteError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// Dense real matrix, row-major storage.
class Matrix {
 public:
  Matrix() = default;
  Matrix(Index rows, Index cols, double fill = 0.0);
  Matrix(Index rows, Index cols, std::vector<double> entries);
  Matrix(std::initializer_list<std::initializer_list<double>> rows);

  static Matrix identity(Index n);
  static Matrix diagonal(std::span<const double> d);
  static Matrix column(std::span<const double> v);

  Index rows() const { return rows_; }
  Index cols() const { return cols_; }
  bool empty() const { return data_.empty(); }

  double operator()(Index i, Index j) const { return data_[i * cols_ + j]; }
  double& operator()(Index i, Index j) { return data_[i * cols_ + j]; }

  std::span<const double> row(Index i) const {
    return {data_.data() + i * cols_, cols_};
  }
  std::span<double> row(Index i) { return {data_.data() + i * cols_, cols_}; }
  Vector col(Index j) const;

  std::span<const double> data() const { return data_; }
  std::span<double> data() { return data_; }

  Matrix transpose() const;
  // Submatrix made of the listed columns, in the listed order.
  Matrix select_columns(std::span<const Index> cols) const;
  // First `count` rows.
  Matrix top_rows(Index count) const;

  bool all_finite() const;
  double max_abs() const;

  Matrix& operator*=(double s);
  friend bool operator==(const Matrix&, const Matrix&) = default;

 private:
  Index rows_ = 0;
  Index cols_ = 0;
  std::vector<double> data_;
};

Matrix operator*(double s, Matrix a);
Matrix operator+(const Matrix& a, const Matrix& b);
Matrix operator-(const Matrix& a, const Matrix& b);

Matrix matmul(const Matrix& a, const Matrix& b);
// aᵀ·b without forming the transpose.
Matrix matmul_tn(const Matrix& a, const Matrix& b);
Vector matvec(const Matrix& a, std::span<const double> x);
// aᵀ·x
Vector matvec_t(const Matrix& a, std::span<const double> x);

// max_ij |a_ij − b_ij|
double max_abs_diff(const Matrix& a, const Matrix& b);

double dot(std::span<const double> a, std::span<const double> b);
double norm2(std::span<const double> v);
double norm1(std::span<const double> v);
double norm_inf(std::span<const double> v);
Vector subtract(std::span<const double> a, std::span<const double> b);

void require_finite(std::span<const double> v, const char* what);

// Fixture format: "rows cols" on the first line, then one line per row of
// whitespace separated decimal entries.
Matrix read_matrix(std::istream& in);
Matrix read_matrix_file(const std::string& path);
void write_matrix(std::ostream& out, const Matrix& a);

// Whitespace/newline/comma separated list of reals.
Vector read_vector(std::istream& in);
Vector read_vector_file(const std::string& path);

}  // namespace sdq
