#pragma once
// Dense exact matrices over Q or F_p. Column vectors are n x 1 matrices.

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "depth2/field.hpp"

namespace depth2 {

class Matrix;

/// Reduced row echelon form: the nonzero rows plus their pivot columns.
struct RowEchelon {
  std::vector<std::size_t> pivots;
  // rank x cols, leading entry of row k is 1 at column pivots[k]
  std::vector<std::vector<Scalar>> rows;
};

class Matrix {
 public:
  Matrix() = default;
  /// Zero matrix.
  Matrix(Field f, std::size_t rows, std::size_t cols);

  static Matrix identity(Field f, std::size_t n);
  static Matrix unit_vector(Field f, std::size_t n, std::size_t i);
  static Matrix column(Field f, const std::vector<Scalar>& entries);
  /// Columns must all be rows x 1.
  static Matrix from_columns(Field f, std::size_t rows, const std::vector<Matrix>& columns);

  Field field() const { return field_; }
  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  std::size_t size() const { return rows_ * cols_; }
  bool is_vector() const { return cols_ == 1; }

  Scalar at(std::size_t i, std::size_t j) const;
  /// Entry of a column vector.
  Scalar operator[](std::size_t i) const { return at(i, 0); }
  void set(std::size_t i, std::size_t j, const Scalar& v);
  void add_to(std::size_t i, std::size_t j, const Scalar& v);
  bool entry_is_zero(std::size_t i, std::size_t j) const;

  Matrix col(std::size_t j) const;
  Matrix row(std::size_t i) const;
  void set_col(std::size_t j, const Matrix& v);
  Matrix block(std::size_t r0, std::size_t c0, std::size_t nr, std::size_t nc) const;
  Matrix select_rows(const std::vector<std::size_t>& idx) const;
  /// Row-major reinterpretation.
  Matrix reshape(std::size_t rows, std::size_t cols) const;

  Matrix transpose() const;
  Matrix operator-() const;
  Matrix& operator+=(const Matrix& o);
  Matrix& operator-=(const Matrix& o);
  Matrix& operator*=(const Scalar& s);
  /// this += s * o
  Matrix& add_scaled(const Scalar& s, const Matrix& o);
  friend Matrix operator+(Matrix a, const Matrix& b) { return a += b; }
  friend Matrix operator-(Matrix a, const Matrix& b) { return a -= b; }
  friend Matrix operator*(const Matrix& a, const Matrix& b);
  friend Matrix operator*(const Scalar& s, Matrix a) { return a *= s; }
  friend bool operator==(const Matrix& a, const Matrix& b);

  bool is_zero() const;
  bool is_identity() const;

  RowEchelon rref() const;
  std::size_t rank() const;
  /// Columns form the canonical kernel basis (one per free column).
  Matrix nullspace() const;
  /// Two-sided inverse of a square matrix, absent if singular.
  std::optional<Matrix> inverse() const;

  std::string to_string() const;

  friend Matrix kron(const Matrix& a, const Matrix& b);
  friend Matrix hstack(const std::vector<Matrix>& blocks);
  friend Matrix vstack(const std::vector<Matrix>& blocks);

 private:
  void check_shape(const Matrix& o, const char* op) const;

  Field field_;
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  // Exactly one of the two stores is in use, chosen by field_.
  std::vector<mpq_class> q_;
  std::vector<std::uint32_t> r_;

  friend struct MatrixAccess;
};

Matrix kron(const Matrix& a, const Matrix& b);
Matrix hstack(const std::vector<Matrix>& blocks);
Matrix vstack(const std::vector<Matrix>& blocks);

}  // namespace depth2
