#pragma once
// Subspaces in canonical echelon form, span membership, quotients.

#include <cstddef>
#include <optional>
#include <vector>

#include "depth2/matrix.hpp"

namespace depth2 {

/// A subspace of F^n stored as the unique RREF basis of its row space.
class Subspace {
 public:
  Subspace() = default;
  /// The zero subspace of F^n.
  Subspace(Field f, std::size_t ambient_dim);

  static Subspace full(Field f, std::size_t ambient_dim);
  /// Span of column vectors (each ambient_dim x 1).
  static Subspace span(Field f, std::size_t ambient_dim, const std::vector<Matrix>& vectors);
  /// Span of the columns of m.
  static Subspace column_span(const Matrix& m);
  /// Kernel of m, as a subspace of F^{m.cols()}.
  static Subspace kernel(const Matrix& m);

  Field field() const { return field_; }
  std::size_t ambient_dim() const { return ambient_; }
  std::size_t dim() const { return pivots_.size(); }
  const std::vector<std::size_t>& pivots() const { return pivots_; }

  /// The k-th echelon basis vector (ambient_dim x 1).
  Matrix basis_vector(std::size_t k) const;
  /// ambient_dim x dim matrix whose columns are the echelon basis.
  const Matrix& basis_columns() const { return basis_; }

  bool contains(const Matrix& v) const;
  /// Coordinates in the echelon basis (dim x 1), absent when v lies outside.
  std::optional<Matrix> coordinates(const Matrix& v) const;
  /// Coordinates of every column; throws std::domain_error if one lies outside.
  Matrix coordinates_of_columns(const Matrix& m) const;

  bool is_subspace_of(const Subspace& o) const;
  Subspace intersect(const Subspace& o) const;
  Subspace sum(const Subspace& o) const;
  /// First basis vector of *this not contained in o, if any.
  std::optional<Matrix> witness_outside(const Subspace& o) const;

  friend bool operator==(const Subspace& a, const Subspace& b);

 private:
  void check_ambient(const Matrix& v) const;

  Field field_;
  std::size_t ambient_ = 0;
  std::vector<std::size_t> pivots_;
  Matrix basis_;  // ambient x dim
};

/// Coefficients c with sum c_i g_i = target, free variables set to zero.
/// Absent when target is outside the span. Throws on dimension mismatch.
std::optional<Matrix> solve_in_span(const Matrix& target, const std::vector<Matrix>& generators);
/// Same, with the generators given as the columns of a matrix.
std::optional<Matrix> solve_in_span(const Matrix& target, const Matrix& generator_columns);

/// Quotient F^n / relations. Quotient coordinates are the non-pivot columns
/// of the relations' echelon basis in ascending order.
struct QuotientStructure {
  Matrix projection;  // dim x n
  Matrix section;     // n x dim
  std::size_t dim = 0;
  std::vector<std::size_t> kept;  // ambient index of each quotient coordinate
};

QuotientStructure quotient_structure(std::size_t ambient_dim, const Subspace& relations);

}  // namespace depth2
