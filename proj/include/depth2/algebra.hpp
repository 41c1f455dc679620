#pragma once
// Finite-dimensional unital associative algebras given by structure constants,
// algebra morphisms and extensions, group algebras, centralizers and ideals.

#include <cstddef>
#include <memory>
#include <stdexcept>
#include <string>
#include <vector>

#include "depth2/linalg.hpp"

namespace depth2 {

/// Invalid algebraic input (non-associative constants, bad unit, not a group...).
class AlgebraError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// e_i e_j = sum_k c[i][j][k] e_k, stored as left and right regular
/// representations so products are matrix-vector multiplications.
class FiniteAlgebra {
 public:
  /// structure[i][j][k] = c_ij^k. Throws AlgebraError naming the first
  /// violated identity.
  static FiniteAlgebra make(Field f, const std::vector<std::vector<std::vector<Scalar>>>& structure,
                            const std::vector<Scalar>& unit);
  /// products[i][j] is the column vector e_i e_j.
  static FiniteAlgebra from_products(Field f, const std::vector<std::vector<Matrix>>& products,
                                     const Matrix& unit);
  /// The one-dimensional algebra F itself.
  static FiniteAlgebra ground(Field f);

  Field field() const { return field_; }
  std::size_t dim() const { return dim_; }
  const Matrix& unit() const { return unit_; }
  Matrix basis(std::size_t i) const { return Matrix::unit_vector(field_, dim_, i); }

  /// Matrix of x -> e_i x.
  const Matrix& left_mult(std::size_t i) const { return left_[i]; }
  /// Matrix of x -> x e_j.
  const Matrix& right_mult(std::size_t j) const { return right_[j]; }
  Matrix left_mult_by(const Matrix& a) const;
  Matrix right_mult_by(const Matrix& b) const;
  Matrix multiply(const Matrix& a, const Matrix& b) const;
  Matrix product(std::size_t i, std::size_t j) const { return left_[i].col(j); }
  Scalar structure_constant(std::size_t i, std::size_t j, std::size_t k) const {
    return left_[i].at(k, j);
  }
  bool is_commutative() const;

  friend bool operator==(const FiniteAlgebra& a, const FiniteAlgebra& b);

 private:
  FiniteAlgebra() = default;
  void validate() const;

  Field field_;
  std::size_t dim_ = 0;
  Matrix unit_;
  std::vector<Matrix> left_;
  std::vector<Matrix> right_;
};

using AlgebraPtr = std::shared_ptr<const FiniteAlgebra>;

inline AlgebraPtr share(FiniteAlgebra a) { return std::make_shared<const FiniteAlgebra>(std::move(a)); }

struct AlgebraMorphism {
  AlgebraPtr source;
  AlgebraPtr target;
  Matrix matrix;  // dim(target) x dim(source)

  /// Throws AlgebraError unless multiplicative on basis pairs and unital.
  static AlgebraMorphism make(AlgebraPtr source, AlgebraPtr target, Matrix matrix);
  static AlgebraMorphism identity(AlgebraPtr a);
  Matrix apply(const Matrix& x) const { return matrix * x; }
};

/// Composite x -> outer(inner(x)).
AlgebraMorphism compose(const AlgebraMorphism& outer, const AlgebraMorphism& inner);

/// The algebra extension A|B: a unital morphism iota: B -> A, not
/// necessarily injective.
struct Extension {
  AlgebraPtr B;
  AlgebraPtr A;
  Matrix iota;  // dim A x dim B

  static Extension make(AlgebraPtr B, AlgebraPtr A, Matrix iota);
  static Extension trivial(AlgebraPtr A);
  /// F -> A via the unit.
  static Extension over_ground(AlgebraPtr A);

  Field field() const { return A->field(); }
  std::size_t dim_A() const { return A->dim(); }
  std::size_t dim_B() const { return B->dim(); }
  AlgebraMorphism morphism() const { return {B, A, iota}; }
  /// iota(b_j) as an element of A.
  Matrix image(std::size_t j) const { return iota.col(j); }
  /// iota(B) as a subspace of A.
  Subspace image_subspace() const { return Subspace::column_span(iota); }
};

/// A subalgebra of a finite algebra: a subspace closed under products and
/// containing the unit.
struct SubalgebraData {
  AlgebraPtr ambient;
  Subspace basis;

  /// Throws AlgebraError if not closed or not unital.
  static SubalgebraData make(AlgebraPtr ambient, Subspace basis);
  /// Structure constants in the echelon basis.
  FiniteAlgebra as_algebra() const;
  /// dim(ambient) x dim matrix.
  const Matrix& inclusion() const { return basis.basis_columns(); }
  std::size_t dim() const { return basis.dim(); }
};

// ---- groups -------------------------------------------------------------

struct Group {
  std::vector<std::vector<std::size_t>> table;  // table[g][h] = gh
  std::size_t identity = 0;
  std::vector<std::size_t> inverse;

  /// Validates closure, associativity, identity and inverses.
  static Group make(std::vector<std::vector<std::size_t>> table);
  std::size_t order() const { return table.size(); }
  std::size_t mul(std::size_t g, std::size_t h) const { return table[g][h]; }
};

FiniteAlgebra group_algebra(Field f, const std::vector<std::vector<std::size_t>>& table);

/// k[N] -> k[G] for a subgroup N, with the right cosets Ng.
struct GroupPair {
  Extension ext;
  Group group;
  std::vector<std::size_t> subgroup;     // sorted; basis order of B
  std::vector<std::size_t> transversal;  // least element of each coset, ascending
  std::vector<std::size_t> coset_of;     // group element -> coset index
  bool normal = false;
};

/// Any subgroup; normality is recorded but not required.
GroupPair subgroup_extension(Field f, const std::vector<std::vector<std::size_t>>& table,
                             std::vector<std::size_t> subgroup);
/// Requires N normal; throws AlgebraError("... not normal") otherwise.
GroupPair group_pair(Field f, const std::vector<std::vector<std::size_t>>& table,
                     std::vector<std::size_t> subgroup);

// ---- centralizers, ideals, normality -------------------------------------

/// R = C_A(B) = {a : a iota(b) = iota(b) a for all b}.
SubalgebraData centralizer(const Extension& ext);

/// Smallest two-sided ideal containing the generators.
Subspace ideal_closure(const FiniteAlgebra& A, const std::vector<Matrix>& generators);
bool is_two_sided_ideal(const FiniteAlgebra& A, const Subspace& ideal);

/// span{a x : a in A, x in S} and span{x a}.
Subspace left_ideal_span(const FiniteAlgebra& A, const Subspace& s);
Subspace right_ideal_span(const FiniteAlgebra& A, const Subspace& s);

struct NormalityReport {
  Subspace ideal_meet_centralizer;  // I cap R
  Subspace left_span;               // A (I cap R)
  Subspace right_span;              // (I cap R) A
  bool right_in_left = false;       // (I cap R) A subset A (I cap R)
  bool left_in_right = false;
  bool equal() const { return right_in_left && left_in_right; }
};

/// Throws AlgebraError if the input is not a two-sided ideal.
NormalityReport normality_audit(const Extension& ext, const Subspace& ideal);

}  // namespace depth2
