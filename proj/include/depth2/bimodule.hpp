#pragma once
// Bimodules, relative tensor products, intertwiner spaces, the direct-summand
// criterion and depth-two quasibases.

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "depth2/algebra.hpp"

namespace depth2 {

/// A finite-dimensional P-Q-bimodule. Actions are matrices on column
/// vectors: left_action[i] is x -> p_i x, right_action[j] is x -> x q_j.
struct Bimodule {
  AlgebraPtr left_algebra;
  AlgebraPtr right_algebra;
  std::size_t dim = 0;
  std::vector<Matrix> left_action;
  std::vector<Matrix> right_action;

  /// Checks unital representation, unital anti-representation and that the
  /// two actions commute. Throws AlgebraError.
  static Bimodule make(AlgebraPtr P, AlgebraPtr Q, std::vector<Matrix> left,
                       std::vector<Matrix> right);
  /// A as an A-A-bimodule.
  static Bimodule regular(const AlgebraPtr& A);
  /// A left module viewed as a bimodule over (P, ground field).
  static Bimodule left_module(const AlgebraPtr& P, std::vector<Matrix> actions);

  Field field() const { return left_algebra->field(); }
  Matrix left_by(const Matrix& p) const;
  Matrix right_by(const Matrix& q) const;
};

/// Pull the left (right) action back along an algebra morphism into P (Q).
Bimodule restrict_left(const Bimodule& M, const AlgebraMorphism& phi);
Bimodule restrict_right(const Bimodule& M, const AlgebraMorphism& psi);
/// Replace the right action by the trivial action of the ground field.
Bimodule forget_right(const Bimodule& M);
Bimodule direct_sum(const Bimodule& M, const Bimodule& N);

/// M (x)_Q N for M a P-Q- and N a Q-S-bimodule, realized as a quotient of
/// M (x)_F N with coordinates (a, b) -> a * dim N + b.
struct TensorProduct {
  Bimodule module;  // P-S-bimodule
  QuotientStructure quotient;
  std::size_t left_dim = 0;
  std::size_t right_dim = 0;

  std::size_t dim() const { return quotient.dim; }
  /// Class of x (x) y.
  Matrix pure(const Matrix& x, const Matrix& y) const { return quotient.projection * kron(x, y); }
  /// A representative in M (x)_F N coordinates.
  Matrix lift(const Matrix& v) const { return quotient.section * v; }
};

/// Throws AlgebraError if M's right algebra differs from N's left algebra.
TensorProduct tensor_over(const Bimodule& M, const Bimodule& N);

/// All bimodule maps M -> N, as dim N x dim M matrices in echelon order.
/// Throws AlgebraError unless both sides share the same algebra pair.
std::vector<Matrix> hom_space(const Bimodule& M, const Bimodule& N);

/// A (x)_B A with its A-A-bimodule structure and the multiplication map.
struct TensorSquare {
  Extension ext;
  TensorProduct product;
  Matrix mu;  // dim A x dim

  std::size_t dim() const { return product.dim(); }
  Field field() const { return ext.field(); }
  Matrix pure(const Matrix& x, const Matrix& y) const { return product.pure(x, y); }
  Matrix pure_basis(std::size_t i, std::size_t j) const;
  /// Coefficients c with v = sum c_ij e_i (x) e_j, as a dim A x dim A matrix.
  Matrix representative(const Matrix& v) const;
  Matrix left(const Matrix& a) const { return product.module.left_by(a); }
  Matrix right(const Matrix& a) const { return product.module.right_by(a); }
  const Matrix& left_basis(std::size_t i) const { return product.module.left_action[i]; }
  const Matrix& right_basis(std::size_t i) const { return product.module.right_action[i]; }

  const Bimodule& as_AA() const { return product.module; }
  Bimodule as_AB() const;
  Bimodule as_BA() const;
  Bimodule as_BB() const;
};

TensorSquare tensor_square(const Extension& ext);

/// T = (A (x)_B A)^B inside the tensor square's coordinates.
Subspace b_centralized(const TensorSquare& ts);

/// The natural bimodules A_AB, A_BA, A_BB of an extension.
Bimodule algebra_as_AB(const Extension& ext);
Bimodule algebra_as_BA(const Extension& ext);
Bimodule algebra_as_BB(const Extension& ext);

/// id_M = sum_i f_i o g_i with f_i : P -> M and g_i : M -> P.
struct SummandFactorization {
  std::vector<Matrix> f;  // dim M x dim P
  std::vector<Matrix> g;  // dim P x dim M
  std::size_t hom_to_dim = 0;    // dim Hom(P, M)
  std::size_t hom_from_dim = 0;  // dim Hom(M, P)
  std::size_t size() const { return f.size(); }
};

/// Decides whether M is a direct summand of a finite direct sum of copies
/// of P by solving id_M in the span of the composites f o g.
std::optional<SummandFactorization> coproduct_summand_test(const Bimodule& M, const Bimodule& P);

enum class Side { Left, Right };

struct QuasibasePair {
  Matrix endo;    // gamma_i (right) or beta_i (left): dim A x dim A
  Matrix tensor;  // u_i (right) or t_i (left), tensor-square coordinates
};

struct QuasibaseSet {
  Side side = Side::Right;
  std::vector<QuasibasePair> pairs;
  std::size_t size() const { return pairs.size(); }
};

struct QuasibaseCheck {
  bool ok = true;
  std::string failure;
  explicit operator bool() const { return ok; }
};

/// Endomorphisms are B-B-linear, tensors are B-central and the
/// reconstruction identity holds on every basis pair.
QuasibaseCheck verify_quasibase(const TensorSquare& ts, const QuasibaseSet& qb);

std::optional<QuasibaseSet> right_d2_quasibase(const TensorSquare& ts);
std::optional<QuasibaseSet> right_d2_quasibase(const Extension& ext);
std::optional<QuasibaseSet> left_d2_quasibase(const TensorSquare& ts);
std::optional<QuasibaseSet> left_d2_quasibase(const Extension& ext);

/// Coset projections with u_i = g_i^-1 (x) g_i (right) or t_i = g_i (x) g_i^-1
/// (left), for a normal subgroup.
QuasibaseSet transversal_quasibase(const GroupPair& gp, const TensorSquare& ts, Side side);
/// The B-B-projection A -> B onto the identity coset.
Matrix identity_coset_projection(const GroupPair& gp);

/// Tensor square as A-A-bimodule against A: the H-separability criterion.
std::optional<SummandFactorization> h_separability_test(const Extension& ext);

/// A|C from B|C and A|B. Throws AlgebraError on mismatch.
Extension compose_extensions(const Extension& inner, const Extension& outer);

/// Dual bases {f_j, w_j} of the left B-module A: y = sum_j iota(f_j(y)) w_j.
struct DualBasis {
  std::vector<Matrix> functionals;  // dim B x dim A, left B-linear
  std::vector<Matrix> elements;     // dim A x 1
};

/// p must be a B-B-bimodule projection A -> B with p o iota = id; throws
/// AlgebraError otherwise. rqb must be a verified right quasibase.
DualBasis split_projectivity_audit(const TensorSquare& ts, const QuasibaseSet& rqb,
                                   const Matrix& p);

}  // namespace depth2
