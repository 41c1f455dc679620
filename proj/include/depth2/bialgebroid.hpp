#pragma once
// The right bialgebroid T = (A (x)_B A)^B over the centralizer R = C_A(B),
// the tensor-power isomorphisms used to pin its coproduct, and an axiom audit.

#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "depth2/bimodule.hpp"

namespace depth2 {

/// Shared spaces of one extension. Elements of T are coordinates in the
/// echelon basis of the B-central subspace of the tensor square; elements
/// of R are coordinates in the echelon basis of the centralizer.
struct BialgebroidContext {
  Extension ext;
  TensorSquare square;
  Subspace T;  // inside square coordinates
  SubalgebraData R;
  AlgebraPtr base;  // R with its echelon structure constants
  Bimodule T_RR;    // r . t . s = r t1 (x) t2 s
  TensorProduct TT;   // T (x)_R T
  TensorProduct TTT;  // (T (x)_R T) (x)_R T
  TensorProduct triple;     // (A (x)_B A) (x)_B A
  TensorProduct quadruple;  // triple (x)_B A
  Subspace triple_invariants;
  Subspace quadruple_invariants;

  static std::shared_ptr<const BialgebroidContext> make(const Extension& ext);

  std::size_t dim_T() const { return T.dim(); }
  std::size_t dim_R() const { return R.dim(); }
  Matrix T_to_square(const Matrix& t) const { return T.basis_columns() * t; }
  /// Throws std::domain_error if some column is not B-central.
  Matrix square_to_T(const Matrix& v) const { return T.coordinates_of_columns(v); }
  Matrix R_to_A(const Matrix& r) const { return R.inclusion() * r; }
  Matrix A_to_R(const Matrix& a) const { return R.basis.coordinates_of_columns(a); }
  /// Coefficients c_ij with t = sum c_ij e_i (x) e_j, from the section.
  Matrix representative(const Matrix& t) const { return square.representative(T_to_square(t)); }
  /// sum_kl c_kl e_k x e_l acting on the tensor square, for a coefficient matrix c.
  Matrix sandwich(const Matrix& c) const;
  /// Class of t (x) u in the next tensor power: t1 (x) t2 u1 (x) u2 and
  /// x1 (x) ... (x) xn u1 (x) u2 for x in the triple.
  Matrix glue(const TensorProduct& next, const Bimodule& level, const Matrix& x,
              const Matrix& u) const;
};

/// The maps T (x)_R T -> (A (x)_B A (x)_B A)^B and
/// T (x)_R T (x)_R T -> (A (x)_B A (x)_B A (x)_B A)^B.
struct TripleTensorWitness {
  Matrix forward;   // triple invariant coords x dim TT
  Matrix inverse;   // dim TT x triple invariant coords
  Matrix forward4;  // quadruple invariant coords x dim TTT
  Matrix inverse4;
  Matrix forward_raw;  // triple coords x dim TT, before restricting to invariants
  bool bijective = false;
  bool bijective4 = false;
};

/// forward and forward4 are always computed; inverse from the matrix when
/// bijective. With a right quasibase the inverse is instead given by
/// v -> sum_i (v1 (x) v2 gamma_i(v3)) (x) u_i and verified to be two-sided.
TripleTensorWitness triple_tensor_witness(const BialgebroidContext& ctx,
                                          const QuasibaseSet* rqb = nullptr);

struct RightBialgebroid {
  std::shared_ptr<const BialgebroidContext> ctx;
  AlgebraPtr total;  // T
  AlgebraPtr base;   // R
  Matrix source;     // dim T x dim R
  Matrix target;     // dim T x dim R
  Matrix counit;     // dim R x dim T
  Matrix coproduct;  // dim TT x dim T
  TripleTensorWitness witness;
  std::optional<QuasibaseSet> quasibase;  // present when built from one

  std::size_t dim_T() const { return total->dim(); }
  Matrix one_T() const { return total->unit(); }
  /// Class of x (x) y in T (x)_R T.
  Matrix pair(const Matrix& x, const Matrix& y) const { return ctx->TT.pure(x, y); }
};

/// Builds T with the coproduct pulled back through the witness inverse
/// applied to t1 (x) 1 (x) t2. Absent when the witness is not bijective.
std::optional<RightBialgebroid> build_canonical(const Extension& ext);
std::optional<RightBialgebroid> build_canonical(std::shared_ptr<const BialgebroidContext> ctx);

/// Same structure maps, with the coproduct additionally cross-checked
/// against sum_i (t1 (x) gamma_i(t2)) (x) u_i. Throws AlgebraError if rqb
/// fails verification or the two coproducts differ.
RightBialgebroid build_T(const Extension& ext, const QuasibaseSet& rqb);

struct AxiomResult {
  std::string name;
  bool pass = true;
  std::string witness;
};

struct AxiomReport {
  std::vector<AxiomResult> results;
  bool all_pass() const;
  const AxiomResult* find(const std::string& name) const;
};

/// Every right bialgebroid identity on basis elements, plus checks pinning
/// each stored structure map to its defining formula.
AxiomReport axiom_audit(const RightBialgebroid& bgd);

/// Dual bases: t = sum_i t_i . f_i(t) for T_R from a left quasibase, and
/// t = sum_i g_i(t) . u_i for _RT from a right quasibase.
struct RDualBasis {
  std::vector<Matrix> elements;     // T coordinates
  std::vector<Matrix> functionals;  // dim R x dim T
};
struct RModuleDualBases {
  std::optional<RDualBasis> right;  // T_R
  std::optional<RDualBasis> left;   // _RT
};
/// Throws AlgebraError when neither quasibase is given or reconstruction fails.
RModuleDualBases r_module_dual_bases(const RightBialgebroid& bgd, const QuasibaseSet* lqb,
                                     const QuasibaseSet* rqb);

struct FlipReport {
  bool algebra_iso = false;      // T = A (x)_B A with the opposite-twisted product
  bool base_is_A = false;
  bool sweedler = false;         // Delta(x (x) y) = (x (x) 1) (x) (1 (x) y)
  bool counit_is_mu = false;
  bool involution = false;       // tau^2 = id
  bool anti_multiplicative = false;
  std::string witness;
  bool pass() const {
    return algebra_iso && base_is_A && sweedler && counit_is_mu && involution &&
           anti_multiplicative;
  }
};
/// Requires A commutative with iota(B) central. Throws AlgebraError otherwise.
FlipReport commutative_flip_check(const Extension& ext);

}  // namespace depth2
