#pragma once
// The coaction of T on A, the Galois map, coinvariants, the balanced
// condition, the comodule-algebra conditions and the two equivalence audits.

#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "depth2/bialgebroid.hpp"

namespace depth2 {

/// A (x)_R T and (A (x)_R T) (x)_R T, with the map a (x) t -> a t1 (x) t2
/// into the tensor square. Needs only the spaces, not a coproduct.
struct GaloisSpaces {
  std::shared_ptr<const BialgebroidContext> ctx;
  Bimodule A_R;       // A as an A-R-bimodule
  TensorProduct AT;   // coordinates a * dim T + t
  TensorProduct ATT;  // coordinates (A (x)_R T index) * dim T + t
  Matrix ice;         // dim square x dim AT
  bool ice_bijective = false;
  std::optional<Matrix> ice_inverse;

  static GaloisSpaces make(std::shared_ptr<const BialgebroidContext> ctx);
  Matrix pure(const Matrix& a, const Matrix& t) const { return AT.pure(a, t); }
  /// a -> a (x) 1_T
  Matrix trivial_coaction() const;
};

struct GaloisData {
  GaloisSpaces spaces;
  Matrix coaction;     // dim AT x dim A
  Matrix beta;         // dim AT x dim square
  Matrix beta_inverse; // the ice map
  bool bijective = false;
  std::string witness;
};

/// delta(a) = sum_i gamma_i(a) (x) u_i, with delta(1) = 1 (x) 1_T verified
/// (throws AlgebraError otherwise).
Matrix coaction(const GaloisSpaces& g, const QuasibaseSet& rqb);
/// beta(x (x) y) = sum_i x gamma_i(y) (x) u_i and its candidate inverse;
/// bijectivity needs exact rank and both round trips.
GaloisData galois_map(const Extension& ext, const QuasibaseSet& rqb);

/// Without a quasibase: the inverse of the ice map applied to 1 (x) a.
/// Absent when the ice map is not bijective.
std::optional<Matrix> canonical_coaction(const GaloisSpaces& g);

struct CoinvariantReport {
  Subspace coinvariants;  // inside A
  bool contains_B = false;
  bool equals_B = false;
  bool flat_identity = true;  // 1 (x) x = x (x) 1 for every coinvariant x
  bool centralizer_commutes = true;
  std::string witness;
};
CoinvariantReport coinvariants(const GaloisSpaces& g, const Matrix& delta);

struct BalancedReport {
  bool balanced = false;
  std::size_t dim_E = 0;      // End A_B
  std::size_t dim_EndEA = 0;  // endomorphisms commuting with E
  std::size_t dim_rho_B = 0;
  std::string witness;
};
BalancedReport balanced_audit(const Extension& ext);

struct ComoduleReport {
  bool algebra_map = false;   // (1) R -> A
  bool counital = false;      // (2) a0 epsilon(a1) = a
  bool coassociative = false; // (2) via a (x) t (x) u -> a t1 (x) t2 u1 (x) u2
  bool unital = false;        // (3)
  bool r_balanced = false;    // (4) r a0 (x) a1 = a0 (x) t_R(r) a1
  bool multiplicative = false;  // (5)
  std::string witness;
  bool pass() const {
    return algebra_map && counital && coassociative && unital && r_balanced && multiplicative;
  }
};
ComoduleReport comodule_algebra_audit(const RightBialgebroid& bgd, const GaloisSpaces& g,
                                      const Matrix& delta);

struct MainTheoremReport {
  // left-hand side
  bool right_d2 = false;
  bool left_d2 = false;
  bool balanced = false;
  // right-hand side, all computed without a quasibase
  bool bialgebroid_built = false;
  bool axioms_pass = false;
  bool rt_projective = false;
  bool galois_bijective = false;
  bool coinvariants_equal_B = false;
  std::optional<ComoduleReport> comodule;
  bool lhs = false;
  bool rhs = false;
  bool consistent = false;
  std::vector<std::string> notes;
};
MainTheoremReport main_theorem_audit(const Extension& ext);
MainTheoremReport main_theorem_audit(std::shared_ptr<const BialgebroidContext> ctx);

struct CorollaryReport {
  bool ice_bijective = false;
  bool rt_projective = false;
  bool corollary_verdict = false;
  bool quasibase_verdict = false;
  bool consistent = false;
};
/// Decides right D2 from the ice map and the projectivity of T over R,
/// then compares with right_d2_quasibase.
CorollaryReport d2_iff_corollary_audit(const Extension& ext);
CorollaryReport d2_iff_corollary_audit(const BialgebroidContext& ctx);

/// T as a left R-module is a summand of a free module.
bool rt_projective(const BialgebroidContext& ctx);

}  // namespace depth2
