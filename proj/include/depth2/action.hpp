#pragma once
// The right T-action on End of a module restricted to B, its invariants,
// and the anchor action of T on R.

#include <string>
#include <vector>

#include "depth2/bialgebroid.hpp"

namespace depth2 {

struct LeftModule {
  AlgebraPtr algebra;
  std::size_t dim = 0;
  std::vector<Matrix> action;  // one dim x dim matrix per basis element

  /// Throws AlgebraError unless the action is a unital representation.
  static LeftModule make(AlgebraPtr A, std::vector<Matrix> action);
  static LeftModule regular(const AlgebraPtr& A);
  Matrix act(const Matrix& a) const;
  Bimodule as_bimodule() const;
};

struct ActionChecks {
  bool unital = true;       // f <| 1_T = f
  bool associative = true;  // (f <| t) <| u = f <| tu
  bool measuring = true;    // (f <| t1) o (g <| t2) = (f o g) <| t
  bool identity_twisted = true;  // id <| t = id <| s_R(epsilon(t))
  std::string witness;
  bool pass() const { return unital && associative && measuring && identity_twisted; }
};

/// E = End of M restricted to B, with f <| t = t1 f(t2 -).
struct MeasuredEndos {
  RightBialgebroid bgd;
  LeftModule module;
  std::vector<Matrix> basis;   // echelon basis of E, dim M x dim M
  Subspace span;               // E inside End_F(M), row-major vectorised
  std::vector<Matrix> action;  // per basis element of T, on E coordinates
  ActionChecks checks;

  std::size_t dim() const { return basis.size(); }
  /// f <| t for f in E (as a matrix) and t in T coordinates.
  Matrix act(const Matrix& f, const Matrix& t) const;
  Matrix coordinates(const Matrix& f) const;
  Matrix element(const Matrix& coords) const;
};

/// Throws AlgebraError if M is not a module over ext's A.
MeasuredEndos t_action(const RightBialgebroid& bgd, const LeftModule& M);
MeasuredEndos t_action(const Extension& ext, const QuasibaseSet& rqb, const LeftModule& M);

struct InvariantReport {
  Subspace invariants;  // {phi : phi <| t = phi o M(epsilon(t))}, vectorised
  Subspace hom_A;       // End of M over A, vectorised
  bool equal = false;
  bool closed = false;  // invariants closed under composition and contain id
  std::string witness;
};
InvariantReport action_invariants(const MeasuredEndos& me);

struct AnchorAction {
  std::vector<Matrix> action;  // per basis element of T: dim R x dim R, r -> t1 r t2
  bool unital = true;          // r <| 1_T = r
  bool counit_at_one = true;   // 1_R <| t = epsilon(t)
  bool module = true;          // (r <| t) <| u = r <| tu
  bool module_algebra = true;  // (rs) <| t = (r <| t1)(s <| t2)
  std::string witness;
  bool pass() const { return unital && counit_at_one && module && module_algebra; }
};
AnchorAction anchor(const RightBialgebroid& bgd);

}  // namespace depth2
