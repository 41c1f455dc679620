#include "depth2/galois.hpp"

namespace depth2 {

namespace {

std::string name(std::size_t i) { return "e" + std::to_string(i); }

Matrix vec(const Matrix& m) { return m.reshape(m.size(), 1); }

Matrix one_T(const BialgebroidContext& c) {
  const Matrix one = c.ext.A->unit();
  return c.square_to_T(c.square.pure(one, one));
}

}  // namespace

GaloisSpaces GaloisSpaces::make(std::shared_ptr<const BialgebroidContext> ctx) {
  const BialgebroidContext& c = *ctx;
  const Field f = c.ext.field();
  const std::size_t n = c.ext.dim_A(), dt = c.dim_T();
  GaloisSpaces g;
  g.ctx = ctx;
  const AlgebraMorphism incl{c.base, c.ext.A, c.R.inclusion()};
  g.A_R = restrict_right(Bimodule::regular(c.ext.A), incl);
  g.AT = tensor_over(g.A_R, c.T_RR);
  g.ATT = tensor_over(g.AT.module, c.T_RR);
  Matrix raw(f, c.square.dim(), n * dt);
  const Matrix& Tb = c.T.basis_columns();
  for (std::size_t a = 0; a < n; ++a) {
    const Matrix block = c.square.left_basis(a) * Tb;
    for (std::size_t t = 0; t < dt; ++t) raw.set_col(a * dt + t, block.col(t));
  }
  g.ice = raw * g.AT.quotient.section;
  if (g.ice.rows() == g.ice.cols()) g.ice_inverse = g.ice.inverse();
  g.ice_bijective = g.ice_inverse.has_value();
  return g;
}

Matrix GaloisSpaces::trivial_coaction() const {
  const std::size_t n = ctx->ext.dim_A();
  return AT.quotient.projection * kron(Matrix::identity(ctx->ext.field(), n), one_T(*ctx));
}

// ---- coaction and Galois map ------------------------------------------------------

Matrix coaction(const GaloisSpaces& g, const QuasibaseSet& rqb) {
  const BialgebroidContext& c = *g.ctx;
  Matrix delta(c.ext.field(), g.AT.dim(), c.ext.dim_A());
  for (const auto& [gamma, u] : rqb.pairs) {
    delta += g.AT.quotient.projection * kron(gamma, c.square_to_T(u));
  }
  if (!(delta * c.ext.A->unit() == g.pure(c.ext.A->unit(), one_T(c)))) {
    throw AlgebraError("coaction: delta(1) != 1 (x) 1_T");
  }
  return delta;
}

std::optional<Matrix> canonical_coaction(const GaloisSpaces& g) {
  if (!g.ice_bijective) return std::nullopt;
  const BialgebroidContext& c = *g.ctx;
  const std::size_t n = c.ext.dim_A();
  const Matrix one_tensor = c.square.product.quotient.projection *
                            kron(c.ext.A->unit(), Matrix::identity(c.ext.field(), n));
  return *g.ice_inverse * one_tensor;
}

GaloisData galois_map(const Extension& ext, const QuasibaseSet& rqb) {
  auto ctx = BialgebroidContext::make(ext);
  if (auto check = verify_quasibase(ctx->square, rqb); !check || rqb.side != Side::Right) {
    throw AlgebraError("galois_map: a verified right quasibase is required");
  }
  GaloisData d{GaloisSpaces::make(ctx), {}, {}, {}, false, {}};
  const BialgebroidContext& c = *ctx;
  const FiniteAlgebra& A = *ext.A;
  const Field f = ext.field();
  const std::size_t n = A.dim();
  d.coaction = coaction(d.spaces, rqb);
  Matrix raw(f, d.spaces.AT.dim(), n * n);
  for (const auto& [gamma, u] : rqb.pairs) {
    Matrix m(f, n, n * n);
    for (std::size_t x = 0; x < n; ++x) {
      const Matrix block = A.left_mult(x) * gamma;
      for (std::size_t y = 0; y < n; ++y) m.set_col(x * n + y, block.col(y));
    }
    raw += d.spaces.AT.quotient.projection * kron(m, c.square_to_T(u));
  }
  const auto& q = c.square.product.quotient;
  if (!(raw * q.section * q.projection == raw)) {
    throw AlgebraError("galois_map: beta does not descend to the tensor square");
  }
  d.beta = raw * q.section;
  d.beta_inverse = d.spaces.ice;
  const bool square = d.beta.rows() == d.beta.cols();
  const bool full_rank = square && d.beta.rank() == d.beta.rows();
  const bool right_inv = square && (d.beta * d.beta_inverse).is_identity();
  const bool left_inv = square && (d.beta_inverse * d.beta).is_identity();
  d.bijective = full_rank && right_inv && left_inv;
  if (!d.bijective) {
    d.witness = !square ? "dimensions differ" : !full_rank ? "rank deficient"
                : !right_inv ? "beta o inverse != id" : "inverse o beta != id";
  }
  return d;
}

// ---- coinvariants ---------------------------------------------------------------------

CoinvariantReport coinvariants(const GaloisSpaces& g, const Matrix& delta) {
  const BialgebroidContext& c = *g.ctx;
  const Extension& ext = c.ext;
  CoinvariantReport rep;
  rep.coinvariants = Subspace::kernel(delta - g.trivial_coaction());
  const Subspace B = ext.image_subspace();
  rep.contains_B = B.is_subspace_of(rep.coinvariants);
  rep.equals_B = rep.contains_B && rep.coinvariants.is_subspace_of(B);
  if (!rep.equals_B) {
    if (auto w = rep.coinvariants.witness_outside(B)) rep.witness = "coinvariant outside B: " + w->transpose().to_string();
    else if (auto w2 = B.witness_outside(rep.coinvariants)) rep.witness = "B element not coinvariant: " + w2->transpose().to_string();
  }
  const Matrix one = ext.A->unit();
  for (std::size_t k = 0; k < rep.coinvariants.dim() && rep.flat_identity; ++k) {
    const Matrix x = rep.coinvariants.basis_vector(k);
    rep.flat_identity = c.square.pure(one, x) == c.square.pure(x, one);
  }
  for (std::size_t r = 0; r < c.dim_R() && rep.centralizer_commutes; ++r)
    for (std::size_t b = 0; b < ext.dim_B() && rep.centralizer_commutes; ++b) {
      const Matrix rv = c.R.inclusion().col(r), bv = ext.image(b);
      rep.centralizer_commutes = ext.A->multiply(rv, bv) == ext.A->multiply(bv, rv);
    }
  return rep;
}

// ---- balanced --------------------------------------------------------------------------

BalancedReport balanced_audit(const Extension& ext) {
  const Field f = ext.field();
  const FiniteAlgebra& A = *ext.A;
  const std::size_t n = A.dim();
  std::vector<Matrix> right;
  for (std::size_t j = 0; j < ext.dim_B(); ++j) right.push_back(A.right_mult_by(ext.image(j)));
  const Bimodule A_B = Bimodule::make(share(FiniteAlgebra::ground(f)), ext.B,
                                      {Matrix::identity(f, n)}, right);
  const auto E = hom_space(A_B, A_B);
  BalancedReport rep;
  rep.dim_E = E.size();
  const Matrix I = Matrix::identity(f, n);
  std::vector<Matrix> blocks;
  for (const auto& e : E) blocks.push_back(kron(I, e.transpose()) - kron(e, I));
  const Subspace commutant = Subspace::kernel(vstack(blocks));
  std::vector<Matrix> rho;
  for (const auto& r : right) rho.push_back(vec(r));
  const Subspace rhoB = Subspace::span(f, n * n, rho);
  rep.dim_EndEA = commutant.dim();
  rep.dim_rho_B = rhoB.dim();
  rep.balanced = commutant == rhoB;
  if (!rep.balanced) {
    if (auto w = commutant.witness_outside(rhoB)) {
      rep.witness = "E-linear map not a right multiplication: " + w->reshape(n, n).to_string();
    }
  }
  return rep;
}

// ---- comodule algebra ----------------------------------------------------------------------

ComoduleReport comodule_algebra_audit(const RightBialgebroid& bgd, const GaloisSpaces& g,
                                      const Matrix& delta) {
  const BialgebroidContext& c = *g.ctx;
  const FiniteAlgebra& A = *c.ext.A;
  const FiniteAlgebra& T = *bgd.total;
  const Field f = A.field();
  const std::size_t n = A.dim(), dt = T.dim(), dr = c.dim_R();
  const Matrix& S_AT = g.AT.quotient.section;
  const Matrix& P_AT = g.AT.quotient.projection;
  const Matrix It = Matrix::identity(f, dt), Ia = Matrix::identity(f, n);
  ComoduleReport rep;
  auto note = [&](const std::string& w) {
    rep.witness += (rep.witness.empty() ? "" : "; ") + w;
  };

  try {
    AlgebraMorphism::make(c.base, c.ext.A, c.R.inclusion());
    rep.algebra_map = true;
  } catch (const AlgebraError& e) {
    note(std::string("(1) ") + e.what());
  }

  {
    Matrix eps(f, n, n * dt);
    for (std::size_t a = 0; a < n; ++a)
      for (std::size_t t = 0; t < dt; ++t)
        eps.set_col(a * dt + t, A.multiply(A.basis(a), c.R_to_A(bgd.counit.col(t))));
    const Matrix back = eps * S_AT * delta;
    rep.counital = back.is_identity();
    if (!rep.counital) {
      for (std::size_t a = 0; a < n; ++a)
        if (!(back.col(a) == A.basis(a))) {
          note("(2) a0 epsilon(a1) != a at a=" + name(a));
          break;
        }
    }
  }

  {
    const Matrix& P_ATT = g.ATT.quotient.projection;
    const Matrix& S_TT = c.TT.quotient.section;
    const Matrix lhs = P_ATT * kron(delta, It) * S_AT * delta;
    const Matrix rhs = P_ATT * kron(P_AT, It) * kron(Ia, S_TT * bgd.coproduct) * S_AT * delta;
    // a (x) t (x) u -> a t1 (x) t2 u1 (x) u2
    const Matrix phi = bgd.witness.forward_raw * c.TT.quotient.projection;
    std::vector<Matrix> blocks;
    for (std::size_t a = 0; a < n; ++a) blocks.push_back(c.triple.module.left_action[a] * phi);
    const Matrix iso = hstack(blocks) * kron(S_AT, It) * g.ATT.quotient.section;
    const Matrix il = iso * lhs, ir = iso * rhs;
    rep.coassociative = true;
    for (std::size_t a = 0; a < n && rep.coassociative; ++a) {
      if (!(lhs.col(a) == rhs.col(a)) || !(il.col(a) == ir.col(a))) {
        rep.coassociative = false;
        note("(2) coassociativity fails at a=" + name(a));
      }
    }
  }

  rep.unital = delta * A.unit() == g.pure(A.unit(), one_T(c));
  if (!rep.unital) note("(3) delta(1) != 1 (x) 1_T");

  rep.r_balanced = true;
  for (std::size_t r = 0; r < dr && rep.r_balanced; ++r) {
    const Matrix rv = c.R.inclusion().col(r);
    const Matrix lhs = g.AT.module.left_by(rv) * delta;
    const Matrix rhs =
        P_AT * kron(Ia, T.left_mult_by(bgd.target * Matrix::unit_vector(f, dr, r))) * S_AT * delta;
    for (std::size_t a = 0; a < n; ++a) {
      if (!(lhs.col(a) == rhs.col(a))) {
        rep.r_balanced = false;
        note("(4) fails at (r,a)=(" + name(r) + "," + name(a) + ")");
        break;
      }
    }
  }

  rep.multiplicative = true;
  const Matrix lifted = S_AT * delta;
  for (std::size_t x = 0; x < n && rep.multiplicative; ++x)
    for (std::size_t y = 0; y < n && rep.multiplicative; ++y) {
      Matrix acc(f, n * dt, 1);
      for (std::size_t p = 0; p < n * dt; ++p) {
        if (lifted.entry_is_zero(p, x)) continue;
        for (std::size_t q = 0; q < n * dt; ++q) {
          if (lifted.entry_is_zero(q, y)) continue;
          acc.add_scaled(lifted.at(p, x) * lifted.at(q, y),
                         kron(A.product(p / dt, q / dt), T.product(p % dt, q % dt)));
        }
      }
      if (!(P_AT * acc == delta * A.product(x, y))) {
        rep.multiplicative = false;
        note("(5) delta(xy) differs at (x,y)=(" + name(x) + "," + name(y) + ")");
      }
    }
  return rep;
}

// ---- audits --------------------------------------------------------------------------------

bool rt_projective(const BialgebroidContext& ctx) {
  const Bimodule T = Bimodule::left_module(ctx.base, ctx.T_RR.left_action);
  const Bimodule R = forget_right(Bimodule::regular(ctx.base));
  return coproduct_summand_test(T, R).has_value();
}

MainTheoremReport main_theorem_audit(const Extension& ext) {
  return main_theorem_audit(BialgebroidContext::make(ext));
}

MainTheoremReport main_theorem_audit(std::shared_ptr<const BialgebroidContext> ctx) {
  const Extension& ext = ctx->ext;
  MainTheoremReport rep;
  rep.right_d2 = right_d2_quasibase(ctx->square).has_value();
  rep.left_d2 = left_d2_quasibase(ctx->square).has_value();
  rep.balanced = balanced_audit(ext).balanced;
  rep.lhs = rep.right_d2 && rep.balanced;

  rep.rt_projective = rt_projective(*ctx);
  const GaloisSpaces g = GaloisSpaces::make(ctx);
  rep.galois_bijective = g.ice_bijective;
  const auto bgd = build_canonical(ctx);
  rep.bialgebroid_built = bgd.has_value();
  if (!bgd) rep.notes.push_back("T (x)_R T -> (A (x)_B A (x)_B A)^B is not bijective");
  if (bgd) {
    const auto audit = axiom_audit(*bgd);
    rep.axioms_pass = audit.all_pass();
    for (const auto& r : audit.results)
      if (!r.pass) rep.notes.push_back("axiom " + r.name + " fails: " + r.witness);
  }
  if (!g.ice_bijective) rep.notes.push_back("a (x) t -> a t1 (x) t2 is not bijective");
  if (auto delta = canonical_coaction(g)) {
    const auto co = coinvariants(g, *delta);
    rep.coinvariants_equal_B = co.equals_B;
    if (!co.equals_B) rep.notes.push_back(co.witness);
    if (bgd) {
      rep.comodule = comodule_algebra_audit(*bgd, g, *delta);
      if (!rep.comodule->pass()) rep.notes.push_back("comodule: " + rep.comodule->witness);
    }
  }
  rep.rhs = rep.bialgebroid_built && rep.axioms_pass && rep.rt_projective && rep.galois_bijective &&
            rep.coinvariants_equal_B && rep.comodule && rep.comodule->pass();
  rep.consistent = rep.lhs == rep.rhs;
  return rep;
}

CorollaryReport d2_iff_corollary_audit(const Extension& ext) {
  return d2_iff_corollary_audit(*BialgebroidContext::make(ext));
}

CorollaryReport d2_iff_corollary_audit(const BialgebroidContext& ctx) {
  CorollaryReport rep;
  // GaloisSpaces keeps a shared handle; the alias does not own ctx.
  const std::shared_ptr<const BialgebroidContext> handle(std::shared_ptr<void>(), &ctx);
  rep.ice_bijective = GaloisSpaces::make(handle).ice_bijective;
  rep.rt_projective = rt_projective(ctx);
  rep.corollary_verdict = rep.ice_bijective && rep.rt_projective;
  rep.quasibase_verdict = right_d2_quasibase(ctx.square).has_value();
  rep.consistent = rep.corollary_verdict == rep.quasibase_verdict;
  return rep;
}

}  // namespace depth2
