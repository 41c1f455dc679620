#include "depth2/bialgebroid.hpp"

#include <sstream>

namespace depth2 {

namespace {

Matrix ones(Field f, std::size_t n) { return Matrix::identity(f, n); }

Subspace b_invariants(const Bimodule& M, const Extension& ext) {
  std::vector<Matrix> blocks;
  for (std::size_t j = 0; j < ext.dim_B(); ++j) {
    const Matrix b = ext.image(j);
    blocks.push_back(M.left_by(b) - M.right_by(b));
  }
  return Subspace::kernel(vstack(blocks));
}

std::string basis_name(std::size_t i) { return "e" + std::to_string(i); }

// Columns (a * n + b) from per-b blocks whose column a is the image of e_a (x) e_b.
Matrix interleave(const std::vector<Matrix>& per_b, std::size_t rows, std::size_t n) {
  Matrix out(per_b.empty() ? Field() : per_b.front().field(), rows, n * per_b.size());
  const std::size_t m = per_b.size();
  for (std::size_t b = 0; b < m; ++b) {
    for (std::size_t a = 0; a < n; ++a) out.set_col(a * m + b, per_b[b].col(a));
  }
  return out;
}

// e_i (x) 1 (x) ... (x) 1 (x) e_j with `units` copies of 1 in the middle,
// as a map from A (x)_F A coordinates into the given tower level.
Matrix unit_insertion(const BialgebroidContext& c, std::size_t units) {
  const Field f = c.ext.field();
  const std::size_t n = c.ext.dim_A();
  const Matrix one = c.ext.A->unit();
  Matrix left = c.square.product.quotient.projection * kron(ones(f, n), one);  // e_i (x) 1
  if (units >= 2) left = c.triple.quotient.projection * kron(left, one);
  const TensorProduct& top = units == 1 ? c.triple : c.quadruple;
  return top.quotient.projection * kron(left, ones(f, n));
}

// x -> the class of the section representative's tensor-algebra product, used
// for the product formula check: u1 t1 (x) t2 u2 summed over representatives.
Matrix tee_product(const BialgebroidContext& c, const Matrix& t, const Matrix& u) {
  const Field f = c.ext.field();
  const std::size_t n = c.ext.dim_A();
  const FiniteAlgebra& A = *c.ext.A;
  const Matrix ct = c.representative(t), cu = c.representative(u);
  Matrix acc(f, n * n, 1);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      if (ct.entry_is_zero(i, j)) continue;
      for (std::size_t k = 0; k < n; ++k)
        for (std::size_t l = 0; l < n; ++l) {
          if (cu.entry_is_zero(k, l)) continue;
          acc.add_scaled(ct.at(i, j) * cu.at(k, l), kron(A.product(k, i), A.product(j, l)));
        }
    }
  return c.square_to_T(c.square.product.quotient.projection * acc);
}

// (id (x) g) on the tensor square, for g left B-linear.
Matrix apply_right_factor(const BialgebroidContext& c, const Matrix& g) {
  const auto& q = c.square.product.quotient;
  return q.projection * kron(ones(c.ext.field(), c.ext.dim_A()), g) * q.section;
}
Matrix apply_left_factor(const BialgebroidContext& c, const Matrix& g) {
  const auto& q = c.square.product.quotient;
  return q.projection * kron(g, ones(c.ext.field(), c.ext.dim_A())) * q.section;
}

RightBialgebroid assemble(std::shared_ptr<const BialgebroidContext> ctx, TripleTensorWitness w) {
  const BialgebroidContext& c = *ctx;
  const Field f = c.ext.field();
  const std::size_t dt = c.dim_T(), dr = c.dim_R();
  const Matrix& Tb = c.T.basis_columns();

  std::vector<std::vector<Matrix>> products(dt, std::vector<Matrix>(dt));
  for (std::size_t j = 0; j < dt; ++j) {
    const Matrix left_images = c.square_to_T(c.sandwich(c.representative(Matrix::unit_vector(f, dt, j))) * Tb);
    for (std::size_t i = 0; i < dt; ++i) products[i][j] = left_images.col(i);
  }
  const Matrix one = c.ext.A->unit();
  RightBialgebroid bgd;
  bgd.ctx = ctx;
  bgd.total = share(FiniteAlgebra::from_products(f, products, c.square_to_T(c.square.pure(one, one))));
  bgd.base = c.base;
  bgd.source = Matrix(f, dt, dr);
  bgd.target = Matrix(f, dt, dr);
  for (std::size_t r = 0; r < dr; ++r) {
    const Matrix a = c.R_to_A(Matrix::unit_vector(f, dr, r));
    bgd.source.set_col(r, c.square_to_T(c.square.pure(one, a)));
    bgd.target.set_col(r, c.square_to_T(c.square.pure(a, one)));
  }
  bgd.counit = c.A_to_R(c.square.mu * Tb);
  const Matrix split = c.triple_invariants.coordinates_of_columns(
      unit_insertion(c, 1) * c.square.product.quotient.section * Tb);
  bgd.coproduct = w.inverse * split;
  bgd.witness = std::move(w);
  return bgd;
}

}  // namespace

// ---- context ---------------------------------------------------------------

std::shared_ptr<const BialgebroidContext> BialgebroidContext::make(const Extension& ext) {
  auto c = std::make_shared<BialgebroidContext>();
  c->ext = ext;
  c->square = tensor_square(ext);
  c->T = b_centralized(c->square);
  c->R = centralizer(ext);
  c->base = share(c->R.as_algebra());
  const Matrix& Tb = c->T.basis_columns();
  std::vector<Matrix> left, right;
  for (std::size_t r = 0; r < c->R.dim(); ++r) {
    const Matrix a = c->R.inclusion().col(r);
    left.push_back(c->square_to_T(c->square.left(a) * Tb));
    right.push_back(c->square_to_T(c->square.right(a) * Tb));
  }
  c->T_RR = Bimodule::make(c->base, c->base, std::move(left), std::move(right));
  c->TT = tensor_over(c->T_RR, c->T_RR);
  c->TTT = tensor_over(c->TT.module, c->T_RR);
  const Bimodule a_ba = algebra_as_BA(ext);
  c->triple = tensor_over(c->square.as_AB(), a_ba);
  c->quadruple = tensor_over(restrict_right(c->triple.module, ext.morphism()), a_ba);
  c->triple_invariants = b_invariants(c->triple.module, ext);
  c->quadruple_invariants = b_invariants(c->quadruple.module, ext);
  return c;
}

Matrix BialgebroidContext::sandwich(const Matrix& c) const {
  const std::size_t n = ext.dim_A();
  Matrix out(ext.field(), square.dim(), square.dim());
  for (std::size_t k = 0; k < n; ++k)
    for (std::size_t l = 0; l < n; ++l)
      if (!c.entry_is_zero(k, l)) {
        out.add_scaled(c.at(k, l), square.left_basis(k) * square.right_basis(l));
      }
  return out;
}

Matrix BialgebroidContext::glue(const TensorProduct& next, const Bimodule& level, const Matrix& x,
                                const Matrix& u) const {
  const std::size_t n = ext.dim_A();
  const Matrix cu = representative(u);
  Matrix acc(ext.field(), next.dim(), x.cols());
  for (std::size_t k = 0; k < n; ++k)
    for (std::size_t l = 0; l < n; ++l)
      if (!cu.entry_is_zero(k, l)) {
        acc.add_scaled(cu.at(k, l), next.quotient.projection *
                                        kron(level.right_action[k] * x,
                                             Matrix::unit_vector(ext.field(), n, l)));
      }
  return acc;
}

// ---- witness -----------------------------------------------------------------

TripleTensorWitness triple_tensor_witness(const BialgebroidContext& c, const QuasibaseSet* rqb) {
  const Field f = c.ext.field();
  const std::size_t dt = c.dim_T();
  const Matrix& Tb = c.T.basis_columns();
  TripleTensorWitness w;

  std::vector<Matrix> per_u;
  for (std::size_t b = 0; b < dt; ++b) {
    per_u.push_back(c.glue(c.triple, c.square.as_AA(), Tb, Matrix::unit_vector(f, dt, b)));
  }
  w.forward_raw = interleave(per_u, c.triple.dim(), dt) * c.TT.quotient.section;
  w.forward = c.triple_invariants.coordinates_of_columns(w.forward_raw);

  const std::size_t dtt = c.TT.dim();
  std::vector<Matrix> per_v;
  const Bimodule level3 = c.triple.module;
  for (std::size_t v = 0; v < dt; ++v) {
    per_v.push_back(c.glue(c.quadruple, level3, w.forward_raw, Matrix::unit_vector(f, dt, v)));
  }
  w.forward4 = c.quadruple_invariants.coordinates_of_columns(
      interleave(per_v, c.quadruple.dim(), dtt) * c.TTT.quotient.section);

  if (w.forward4.rows() == w.forward4.cols()) {
    if (auto inv = w.forward4.inverse()) {
      w.inverse4 = *inv;
      w.bijective4 = true;
    }
  }

  if (rqb != nullptr) {
    // v -> sum_i (v1 (x) v2 gamma_i(v3)) (x) u_i
    const std::size_t n = c.ext.dim_A(), n2 = c.square.dim();
    const Matrix lifted = c.triple.quotient.section * c.triple_invariants.basis_columns();
    Matrix inv(f, dtt, c.triple_invariants.dim());
    for (const auto& [gamma, u] : rqb->pairs) {
      Matrix lambda(f, n2, n2 * n);
      for (std::size_t a = 0; a < n; ++a) {
        const Matrix act = c.square.right(gamma.col(a));
        for (std::size_t s = 0; s < n2; ++s) lambda.set_col(s * n + a, act.col(s));
      }
      const Matrix first = c.square_to_T(lambda * lifted);
      inv += c.TT.quotient.projection * kron(first, c.square_to_T(u));
    }
    if (!(w.forward * inv).is_identity() || !(inv * w.forward).is_identity()) {
      throw AlgebraError("triple_tensor_witness: quasibase inverse is not two-sided");
    }
    w.inverse = std::move(inv);
    w.bijective = true;
  } else if (w.forward.rows() == w.forward.cols()) {
    if (auto inv = w.forward.inverse()) {
      w.inverse = *inv;
      w.bijective = true;
    }
  }
  return w;
}

// ---- construction --------------------------------------------------------------

std::optional<RightBialgebroid> build_canonical(const Extension& ext) {
  return build_canonical(BialgebroidContext::make(ext));
}

std::optional<RightBialgebroid> build_canonical(std::shared_ptr<const BialgebroidContext> ctx) {
  auto w = triple_tensor_witness(*ctx);
  if (!w.bijective) return std::nullopt;
  return assemble(std::move(ctx), std::move(w));
}

RightBialgebroid build_T(const Extension& ext, const QuasibaseSet& rqb) {
  auto ctx = BialgebroidContext::make(ext);
  if (rqb.side != Side::Right) throw AlgebraError("build_T: a right quasibase is required");
  if (auto check = verify_quasibase(ctx->square, rqb); !check) {
    throw AlgebraError("build_T: quasibase fails verification: " + check.failure);
  }
  auto w = triple_tensor_witness(*ctx, &rqb);
  RightBialgebroid bgd = assemble(ctx, std::move(w));
  const BialgebroidContext& c = *ctx;
  Matrix formula(ext.field(), c.TT.dim(), c.dim_T());
  for (const auto& [gamma, u] : rqb.pairs) {
    const Matrix first = c.square_to_T(apply_right_factor(c, gamma) * c.T.basis_columns());
    formula += c.TT.quotient.projection * kron(first, c.square_to_T(u));
  }
  if (!(formula == bgd.coproduct)) {
    throw AlgebraError("build_T: quasibase coproduct differs from the witness coproduct");
  }
  bgd.quasibase = rqb;
  return bgd;
}

// ---- audit ---------------------------------------------------------------------

bool AxiomReport::all_pass() const {
  for (const auto& r : results)
    if (!r.pass) return false;
  return true;
}

const AxiomResult* AxiomReport::find(const std::string& name) const {
  for (const auto& r : results)
    if (r.name == name) return &r;
  return nullptr;
}

namespace {

class Audit {
 public:
  // pred(i) returns false on failure; the witness names the first failing index.
  template <class Pred>
  void sweep(const std::string& name, std::size_t count, const std::string& label, Pred pred) {
    AxiomResult r{name, true, {}};
    for (std::size_t i = 0; i < count; ++i) {
      if (!pred(i)) {
        r.pass = false;
        r.witness = label + "=" + basis_name(i);
        break;
      }
    }
    report.results.push_back(std::move(r));
  }
  template <class Pred>
  void sweep2(const std::string& name, std::size_t n1, std::size_t n2, const std::string& l1,
              const std::string& l2, Pred pred) {
    AxiomResult r{name, true, {}};
    for (std::size_t i = 0; i < n1 && r.pass; ++i) {
      for (std::size_t j = 0; j < n2; ++j) {
        if (!pred(i, j)) {
          r.pass = false;
          r.witness = "(" + l1 + "," + l2 + ")=(" + basis_name(i) + "," + basis_name(j) + ")";
          break;
        }
      }
    }
    report.results.push_back(std::move(r));
  }
  void single(const std::string& name, bool pass, std::string witness = {}) {
    report.results.push_back({name, pass, pass ? std::string() : std::move(witness)});
  }
  AxiomReport report;
};

// (x (x) y) -> x y' (x) ... Takeuchi-style product of two elements of T (x)_R T
// given by section representatives.
Matrix takeuchi(const RightBialgebroid& bgd, const Matrix& x, const Matrix& y) {
  const std::size_t dt = bgd.dim_T();
  const FiniteAlgebra& T = *bgd.total;
  Matrix acc(T.field(), dt * dt, 1);
  for (std::size_t p = 0; p < dt * dt; ++p) {
    if (x.entry_is_zero(p, 0)) continue;
    for (std::size_t q = 0; q < dt * dt; ++q) {
      if (y.entry_is_zero(q, 0)) continue;
      acc.add_scaled(x.at(p, 0) * y.at(q, 0),
                     kron(T.product(p / dt, q / dt), T.product(p % dt, q % dt)));
    }
  }
  return bgd.ctx->TT.quotient.projection * acc;
}

}  // namespace

AxiomReport axiom_audit(const RightBialgebroid& bgd) {
  const BialgebroidContext& c = *bgd.ctx;
  const FiniteAlgebra& T = *bgd.total;
  const FiniteAlgebra& R = *bgd.base;
  const Field f = T.field();
  const std::size_t dt = T.dim(), dr = R.dim();
  const Matrix one_A = c.ext.A->unit();
  const Matrix& S_TT = c.TT.quotient.section;
  const Matrix& P_TT = c.TT.quotient.projection;
  const Matrix& D = bgd.coproduct;
  auto eT = [&](std::size_t i) { return Matrix::unit_vector(f, dt, i); };
  auto eR = [&](std::size_t i) { return Matrix::unit_vector(f, dr, i); };
  auto s = [&](const Matrix& r) { return bgd.source * r; };
  auto t = [&](const Matrix& r) { return bgd.target * r; };
  Audit a;

  // Algebra structure of T.
  a.single("total_unit", T.unit() == c.square_to_T(c.square.pure(one_A, one_A)), "unit is not 1 (x) 1");
  {
    AxiomResult r{"total_associative", true, {}};
    for (std::size_t i = 0; i < dt && r.pass; ++i)
      for (std::size_t j = 0; j < dt && r.pass; ++j)
        for (std::size_t k = 0; k < dt; ++k) {
          if (!(T.multiply(T.product(i, j), eT(k)) == T.multiply(eT(i), T.product(j, k)))) {
            r.pass = false;
            r.witness = "(" + basis_name(i) + "," + basis_name(j) + "," + basis_name(k) + ")";
            break;
          }
        }
    a.report.results.push_back(r);
  }
  a.sweep2("product_formula", dt, dt, "t", "u",
           [&](std::size_t i, std::size_t j) { return T.product(i, j) == tee_product(c, eT(i), eT(j)); });
  {
    // The product only reads a representative of u; it must kill the balancing relations.
    const std::size_t n = c.ext.dim_A();
    const Matrix Ii = ones(f, n);
    AxiomResult r{"product_descends", true, {}};
    for (std::size_t b = 0; b < c.ext.dim_B() && r.pass; ++b) {
      const Matrix rel = kron(c.ext.A->right_mult_by(c.ext.image(b)), Ii) -
                         kron(Ii, c.ext.A->left_mult_by(c.ext.image(b)));
      for (std::size_t col = 0; col < rel.cols(); ++col) {
        if (!(c.sandwich(rel.col(col).reshape(n, n)) * c.T.basis_columns()).is_zero()) {
          r.pass = false;
          r.witness = "b=" + basis_name(b) + ", relation " + std::to_string(col);
          break;
        }
      }
    }
    a.report.results.push_back(r);
  }

  // Source and target.
  a.sweep("source_formula", dr, "r",
          [&](std::size_t r) { return s(eR(r)) == c.square_to_T(c.square.pure(one_A, c.R_to_A(eR(r)))); });
  a.sweep("target_formula", dr, "r",
          [&](std::size_t r) { return t(eR(r)) == c.square_to_T(c.square.pure(c.R_to_A(eR(r)), one_A)); });
  a.single("source_unital", s(R.unit()) == T.unit(), "s_R(1) != 1_T");
  a.sweep2("source_homomorphism", dr, dr, "r", "r'", [&](std::size_t i, std::size_t j) {
    return s(R.product(i, j)) == T.multiply(s(eR(i)), s(eR(j)));
  });
  a.single("target_unital", t(R.unit()) == T.unit(), "t_R(1) != 1_T");
  a.sweep2("target_antihomomorphism", dr, dr, "r", "r'", [&](std::size_t i, std::size_t j) {
    return t(R.product(i, j)) == T.multiply(t(eR(j)), t(eR(i)));
  });
  a.sweep2("source_target_commute", dr, dr, "r", "r'", [&](std::size_t i, std::size_t j) {
    const Matrix st = T.multiply(s(eR(i)), t(eR(j)));
    return st == T.multiply(t(eR(j)), s(eR(i))) &&
           st == c.square_to_T(c.square.pure(c.R_to_A(eR(j)), c.R_to_A(eR(i))));
  });

  // Counit.
  a.sweep("counit_formula", dt, "t", [&](std::size_t i) {
    return c.R_to_A(bgd.counit * eT(i)) == c.square.mu * c.T_to_square(eT(i));
  });
  a.single("counit_unital", bgd.counit * T.unit() == R.unit(), "epsilon(1_T) != 1_R");
  a.sweep2("counit_R_bilinear", dr, dt, "r", "t", [&](std::size_t r, std::size_t i) {
    const Matrix e = bgd.counit * eT(i);
    return bgd.counit * T.multiply(eT(i), t(eR(r))) == R.multiply(eR(r), e) &&
           bgd.counit * T.multiply(eT(i), s(eR(r))) == R.multiply(e, eR(r));
  });

  // Coproduct.
  a.single("witness_inverse",
           bgd.witness.bijective && (bgd.witness.forward * bgd.witness.inverse).is_identity() &&
               (bgd.witness.inverse * bgd.witness.forward).is_identity(),
           "forward and inverse are not mutually inverse");
  {
    const Matrix split = c.triple_invariants.coordinates_of_columns(
        unit_insertion(c, 1) * c.square.product.quotient.section * c.T.basis_columns());
    a.sweep("coproduct_witness", dt, "t",
            [&](std::size_t i) { return bgd.witness.forward * D.col(i) == split.col(i); });
  }
  if (bgd.quasibase) {
    Matrix formula(f, c.TT.dim(), dt);
    for (const auto& [gamma, u] : bgd.quasibase->pairs) {
      const Matrix first = c.square_to_T(apply_right_factor(c, gamma) * c.T.basis_columns());
      formula += P_TT * kron(first, c.square_to_T(u));
    }
    a.sweep("coproduct_quasibase_formula", dt, "t",
            [&](std::size_t i) { return formula.col(i) == D.col(i); });
  }
  a.single("coproduct_unital", D * T.unit() == bgd.pair(T.unit(), T.unit()),
           "Delta(1_T) != 1_T (x) 1_T");
  {
    Matrix left(f, dt, dt * dt), right(f, dt, dt * dt);
    for (std::size_t p = 0; p < dt; ++p) {
      const Matrix ep = bgd.counit * eT(p);
      for (std::size_t q = 0; q < dt; ++q) {
        left.set_col(p * dt + q, T.multiply(eT(q), t(ep)));              // epsilon(t1) . t2
        right.set_col(q * dt + p, T.multiply(eT(q), s(ep)));             // t1 . epsilon(t2)
      }
    }
    const Matrix lhs = left * S_TT * D, rhs = right * S_TT * D;
    a.sweep("counit_left", dt, "t", [&](std::size_t i) { return lhs.col(i) == eT(i); });
    a.sweep("counit_right", dt, "t", [&](std::size_t i) { return rhs.col(i) == eT(i); });
  }
  a.sweep2("coproduct_left_R_linear", dr, dt, "r", "t", [&](std::size_t r, std::size_t i) {
    return D * T.multiply(eT(i), t(eR(r))) == c.TT.module.left_action[r] * (D * eT(i));
  });
  a.sweep2("right_R_linearity", dr, dt, "r", "t", [&](std::size_t r, std::size_t i) {
    return D * T.multiply(eT(i), s(eR(r))) == c.TT.module.right_action[r] * (D * eT(i));
  });
  {
    const Matrix It = ones(f, dt);
    std::vector<Matrix> lhs, rhs;
    for (std::size_t r = 0; r < dr; ++r) {
      lhs.push_back(P_TT * kron(T.left_mult_by(s(eR(r))), It) * S_TT * D);
      rhs.push_back(P_TT * kron(It, T.left_mult_by(t(eR(r)))) * S_TT * D);
    }
    a.sweep2("times_R", dr, dt, "r", "t",
             [&](std::size_t r, std::size_t i) { return lhs[r].col(i) == rhs[r].col(i); });
  }
  {
    const Matrix lifted = S_TT * D;
    a.sweep2("multiplicativity", dt, dt, "t", "u", [&](std::size_t i, std::size_t j) {
      return D * T.product(i, j) == takeuchi(bgd, lifted.col(i), lifted.col(j));
    });
  }
  {
    const Matrix It = ones(f, dt);
    const Matrix& P3 = c.TTT.quotient.projection;
    const Matrix first = P3 * kron(D, It) * S_TT;                            // Delta (x) id
    const Matrix second = P3 * kron(P_TT, It) * kron(It, S_TT * D) * S_TT;  // id (x) Delta
    const Matrix lhs = first * D, rhs = second * D;
    a.sweep("coassociativity", dt, "t", [&](std::size_t i) { return lhs.col(i) == rhs.col(i); });
    const Matrix split4 = c.quadruple_invariants.coordinates_of_columns(
        unit_insertion(c, 2) * c.square.product.quotient.section * c.T.basis_columns());
    a.sweep("coassociativity_witness", dt, "t", [&](std::size_t i) {
      return bgd.witness.forward4 * lhs.col(i) == split4.col(i) &&
             bgd.witness.forward4 * rhs.col(i) == split4.col(i);
    });
  }
  return a.report;
}

// ---- dual bases --------------------------------------------------------------

RModuleDualBases r_module_dual_bases(const RightBialgebroid& bgd, const QuasibaseSet* lqb,
                                     const QuasibaseSet* rqb) {
  if (lqb == nullptr && rqb == nullptr) {
    throw AlgebraError("r_module_dual_bases: no quasibase given");
  }
  const BialgebroidContext& c = *bgd.ctx;
  const FiniteAlgebra& T = *bgd.total;
  const Matrix& Tb = c.T.basis_columns();
  RModuleDualBases out;
  if (lqb != nullptr) {
    if (lqb->side != Side::Left) throw AlgebraError("r_module_dual_bases: expected a left quasibase");
    RDualBasis db;
    Matrix acc(T.field(), T.dim(), T.dim());
    for (const auto& [beta, ti] : lqb->pairs) {
      db.elements.push_back(c.square_to_T(ti));
      db.functionals.push_back(c.A_to_R(c.square.mu * apply_left_factor(c, beta) * Tb));
      acc += T.left_mult_by(db.elements.back()) * bgd.source * db.functionals.back();
    }
    if (!acc.is_identity()) throw AlgebraError("r_module_dual_bases: T_R reconstruction fails");
    out.right = std::move(db);
  }
  if (rqb != nullptr) {
    if (rqb->side != Side::Right) throw AlgebraError("r_module_dual_bases: expected a right quasibase");
    RDualBasis db;
    Matrix acc(T.field(), T.dim(), T.dim());
    for (const auto& [gamma, u] : rqb->pairs) {
      db.elements.push_back(c.square_to_T(u));
      db.functionals.push_back(c.A_to_R(c.square.mu * apply_right_factor(c, gamma) * Tb));
      acc += T.left_mult_by(db.elements.back()) * bgd.target * db.functionals.back();
    }
    if (!acc.is_identity()) throw AlgebraError("r_module_dual_bases: _RT reconstruction fails");
    out.left = std::move(db);
  }
  return out;
}

// ---- commutative case -------------------------------------------------------------

FlipReport commutative_flip_check(const Extension& ext) {
  if (!ext.A->is_commutative()) {
    throw AlgebraError("commutative_flip_check: A is not commutative");
  }
  FlipReport rep;
  const auto bgd = build_canonical(ext);
  if (!bgd) {
    rep.witness = "witness map is not bijective";
    return rep;
  }
  const BialgebroidContext& c = *bgd->ctx;
  const FiniteAlgebra& T = *bgd->total;
  const FiniteAlgebra& A = *ext.A;
  const Field f = ext.field();
  const std::size_t n = A.dim(), dt = T.dim();
  const Matrix one = A.unit();
  auto fail = [&](bool& flag, bool ok, const std::string& why) {
    flag = ok;
    if (!ok && rep.witness.empty()) rep.witness = why;
  };

  bool iso = dt == c.square.dim();
  for (std::size_t i = 0; i < n && iso; ++i)
    for (std::size_t j = 0; j < n && iso; ++j)
      for (std::size_t k = 0; k < n && iso; ++k)
        for (std::size_t l = 0; l < n && iso; ++l) {
          const Matrix x = c.square_to_T(c.square.pure_basis(i, j));
          const Matrix y = c.square_to_T(c.square.pure_basis(k, l));
          iso = T.multiply(x, y) == c.square_to_T(c.square.pure(A.product(i, k), A.product(j, l)));
        }
  fail(rep.algebra_iso, iso, "T is not the tensor algebra");
  fail(rep.base_is_A, c.dim_R() == n, "R is smaller than A");

  bool sweedler = true;
  const Matrix insert = unit_insertion(c, 1);
  for (std::size_t i = 0; i < n && sweedler; ++i)
    for (std::size_t j = 0; j < n && sweedler; ++j) {
      const Matrix t = c.square_to_T(c.square.pure_basis(i, j));
      const Matrix expected = bgd->pair(c.square_to_T(c.square.pure(A.basis(i), one)),
                                        c.square_to_T(c.square.pure(one, A.basis(j))));
      const Matrix through = c.triple_invariants.coordinates_of_columns(
          insert * Matrix::unit_vector(f, n * n, i * n + j));
      sweedler = bgd->coproduct * t == expected && bgd->witness.forward * (bgd->coproduct * t) == through;
    }
  fail(rep.sweedler, sweedler, "coproduct is not x (x) 1 (x) y");
  fail(rep.counit_is_mu, c.R_to_A(bgd->counit) == c.square.mu * c.T.basis_columns(),
       "counit differs from multiplication");

  Matrix swap(f, n * n, n * n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) swap.set(j * n + i, i * n + j, Scalar::one(f));
  const auto& q = c.square.product.quotient;
  const Matrix flip_raw = q.projection * swap;
  if (!(flip_raw * q.section * q.projection == flip_raw)) {
    rep.witness = "flip is not well defined on the tensor square";
    return rep;
  }
  const Matrix tau = c.square_to_T(flip_raw * q.section * c.T.basis_columns());
  fail(rep.involution, (tau * tau).is_identity(), "tau^2 != id");
  bool anti = true;
  for (std::size_t i = 0; i < dt && anti; ++i)
    for (std::size_t j = 0; j < dt && anti; ++j) {
      anti = tau * T.product(i, j) ==
             T.multiply(tau * Matrix::unit_vector(f, dt, j), tau * Matrix::unit_vector(f, dt, i));
      if (!anti) rep.witness = "tau(tu) != tau(u)tau(t) at (" + basis_name(i) + "," + basis_name(j) + ")";
    }
  rep.anti_multiplicative = anti;
  return rep;
}

}  // namespace depth2
