#include "depth2/bimodule.hpp"

namespace depth2 {

namespace {

bool same_algebra(const AlgebraPtr& a, const AlgebraPtr& b) { return a == b || *a == *b; }

Matrix combine(const std::vector<Matrix>& basis_actions, const Matrix& coeffs, std::size_t dim,
               Field f) {
  Matrix out(f, dim, dim);
  for (std::size_t i = 0; i < basis_actions.size(); ++i) {
    const Scalar x = coeffs.at(i, 0);
    if (!x.is_zero()) out.add_scaled(x, basis_actions[i]);
  }
  return out;
}

Matrix vec(const Matrix& m) { return m.reshape(m.size(), 1); }

// P * K * S where S has a single unit entry per column (a quotient section).
Matrix induced(const QuotientStructure& q, const Matrix& k) {
  return q.projection * k.transpose().select_rows(q.kept).transpose();
}

}  // namespace

// ---- Bimodule -----------------------------------------------------------

Bimodule Bimodule::make(AlgebraPtr P, AlgebraPtr Q, std::vector<Matrix> left,
                        std::vector<Matrix> right) {
  if (left.size() != P->dim() || right.size() != Q->dim()) {
    throw AlgebraError("bimodule: one action matrix per basis element required");
  }
  const std::size_t d = left.empty() ? 0 : left.front().rows();
  for (const auto& m : left) {
    if (m.rows() != d || m.cols() != d) throw AlgebraError("bimodule: action matrix shape");
  }
  for (const auto& m : right) {
    if (m.rows() != d || m.cols() != d) throw AlgebraError("bimodule: action matrix shape");
  }
  Bimodule M{std::move(P), std::move(Q), d, std::move(left), std::move(right)};
  const Field f = M.field();
  if (!M.left_by(M.left_algebra->unit()).is_identity()) {
    throw AlgebraError("bimodule: left action is not unital");
  }
  if (!M.right_by(M.right_algebra->unit()).is_identity()) {
    throw AlgebraError("bimodule: right action is not unital");
  }
  for (std::size_t i = 0; i < M.left_algebra->dim(); ++i) {
    for (std::size_t j = 0; j < M.left_algebra->dim(); ++j) {
      if (!(M.left_action[i] * M.left_action[j] == M.left_by(M.left_algebra->product(i, j)))) {
        throw AlgebraError("bimodule: left action is not a representation");
      }
    }
  }
  for (std::size_t i = 0; i < M.right_algebra->dim(); ++i) {
    for (std::size_t j = 0; j < M.right_algebra->dim(); ++j) {
      if (!(M.right_action[j] * M.right_action[i] ==
            M.right_by(M.right_algebra->product(i, j)))) {
        throw AlgebraError("bimodule: right action is not an anti-representation");
      }
    }
  }
  for (const auto& l : M.left_action) {
    for (const auto& r : M.right_action) {
      if (!(l * r == r * l)) throw AlgebraError("bimodule: actions do not commute");
    }
  }
  (void)f;
  return M;
}

Bimodule Bimodule::regular(const AlgebraPtr& A) {
  Bimodule M{A, A, A->dim(), {}, {}};
  for (std::size_t i = 0; i < A->dim(); ++i) {
    M.left_action.push_back(A->left_mult(i));
    M.right_action.push_back(A->right_mult(i));
  }
  return M;
}

Bimodule Bimodule::left_module(const AlgebraPtr& P, std::vector<Matrix> actions) {
  const std::size_t d = actions.empty() ? 0 : actions.front().rows();
  return make(P, share(FiniteAlgebra::ground(P->field())), std::move(actions),
              {Matrix::identity(P->field(), d)});
}

Matrix Bimodule::left_by(const Matrix& p) const { return combine(left_action, p, dim, field()); }
Matrix Bimodule::right_by(const Matrix& q) const { return combine(right_action, q, dim, field()); }

Bimodule restrict_left(const Bimodule& M, const AlgebraMorphism& phi) {
  if (!same_algebra(phi.target, M.left_algebra)) {
    throw AlgebraError("restrict_left: morphism target is not the left algebra");
  }
  Bimodule out{phi.source, M.right_algebra, M.dim, {}, M.right_action};
  for (std::size_t i = 0; i < phi.source->dim(); ++i) {
    out.left_action.push_back(M.left_by(phi.matrix.col(i)));
  }
  return out;
}

Bimodule restrict_right(const Bimodule& M, const AlgebraMorphism& psi) {
  if (!same_algebra(psi.target, M.right_algebra)) {
    throw AlgebraError("restrict_right: morphism target is not the right algebra");
  }
  Bimodule out{M.left_algebra, psi.source, M.dim, M.left_action, {}};
  for (std::size_t i = 0; i < psi.source->dim(); ++i) {
    out.right_action.push_back(M.right_by(psi.matrix.col(i)));
  }
  return out;
}

Bimodule forget_right(const Bimodule& M) {
  return {M.left_algebra, share(FiniteAlgebra::ground(M.field())), M.dim, M.left_action,
          {Matrix::identity(M.field(), M.dim)}};
}

Bimodule direct_sum(const Bimodule& M, const Bimodule& N) {
  if (!same_algebra(M.left_algebra, N.left_algebra) ||
      !same_algebra(M.right_algebra, N.right_algebra)) {
    throw AlgebraError("direct_sum: algebra mismatch");
  }
  const Field f = M.field();
  auto diag = [&](const Matrix& a, const Matrix& b) {
    return vstack({hstack({a, Matrix(f, M.dim, N.dim)}), hstack({Matrix(f, N.dim, M.dim), b})});
  };
  Bimodule out{M.left_algebra, M.right_algebra, M.dim + N.dim, {}, {}};
  for (std::size_t i = 0; i < M.left_action.size(); ++i) {
    out.left_action.push_back(diag(M.left_action[i], N.left_action[i]));
  }
  for (std::size_t i = 0; i < M.right_action.size(); ++i) {
    out.right_action.push_back(diag(M.right_action[i], N.right_action[i]));
  }
  return out;
}

// ---- tensor products -----------------------------------------------------

TensorProduct tensor_over(const Bimodule& M, const Bimodule& N) {
  if (!same_algebra(M.right_algebra, N.left_algebra)) {
    throw AlgebraError("tensor_over: right algebra of M differs from left algebra of N");
  }
  const Field f = M.field();
  const std::size_t dm = M.dim, dn = N.dim, total = dm * dn;
  const Matrix im = Matrix::identity(f, dm), in = Matrix::identity(f, dn);
  Subspace relations(f, total);
  if (total > 0) {
    std::vector<Matrix> blocks;
    for (std::size_t j = 0; j < M.right_algebra->dim(); ++j) {
      blocks.push_back(kron(M.right_action[j], in) - kron(im, N.left_action[j]));
    }
    relations = Subspace::column_span(hstack(blocks));
  }
  TensorProduct tp;
  tp.left_dim = dm;
  tp.right_dim = dn;
  tp.quotient = quotient_structure(total, relations);
  tp.module = {M.left_algebra, N.right_algebra, tp.quotient.dim, {}, {}};
  for (const auto& l : M.left_action) tp.module.left_action.push_back(induced(tp.quotient, kron(l, in)));
  for (const auto& r : N.right_action) {
    tp.module.right_action.push_back(induced(tp.quotient, kron(im, r)));
  }
  return tp;
}

std::vector<Matrix> hom_space(const Bimodule& M, const Bimodule& N) {
  if (!same_algebra(M.left_algebra, N.left_algebra) ||
      !same_algebra(M.right_algebra, N.right_algebra)) {
    throw AlgebraError("hom_space: bimodules over different algebra pairs");
  }
  const Field f = M.field();
  const std::size_t dm = M.dim, dn = N.dim;
  if (dm == 0 || dn == 0) return {};
  const Matrix im = Matrix::identity(f, dm), in = Matrix::identity(f, dn);
  std::vector<Matrix> rows;
  for (std::size_t i = 0; i < M.left_action.size(); ++i) {
    rows.push_back(kron(in, M.left_action[i].transpose()) - kron(N.left_action[i], im));
  }
  for (std::size_t i = 0; i < M.right_action.size(); ++i) {
    rows.push_back(kron(in, M.right_action[i].transpose()) - kron(N.right_action[i], im));
  }
  const Subspace k = Subspace::kernel(vstack(rows));
  std::vector<Matrix> out;
  for (std::size_t j = 0; j < k.dim(); ++j) out.push_back(k.basis_vector(j).reshape(dn, dm));
  return out;
}

// ---- tensor square -------------------------------------------------------

Bimodule algebra_as_AB(const Extension& ext) {
  return restrict_right(Bimodule::regular(ext.A), ext.morphism());
}
Bimodule algebra_as_BA(const Extension& ext) {
  return restrict_left(Bimodule::regular(ext.A), ext.morphism());
}
Bimodule algebra_as_BB(const Extension& ext) {
  return restrict_left(algebra_as_AB(ext), ext.morphism());
}

TensorSquare tensor_square(const Extension& ext) {
  TensorSquare ts{ext, tensor_over(algebra_as_AB(ext), algebra_as_BA(ext)), {}};
  const FiniteAlgebra& A = *ext.A;
  const std::size_t n = A.dim();
  Matrix mu_full(ext.field(), n, n * n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) mu_full.set_col(i * n + j, A.product(i, j));
  }
  ts.mu = mu_full * ts.product.quotient.section;
  // mu kills the balancing relations: ab (x) c and a (x) bc multiply alike.
  if (!(ts.mu * ts.product.quotient.projection == mu_full)) {
    throw std::logic_error("tensor_square: multiplication does not factor through the quotient");
  }
  return ts;
}

Matrix TensorSquare::pure_basis(std::size_t i, std::size_t j) const {
  const std::size_t n = ext.dim_A();
  return product.quotient.projection.col(i * n + j);
}

Matrix TensorSquare::representative(const Matrix& v) const {
  const std::size_t n = ext.dim_A();
  return product.lift(v).reshape(n, n);
}

Bimodule TensorSquare::as_AB() const { return restrict_right(product.module, ext.morphism()); }
Bimodule TensorSquare::as_BA() const { return restrict_left(product.module, ext.morphism()); }
Bimodule TensorSquare::as_BB() const { return restrict_left(as_AB(), ext.morphism()); }

Subspace b_centralized(const TensorSquare& ts) {
  if (ts.dim() == 0) return Subspace(ts.field(), 0);
  std::vector<Matrix> blocks;
  for (std::size_t j = 0; j < ts.ext.dim_B(); ++j) {
    const Matrix b = ts.ext.image(j);
    blocks.push_back(ts.left(b) - ts.right(b));
  }
  return Subspace::kernel(vstack(blocks));
}

// ---- summand criterion ---------------------------------------------------

std::optional<SummandFactorization> coproduct_summand_test(const Bimodule& M, const Bimodule& P) {
  SummandFactorization fac;
  if (M.dim == 0) return fac;
  const std::vector<Matrix> to = hom_space(P, M);
  const std::vector<Matrix> from = hom_space(M, P);
  fac.hom_to_dim = to.size();
  fac.hom_from_dim = from.size();
  if (to.empty() || from.empty()) return std::nullopt;
  const Field f = M.field();
  const std::size_t h2 = from.size();
  std::vector<Matrix> composites;
  composites.reserve(to.size() * h2);
  for (const auto& fk : to) {
    for (const auto& gl : from) composites.push_back(vec(fk * gl));
  }
  const auto c = solve_in_span(vec(Matrix::identity(f, M.dim)), composites);
  if (!c) return std::nullopt;
  // Group by the Hom(M, P) basis element: f'_l = sum_k c_kl f_k.
  for (std::size_t l = 0; l < h2; ++l) {
    Matrix fl(f, M.dim, P.dim);
    for (std::size_t k = 0; k < to.size(); ++k) {
      const Scalar x = c->at(k * h2 + l, 0);
      if (!x.is_zero()) fl.add_scaled(x, to[k]);
    }
    if (fl.is_zero()) continue;
    fac.f.push_back(std::move(fl));
    fac.g.push_back(from[l]);
  }
  return fac;
}

namespace {

std::optional<QuasibaseSet> quasibase_from_test(const TensorSquare& ts, Side side) {
  const Extension& ext = ts.ext;
  const Bimodule M = side == Side::Right ? ts.as_AB() : ts.as_BA();
  const Bimodule P = side == Side::Right ? algebra_as_AB(ext) : algebra_as_BA(ext);
  const auto fac = coproduct_summand_test(M, P);
  if (!fac) return std::nullopt;
  const Field f = ext.field();
  const std::size_t n = ext.dim_A();
  const Matrix& one = ext.A->unit();
  QuasibaseSet qb;
  qb.side = side;
  for (std::size_t i = 0; i < fac->size(); ++i) {
    QuasibasePair pair;
    // f in Hom(A, A (x)_B A) is determined by f(1); g by g(1 (x) -) or g(- (x) 1).
    pair.tensor = fac->f[i] * one;
    pair.endo = Matrix(f, n, n);
    for (std::size_t a = 0; a < n; ++a) {
      const Matrix e = Matrix::unit_vector(f, n, a);
      const Matrix arg = side == Side::Right ? ts.pure(one, e) : ts.pure(e, one);
      pair.endo.set_col(a, fac->g[i] * arg);
    }
    qb.pairs.push_back(std::move(pair));
  }
  const QuasibaseCheck check = verify_quasibase(ts, qb);
  if (!check) throw std::logic_error("derived quasibase failed verification: " + check.failure);
  return qb;
}

}  // namespace

QuasibaseCheck verify_quasibase(const TensorSquare& ts, const QuasibaseSet& qb) {
  const Extension& ext = ts.ext;
  const FiniteAlgebra& A = *ext.A;
  const std::size_t n = A.dim();
  const Field f = ext.field();
  const Subspace T = b_centralized(ts);
  QuasibaseCheck out;
  auto fail = [&](std::string msg) {
    out.ok = false;
    out.failure = std::move(msg);
    return out;
  };
  for (std::size_t i = 0; i < qb.size(); ++i) {
    const auto& [endo, tensor] = qb.pairs[i];
    if (endo.rows() != n || endo.cols() != n || tensor.rows() != ts.dim() || tensor.cols() != 1) {
      return fail("pair " + std::to_string(i) + " has wrong shape");
    }
    for (std::size_t j = 0; j < ext.dim_B(); ++j) {
      const Matrix b = ext.image(j);
      if (!(endo * A.left_mult_by(b) == A.left_mult_by(b) * endo) ||
          !(endo * A.right_mult_by(b) == A.right_mult_by(b) * endo)) {
        return fail("endomorphism " + std::to_string(i) + " is not B-B-linear");
      }
    }
    if (!T.contains(tensor)) return fail("tensor " + std::to_string(i) + " is not B-central");
  }
  // Act on each tensor by the basis of A once, then combine per (x, y).
  std::vector<std::vector<Matrix>> acted(qb.size());
  for (std::size_t i = 0; i < qb.size(); ++i) {
    for (std::size_t k = 0; k < n; ++k) {
      const Matrix& act = qb.side == Side::Right ? ts.left_basis(k) : ts.right_basis(k);
      acted[i].push_back(act * qb.pairs[i].tensor);
    }
  }
  for (std::size_t x = 0; x < n; ++x) {
    for (std::size_t y = 0; y < n; ++y) {
      Matrix sum(f, ts.dim(), 1);
      for (std::size_t i = 0; i < qb.size(); ++i) {
        const Matrix& endo = qb.pairs[i].endo;
        // right: x gamma_i(y) acting on u_i from the left
        // left:  beta_i(x) y acting on t_i from the right
        const Matrix coeff = qb.side == Side::Right ? A.left_mult(x) * endo.col(y)
                                                    : A.right_mult(y) * endo.col(x);
        for (std::size_t k = 0; k < n; ++k) {
          const Scalar c = coeff.at(k, 0);
          if (!c.is_zero()) sum.add_scaled(c, acted[i][k]);
        }
      }
      if (!(sum == ts.pure_basis(x, y))) {
        return fail("reconstruction fails on basis pair (" + std::to_string(x) + ", " +
                    std::to_string(y) + ")");
      }
    }
  }
  return out;
}

std::optional<QuasibaseSet> right_d2_quasibase(const TensorSquare& ts) {
  return quasibase_from_test(ts, Side::Right);
}
std::optional<QuasibaseSet> right_d2_quasibase(const Extension& ext) {
  return right_d2_quasibase(tensor_square(ext));
}
std::optional<QuasibaseSet> left_d2_quasibase(const TensorSquare& ts) {
  return quasibase_from_test(ts, Side::Left);
}
std::optional<QuasibaseSet> left_d2_quasibase(const Extension& ext) {
  return left_d2_quasibase(tensor_square(ext));
}

QuasibaseSet transversal_quasibase(const GroupPair& gp, const TensorSquare& ts, Side side) {
  if (!gp.normal) throw AlgebraError("transversal quasibase needs a normal subgroup");
  const Field f = ts.field();
  const std::size_t n = gp.group.order();
  QuasibaseSet qb;
  qb.side = side;
  for (std::size_t i = 0; i < gp.transversal.size(); ++i) {
    const std::size_t g = gp.transversal[i];
    const std::size_t ginv = gp.group.inverse[g];
    QuasibasePair pair;
    pair.endo = Matrix(f, n, n);
    for (std::size_t x = 0; x < n; ++x) {
      if (gp.coset_of[x] == i) pair.endo.set(x, x, Scalar::one(f));
    }
    pair.tensor = side == Side::Right ? ts.pure_basis(ginv, g) : ts.pure_basis(g, ginv);
    qb.pairs.push_back(std::move(pair));
  }
  return qb;
}

Matrix identity_coset_projection(const GroupPair& gp) {
  const Field f = gp.ext.field();
  Matrix p(f, gp.subgroup.size(), gp.group.order());
  for (std::size_t k = 0; k < gp.subgroup.size(); ++k) p.set(k, gp.subgroup[k], Scalar::one(f));
  return p;
}

std::optional<SummandFactorization> h_separability_test(const Extension& ext) {
  const TensorSquare ts = tensor_square(ext);
  return coproduct_summand_test(ts.as_AA(), Bimodule::regular(ext.A));
}

Extension compose_extensions(const Extension& inner, const Extension& outer) {
  if (!same_algebra(inner.A, outer.B)) {
    throw AlgebraError("compose_extensions: inner target differs from outer source");
  }
  return Extension::make(inner.B, outer.A, outer.iota * inner.iota);
}

DualBasis split_projectivity_audit(const TensorSquare& ts, const QuasibaseSet& rqb,
                                   const Matrix& p) {
  const Extension& ext = ts.ext;
  const FiniteAlgebra& A = *ext.A;
  const FiniteAlgebra& B = *ext.B;
  const std::size_t n = A.dim(), m = B.dim();
  const Field f = ext.field();
  if (rqb.side != Side::Right) throw AlgebraError("split_projectivity_audit: need a right quasibase");
  if (p.rows() != m || p.cols() != n) throw AlgebraError("projection has wrong shape");
  if (!(p * ext.iota).is_identity()) throw AlgebraError("p does not split iota");
  for (std::size_t j = 0; j < m; ++j) {
    const Matrix b = ext.image(j);
    if (!(p * A.left_mult_by(b) == B.left_mult(j) * p) ||
        !(p * A.right_mult_by(b) == B.right_mult(j) * p)) {
      throw AlgebraError("p is not a B-B-bimodule map");
    }
  }
  // Apply p (x) id to 1 (x) y = sum_i gamma_i(y) u_i^1 (x) u_i^2.
  std::vector<Matrix> functionals(n, Matrix(f, m, n));
  for (const auto& [gamma, u] : rqb.pairs) {
    const Matrix rep = ts.representative(u);
    for (std::size_t a = 0; a < n; ++a) {
      const Matrix pa = p * A.right_mult(a) * gamma;
      for (std::size_t b = 0; b < n; ++b) {
        const Scalar c = rep.at(a, b);
        if (!c.is_zero()) functionals[b].add_scaled(c, pa);
      }
    }
  }
  DualBasis db;
  Matrix recon(f, n, n);
  for (std::size_t b = 0; b < n; ++b) {
    if (functionals[b].is_zero()) continue;
    for (std::size_t j = 0; j < m; ++j) {
      if (!(functionals[b] * A.left_mult_by(ext.image(j)) == B.left_mult(j) * functionals[b])) {
        throw std::logic_error("dual basis functional is not left B-linear");
      }
    }
    recon += A.right_mult(b) * ext.iota * functionals[b];
    db.functionals.push_back(functionals[b]);
    db.elements.push_back(Matrix::unit_vector(f, n, b));
  }
  if (!recon.is_identity()) throw std::logic_error("dual basis does not reconstruct A");
  return db;
}

}  // namespace depth2
