#include "depth2/action.hpp"

namespace depth2 {

namespace {

Matrix vec(const Matrix& m) { return m.reshape(m.size(), 1); }

std::string name(std::size_t i) { return "e" + std::to_string(i); }

// sum_ij c_ij X_i f X_j
Matrix sandwich(const std::vector<Matrix>& x, const Matrix& c, const Matrix& f) {
  Matrix out(f.field(), f.rows(), f.cols());
  for (std::size_t i = 0; i < c.rows(); ++i)
    for (std::size_t j = 0; j < c.cols(); ++j)
      if (!c.entry_is_zero(i, j)) out.add_scaled(c.at(i, j), x[i] * f * x[j]);
  return out;
}

}  // namespace

LeftModule LeftModule::make(AlgebraPtr A, std::vector<Matrix> action) {
  const Bimodule b = Bimodule::left_module(A, std::move(action));
  return {b.left_algebra, b.dim, b.left_action};
}

LeftModule LeftModule::regular(const AlgebraPtr& A) {
  std::vector<Matrix> action;
  for (std::size_t i = 0; i < A->dim(); ++i) action.push_back(A->left_mult(i));
  return {A, A->dim(), std::move(action)};
}

Matrix LeftModule::act(const Matrix& a) const {
  Matrix out(algebra->field(), dim, dim);
  for (std::size_t i = 0; i < action.size(); ++i)
    if (!a.entry_is_zero(i, 0)) out.add_scaled(a.at(i, 0), action[i]);
  return out;
}

Bimodule LeftModule::as_bimodule() const {
  return {algebra, share(FiniteAlgebra::ground(algebra->field())), dim, action,
          {Matrix::identity(algebra->field(), dim)}};
}

// ---- measured endomorphisms ------------------------------------------------------

Matrix MeasuredEndos::act(const Matrix& f, const Matrix& t) const {
  return sandwich(module.action, bgd.ctx->representative(t), f);
}

Matrix MeasuredEndos::coordinates(const Matrix& f) const { return span.coordinates_of_columns(vec(f)); }

Matrix MeasuredEndos::element(const Matrix& coords) const {
  Matrix out(module.algebra->field(), module.dim, module.dim);
  for (std::size_t k = 0; k < basis.size(); ++k)
    if (!coords.entry_is_zero(k, 0)) out.add_scaled(coords.at(k, 0), basis[k]);
  return out;
}

MeasuredEndos t_action(const RightBialgebroid& bgd, const LeftModule& M) {
  const Extension& ext = bgd.ctx->ext;
  if (!(*M.algebra == *ext.A)) throw AlgebraError("t_action: module is not over A");
  const Field f = ext.field();
  MeasuredEndos me{bgd, M, {}, {}, {}, {}};
  const Bimodule over_B = restrict_left(M.as_bimodule(), ext.morphism());
  me.basis = hom_space(over_B, over_B);
  std::vector<Matrix> vecs;
  for (const auto& b : me.basis) vecs.push_back(vec(b));
  me.span = Subspace::span(f, M.dim * M.dim, vecs);
  // hom_space returns the echelon basis, so E coordinates are echelon coordinates.
  const std::size_t de = me.dim(), dt = bgd.dim_T();
  for (std::size_t t = 0; t < dt; ++t) {
    Matrix m(f, de, de);
    for (std::size_t k = 0; k < de; ++k) {
      m.set_col(k, me.coordinates(me.act(me.basis[k], Matrix::unit_vector(f, dt, t))));
    }
    me.action.push_back(std::move(m));
  }

  ActionChecks& ch = me.checks;
  const FiniteAlgebra& T = *bgd.total;
  auto fail = [&](bool& flag, const std::string& why) {
    flag = false;
    if (ch.witness.empty()) ch.witness = why;
  };
  auto eT = [&](std::size_t i) { return Matrix::unit_vector(f, dt, i); };
  for (std::size_t k = 0; k < de && ch.unital; ++k) {
    if (!(me.act(me.basis[k], T.unit()) == me.basis[k])) fail(ch.unital, "f=" + name(k) + " <| 1_T");
  }
  for (std::size_t t = 0; t < dt && ch.associative; ++t)
    for (std::size_t u = 0; u < dt && ch.associative; ++u)
      if (!(me.action[u] * me.action[t] == [&] {
            Matrix acc(f, de, de);
            const Matrix tu = T.product(t, u);
            for (std::size_t s = 0; s < dt; ++s)
              if (!tu.entry_is_zero(s, 0)) acc.add_scaled(tu.at(s, 0), me.action[s]);
            return acc;
          }())) {
        fail(ch.associative, "(t,u)=(" + name(t) + "," + name(u) + ")");
      }
  const Matrix id = Matrix::identity(f, M.dim);
  for (std::size_t t = 0; t < dt && ch.identity_twisted; ++t) {
    const Matrix twisted = me.act(id, bgd.source * (bgd.counit * eT(t)));
    if (!(me.act(id, eT(t)) == twisted) || !(twisted == M.act(bgd.ctx->R_to_A(bgd.counit * eT(t))))) {
      fail(ch.identity_twisted, "t=" + name(t));
    }
  }
  const Matrix lifted = bgd.ctx->TT.quotient.section * bgd.coproduct;
  for (std::size_t t = 0; t < dt && ch.measuring; ++t) {
    for (std::size_t a = 0; a < de && ch.measuring; ++a) {
      for (std::size_t b = 0; b < de && ch.measuring; ++b) {
        Matrix acc(f, M.dim, M.dim);
        for (std::size_t p = 0; p < dt * dt; ++p) {
          if (lifted.entry_is_zero(p, t)) continue;
          acc.add_scaled(lifted.at(p, t),
                         me.act(me.basis[a], eT(p / dt)) * me.act(me.basis[b], eT(p % dt)));
        }
        if (!(acc == me.act(me.basis[a] * me.basis[b], eT(t)))) {
          fail(ch.measuring, "(f,g,t)=(" + name(a) + "," + name(b) + "," + name(t) + ")");
        }
      }
    }
  }
  return me;
}

MeasuredEndos t_action(const Extension& ext, const QuasibaseSet& rqb, const LeftModule& M) {
  return t_action(build_T(ext, rqb), M);
}

InvariantReport action_invariants(const MeasuredEndos& me) {
  const Field f = me.module.algebra->field();
  const RightBialgebroid& bgd = me.bgd;
  const std::size_t de = me.dim(), dt = bgd.dim_T(), n = me.module.dim;
  InvariantReport rep;
  std::vector<Matrix> blocks;
  for (std::size_t t = 0; t < dt; ++t) {
    const Matrix twist =
        me.module.act(bgd.ctx->R_to_A(bgd.counit * Matrix::unit_vector(f, dt, t)));
    Matrix m(f, de, de);
    for (std::size_t k = 0; k < de; ++k) m.set_col(k, me.coordinates(me.basis[k] * twist));
    blocks.push_back(me.action[t] - m);
  }
  const Subspace coords = Subspace::kernel(vstack(blocks));
  std::vector<Matrix> inv;
  for (std::size_t k = 0; k < coords.dim(); ++k) inv.push_back(vec(me.element(coords.basis_vector(k))));
  rep.invariants = Subspace::span(f, n * n, inv);

  std::vector<Matrix> hom;
  const Bimodule b = me.module.as_bimodule();
  for (const auto& h : hom_space(b, b)) hom.push_back(vec(h));
  rep.hom_A = Subspace::span(f, n * n, hom);
  rep.equal = rep.invariants == rep.hom_A;
  if (!rep.equal) {
    if (auto w = rep.invariants.witness_outside(rep.hom_A)) {
      rep.witness = "invariant not A-linear: " + w->transpose().to_string();
    } else if (auto w2 = rep.hom_A.witness_outside(rep.invariants)) {
      rep.witness = "A-linear map not invariant: " + w2->transpose().to_string();
    }
  }
  rep.closed = rep.invariants.contains(vec(Matrix::identity(f, n)));
  for (std::size_t i = 0; i < rep.invariants.dim() && rep.closed; ++i)
    for (std::size_t j = 0; j < rep.invariants.dim() && rep.closed; ++j) {
      const Matrix x = rep.invariants.basis_vector(i).reshape(n, n);
      const Matrix y = rep.invariants.basis_vector(j).reshape(n, n);
      rep.closed = rep.invariants.contains(vec(x * y));
    }
  return rep;
}

// ---- anchor -------------------------------------------------------------------------

AnchorAction anchor(const RightBialgebroid& bgd) {
  const BialgebroidContext& c = *bgd.ctx;
  const FiniteAlgebra& A = *c.ext.A;
  const FiniteAlgebra& R = *bgd.base;
  const FiniteAlgebra& T = *bgd.total;
  const Field f = A.field();
  const std::size_t dt = T.dim(), dr = R.dim();
  std::vector<Matrix> left, right;
  for (std::size_t i = 0; i < A.dim(); ++i) {
    left.push_back(A.left_mult(i));
    right.push_back(A.right_mult(i));
  }
  AnchorAction an;
  for (std::size_t t = 0; t < dt; ++t) {
    // t1 r t2 = sum c_ij e_i r e_j, i.e. left(e_i) right(e_j) applied to r.
    const Matrix ct = c.representative(Matrix::unit_vector(f, dt, t));
    Matrix op(f, A.dim(), A.dim());
    for (std::size_t i = 0; i < A.dim(); ++i)
      for (std::size_t j = 0; j < A.dim(); ++j)
        if (!ct.entry_is_zero(i, j)) op.add_scaled(ct.at(i, j), left[i] * right[j]);
    an.action.push_back(c.A_to_R(op * c.R.inclusion()));
  }
  auto fail = [&](bool& flag, const std::string& why) {
    flag = false;
    if (an.witness.empty()) an.witness = why;
  };
  auto along = [&](const Matrix& t) {
    Matrix acc(f, dr, dr);
    for (std::size_t s = 0; s < dt; ++s)
      if (!t.entry_is_zero(s, 0)) acc.add_scaled(t.at(s, 0), an.action[s]);
    return acc;
  };
  if (!along(T.unit()).is_identity()) fail(an.unital, "r <| 1_T != r");
  for (std::size_t t = 0; t < dt && an.counit_at_one; ++t)
    if (!(an.action[t] * R.unit() == bgd.counit.col(t))) fail(an.counit_at_one, "t=" + name(t));
  for (std::size_t t = 0; t < dt && an.module; ++t)
    for (std::size_t u = 0; u < dt && an.module; ++u)
      if (!(an.action[u] * an.action[t] == along(T.product(t, u))))
        fail(an.module, "(t,u)=(" + name(t) + "," + name(u) + ")");
  const Matrix lifted = c.TT.quotient.section * bgd.coproduct;
  for (std::size_t t = 0; t < dt && an.module_algebra; ++t)
    for (std::size_t r = 0; r < dr && an.module_algebra; ++r)
      for (std::size_t s = 0; s < dr && an.module_algebra; ++s) {
        Matrix acc(f, dr, 1);
        for (std::size_t p = 0; p < dt * dt; ++p) {
          if (lifted.entry_is_zero(p, t)) continue;
          acc.add_scaled(lifted.at(p, t), R.multiply(an.action[p / dt].col(r), an.action[p % dt].col(s)));
        }
        if (!(acc == an.action[t] * R.product(r, s)))
          fail(an.module_algebra, "(r,s,t)=(" + name(r) + "," + name(s) + "," + name(t) + ")");
      }
  return an;
}

}  // namespace depth2
