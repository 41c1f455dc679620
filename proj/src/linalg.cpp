#include "depth2/linalg.hpp"

#include <stdexcept>

namespace depth2 {

Subspace::Subspace(Field f, std::size_t ambient_dim)
    : field_(f), ambient_(ambient_dim), basis_(f, ambient_dim, 0) {}

Subspace Subspace::full(Field f, std::size_t ambient_dim) {
  Subspace s(f, ambient_dim);
  s.basis_ = Matrix::identity(f, ambient_dim);
  for (std::size_t i = 0; i < ambient_dim; ++i) s.pivots_.push_back(i);
  return s;
}

Subspace Subspace::span(Field f, std::size_t ambient_dim, const std::vector<Matrix>& vectors) {
  if (vectors.empty()) return Subspace(f, ambient_dim);
  for (const auto& v : vectors) {
    if (v.rows() != ambient_dim || v.cols() != 1) {
      throw std::invalid_argument("span: vector dimension mismatch");
    }
  }
  return column_span(hstack(vectors));
}

Subspace Subspace::column_span(const Matrix& m) {
  Subspace s(m.field(), m.rows());
  if (m.cols() == 0) return s;
  const RowEchelon e = m.transpose().rref();
  s.pivots_ = e.pivots;
  s.basis_ = Matrix(m.field(), m.rows(), e.pivots.size());
  for (std::size_t k = 0; k < e.pivots.size(); ++k) {
    for (std::size_t j = 0; j < m.rows(); ++j) {
      if (!e.rows[k][j].is_zero()) s.basis_.set(j, k, e.rows[k][j]);
    }
  }
  return s;
}

Subspace Subspace::kernel(const Matrix& m) {
  const Matrix n = m.nullspace();
  if (n.cols() == 0) return Subspace(m.field(), m.cols());
  return column_span(n);
}

Matrix Subspace::basis_vector(std::size_t k) const { return basis_.col(k); }

void Subspace::check_ambient(const Matrix& v) const {
  if (v.rows() != ambient_ || v.cols() != 1) {
    throw std::invalid_argument("subspace: vector of dimension " + std::to_string(v.rows()) +
                                " in ambient dimension " + std::to_string(ambient_));
  }
}

std::optional<Matrix> Subspace::coordinates(const Matrix& v) const {
  check_ambient(v);
  Matrix c(field_, dim(), 1);
  Matrix residual = v;
  for (std::size_t k = 0; k < dim(); ++k) {
    const Scalar x = v.at(pivots_[k], 0);
    c.set(k, 0, x);
    if (!x.is_zero()) residual.add_scaled(-x, basis_.col(k));
  }
  if (!residual.is_zero()) return std::nullopt;
  return c;
}

bool Subspace::contains(const Matrix& v) const { return coordinates(v).has_value(); }

Matrix Subspace::coordinates_of_columns(const Matrix& m) const {
  if (m.rows() != ambient_) throw std::invalid_argument("coordinates: dimension mismatch");
  // Echelon basis: coordinates are the pivot rows; check reconstruction.
  Matrix c = m.select_rows(pivots_);
  if (!(basis_ * c == m)) throw std::domain_error("vector lies outside the subspace");
  return c;
}

bool Subspace::is_subspace_of(const Subspace& o) const {
  if (o.ambient_ != ambient_) return false;
  for (std::size_t k = 0; k < dim(); ++k) {
    if (!o.contains(basis_.col(k))) return false;
  }
  return true;
}

std::optional<Matrix> Subspace::witness_outside(const Subspace& o) const {
  for (std::size_t k = 0; k < dim(); ++k) {
    Matrix v = basis_.col(k);
    if (!o.contains(v)) return v;
  }
  return std::nullopt;
}

Subspace Subspace::sum(const Subspace& o) const {
  if (o.ambient_ != ambient_) throw std::invalid_argument("sum: ambient mismatch");
  if (dim() == 0) return o;
  if (o.dim() == 0) return *this;
  return column_span(hstack({basis_, o.basis_}));
}

Subspace Subspace::intersect(const Subspace& o) const {
  if (o.ambient_ != ambient_) throw std::invalid_argument("intersect: ambient mismatch");
  if (dim() == 0 || o.dim() == 0) return Subspace(field_, ambient_);
  // v = U c lies in W iff every annihilator of W kills it.
  const Matrix ann = o.basis_.transpose().nullspace();  // ambient x (ambient - dim W)
  if (ann.cols() == 0) return *this;
  const Matrix cond = ann.transpose() * basis_;
  const Matrix cs = cond.nullspace();
  if (cs.cols() == 0) return Subspace(field_, ambient_);
  return column_span(basis_ * cs);
}

bool operator==(const Subspace& a, const Subspace& b) {
  return a.ambient_ == b.ambient_ && a.field_ == b.field_ && a.pivots_ == b.pivots_ &&
         a.basis_ == b.basis_;
}

std::optional<Matrix> solve_in_span(const Matrix& target, const Matrix& generator_columns) {
  if (target.cols() != 1 || target.rows() != generator_columns.rows()) {
    throw std::invalid_argument("solve_in_span: dimension mismatch");
  }
  const std::size_t k = generator_columns.cols();
  const RowEchelon e = hstack({generator_columns, target}).rref();
  Matrix c(target.field(), k, 1);
  for (std::size_t r = 0; r < e.pivots.size(); ++r) {
    if (e.pivots[r] == k) return std::nullopt;
    c.set(e.pivots[r], 0, e.rows[r][k]);
  }
  return c;
}

std::optional<Matrix> solve_in_span(const Matrix& target, const std::vector<Matrix>& generators) {
  for (const auto& g : generators) {
    if (g.cols() != 1 || g.rows() != target.rows()) {
      throw std::invalid_argument("solve_in_span: dimension mismatch");
    }
  }
  if (generators.empty()) {
    if (target.cols() != 1) throw std::invalid_argument("solve_in_span: dimension mismatch");
    if (target.is_zero()) return Matrix(target.field(), 0, 1);
    return std::nullopt;
  }
  return solve_in_span(target, hstack(generators));
}

QuotientStructure quotient_structure(std::size_t ambient_dim, const Subspace& relations) {
  if (relations.ambient_dim() != ambient_dim) {
    throw std::invalid_argument("quotient_structure: dimension mismatch");
  }
  const Field f = relations.field();
  std::vector<bool> is_pivot(ambient_dim, false);
  for (auto p : relations.pivots()) is_pivot[p] = true;
  QuotientStructure q;
  std::vector<std::size_t> index_of(ambient_dim, 0);
  for (std::size_t j = 0; j < ambient_dim; ++j) {
    if (!is_pivot[j]) {
      index_of[j] = q.kept.size();
      q.kept.push_back(j);
    }
  }
  q.dim = q.kept.size();
  q.projection = Matrix(f, q.dim, ambient_dim);
  q.section = Matrix(f, ambient_dim, q.dim);
  for (std::size_t i = 0; i < q.dim; ++i) {
    q.projection.set(i, q.kept[i], Scalar::one(f));
    q.section.set(q.kept[i], i, Scalar::one(f));
  }
  const Matrix& basis = relations.basis_columns();
  for (std::size_t k = 0; k < relations.dim(); ++k) {
    const std::size_t p = relations.pivots()[k];
    for (std::size_t i = 0; i < q.dim; ++i) {
      const Scalar x = basis.at(q.kept[i], k);
      if (!x.is_zero()) q.projection.set(i, p, -x);
    }
  }
  return q;
}

}  // namespace depth2
