#include "depth2/algebra.hpp"

#include <algorithm>
#include <set>

namespace depth2 {

// ---- FiniteAlgebra -------------------------------------------------------

FiniteAlgebra FiniteAlgebra::make(Field f,
                                  const std::vector<std::vector<std::vector<Scalar>>>& structure,
                                  const std::vector<Scalar>& unit) {
  const std::size_t n = structure.size();
  if (n == 0) throw AlgebraError("algebra dimension must be positive (no unit)");
  if (unit.size() != n) throw AlgebraError("unit has wrong length");
  std::vector<std::vector<Matrix>> products(n, std::vector<Matrix>(n));
  for (std::size_t i = 0; i < n; ++i) {
    if (structure[i].size() != n) throw AlgebraError("structure constants are not an n x n x n cube");
    for (std::size_t j = 0; j < n; ++j) {
      if (structure[i][j].size() != n) {
        throw AlgebraError("structure constants are not an n x n x n cube");
      }
      products[i][j] = Matrix::column(f, structure[i][j]);
    }
  }
  return from_products(f, products, Matrix::column(f, unit));
}

FiniteAlgebra FiniteAlgebra::from_products(Field f, const std::vector<std::vector<Matrix>>& products,
                                           const Matrix& unit) {
  const std::size_t n = products.size();
  if (n == 0) throw AlgebraError("algebra dimension must be positive (no unit)");
  if (unit.rows() != n || unit.cols() != 1) throw AlgebraError("unit has wrong length");
  FiniteAlgebra a;
  a.field_ = f;
  a.dim_ = n;
  a.unit_ = unit;
  a.left_.assign(n, Matrix(f, n, n));
  a.right_.assign(n, Matrix(f, n, n));
  for (std::size_t i = 0; i < n; ++i) {
    if (products[i].size() != n) throw AlgebraError("structure constants are not square");
    for (std::size_t j = 0; j < n; ++j) {
      const Matrix& p = products[i][j];
      if (p.rows() != n || p.cols() != 1) throw AlgebraError("product vector has wrong length");
      a.left_[i].set_col(j, p);
      a.right_[j].set_col(i, p);
    }
  }
  a.validate();
  return a;
}

FiniteAlgebra FiniteAlgebra::ground(Field f) {
  return from_products(f, {{Matrix::unit_vector(f, 1, 0)}}, Matrix::unit_vector(f, 1, 0));
}

void FiniteAlgebra::validate() const {
  if (!left_mult_by(unit_).is_identity() || !right_mult_by(unit_).is_identity()) {
    throw AlgebraError("unit law fails");
  }
  for (std::size_t i = 0; i < dim_; ++i) {
    for (std::size_t j = 0; j < dim_; ++j) {
      // L(e_i) L(e_j) = L(e_i e_j) is associativity on every third factor.
      const Matrix lhs = left_[i] * left_[j];
      const Matrix rhs = left_mult_by(product(i, j));
      if (lhs == rhs) continue;
      std::size_t l = 0;
      while (lhs.col(l) == rhs.col(l)) ++l;
      throw AlgebraError("associativity fails: (e" + std::to_string(i) + " e" +
                         std::to_string(j) + ") e" + std::to_string(l) + " != e" +
                         std::to_string(i) + " (e" + std::to_string(j) + " e" +
                         std::to_string(l) + ")");
    }
  }
}

Matrix FiniteAlgebra::left_mult_by(const Matrix& a) const {
  Matrix out(field_, dim_, dim_);
  for (std::size_t i = 0; i < dim_; ++i) {
    const Scalar x = a.at(i, 0);
    if (!x.is_zero()) out.add_scaled(x, left_[i]);
  }
  return out;
}

Matrix FiniteAlgebra::right_mult_by(const Matrix& b) const {
  Matrix out(field_, dim_, dim_);
  for (std::size_t j = 0; j < dim_; ++j) {
    const Scalar x = b.at(j, 0);
    if (!x.is_zero()) out.add_scaled(x, right_[j]);
  }
  return out;
}

Matrix FiniteAlgebra::multiply(const Matrix& a, const Matrix& b) const {
  return left_mult_by(a) * b;
}

bool FiniteAlgebra::is_commutative() const {
  for (std::size_t i = 0; i < dim_; ++i) {
    if (!(left_[i] == right_[i])) return false;
  }
  return true;
}

bool operator==(const FiniteAlgebra& a, const FiniteAlgebra& b) {
  return a.field_ == b.field_ && a.dim_ == b.dim_ && a.unit_ == b.unit_ && a.left_ == b.left_;
}

// ---- morphisms and extensions -------------------------------------------

AlgebraMorphism AlgebraMorphism::make(AlgebraPtr source, AlgebraPtr target, Matrix matrix) {
  if (!source || !target) throw AlgebraError("morphism: missing algebra");
  if (!(source->field() == target->field())) throw AlgebraError("morphism: field mismatch");
  if (matrix.rows() != target->dim() || matrix.cols() != source->dim()) {
    throw AlgebraError("morphism matrix has wrong shape");
  }
  if (!(matrix * source->unit() == target->unit())) {
    throw AlgebraError("morphism does not preserve the unit");
  }
  for (std::size_t i = 0; i < source->dim(); ++i) {
    for (std::size_t j = 0; j < source->dim(); ++j) {
      if (!(matrix * source->product(i, j) == target->multiply(matrix.col(i), matrix.col(j)))) {
        throw AlgebraError("morphism not multiplicative on basis pair (" + std::to_string(i) +
                           ", " + std::to_string(j) + ")");
      }
    }
  }
  return {std::move(source), std::move(target), std::move(matrix)};
}

AlgebraMorphism AlgebraMorphism::identity(AlgebraPtr a) {
  Matrix id = Matrix::identity(a->field(), a->dim());
  return {a, a, std::move(id)};
}

AlgebraMorphism compose(const AlgebraMorphism& outer, const AlgebraMorphism& inner) {
  if (!(*inner.target == *outer.source)) {
    throw AlgebraError("compose: inner target differs from outer source");
  }
  return {inner.source, outer.target, outer.matrix * inner.matrix};
}

Extension Extension::make(AlgebraPtr B, AlgebraPtr A, Matrix iota) {
  AlgebraMorphism m = AlgebraMorphism::make(std::move(B), std::move(A), std::move(iota));
  return {m.source, m.target, std::move(m.matrix)};
}

Extension Extension::trivial(AlgebraPtr A) {
  Matrix id = Matrix::identity(A->field(), A->dim());
  return {A, A, std::move(id)};
}

Extension Extension::over_ground(AlgebraPtr A) {
  return make(share(FiniteAlgebra::ground(A->field())), A, A->unit());
}

// ---- subalgebras --------------------------------------------------------

SubalgebraData SubalgebraData::make(AlgebraPtr ambient, Subspace basis) {
  if (basis.ambient_dim() != ambient->dim()) throw AlgebraError("subalgebra: dimension mismatch");
  if (!basis.contains(ambient->unit())) throw AlgebraError("subalgebra does not contain the unit");
  for (std::size_t i = 0; i < basis.dim(); ++i) {
    const Matrix li = ambient->left_mult_by(basis.basis_vector(i));
    for (std::size_t j = 0; j < basis.dim(); ++j) {
      if (!basis.contains(li * basis.basis_vector(j))) {
        throw AlgebraError("subspace is not closed under multiplication");
      }
    }
  }
  return {std::move(ambient), std::move(basis)};
}

FiniteAlgebra SubalgebraData::as_algebra() const {
  const std::size_t d = basis.dim();
  std::vector<std::vector<Matrix>> products(d, std::vector<Matrix>(d));
  for (std::size_t i = 0; i < d; ++i) {
    const Matrix li = ambient->left_mult_by(basis.basis_vector(i));
    for (std::size_t j = 0; j < d; ++j) {
      products[i][j] = *basis.coordinates(li * basis.basis_vector(j));
    }
  }
  return FiniteAlgebra::from_products(ambient->field(), products,
                                      *basis.coordinates(ambient->unit()));
}

// ---- groups --------------------------------------------------------------

Group Group::make(std::vector<std::vector<std::size_t>> table) {
  const std::size_t n = table.size();
  if (n == 0) throw AlgebraError("not a group: empty table");
  for (const auto& row : table) {
    if (row.size() != n) throw AlgebraError("not a group: table is not square");
    for (auto x : row) {
      if (x >= n) throw AlgebraError("not a group: entry out of range");
    }
  }
  for (std::size_t a = 0; a < n; ++a) {
    for (std::size_t b = 0; b < n; ++b) {
      for (std::size_t c = 0; c < n; ++c) {
        if (table[table[a][b]][c] != table[a][table[b][c]]) {
          throw AlgebraError("not a group: associativity fails");
        }
      }
    }
  }
  Group g;
  bool found = false;
  for (std::size_t e = 0; e < n && !found; ++e) {
    bool ok = true;
    for (std::size_t x = 0; x < n && ok; ++x) ok = table[e][x] == x && table[x][e] == x;
    if (ok) {
      g.identity = e;
      found = true;
    }
  }
  if (!found) throw AlgebraError("not a group: no identity");
  g.inverse.assign(n, n);
  for (std::size_t x = 0; x < n; ++x) {
    for (std::size_t y = 0; y < n; ++y) {
      if (table[x][y] == g.identity && table[y][x] == g.identity) g.inverse[x] = y;
    }
    if (g.inverse[x] == n) throw AlgebraError("not a group: element without inverse");
  }
  g.table = std::move(table);
  return g;
}

FiniteAlgebra group_algebra(Field f, const std::vector<std::vector<std::size_t>>& table) {
  const Group g = Group::make(table);
  const std::size_t n = g.order();
  std::vector<std::vector<Matrix>> products(n, std::vector<Matrix>(n));
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) products[i][j] = Matrix::unit_vector(f, n, g.mul(i, j));
  }
  return FiniteAlgebra::from_products(f, products, Matrix::unit_vector(f, n, g.identity));
}

GroupPair subgroup_extension(Field f, const std::vector<std::vector<std::size_t>>& table,
                             std::vector<std::size_t> subgroup) {
  Group g = Group::make(table);
  const std::size_t n = g.order();
  std::sort(subgroup.begin(), subgroup.end());
  subgroup.erase(std::unique(subgroup.begin(), subgroup.end()), subgroup.end());
  if (subgroup.empty()) throw AlgebraError("not a subgroup: empty");
  std::vector<bool> member(n, false);
  for (auto x : subgroup) {
    if (x >= n) throw AlgebraError("not a subgroup: index out of range");
    member[x] = true;
  }
  for (auto x : subgroup) {
    for (auto y : subgroup) {
      if (!member[g.mul(x, y)]) throw AlgebraError("not a subgroup: not closed");
    }
  }
  std::vector<std::size_t> pos(n, n);
  for (std::size_t k = 0; k < subgroup.size(); ++k) pos[subgroup[k]] = k;
  const std::size_t m = subgroup.size();
  std::vector<std::vector<std::size_t>> sub_table(m, std::vector<std::size_t>(m));
  for (std::size_t a = 0; a < m; ++a) {
    for (std::size_t b = 0; b < m; ++b) sub_table[a][b] = pos[g.mul(subgroup[a], subgroup[b])];
  }
  AlgebraPtr A = share(group_algebra(f, table));
  AlgebraPtr B = share(group_algebra(f, sub_table));
  Matrix iota(f, n, m);
  for (std::size_t k = 0; k < m; ++k) iota.set(subgroup[k], k, Scalar::one(f));

  GroupPair gp{Extension::make(B, A, std::move(iota)), std::move(g), std::move(subgroup), {}, {}, true};
  gp.coset_of.assign(n, n);
  for (std::size_t x = 0; x < n; ++x) {
    if (gp.coset_of[x] != n) continue;
    const std::size_t c = gp.transversal.size();
    gp.transversal.push_back(x);
    for (auto h : gp.subgroup) gp.coset_of[gp.group.mul(h, x)] = c;
  }
  for (std::size_t x = 0; x < n && gp.normal; ++x) {
    for (auto h : gp.subgroup) {
      if (!member[gp.group.mul(gp.group.mul(x, h), gp.group.inverse[x])]) {
        gp.normal = false;
        break;
      }
    }
  }
  return gp;
}

GroupPair group_pair(Field f, const std::vector<std::vector<std::size_t>>& table,
                     std::vector<std::size_t> subgroup) {
  GroupPair gp = subgroup_extension(f, table, std::move(subgroup));
  if (!gp.normal) throw AlgebraError("subgroup is not normal");
  return gp;
}

// ---- centralizer, ideals --------------------------------------------------

SubalgebraData centralizer(const Extension& ext) {
  const FiniteAlgebra& A = *ext.A;
  std::vector<Matrix> blocks;
  for (std::size_t j = 0; j < ext.dim_B(); ++j) {
    const Matrix b = ext.image(j);
    blocks.push_back(A.right_mult_by(b) - A.left_mult_by(b));
  }
  return SubalgebraData::make(ext.A, Subspace::kernel(vstack(blocks)));
}

Subspace left_ideal_span(const FiniteAlgebra& A, const Subspace& s) {
  std::vector<Matrix> vs;
  for (std::size_t i = 0; i < A.dim(); ++i) {
    for (std::size_t k = 0; k < s.dim(); ++k) vs.push_back(A.left_mult(i) * s.basis_vector(k));
  }
  return Subspace::span(A.field(), A.dim(), vs);
}

Subspace right_ideal_span(const FiniteAlgebra& A, const Subspace& s) {
  std::vector<Matrix> vs;
  for (std::size_t i = 0; i < A.dim(); ++i) {
    for (std::size_t k = 0; k < s.dim(); ++k) vs.push_back(A.right_mult(i) * s.basis_vector(k));
  }
  return Subspace::span(A.field(), A.dim(), vs);
}

Subspace ideal_closure(const FiniteAlgebra& A, const std::vector<Matrix>& generators) {
  Subspace s = Subspace::span(A.field(), A.dim(), generators);
  // Dimension grows strictly until stable, so dim(A) passes suffice.
  for (std::size_t pass = 0; pass <= A.dim(); ++pass) {
    Subspace next = s.sum(left_ideal_span(A, s)).sum(right_ideal_span(A, s));
    if (next.dim() == s.dim()) return s;
    s = std::move(next);
  }
  return s;
}

bool is_two_sided_ideal(const FiniteAlgebra& A, const Subspace& ideal) {
  if (ideal.ambient_dim() != A.dim()) return false;
  return left_ideal_span(A, ideal).is_subspace_of(ideal) &&
         right_ideal_span(A, ideal).is_subspace_of(ideal);
}

NormalityReport normality_audit(const Extension& ext, const Subspace& ideal) {
  const FiniteAlgebra& A = *ext.A;
  if (!is_two_sided_ideal(A, ideal)) throw AlgebraError("input is not a two-sided ideal");
  const SubalgebraData R = centralizer(ext);
  NormalityReport rep;
  rep.ideal_meet_centralizer = ideal.intersect(R.basis);
  rep.left_span = left_ideal_span(A, rep.ideal_meet_centralizer);
  rep.right_span = right_ideal_span(A, rep.ideal_meet_centralizer);
  rep.right_in_left = rep.right_span.is_subspace_of(rep.left_span);
  rep.left_in_right = rep.left_span.is_subspace_of(rep.right_span);
  return rep;
}

}  // namespace depth2
