#include "depth2/matrix.hpp"

#include <sstream>
#include <stdexcept>
#include <utility>

#include "depth2/kernels.hpp"

namespace depth2 {

namespace {

struct RationalOps {
  using Elem = mpq_class;
  static bool is_zero(const Elem& x) { return sgn(x) == 0; }
  static Elem zero() { return Elem(0); }
  static Elem one() { return Elem(1); }
  static Elem inv(const Elem& x) { return Elem(1) / x; }
  static Elem neg(const Elem& x) { return -x; }
  static Elem mul(const Elem& a, const Elem& b) { return a * b; }
  static void add_to(Elem& a, const Elem& b) { a += b; }
  static bool eq(const Elem& a, const Elem& b) { return a == b; }
  // dst += c * src
  static void axpy(Elem* dst, const Elem* src, const Elem& c, std::size_t n) {
    if (sgn(c) == 0) return;
    for (std::size_t j = 0; j < n; ++j) {
      if (sgn(src[j]) != 0) dst[j] += c * src[j];
    }
  }
  static void scale(Elem* dst, const Elem& c, std::size_t n) {
    for (std::size_t j = 0; j < n; ++j) {
      if (sgn(dst[j]) != 0) dst[j] *= c;
    }
  }
  Scalar to_scalar(Field f, const Elem& x) const { return Scalar(f, x); }
  Elem from_scalar(const Scalar& s) const { return s.rational(); }
};

struct PrimeOps {
  using Elem = std::uint32_t;
  std::uint32_t p;
  static bool is_zero(Elem x) { return x == 0; }
  static Elem zero() { return 0; }
  static Elem one() { return 1; }
  Elem inv(Elem x) const {
    std::uint64_t result = 1, base = x;
    std::uint32_t e = p - 2;
    while (e > 0) {
      if (e & 1u) result = result * base % p;
      base = base * base % p;
      e >>= 1;
    }
    return static_cast<Elem>(result);
  }
  Elem neg(Elem x) const { return x == 0 ? 0 : p - x; }
  Elem mul(Elem a, Elem b) const { return static_cast<Elem>(std::uint64_t{a} * b % p); }
  void add_to(Elem& a, Elem b) const { a = static_cast<Elem>((std::uint64_t{a} + b) % p); }
  static bool eq(Elem a, Elem b) { return a == b; }
  void axpy(Elem* dst, const Elem* src, Elem c, std::size_t n) const {
    kernels::axpy_mod({dst, n}, {src, n}, c, p);
  }
  void scale(Elem* dst, Elem c, std::size_t n) const { kernels::scale_mod({dst, n}, c, p); }
  Scalar to_scalar(Field f, Elem x) const { return Scalar::from_residue(f, x); }
  Elem from_scalar(const Scalar& s) const { return s.residue(); }
};

template <class Ops>
void rref_inplace(const Ops& ops, std::vector<typename Ops::Elem>& a, std::size_t rows,
                  std::size_t cols, std::vector<std::size_t>& pivots) {
  std::size_t r = 0;
  for (std::size_t c = 0; c < cols && r < rows; ++c) {
    std::size_t sel = rows;
    for (std::size_t i = r; i < rows; ++i) {
      if (!ops.is_zero(a[i * cols + c])) {
        sel = i;
        break;
      }
    }
    if (sel == rows) continue;
    if (sel != r) {
      for (std::size_t j = c; j < cols; ++j) std::swap(a[sel * cols + j], a[r * cols + j]);
    }
    auto* prow = &a[r * cols];
    const auto inv = ops.inv(prow[c]);
    ops.scale(prow + c, inv, cols - c);
    for (std::size_t i = 0; i < rows; ++i) {
      if (i == r) continue;
      auto* row = &a[i * cols];
      if (ops.is_zero(row[c])) continue;
      const auto f = ops.neg(row[c]);
      ops.axpy(row + c, prow + c, f, cols - c);
    }
    pivots.push_back(c);
    ++r;
  }
}

}  // namespace

struct MatrixAccess {
  template <class F>
  static decltype(auto) visit(Matrix& m, F&& f) {
    if (m.field_.is_rational()) return f(RationalOps{}, m.q_);
    return f(PrimeOps{m.field_.characteristic()}, m.r_);
  }
  template <class F>
  static decltype(auto) visit(const Matrix& m, F&& f) {
    if (m.field_.is_rational()) return f(RationalOps{}, m.q_);
    return f(PrimeOps{m.field_.characteristic()}, m.r_);
  }
  template <class F>
  static decltype(auto) visit2(Matrix& dst, const Matrix& src, F&& f) {
    if (dst.field_.is_rational()) return f(RationalOps{}, dst.q_, src.q_);
    return f(PrimeOps{dst.field_.characteristic()}, dst.r_, src.r_);
  }
};

Matrix::Matrix(Field f, std::size_t rows, std::size_t cols) : field_(f), rows_(rows), cols_(cols) {
  if (f.is_rational()) {
    q_.assign(rows * cols, mpq_class(0));
  } else {
    r_.assign(rows * cols, 0);
  }
}

Matrix Matrix::identity(Field f, std::size_t n) {
  Matrix m(f, n, n);
  for (std::size_t i = 0; i < n; ++i) m.set(i, i, Scalar::one(f));
  return m;
}

Matrix Matrix::unit_vector(Field f, std::size_t n, std::size_t i) {
  Matrix m(f, n, 1);
  m.set(i, 0, Scalar::one(f));
  return m;
}

Matrix Matrix::column(Field f, const std::vector<Scalar>& entries) {
  Matrix m(f, entries.size(), 1);
  for (std::size_t i = 0; i < entries.size(); ++i) m.set(i, 0, entries[i]);
  return m;
}

Matrix Matrix::from_columns(Field f, std::size_t rows, const std::vector<Matrix>& columns) {
  Matrix m(f, rows, columns.size());
  for (std::size_t j = 0; j < columns.size(); ++j) m.set_col(j, columns[j]);
  return m;
}

Scalar Matrix::at(std::size_t i, std::size_t j) const {
  if (i >= rows_ || j >= cols_) throw std::out_of_range("matrix index out of range");
  if (field_.is_rational()) return Scalar(field_, q_[i * cols_ + j]);
  return Scalar::from_residue(field_, r_[i * cols_ + j]);
}

void Matrix::set(std::size_t i, std::size_t j, const Scalar& v) {
  if (i >= rows_ || j >= cols_) throw std::out_of_range("matrix index out of range");
  if (!(v.field() == field_)) throw std::invalid_argument("matrix/scalar field mismatch");
  if (field_.is_rational()) {
    q_[i * cols_ + j] = v.rational();
  } else {
    r_[i * cols_ + j] = v.residue();
  }
}

void Matrix::add_to(std::size_t i, std::size_t j, const Scalar& v) {
  if (i >= rows_ || j >= cols_) throw std::out_of_range("matrix index out of range");
  if (!(v.field() == field_)) throw std::invalid_argument("matrix/scalar field mismatch");
  if (field_.is_rational()) {
    q_[i * cols_ + j] += v.rational();
  } else {
    r_[i * cols_ + j] =
        static_cast<std::uint32_t>((std::uint64_t{r_[i * cols_ + j]} + v.residue()) %
                                   field_.characteristic());
  }
}

bool Matrix::entry_is_zero(std::size_t i, std::size_t j) const {
  if (field_.is_rational()) return sgn(q_[i * cols_ + j]) == 0;
  return r_[i * cols_ + j] == 0;
}

Matrix Matrix::col(std::size_t j) const { return block(0, j, rows_, 1); }
Matrix Matrix::row(std::size_t i) const { return block(i, 0, 1, cols_); }

void Matrix::set_col(std::size_t j, const Matrix& v) {
  if (v.rows_ != rows_ || v.cols_ != 1) throw std::invalid_argument("set_col: shape mismatch");
  if (!(v.field_ == field_)) throw std::invalid_argument("set_col: field mismatch");
  MatrixAccess::visit2(*this, v, [&](const auto&, auto& dst, const auto& src) {
    for (std::size_t i = 0; i < rows_; ++i) dst[i * cols_ + j] = src[i];
  });
}

Matrix Matrix::block(std::size_t r0, std::size_t c0, std::size_t nr, std::size_t nc) const {
  if (r0 + nr > rows_ || c0 + nc > cols_) throw std::out_of_range("block out of range");
  Matrix out(field_, nr, nc);
  MatrixAccess::visit2(out, *this, [&](const auto&, auto& dst, const auto& src) {
    for (std::size_t i = 0; i < nr; ++i) {
      for (std::size_t j = 0; j < nc; ++j) dst[i * nc + j] = src[(r0 + i) * cols_ + c0 + j];
    }
  });
  return out;
}

Matrix Matrix::select_rows(const std::vector<std::size_t>& idx) const {
  Matrix out(field_, idx.size(), cols_);
  MatrixAccess::visit2(out, *this, [&](const auto&, auto& dst, const auto& src) {
    for (std::size_t i = 0; i < idx.size(); ++i) {
      if (idx[i] >= rows_) throw std::out_of_range("select_rows: index out of range");
      for (std::size_t j = 0; j < cols_; ++j) dst[i * cols_ + j] = src[idx[i] * cols_ + j];
    }
  });
  return out;
}

Matrix Matrix::reshape(std::size_t rows, std::size_t cols) const {
  if (rows * cols != size()) throw std::invalid_argument("reshape: size mismatch");
  Matrix out = *this;
  out.rows_ = rows;
  out.cols_ = cols;
  return out;
}

Matrix Matrix::transpose() const {
  Matrix out(field_, cols_, rows_);
  MatrixAccess::visit2(out, *this, [&](const auto&, auto& dst, const auto& src) {
    for (std::size_t i = 0; i < rows_; ++i) {
      for (std::size_t j = 0; j < cols_; ++j) dst[j * rows_ + i] = src[i * cols_ + j];
    }
  });
  return out;
}

void Matrix::check_shape(const Matrix& o, const char* op) const {
  if (rows_ != o.rows_ || cols_ != o.cols_) {
    throw std::invalid_argument(std::string(op) + ": shape mismatch " + std::to_string(rows_) +
                                "x" + std::to_string(cols_) + " vs " + std::to_string(o.rows_) +
                                "x" + std::to_string(o.cols_));
  }
  if (!(field_ == o.field_)) throw std::invalid_argument(std::string(op) + ": field mismatch");
}

Matrix Matrix::operator-() const {
  Matrix out = *this;
  MatrixAccess::visit(out, [](const auto& ops, auto& v) {
    for (auto& x : v) x = ops.neg(x);
  });
  return out;
}

Matrix& Matrix::operator+=(const Matrix& o) {
  check_shape(o, "add");
  MatrixAccess::visit2(*this, o, [](const auto& ops, auto& dst, const auto& src) {
    for (std::size_t i = 0; i < dst.size(); ++i) ops.add_to(dst[i], src[i]);
  });
  return *this;
}

Matrix& Matrix::operator-=(const Matrix& o) { return add_scaled(-Scalar::one(field_), o); }

Matrix& Matrix::operator*=(const Scalar& s) {
  if (!(s.field() == field_)) throw std::invalid_argument("scale: field mismatch");
  MatrixAccess::visit(*this, [&](const auto& ops, auto& v) {
    ops.scale(v.data(), ops.from_scalar(s), v.size());
  });
  return *this;
}

Matrix& Matrix::add_scaled(const Scalar& s, const Matrix& o) {
  check_shape(o, "add_scaled");
  if (s.is_zero()) return *this;
  MatrixAccess::visit2(*this, o, [&](const auto& ops, auto& dst, const auto& src) {
    ops.axpy(dst.data(), src.data(), ops.from_scalar(s), dst.size());
  });
  return *this;
}

Matrix operator*(const Matrix& a, const Matrix& b) {
  if (a.cols_ != b.rows_) {
    throw std::invalid_argument("multiply: inner dimension mismatch " + std::to_string(a.cols_) +
                                " vs " + std::to_string(b.rows_));
  }
  if (!(a.field_ == b.field_)) throw std::invalid_argument("multiply: field mismatch");
  Matrix out(a.field_, a.rows_, b.cols_);
  const std::size_t n = b.cols_;
  if (a.field_.is_rational()) {
    for (std::size_t i = 0; i < a.rows_; ++i) {
      for (std::size_t k = 0; k < a.cols_; ++k) {
        const mpq_class& x = a.q_[i * a.cols_ + k];
        if (sgn(x) == 0) continue;
        RationalOps::axpy(&out.q_[i * n], &b.q_[k * n], x, n);
      }
    }
  } else {
    const PrimeOps ops{a.field_.characteristic()};
    for (std::size_t i = 0; i < a.rows_; ++i) {
      for (std::size_t k = 0; k < a.cols_; ++k) {
        const std::uint32_t x = a.r_[i * a.cols_ + k];
        if (x == 0) continue;
        ops.axpy(&out.r_[i * n], &b.r_[k * n], x, n);
      }
    }
  }
  return out;
}

bool operator==(const Matrix& a, const Matrix& b) {
  if (a.rows_ != b.rows_ || a.cols_ != b.cols_ || !(a.field_ == b.field_)) return false;
  if (a.field_.is_rational()) return a.q_ == b.q_;
  return a.r_ == b.r_;
}

bool Matrix::is_zero() const {
  return MatrixAccess::visit(*this, [](const auto& ops, const auto& v) {
    for (const auto& x : v) {
      if (!ops.is_zero(x)) return false;
    }
    return true;
  });
}

bool Matrix::is_identity() const {
  return rows_ == cols_ && *this == identity(field_, rows_);
}

RowEchelon Matrix::rref() const {
  RowEchelon out;
  Matrix work = *this;
  MatrixAccess::visit(work, [&](const auto& ops, auto& v) {
    rref_inplace(ops, v, rows_, cols_, out.pivots);
  });
  out.rows.reserve(out.pivots.size());
  for (std::size_t k = 0; k < out.pivots.size(); ++k) {
    std::vector<Scalar> row;
    row.reserve(cols_);
    for (std::size_t j = 0; j < cols_; ++j) row.push_back(work.at(k, j));
    out.rows.push_back(std::move(row));
  }
  return out;
}

std::size_t Matrix::rank() const {
  std::vector<std::size_t> pivots;
  Matrix work = *this;
  MatrixAccess::visit(work, [&](const auto& ops, auto& v) {
    rref_inplace(ops, v, rows_, cols_, pivots);
  });
  return pivots.size();
}

Matrix Matrix::nullspace() const {
  std::vector<std::size_t> pivots;
  Matrix work = *this;
  MatrixAccess::visit(work, [&](const auto& ops, auto& v) {
    rref_inplace(ops, v, rows_, cols_, pivots);
  });
  std::vector<bool> is_pivot(cols_, false);
  for (auto p : pivots) is_pivot[p] = true;
  std::vector<std::size_t> free_cols;
  for (std::size_t j = 0; j < cols_; ++j) {
    if (!is_pivot[j]) free_cols.push_back(j);
  }
  Matrix out(field_, cols_, free_cols.size());
  MatrixAccess::visit2(out, work, [&](const auto& ops, auto& dst, const auto& src) {
    const std::size_t nf = free_cols.size();
    for (std::size_t f = 0; f < nf; ++f) {
      const std::size_t fc = free_cols[f];
      dst[fc * nf + f] = ops.one();
      for (std::size_t k = 0; k < pivots.size(); ++k) {
        dst[pivots[k] * nf + f] = ops.neg(src[k * cols_ + fc]);
      }
    }
  });
  return out;
}

std::optional<Matrix> Matrix::inverse() const {
  if (rows_ != cols_) return std::nullopt;
  const std::size_t n = rows_;
  Matrix aug = hstack({*this, identity(field_, n)});
  std::vector<std::size_t> pivots;
  MatrixAccess::visit(aug, [&](const auto& ops, auto& v) {
    rref_inplace(ops, v, n, 2 * n, pivots);
  });
  if (pivots.size() < n || pivots[n - 1] != n - 1) return std::nullopt;
  return aug.block(0, n, n, n);
}

std::string Matrix::to_string() const {
  std::ostringstream os;
  os << "[";
  for (std::size_t i = 0; i < rows_; ++i) {
    os << (i ? "; " : "");
    for (std::size_t j = 0; j < cols_; ++j) os << (j ? " " : "") << at(i, j).to_string();
  }
  os << "]";
  return os.str();
}

Matrix kron(const Matrix& a, const Matrix& b) {
  if (!(a.field_ == b.field_)) throw std::invalid_argument("kron: field mismatch");
  const std::size_t r = a.rows_ * b.rows_, c = a.cols_ * b.cols_;
  Matrix out(a.field_, r, c);
  auto fill = [&](const auto& ops, auto& dst, const auto& x, const auto& y) {
    for (std::size_t i = 0; i < a.rows_; ++i) {
      for (std::size_t j = 0; j < a.cols_; ++j) {
        const auto& s = x[i * a.cols_ + j];
        if (ops.is_zero(s)) continue;
        for (std::size_t k = 0; k < b.rows_; ++k) {
          for (std::size_t l = 0; l < b.cols_; ++l) {
            const auto& t = y[k * b.cols_ + l];
            if (ops.is_zero(t)) continue;
            dst[(i * b.rows_ + k) * c + j * b.cols_ + l] = ops.mul(s, t);
          }
        }
      }
    }
  };
  if (a.field_.is_rational()) {
    fill(RationalOps{}, out.q_, a.q_, b.q_);
  } else {
    fill(PrimeOps{a.field_.characteristic()}, out.r_, a.r_, b.r_);
  }
  return out;
}

Matrix hstack(const std::vector<Matrix>& blocks) {
  if (blocks.empty()) throw std::invalid_argument("hstack: no blocks");
  const Field f = blocks.front().field_;
  const std::size_t rows = blocks.front().rows_;
  std::size_t cols = 0;
  for (const auto& b : blocks) {
    if (b.rows_ != rows || !(b.field_ == f)) throw std::invalid_argument("hstack: mismatch");
    cols += b.cols_;
  }
  Matrix out(f, rows, cols);
  std::size_t c0 = 0;
  for (const auto& b : blocks) {
    MatrixAccess::visit2(out, b, [&](const auto&, auto& dst, const auto& src) {
      for (std::size_t i = 0; i < rows; ++i) {
        for (std::size_t j = 0; j < b.cols_; ++j) dst[i * cols + c0 + j] = src[i * b.cols_ + j];
      }
    });
    c0 += b.cols_;
  }
  return out;
}

Matrix vstack(const std::vector<Matrix>& blocks) {
  if (blocks.empty()) throw std::invalid_argument("vstack: no blocks");
  const Field f = blocks.front().field_;
  const std::size_t cols = blocks.front().cols_;
  std::size_t rows = 0;
  for (const auto& b : blocks) {
    if (b.cols_ != cols || !(b.field_ == f)) throw std::invalid_argument("vstack: mismatch");
    rows += b.rows_;
  }
  Matrix out(f, rows, cols);
  std::size_t r0 = 0;
  for (const auto& b : blocks) {
    MatrixAccess::visit2(out, b, [&](const auto&, auto& dst, const auto& src) {
      std::copy(src.begin(), src.end(), dst.begin() + static_cast<std::ptrdiff_t>(r0 * cols));
    });
    r0 += b.rows_;
  }
  return out;
}

}  // namespace depth2
