#pragma once
// Small algebras built directly from their definitions, independent of the
// library's example catalog.

#include <algorithm>
#include <array>
#include <numeric>
#include <set>
#include <random>
#include <vector>

#include "depth2/algebra.hpp"

namespace fixtures {

using depth2::Field;
using depth2::Matrix;
using depth2::Scalar;
using Table = std::vector<std::vector<std::size_t>>;

inline Field Q() { return Field::rationals(); }

inline Scalar s(Field f, long v) { return Scalar(f, v); }

inline Matrix vec(Field f, std::initializer_list<long> xs) {
  std::vector<Scalar> v;
  for (long x : xs) v.emplace_back(f, x);
  return Matrix::column(f, v);
}

// Permutations of {0,1,2} in lexicographic order; (gh)(x) = g(h(x)).
inline std::vector<std::array<int, 3>> s3_elements() {
  std::vector<std::array<int, 3>> perms;
  std::array<int, 3> p{0, 1, 2};
  do perms.push_back(p);
  while (std::next_permutation(p.begin(), p.end()));
  return perms;
}

inline Table s3_table() {
  const auto perms = s3_elements();
  Table t(6, std::vector<std::size_t>(6));
  for (std::size_t i = 0; i < 6; ++i) {
    for (std::size_t j = 0; j < 6; ++j) {
      std::array<int, 3> c{};
      for (int x = 0; x < 3; ++x) c[x] = perms[i][perms[j][x]];
      t[i][j] = std::find(perms.begin(), perms.end(), c) - perms.begin();
    }
  }
  return t;
}

// Even permutations: identity and the two 3-cycles.
inline std::vector<std::size_t> a3_indices() { return {0, 3, 4}; }
// The transposition swapping points 0 and 1.
inline std::vector<std::size_t> transposition_indices() { return {0, 2}; }

inline Table cyclic_table(std::size_t n) {
  Table t(n, std::vector<std::size_t>(n));
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) t[i][j] = (i + j) % n;
  }
  return t;
}

// M_2 with matrix units e_ij at index 2i + j.
inline depth2::FiniteAlgebra m2(Field f) {
  std::vector<std::vector<std::vector<Scalar>>> c(
      4, std::vector<std::vector<Scalar>>(4, std::vector<Scalar>(4, Scalar::zero(f))));
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j)
      for (int k = 0; k < 2; ++k)
        for (int l = 0; l < 2; ++l)
          if (j == k) c[2 * i + j][2 * k + l][2 * i + l] = Scalar::one(f);
  return depth2::FiniteAlgebra::make(
      f, c, {Scalar::one(f), Scalar::zero(f), Scalar::zero(f), Scalar::one(f)});
}

// F[x]/(x^2 - d) with basis 1, x.
inline depth2::FiniteAlgebra quadratic(Field f, long d) {
  const Scalar z = Scalar::zero(f), o = Scalar::one(f);
  std::vector<std::vector<std::vector<Scalar>>> c = {{{o, z}, {z, o}}, {{z, o}, {Scalar(f, d), z}}};
  return depth2::FiniteAlgebra::make(f, c, {o, z});
}

inline Matrix random_matrix(Field f, std::size_t r, std::size_t c, std::mt19937& rng,
                            int lo = -3, int hi = 3, double density = 0.6) {
  std::uniform_int_distribution<int> val(lo, hi);
  std::bernoulli_distribution nz(density);
  Matrix m(f, r, c);
  for (std::size_t i = 0; i < r; ++i)
    for (std::size_t j = 0; j < c; ++j)
      if (nz(rng)) m.set(i, j, Scalar(f, val(rng)));
  return m;
}

struct UnionFind {
  std::vector<std::size_t> parent;
  explicit UnionFind(std::size_t n) : parent(n) { std::iota(parent.begin(), parent.end(), 0); }
  std::size_t find(std::size_t x) { return parent[x] == x ? x : parent[x] = find(parent[x]); }
  void join(std::size_t a, std::size_t b) { parent[find(a)] = find(b); }
  std::size_t classes() {
    std::set<std::size_t> roots;
    for (std::size_t i = 0; i < parent.size(); ++i) roots.insert(find(i));
    return roots.size();
  }
};

inline std::vector<std::size_t> inverses(const Table& t) {
  std::vector<std::size_t> inv(t.size());
  for (std::size_t g = 0; g < t.size(); ++g)
    for (std::size_t h = 0; h < t.size(); ++h)
      if (t[g][h] == 0) inv[g] = h;
  return inv;
}

// Words (g_1, ..., g_k) of group elements identified along
// (.., g_i n, g_{i+1}, ..) ~ (.., g_i, n g_{i+1}, ..): a basis of the k-fold
// tensor power of k[G] over k[N]. With conjugate = true also along
// (g_1, .., g_k) ~ (n g_1, .., g_k n^-1), giving the N-central part.
inline std::size_t tensor_power_classes(const Table& t, const std::vector<std::size_t>& n,
                                        std::size_t k, bool conjugate) {
  const std::size_t order = t.size();
  const auto inv = inverses(t);
  std::size_t total = 1;
  for (std::size_t i = 0; i < k; ++i) total *= order;
  auto decode = [&](std::size_t code) {
    std::vector<std::size_t> w(k);
    for (std::size_t i = k; i-- > 0;) {
      w[i] = code % order;
      code /= order;
    }
    return w;
  };
  auto encode = [&](const std::vector<std::size_t>& w) {
    std::size_t code = 0;
    for (std::size_t g : w) code = code * order + g;
    return code;
  };
  UnionFind uf(total);
  for (std::size_t code = 0; code < total; ++code) {
    const auto w = decode(code);
    for (std::size_t x : n) {
      for (std::size_t i = 0; i + 1 < k; ++i) {
        auto v = w;
        v[i] = t[w[i]][x];
        v[i + 1] = t[inv[x]][w[i + 1]];
        uf.join(code, encode(v));
      }
      if (conjugate) {
        auto v = w;
        v[0] = t[x][w[0]];
        v[k - 1] = t[v[k - 1]][inv[x]];
        uf.join(code, encode(v));
      }
    }
  }
  return uf.classes();
}

}  // namespace fixtures
