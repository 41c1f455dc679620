#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>
#include <set>

#include "depth2/algebra.hpp"
#include "fixtures.hpp"

using namespace depth2;
using fixtures::Q;

namespace {

// Number of orbits of N acting on G by conjugation: the dimension of the
// centralizer of k[N] in k[G] (class sums of the orbits form a basis).
std::size_t conjugation_orbits(const fixtures::Table& t, const std::vector<std::size_t>& n) {
  const std::size_t order = t.size();
  std::vector<std::size_t> inv(order);
  for (std::size_t g = 0; g < order; ++g)
    for (std::size_t h = 0; h < order; ++h)
      if (t[g][h] == 0) inv[g] = h;
  std::set<std::set<std::size_t>> orbits;
  for (std::size_t g = 0; g < order; ++g) {
    std::set<std::size_t> o;
    for (std::size_t x : n) o.insert(t[t[x][g]][inv[x]]);
    orbits.insert(o);
  }
  return orbits.size();
}

}  // namespace

TEST_CASE("make_algebra examples") {
  const Field q = Q();
  const auto k = FiniteAlgebra::make(q, {{{Scalar::one(q)}}}, {Scalar::one(q)});
  CHECK(k.dim() == 1);
  CHECK(k == FiniteAlgebra::ground(q));

  const auto m2 = fixtures::m2(q);
  CHECK(m2.dim() == 4);
  CHECK_FALSE(m2.is_commutative());
  // e_01 e_10 = e_00
  CHECK(m2.product(1, 2) == Matrix::unit_vector(q, 4, 0));

  try {
    FiniteAlgebra::make(q, {{{Scalar::one(q)}}}, {Scalar::zero(q)});
    FAIL("expected an error");
  } catch (const AlgebraError& e) {
    CHECK(std::string(e.what()).find("unit law fails") != std::string::npos);
  }

  // Unit law also fails when e0 e0 = e1.
  const Scalar z = Scalar::zero(q), o = Scalar::one(q);
  CHECK_THROWS_AS(FiniteAlgebra::make(q, {{{z, o}, {z, z}}, {{z, z}, {z, z}}}, {o, z}), AlgebraError);
  CHECK_THROWS_AS(FiniteAlgebra::make(q, {}, {}), AlgebraError);
}

TEST_CASE("non-associative constants name the failing identity") {
  const Field q = Q();
  const Scalar z = Scalar::zero(q), o = Scalar::one(q);
  // Unital, with (e1 e1) e1 = e2 e1 = 0 but e1 (e1 e1) = e1 e2 = e1.
  std::vector<std::vector<std::vector<Scalar>>> c = {
      {{o, z, z}, {z, o, z}, {z, z, o}},
      {{z, o, z}, {z, z, o}, {z, o, z}},
      {{z, z, o}, {z, z, z}, {z, z, z}}};
  try {
    FiniteAlgebra::make(q, c, {o, z, z});
    FAIL("expected an error");
  } catch (const AlgebraError& e) {
    CHECK(std::string(e.what()).find("associativity fails") != std::string::npos);
  }
}

TEST_CASE("group algebras") {
  const Field q = Q();
  CHECK(group_algebra(q, {{0}}) == FiniteAlgebra::ground(q));
  const auto c2 = group_algebra(q, fixtures::cyclic_table(2));
  CHECK(c2.dim() == 2);
  CHECK(c2.product(1, 1) == Matrix::unit_vector(q, 2, 0));
  CHECK(c2.unit() == Matrix::unit_vector(q, 2, 0));
  const auto s3 = group_algebra(q, fixtures::s3_table());
  CHECK(s3.dim() == 6);
  CHECK_FALSE(s3.is_commutative());
  CHECK(s3.unit() == Matrix::unit_vector(q, 6, 0));
  CHECK_THROWS_AS(group_algebra(q, {{0, 1}, {1, 1}}), AlgebraError);
}

TEST_CASE("group pairs") {
  const Field q = Q();
  const auto c2 = group_pair(q, fixtures::cyclic_table(2), {0});
  CHECK(c2.transversal == std::vector<std::size_t>{0, 1});
  CHECK(c2.ext.dim_B() == 1);

  const auto s3a3 = group_pair(q, fixtures::s3_table(), fixtures::a3_indices());
  CHECK(s3a3.ext.dim_B() == 3);
  CHECK(s3a3.ext.dim_A() == 6);
  CHECK(s3a3.transversal.size() == 2);
  CHECK(s3a3.normal);

  try {
    group_pair(q, fixtures::s3_table(), fixtures::transposition_indices());
    FAIL("expected an error");
  } catch (const AlgebraError& e) {
    CHECK(std::string(e.what()).find("not normal") != std::string::npos);
  }
  const auto nonnormal = subgroup_extension(q, fixtures::s3_table(), fixtures::transposition_indices());
  CHECK_FALSE(nonnormal.normal);
  CHECK(nonnormal.transversal.size() == 3);
  CHECK_THROWS_AS(subgroup_extension(q, fixtures::s3_table(), {0, 1, 2}), AlgebraError);
}

TEST_CASE("centralizers") {
  const Field q = Q();
  const auto m2 = share(fixtures::m2(q));
  CHECK(centralizer(Extension::trivial(m2)).dim() == 1);
  CHECK(centralizer(Extension::over_ground(m2)).dim() == 4);

  const auto table = fixtures::s3_table();
  const auto gp = group_pair(q, table, fixtures::a3_indices());
  const auto r = centralizer(gp.ext);
  CHECK(r.dim() == conjugation_orbits(table, fixtures::a3_indices()));
  CHECK(r.dim() == 4);
  CHECK(r.basis.contains(gp.ext.A->unit()));

  const auto tr = subgroup_extension(q, table, fixtures::transposition_indices());
  CHECK(centralizer(tr.ext).dim() == conjugation_orbits(table, fixtures::transposition_indices()));

  // The echelon basis reorganised as an algebra is still associative and unital.
  const auto ra = r.as_algebra();
  CHECK(ra.dim() == 4);
  CHECK(AlgebraMorphism::make(share(ra), gp.ext.A, r.inclusion()).matrix == r.inclusion());
}

TEST_CASE("ideal closure") {
  const Field q = Q();
  const auto c2 = group_algebra(q, fixtures::cyclic_table(2));
  CHECK(ideal_closure(c2, {Matrix(q, 2, 1)}).dim() == 0);
  CHECK(ideal_closure(c2, {c2.unit()}).dim() == 2);
  const auto aug = ideal_closure(c2, {fixtures::vec(q, {1, -1})});
  CHECK(aug.dim() == 1);
  CHECK(is_two_sided_ideal(c2, aug));

  const auto m2 = fixtures::m2(q);
  // M_2 is simple: any nonzero element generates everything.
  CHECK(ideal_closure(m2, {Matrix::unit_vector(q, 4, 1)}).dim() == 4);
  CHECK_FALSE(is_two_sided_ideal(m2, Subspace::span(q, 4, {Matrix::unit_vector(q, 4, 1)})));
}

TEST_CASE("normality audit") {
  const Field q = Q();
  const auto m2 = share(fixtures::m2(q));
  const auto triv = Extension::trivial(m2);
  CHECK(normality_audit(triv, Subspace(q, 4)).equal());
  CHECK(normality_audit(triv, Subspace::full(q, 4)).equal());

  const auto gp = group_pair(q, fixtures::s3_table(), fixtures::a3_indices());
  CHECK(normality_audit(gp.ext, Subspace(q, 6)).equal());
  CHECK(normality_audit(gp.ext, Subspace::full(q, 6)).equal());
  CHECK_THROWS_AS(normality_audit(gp.ext, Subspace::span(q, 6, {Matrix::unit_vector(q, 6, 1)})),
                  AlgebraError);
}

TEST_CASE("morphisms and extensions") {
  const Field q = Q();
  const auto a = share(fixtures::quadratic(q, 2));
  const auto k = share(FiniteAlgebra::ground(q));
  const auto e = Extension::over_ground(a);
  CHECK(e.iota == a->unit());
  // x -> -x is an automorphism of Q(sqrt2).
  Matrix conj = Matrix::identity(q, 2);
  conj.set(1, 1, Scalar(q, -1));
  const auto sigma = AlgebraMorphism::make(a, a, conj);
  CHECK((compose(sigma, sigma).matrix).is_identity());
  // x -> 2x is not multiplicative.
  Matrix bad = Matrix::identity(q, 2);
  bad.set(1, 1, Scalar(q, 2));
  CHECK_THROWS_AS(AlgebraMorphism::make(a, a, bad), AlgebraError);
  // Non-unital map F -> A.
  CHECK_THROWS_AS(Extension::make(k, a, Matrix(q, 2, 1)), AlgebraError);
}

TEST_CASE("property: random algebras over F_p keep the centralizer unital") {
  std::mt19937 rng(17);
  const Field f = Field::prime(5);
  for (int trial = 0; trial < 10; ++trial) {
    // Upper-triangular 2x2 matrices embedded in M_2 via a random element of B.
    const auto m2 = share(fixtures::m2(f));
    const Matrix x = fixtures::random_matrix(f, 4, 1, rng);
    std::vector<Matrix> gens{m2->unit(), x};
    const auto sub = SubalgebraData::make(m2, [&] {
      Subspace s = Subspace::span(f, 4, gens);
      for (int pass = 0; pass < 4; ++pass) {
        std::vector<Matrix> more;
        for (std::size_t i = 0; i < s.dim(); ++i)
          for (std::size_t j = 0; j < s.dim(); ++j)
            more.push_back(m2->multiply(s.basis_vector(i), s.basis_vector(j)));
        s = s.sum(Subspace::span(f, 4, more));
      }
      return s;
    }());
    const auto ext = Extension::make(share(sub.as_algebra()), m2, sub.inclusion());
    const auto r = centralizer(ext);
    CHECK(r.basis.contains(m2->unit()));
    CHECK(r.basis.contains(x));  // x commutes with the algebra it generates
  }
}
