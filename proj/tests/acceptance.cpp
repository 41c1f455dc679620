// Acceptance suite: one PASS/FAIL line per criterion.

#include <chrono>
#include <functional>
#include <iostream>
#include <sstream>

#include "depth2/action.hpp"
#include "depth2/galois.hpp"
#include "depth2/io.hpp"

using namespace depth2;

namespace {

struct Outcome {
  bool pass = true;
  std::ostringstream detail;
  void require(bool ok, const std::string& what) {
    if (!ok) {
      if (pass) detail << what;
      else detail << "; " << what;
      pass = false;
    }
  }
};

Extension example(const std::string& name) { return gen_example(name).extension(); }

// x (x) y = sum_i x gamma_i(y) u_i (right) or sum_i t_i beta_i(x) y (left),
// checked directly on every basis pair.
std::size_t reconstructed_pairs(const TensorSquare& ts, const QuasibaseSet& qb) {
  const FiniteAlgebra& A = *ts.ext.A;
  std::size_t ok = 0;
  for (std::size_t x = 0; x < A.dim(); ++x)
    for (std::size_t y = 0; y < A.dim(); ++y) {
      Matrix acc(A.field(), ts.dim(), 1);
      for (const auto& [endo, tensor] : qb.pairs) {
        if (qb.side == Side::Right) acc += ts.left(A.multiply(A.basis(x), endo * A.basis(y))) * tensor;
        else acc += ts.right(A.multiply(endo * A.basis(x), A.basis(y))) * tensor;
      }
      if (acc == ts.pure(A.basis(x), A.basis(y))) ++ok;
    }
  return ok;
}

void quasibase_soundness(Outcome& o) {
  for (const char* name : {"s3-a3", "s3-a3-f5"}) {
    const auto spec = gen_example(name);
    const auto gp = *spec.group_pair();
    const auto ts = tensor_square(gp.ext);
    const auto r = right_d2_quasibase(ts), l = left_d2_quasibase(ts);
    o.require(r && verify_quasibase(ts, *r).ok, std::string(name) + ": right solver");
    o.require(l && verify_quasibase(ts, *l).ok, std::string(name) + ": left solver");
    for (Side side : {Side::Right, Side::Left}) {
      const auto qb = transversal_quasibase(gp, ts, side);
      const std::size_t n = reconstructed_pairs(ts, qb);
      o.require(verify_quasibase(ts, qb).ok && n == 36,
                std::string(name) + (side == Side::Right ? ": right" : ": left") +
                    " transversal reconstructs " + std::to_string(n) + "/36 pairs");
    }
  }
  o.detail << (o.pass ? "solver and transversal quasibases, both sides, Q and F_5, 36/36 pairs" : "");
}

void axiom_suite(Outcome& o) {
  for (const char* name : {"s3-a3", "field-sqrt2", "trivial-M2"}) {
    const auto bgd = build_canonical(example(name));
    if (!bgd) {
      o.require(false, std::string(name) + ": not built");
      continue;
    }
    const auto rep = axiom_audit(*bgd);
    for (const auto& r : rep.results) o.require(r.pass, std::string(name) + ": " + r.name + " " + r.witness);
    if (o.pass) o.detail << name << " " << rep.results.size() << " axioms; ";
  }
}

void commutative_case(Outcome& o) {
  const auto ext = example("field-sqrt2");
  const auto bgd = build_canonical(ext);
  o.require(bgd && bgd->dim_T() == 4, "dim T != 4");
  o.require(bgd && bgd->base->dim() == 2, "dim R != 2");
  const auto flip = commutative_flip_check(ext);
  o.require(flip.base_is_A, "R != A");
  o.require(flip.sweedler, "coproduct not x (x) 1 (x) y");
  o.require(flip.counit_is_mu, "counit != multiplication");
  o.require(flip.involution, "flip not an involution");
  o.require(flip.anti_multiplicative, "flip not anti-multiplicative");
  o.require(flip.algebra_iso, "T not the tensor algebra");
  if (!flip.witness.empty()) o.require(false, flip.witness);
  if (o.pass) o.detail << "dim T 4, R = A, Sweedler coproduct, counit = mu, flip checked on 16 pairs";
}

struct CatalogRow {
  std::string name;
  MainTheoremReport main;
  CorollaryReport corollary;
};

const std::vector<CatalogRow>& catalog_audits() {
  static const std::vector<CatalogRow> rows = [] {
    std::vector<CatalogRow> out;
    for (const auto& name : catalog_names()) {
      const auto ctx = BialgebroidContext::make(example(name));
      out.push_back({name, main_theorem_audit(ctx), d2_iff_corollary_audit(*ctx)});
    }
    return out;
  }();
  return rows;
}

void main_theorem(Outcome& o) {
  std::size_t positive = 0, negative = 0;
  for (const auto& row : catalog_audits()) {
    const auto& m = row.main;
    o.require(m.consistent, row.name + ": lhs " + std::to_string(m.lhs) + " rhs " + std::to_string(m.rhs));
    (m.lhs ? positive : negative) += 1;
    if (row.name.rfind("s3-transposition", 0) == 0) {
      o.require(!m.lhs && !m.rhs, row.name + ": negative case not false on both sides");
    }
  }
  o.require(negative >= 2, "catalog has no negative case");
  if (o.pass) o.detail << catalog_audits().size() << " extensions, " << positive << " both true, " << negative << " both false";
}

void corollary_oracle(Outcome& o) {
  for (const auto& row : catalog_audits()) {
    const auto& c = row.corollary;
    o.require(c.consistent, row.name + ": corollary " + std::to_string(c.corollary_verdict) +
                                " quasibase " + std::to_string(c.quasibase_verdict));
  }
  if (o.pass) o.detail << "agrees with the quasibase solver on all " << catalog_audits().size() << " extensions";
}

Matrix mat2(Field f, long a, long b, long c, long d) {
  Matrix m(f, 2, 2);
  m.set(0, 0, Scalar(f, a));
  m.set(0, 1, Scalar(f, b));
  m.set(1, 0, Scalar(f, c));
  m.set(1, 1, Scalar(f, d));
  return m;
}

void invariants_theorem(Outcome& o) {
  const auto s3 = example("s3-a3");
  const auto field = example("field-sqrt2");
  const Field q = Field::rationals();
  const std::pair<Extension, LeftModule> cases[] = {
      {s3, LeftModule::regular(s3.A)},
      {field, LeftModule::make(field.A, {Matrix::identity(q, 2), mat2(q, 1, 1, 1, -1)})}};
  for (const auto& [ext, M] : cases) {
    const auto bgd = build_canonical(ext);
    if (!bgd) {
      o.require(false, "not built");
      continue;
    }
    const auto me = t_action(*bgd, M);
    o.require(me.checks.measuring, "measuring: " + me.checks.witness);
    o.require(me.checks.pass(), "action: " + me.checks.witness);
    const auto inv = action_invariants(me);
    o.require(inv.equal, "invariants != End over A: " + inv.witness);
    if (o.pass) o.detail << "dim M " << M.dim << ": invariants dim " << inv.invariants.dim() << " = End_A; ";
  }
}

void necessary_conditions(Outcome& o) {
  std::size_t ideals = 0;
  for (const auto& row : catalog_audits()) {
    if (!row.main.right_d2) continue;
    const auto ext = example(row.name);
    for (std::size_t i = 0; i < ext.dim_A(); ++i) {
      const auto I = ideal_closure(*ext.A, {ext.A->basis(i)});
      o.require(normality_audit(ext, I).equal(), row.name + ": ideal of e" + std::to_string(i));
      ++ideals;
    }
  }
  const auto gp = *gen_example("s3-a3").group_pair();
  const auto ts = tensor_square(gp.ext);
  const auto db = split_projectivity_audit(ts, transversal_quasibase(gp, ts, Side::Right),
                                           identity_coset_projection(gp));
  const FiniteAlgebra& A = *gp.ext.A;
  for (std::size_t y = 0; y < A.dim(); ++y) {
    Matrix acc(A.field(), A.dim(), 1);
    for (std::size_t j = 0; j < db.elements.size(); ++j) {
      acc += A.multiply(gp.ext.iota * (db.functionals[j] * A.basis(y)), db.elements[j]);
    }
    o.require(acc == A.basis(y), "dual basis misses e" + std::to_string(y));
  }
  if (o.pass) o.detail << ideals << " principal ideals, 6/6 elements rebuilt from dual bases";
}

void composite(Outcome& o) {
  const auto m2 = gen_example("trivial-M2").A;
  const auto inner = Extension::over_ground(m2);
  const auto outer = Extension::trivial(m2);
  o.require(h_separability_test(inner).has_value(), "inner not H-separable");
  o.require(right_d2_quasibase(outer).has_value(), "outer not right D2");
  const auto comp = compose_extensions(inner, outer);
  const auto ts = tensor_square(comp);
  const auto qb = right_d2_quasibase(ts);
  o.require(qb && verify_quasibase(ts, *qb).ok, "composite not right D2");
  if (o.pass) o.detail << "Q in M_2 then M_2 in M_2: right D2, quasibase size " << qb->size();
}

void quasibase_independence(Outcome& o) {
  const auto gp = *gen_example("s3-a3").group_pair();
  const auto ts = tensor_square(gp.ext);
  const auto solved = *right_d2_quasibase(ts);
  const auto transversal = transversal_quasibase(gp, ts, Side::Right);
  bool distinct = solved.size() != transversal.size();
  for (std::size_t i = 0; !distinct && i < solved.size(); ++i) {
    distinct = !(solved.pairs[i].endo == transversal.pairs[i].endo) ||
               !(solved.pairs[i].tensor == transversal.pairs[i].tensor);
  }
  o.require(distinct, "the two quasibases coincide");
  const auto a = build_T(gp.ext, solved), b = build_T(gp.ext, transversal);
  o.require(a.coproduct == b.coproduct, "coproduct differs");
  o.require(a.counit == b.counit, "counit differs");
  o.require(a.source == b.source, "source differs");
  o.require(a.target == b.target, "target differs");
  o.require(*a.total == *b.total, "product differs");
  if (o.pass) o.detail << "sizes " << solved.size() << " and " << transversal.size() << ", identical maps";
}

void mutation_sensitivity(Outcome& o) {
  using Mutation = std::function<bool(RightBialgebroid&)>;  // false when it changes nothing
  const std::vector<std::pair<std::string, Mutation>> mutations = {
      {"source", [](RightBialgebroid& m) {
         const Matrix before = m.source;
         m.source.set_col(1, m.source.col(1) + m.one_T());
         return !(m.source == before);
       }},
      {"target", [](RightBialgebroid& m) {
         const Matrix before = m.target;
         m.target.set_col(1, m.target.col(1) + m.one_T());
         return !(m.target == before);
       }},
      {"counit", [](RightBialgebroid& m) {
         m.counit *= Scalar(m.counit.field(), 2);
         return true;
       }},
      {"coproduct", [](RightBialgebroid& m) {
         const Matrix before = m.coproduct;
         const Matrix c1 = m.coproduct.col(1), c2 = m.coproduct.col(2);
         m.coproduct.set_col(1, c2);
         m.coproduct.set_col(2, c1);
         return !(m.coproduct == before);
       }},
      {"product", [](RightBialgebroid& m) {
         const auto& T = *m.total;
         std::vector<std::vector<Matrix>> op(T.dim(), std::vector<Matrix>(T.dim()));
         for (std::size_t i = 0; i < T.dim(); ++i)
           for (std::size_t j = 0; j < T.dim(); ++j) op[i][j] = T.product(j, i);
         m.total = share(FiniteAlgebra::from_products(T.field(), op, T.unit()));
         return !T.is_commutative();
       }},
  };
  std::size_t caught = 0;
  for (const char* name : {"s3-a3", "s3-a3-f5"}) {
    const auto bgd = *build_canonical(example(name));
    for (const auto& [label, mutate] : mutations) {
      auto m = bgd;
      if (!mutate(m)) {
        o.require(false, std::string(name) + ": " + label + " mutation is a no-op");
        continue;
      }
      std::string first;
      for (const auto& r : axiom_audit(m).results) {
        if (!r.pass && !r.witness.empty() && first.empty()) first = r.name;
      }
      o.require(!first.empty(), std::string(name) + ": " + label + " mutation undetected");
      if (!first.empty()) ++caught;
    }
  }
  // The coaction as a sixth structure map.
  const auto ext = example("field-sqrt2");
  const auto ctx = BialgebroidContext::make(ext);
  const auto g = GaloisSpaces::make(ctx);
  Matrix delta = *canonical_coaction(g);
  delta.set_col(1, Scalar(ext.field(), 2) * delta.col(1));
  const auto rep = comodule_algebra_audit(*build_canonical(ctx), g, delta);
  o.require(!rep.multiplicative && !rep.witness.empty(), "coaction mutation undetected");
  if (o.pass) o.detail << caught << "/10 bialgebroid mutations and the coaction mutation caught with witnesses";
}

}  // namespace

int main() {
  const std::pair<const char*, void (*)(Outcome&)> criteria[] = {
      {"quasibase soundness", quasibase_soundness},
      {"bialgebroid axiom suite", axiom_suite},
      {"commutative specialization", commutative_case},
      {"main theorem consistency", main_theorem},
      {"corollary oracle", corollary_oracle},
      {"invariants theorem", invariants_theorem},
      {"necessary conditions", necessary_conditions},
      {"composite D2", composite},
      {"quasibase independence", quasibase_independence},
      {"mutation sensitivity", mutation_sensitivity},
  };
  const auto start = std::chrono::steady_clock::now();
  int failures = 0, index = 0;
  for (const auto& [title, run] : criteria) {
    Outcome o;
    try {
      run(o);
    } catch (const std::exception& e) {
      o.require(false, std::string("exception: ") + e.what());
    }
    failures += !o.pass;
    std::cout << (o.pass ? "PASS" : "FAIL") << " " << ++index << " " << title << ": " << o.detail.str() << '\n';
  }
  const double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  std::cout << (10 - failures) << "/10 criteria passed in " << seconds << " s\n";
  return failures == 0 ? 0 : 1;
}
