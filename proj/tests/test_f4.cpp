#include <random>

#include <gtest/gtest.h>

#include "gradings/f4.hpp"

using namespace gradings;

namespace {

using PF = PrimeField;
using cayley_index::e1;
using cayley_index::e2;
using cayley_index::u;
using cayley_index::v;

struct Fixture {
  PF f{13};
  AlbertData<PF> A = albert_build(cayley_split(f));
  Vec<PF> b(std::size_t k) const { return A.C.basis_vec(k); }
};

const Fixture& fx() {
  static const Fixture F;
  return F;
}

const std::vector<Matrix<PF>>& der13() {
  static const auto d = f4_derivations(fx().A);
  return d;
}

const ChevalleyBasis<PF>& chev13() {
  static const auto c = chevalley_basis(fx().A);
  return c;
}

}  // namespace

TEST(Triality, DimensionAndMembership) {
  const auto& [f, A] = std::tie(fx().f, fx().A);
  auto T = tri_compute(A.C);
  EXPECT_EQ(T.size(), 28u);
  std::vector<Matrix<PF>> first, flat;
  for (const auto& t : T) {
    ASSERT_TRUE(in_tri(A.C, t));
    ASSERT_TRUE(in_tri(A.C, theta(t)));
    first.push_back(t.d1);
  }
  EXPECT_EQ(span_dim(f, first), 28u);
  // theta^3 = id, and theta maps tri into itself
  for (const auto& t : T) {
    auto t3 = theta_power(t, 3);
    EXPECT_TRUE(mat_eq(f, t3.d1, t.d1) && mat_eq(f, t3.d2, t.d2) && mat_eq(f, t3.d3, t.d3));
  }
  std::mt19937_64 rng(1);
  for (int s = 0; s < 20; ++s) {
    const auto &a = T[rng() % 28], &c = T[rng() % 28];
    auto br = triple_bracket(f, a, c);
    ASSERT_TRUE(in_tri(A.C, br));
    auto lhs = theta(br), rhs = triple_bracket(f, theta(a), theta(c));
    ASSERT_TRUE(mat_eq(f, lhs.d1, rhs.d1) && mat_eq(f, lhs.d2, rhs.d2) && mat_eq(f, lhs.d3, rhs.d3));
  }
  auto id = Matrix<PF>::identity(f, 8);
  EXPECT_FALSE(in_tri(A.C, TrialityTriple<PF>{id, id, id}));
}

TEST(Triality, TxyMembershipAndTable) {
  const auto& [f, A] = std::tie(fx().f, fx().A);
  const auto& C = A.C;
  for (std::size_t a = 0; a < 8; ++a)
    for (std::size_t c = 0; c < 8; ++c) ASSERT_TRUE(in_tri(C, t_xy(C, C.basis_vec(a), C.basis_vec(c))));
  auto half = f.inv(f.from_int(2));
  auto mhalf = f.neg(half);
  auto b = [&](std::size_t k) { return C.basis_vec(k); };
  auto s = sigma_xy(C, b(e1), b(e2));
  EXPECT_TRUE(vec_eq(f, mat_apply(f, s, b(e1)), vec_neg(f, b(e1))));
  EXPECT_TRUE(vec_eq(f, mat_apply(f, s, b(e2)), b(e2)));
  EXPECT_TRUE(vec_is_zero(f, mat_apply(f, s, b(u(2)))));
  auto t = t_xy(C, b(e1), b(e2));
  EXPECT_TRUE(vec_eq(f, mat_apply(f, t.d2, b(e1)), vec_scale(f, half, b(e1))));
  EXPECT_TRUE(vec_eq(f, mat_apply(f, t.d2, b(u(1))), vec_scale(f, mhalf, b(u(1)))));
  EXPECT_TRUE(vec_eq(f, mat_apply(f, t.d3, b(u(1))), vec_scale(f, half, b(u(1)))));
  auto t1 = t_xy(C, b(u(1)), b(v(1)));
  EXPECT_TRUE(vec_eq(f, mat_apply(f, t1.d2, b(u(2))), vec_scale(f, half, b(u(2)))));
  EXPECT_TRUE(vec_eq(f, mat_apply(f, t1.d3, b(e1)), vec_scale(f, mhalf, b(e1))));
  EXPECT_TRUE(vec_eq(f, mat_apply(f, t1.d3, b(u(1))), vec_scale(f, mhalf, b(u(1)))));
  EXPECT_TRUE(vec_eq(f, mat_apply(f, t1.d3, b(v(2))), vec_scale(f, mhalf, b(v(2)))));
  EXPECT_TRUE(vec_eq(f, mat_apply(f, t1.d1, b(u(1))), vec_neg(f, b(u(1)))));
}

TEST(Derivations, ConstructionsAgree) {
  const auto& [f, A] = std::tie(fx().f, fx().A);
  const auto& C = A.C;
  std::mt19937_64 rng(2);
  auto half = f.inv(f.from_int(2));
  for (int s = 0; s < 10; ++s) {
    auto x = random_vec(f, 8, rng), y = random_vec(f, 8, rng);
    for (int i = 1; i <= 3; ++i) {
      auto D = D_i(A, i, x);
      ASSERT_TRUE(mat_eq(f, D, D_i_table(A, i, x)));
      ASSERT_TRUE(is_derivation(A.algebra, D));
    }
    auto D1 = D_i(A, 1, x);
    EXPECT_TRUE(vec_eq(f, mat_apply(f, D1, A.E(2)), vec_scale(f, half, A.iota(1, x))));
    EXPECT_TRUE(vec_eq(f, mat_apply(f, D1, A.iota(2, y)), vec_neg(f, A.iota(3, para_product(C, x, y)))));
    EXPECT_TRUE(vec_is_zero(f, mat_apply(f, D1, A.E(1))));
    ASSERT_TRUE(is_derivation(A.algebra, D_xy(A, x, y)));
  }
  auto z = Matrix<PF>::zero(f, 8, 8);
  EXPECT_TRUE(mat_is_zero(f, D_from_triple(A, TrialityTriple<PF>{z, z, z})));
  for (const auto& t : tri_compute(C)) ASSERT_TRUE(is_derivation(A.algebra, D_from_triple(A, t)));
}

TEST(Derivations, DecompositionOverGF13) {
  auto r = der_decomposition_check(fx().A);
  EXPECT_EQ(r.tri, 28u);
  EXPECT_EQ(r.d, (std::array<std::size_t, 3>{8, 8, 8}));
  EXPECT_EQ(r.span, 52u);
  EXPECT_EQ(r.nullspace, 52u);
  EXPECT_TRUE(r.same_subspace);
  EXPECT_TRUE(r.ok());
  EXPECT_EQ(der13().size(), 52u);
}

TEST(Derivations, DecompositionOverRationals) {
  RationalField q;
  auto A = albert_build(cayley_split(q));
  EXPECT_TRUE(der_decomposition_check(A).ok());
}

TEST(Derivations, DecompositionInCharacteristicThree) {
  PF f(3);
  auto A = albert_build(cayley_split(f));
  EXPECT_TRUE(der_decomposition_check(A).ok());
}

TEST(Derivations, BracketRelations) {
  const auto& [f, A] = std::tie(fx().f, fx().A);
  const auto& C = A.C;
  auto T = tri_compute(C);
  std::mt19937_64 rng(3);
  auto two = f.from_int(2);
  for (int s = 0; s < 15; ++s) {
    auto x = random_vec(f, 8, rng), y = random_vec(f, 8, rng);
    const auto& t = T[rng() % T.size()];
    auto Dt = D_from_triple(A, t);
    for (int i = 1; i <= 3; ++i) {
      ASSERT_TRUE(mat_eq(f, bracket(f, Dt, D_i(A, i, x)), D_i(A, i, mat_apply(f, t[i], x))));
      ASSERT_TRUE(mat_eq(f, bracket(f, D_i(A, i, x), D_i(A, i + 1, y)), D_i(A, i + 2, para_product(C, x, y))));
      auto rhs = mat_scale(f, two, D_from_triple(A, theta_power(t_xy(C, x, y), i - 1)));
      ASSERT_TRUE(mat_eq(f, bracket(f, D_i(A, i, x), D_i(A, i, y)), rhs));
    }
  }
}

TEST(Roots, CensusAndEigenvalues) {
  const auto& [f, A] = std::tie(fx().f, fx().A);
  auto R = cartan_and_roots(A, der13());
  EXPECT_EQ(R.roots.size(), 48u);
  EXPECT_EQ(R.long_roots, 24u);
  EXPECT_EQ(R.short_roots, 8u);
  EXPECT_EQ(R.half_roots, 16u);
  EXPECT_EQ(grading_type(R.der.grading), (TypeVector{48, 0, 0, 1}));
  EXPECT_EQ(universal_group(R.der.lie, R.der.grading).group.to_string(), "Z^4");
  std::set<std::array<int, 4>> all;
  for (const auto& r : R.roots) all.insert(r.eps2);
  EXPECT_EQ(all.size(), 48u);
  for (auto e : all) {
    for (auto& c : e) c = -c;
    EXPECT_TRUE(all.count(e));
  }
  // the Cartan elements commute
  for (const auto& a : R.cartan)
    for (const auto& b : R.cartan) EXPECT_TRUE(mat_is_zero(f, bracket(f, a, b)));
  for (const auto& r : R.roots)
    if (r.eps2 == std::array<int, 4>{0, 2, 0, 0}) EXPECT_TRUE(mat_eq(f, bracket(f, R.cartan[1], r.vector), r.vector));
}

TEST(Roots, WeightsOfTheThreeCopies) {
  const auto& [f, A] = std::tie(fx().f, fx().A);
  auto h = cartan_subalgebra(A);
  Grading G = albert_cartan_model(f).grading;
  auto half = f.inv(f.from_int(2));
  for (int i = 1; i <= 3; ++i)
    for (std::size_t k = 0; k < 8; ++k) {
      auto e = cartan_degree_to_eps2(G.group.coords(G.degrees[A.iota_index(i, k)]));
      int plus = 0;
      for (int c : e) plus += c > 0;
      if (i == 1) EXPECT_EQ(eps_kind(e), "short");
      if (i == 2) EXPECT_TRUE(eps_kind(e) == "half" && plus % 2 == 0);
      if (i == 3) EXPECT_TRUE(eps_kind(e) == "half" && plus % 2 == 1);
      for (int j = 0; j < 4; ++j) {
        auto x = A.iota(i, A.C.basis_vec(k));
        auto ev = f.mul(f.from_int(e[static_cast<std::size_t>(j)]), half);
        ASSERT_TRUE(vec_eq(f, mat_apply(f, h[static_cast<std::size_t>(j)], x), vec_scale(f, ev, x)));
      }
    }
}

TEST(Chevalley, RelationsOverGF13) {
  const auto& [f, A] = std::tie(fx().f, fx().A);
  const auto& B = chev13();
  EXPECT_EQ(B.basis.size(), 52u);
  EXPECT_EQ(B.positive.size(), 24u);
  EXPECT_TRUE(B.sl2_ok);
  EXPECT_TRUE(B.nilpotent_ok);
  EXPECT_EQ(B.names[0], "D3(e1)");
  EXPECT_EQ(B.names[1], "D1(v3)");
  EXPECT_EQ(B.names[2], "D(v2,u3)");
  EXPECT_EQ(B.names[3], "D(v1,u2)");
  // the listed D(v2,v3) and D(v1,v2) sit in the root spaces eps2+eps3 and eps1+eps2
  Grading G = albert_cartan_model(f).grading;
  auto w = homogeneous_eps2(f, G, D_xy(A, A.C.basis_vec(v(2)), A.C.basis_vec(v(3))));
  EXPECT_EQ(*w, (std::array<int, 4>{0, 0, 2, 2}));
  w = homogeneous_eps2(f, G, D_xy(A, A.C.basis_vec(v(1)), A.C.basis_vec(v(2))));
  EXPECT_EQ(*w, (std::array<int, 4>{0, 2, 2, 0}));
}

TEST(Chevalley, Sl2TriplesFromSigma) {
  const auto& [f, A] = std::tie(fx().f, fx().A);
  Matrix<PF> s = sigma_albert(A);
  auto ms = [&](const Matrix<PF>& X) { return mat_scale(f, f.from_int(-1), mat_mul(f, s, mat_mul(f, X, s))); };
  auto two = f.from_int(2);
  std::vector<std::size_t> us{e1, u(1), u(2), u(3)};
  for (std::size_t a = 0; a < 4; ++a)
    for (std::size_t c = 0; c < 4; ++c) {
      if (a == c) continue;
      auto X = D_xy(A, A.C.basis_vec(us[a]), A.C.basis_vec(us[c]));
      auto H = bracket(f, X, ms(X));
      ASSERT_TRUE(mat_eq(f, bracket(f, H, X), mat_scale(f, two, X)));
    }
  for (int i = 1; i <= 3; ++i)
    for (std::size_t k = 0; k < 8; ++k) {
      auto X = D_i(A, i, A.C.basis_vec(k));
      auto H = bracket(f, X, ms(X));
      ASSERT_TRUE(mat_eq(f, bracket(f, H, X), mat_scale(f, two, X)));
    }
}

TEST(Chevalley, IntegralOverRationalsAndReducesModThirteen) {
  RationalField q;
  auto A = albert_build(cayley_split(q));
  auto B = chevalley_basis(A);
  EXPECT_TRUE(B.sl2_ok);
  EXPECT_TRUE(B.nilpotent_ok);
  EXPECT_TRUE(structure_constants_integral(B.lie));
  EXPECT_EQ(B.names, chev13().names);
  EXPECT_TRUE(structure_constants_reduce_to(B.lie, chev13().lie));
  // the action on A has constants in Z[1/2]
  for (const auto& X : B.basis)
    for (std::size_t k = 0; k < 27; ++k)
      for (std::size_t l = 0; l < 27; ++l) {
        mpz_class d = X(k, l).get_den();
        while (d % 2 == 0) d /= 2;
        ASSERT_EQ(d, 1);
      }
}

TEST(Chevalley, ExponentialsAreAutomorphisms) {
  const auto& [f, A] = std::tie(fx().f, fx().A);
  const auto& B = chev13();
  std::mt19937_64 rng(4);
  for (int s = 0; s < 6; ++s) {
    std::size_t k = 4 + rng() % 48;
    auto mu = f.from_int(1 + static_cast<std::int64_t>(rng() % 12));
    const auto& X = B.basis[k];
    auto g = exp_nilpotent(f, mat_scale(f, mu, X));
    ASSERT_TRUE(is_automorphism(A.algebra, g));
    Matrix<PF> ad = mat_scale(f, mu, B.lie.left_mult(unit_vec(f, 52, k)));
    auto E = exp_nilpotent(f, ad);
    ASSERT_TRUE(is_automorphism(B.lie, E));
    Matrix<PF> ginv = inverse(f, g);
    for (std::size_t j = 0; j < 52; j += 7) {
      auto conj = mat_mul(f, g, mat_mul(f, B.basis[j], ginv));
      Matrix<PF> img = Matrix<PF>::zero(f, 27, 27);
      auto col = E.column(j);
      for (std::size_t t = 0; t < 52; ++t) img = mat_add(f, img, mat_scale(f, col[t], B.basis[t]));
      ASSERT_TRUE(mat_eq(f, conj, img));
    }
  }
  auto X = D_i(A, 1, A.C.basis_vec(v(3)));
  EXPECT_TRUE(is_automorphism(A.algebra, exp_nilpotent(f, mat_scale(f, f.from_int(5), X))));
}

TEST(Chevalley, AdjointMapsAreDerivationsAndAllDerivationsAreInner) {
  const auto& [f, A] = std::tie(fx().f, fx().A);
  const auto& L = chev13().lie;
  std::mt19937_64 rng(5);
  for (int s = 0; s < 5; ++s) ASSERT_TRUE(is_derivation(L, adjoint(L, random_vec(f, 52, rng))));
  EXPECT_EQ(derivation_space(L).dim(), 52u);
}
