#include <random>
#include <string>

#include <gtest/gtest.h>

#include "gradings/composition.hpp"

using namespace gradings;

namespace {

const std::vector<std::string> kNames{"e1", "e2", "u1", "u2", "u3", "v1", "v2", "v3"};

std::size_t idx(const std::string& n) {
  for (std::size_t i = 0; i < kNames.size(); ++i)
    if (kNames[i] == n) return i;
  throw std::runtime_error("bad name " + n);
}

// Entry such as "-v2" or "0" as a coordinate vector.
template <class F>
Vec<F> entry(const F& f, const std::string& s) {
  Vec<F> v(8, f.zero());
  if (s == "0") return v;
  bool neg = s[0] == '-';
  v[idx(neg ? s.substr(1) : s)] = neg ? f.from_int(-1) : f.one();
  return v;
}

// Rows and columns in the order e1,e2,u1,u2,u3,v1,v2,v3.
const std::vector<std::vector<std::string>> kCayleyTable{
    {"e1", "0", "u1", "u2", "u3", "0", "0", "0"},
    {"0", "e2", "0", "0", "0", "v1", "v2", "v3"},
    {"0", "u1", "0", "v3", "-v2", "-e1", "0", "0"},
    {"0", "u2", "-v3", "0", "v1", "0", "-e1", "0"},
    {"0", "u3", "v2", "-v1", "0", "0", "0", "-e1"},
    {"v1", "0", "-e2", "0", "0", "0", "u3", "-u2"},
    {"v2", "0", "0", "-e2", "0", "-u3", "0", "u1"},
    {"v3", "0", "0", "0", "-e2", "u2", "-u1", "0"},
};

// Rows and columns in the order e1,e2,u1,v1,u2,v2,u3,v3.
const std::vector<std::string> kOkuboOrder{"e1", "e2", "u1", "v1", "u2", "v2", "u3", "v3"};
const std::vector<std::vector<std::string>> kOkuboTable{
    {"e2", "0", "0", "-v3", "0", "-v1", "0", "-v2"},
    {"0", "e1", "-u3", "0", "-u1", "0", "-u2", "0"},
    {"-u2", "0", "v1", "0", "-v3", "0", "0", "-e1"},
    {"0", "-v2", "0", "u1", "0", "-u3", "-e2", "0"},
    {"-u3", "0", "0", "-e1", "v2", "0", "-v1", "0"},
    {"0", "-v3", "-e2", "0", "0", "u2", "0", "-u1"},
    {"-u1", "0", "-v2", "0", "0", "-e1", "v3", "0"},
    {"0", "-v1", "0", "-u2", "-e2", "0", "0", "u3"},
};

template <class F>
std::size_t cayley_table_matches(const F& f) {
  auto C = cayley_split(f);
  std::size_t ok = 0;
  for (std::size_t i = 0; i < 8; ++i)
    for (std::size_t j = 0; j < 8; ++j)
      if (vec_eq(f, C.algebra.product_of_basis(i, j), entry(f, kCayleyTable[i][j]))) ++ok;
  return ok;
}

template <class F>
std::size_t okubo_table_matches(const F& f) {
  auto O = okubo(f);
  std::size_t ok = 0;
  for (std::size_t r = 0; r < 8; ++r)
    for (std::size_t c = 0; c < 8; ++c)
      if (vec_eq(f, O.algebra.product_of_basis(idx(kOkuboOrder[r]), idx(kOkuboOrder[c])), entry(f, kOkuboTable[r][c])))
        ++ok;
  return ok;
}

}  // namespace

TEST(CayleySplit, TableMatchesFigureEntryForEntry) {
  EXPECT_EQ(cayley_table_matches(PrimeField(13)), 64u);
  EXPECT_EQ(cayley_table_matches(RationalField{}), 64u);
}

TEST(CayleySplit, NamedProducts) {
  PrimeField f(13);
  auto C = cayley_split(f);
  auto b = [&](const char* n) { return unit_vec(f, 8, idx(n)); };
  EXPECT_TRUE(vec_eq(f, mul(C, b("u3"), b("u1")), b("v2")));
  EXPECT_TRUE(vec_eq(f, mul(C, b("v1"), b("v2")), b("u3")));
  EXPECT_TRUE(vec_eq(f, mul(C, b("e1"), b("e1")), b("e1")));
  EXPECT_TRUE(vec_is_zero(f, mul(C, b("e1"), b("e2"))));
  EXPECT_THROW(cayley_split(PrimeField(2)), CompositionError);
}

TEST(CayleySplit, NormAndConjugation) {
  PrimeField f(13);
  auto C = cayley_split(f);
  EXPECT_EQ(rank(f, C.norm), 8u);
  auto one = C.one();
  EXPECT_TRUE(vec_eq(f, mul(C, one, unit_vec(f, 8, 3)), unit_vec(f, 8, 3)));
  EXPECT_TRUE(mat_eq(f, mat_mul(f, C.conjugation, C.conjugation), Matrix<PrimeField>::identity(f, 8)));
  // e1bar = e2, ubar = -u
  EXPECT_TRUE(vec_eq(f, conj(C, unit_vec(f, 8, 0)), unit_vec(f, 8, 1)));
  EXPECT_TRUE(vec_eq(f, conj(C, unit_vec(f, 8, 2)), vec_neg(f, unit_vec(f, 8, 2))));
  for (std::size_t i = 0; i < 8; ++i)
    for (std::size_t j = 0; j < 8; ++j) {
      auto x = unit_vec(f, 8, i), y = unit_vec(f, 8, j);
      EXPECT_TRUE(vec_eq(f, conj(C, mul(C, x, y)), mul(C, conj(C, y), conj(C, x))));
    }
  std::mt19937_64 rng(11);
  for (int t = 0; t < 1000; ++t) {
    auto x = random_vec(f, 8, rng), y = random_vec(f, 8, rng);
    ASSERT_TRUE(composition_law_check(C, x, y));
    ASSERT_TRUE(vec_eq(f, mul(C, x, conj(C, x)), vec_scale(f, norm(C, x), one)));
  }
}

TEST(CayleyHamilton, ExamplesAndFuzz) {
  PrimeField f(13);
  auto C = cayley_split(f);
  EXPECT_TRUE(cayley_hamilton_check(C, unit_vec(f, 8, 0)));
  EXPECT_TRUE(cayley_hamilton_check(C, unit_vec(f, 8, 2)));
  std::mt19937_64 rng(12);
  for (int t = 0; t < 1000; ++t) ASSERT_TRUE(cayley_hamilton_check(C, random_vec(f, 8, rng)));
  RationalField q;
  auto Cq = cayley_split(q);
  std::mt19937_64 rq(3);
  for (int t = 0; t < 100; ++t) ASSERT_TRUE(cayley_hamilton_check(Cq, random_vec(q, 8, rq)));
}

TEST(CayleyDickson, SmallDoublings) {
  PrimeField f(13);
  auto K = cayley_dickson(ground_composition(f), f.from_int(-1), "w1");
  EXPECT_EQ(K.dim(), 2u);
  EXPECT_EQ(rank(f, K.norm), 2u);
  EXPECT_TRUE(f.is_zero(K.norm(0, 1)));
  std::mt19937_64 rng(1);
  for (int t = 0; t < 200; ++t) EXPECT_TRUE(composition_law_check(K, random_vec(f, 2, rng), random_vec(f, 2, rng)));
  auto Q = cayley_dickson(K, f.from_int(-1), "w2");
  for (int t = 0; t < 200; ++t) EXPECT_TRUE(composition_law_check(Q, random_vec(f, 4, rng), random_vec(f, 4, rng)));
  EXPECT_THROW(cayley_dickson(K, f.zero()), CompositionError);
}

TEST(CayleyDickson, GeneratorSquaresToMinusAlpha) {
  PrimeField f(13);
  for (std::int64_t a : {1, -1, 2, 5}) {
    auto K = cayley_dickson(ground_composition(f), f.from_int(a));
    auto u = unit_vec(f, 2, 1);
    EXPECT_TRUE(vec_eq(f, mul(K, u, u), vec_scale(f, f.from_int(-a), K.one())));
  }
}

TEST(CayleyDickson, ChainIsIsomorphicToSplitCayley) {
  for (std::uint64_t p : {13ULL, 7ULL}) {
    PrimeField f(p);
    auto chain = cayley_dickson_chain(f);
    auto split = cayley_split(f);
    EXPECT_EQ(chain.algebra.basis(), (std::vector<std::string>{"1", "w1", "w2", "w1w2", "w3", "w1w3", "w2w3", "w1w2w3"}));
    auto P = chain_to_split(split);
    EXPECT_TRUE(is_algebra_isomorphism(chain.algebra, split.algebra, P));
    EXPECT_TRUE(mat_eq(f, mat_mul(f, mat_transpose(P), mat_mul(f, split.norm, P)), chain.norm));
    for (std::size_t k : {1, 2, 4}) {
      auto w = chain.basis_vec(k);
      EXPECT_TRUE(vec_eq(f, mul(chain, w, w), chain.one()));
    }
    std::mt19937_64 rng(p);
    for (int t = 0; t < 500; ++t)
      ASSERT_TRUE(composition_law_check(chain, random_vec(f, 8, rng), random_vec(f, 8, rng)));
  }
}

TEST(CayleyDickson, ChainDegreesAreIndexBits) {
  PrimeField f(13);
  auto chain = cayley_dickson_chain(f);
  using D = std::vector<std::int64_t>;
  EXPECT_EQ(chain.doubling_degrees[1], (D{1, 0, 0}));  // w1
  EXPECT_EQ(chain.doubling_degrees[2], (D{0, 1, 0}));  // w2
  EXPECT_EQ(chain.doubling_degrees[4], (D{0, 0, 1}));  // w3
  EXPECT_EQ(chain.doubling_degrees[7], (D{1, 1, 1}));
  FgAbGroup z23(0, {2, 2, 2});
  std::vector<GroupElement> degs;
  for (const auto& d : chain.doubling_degrees) degs.push_back(z23.element(d));
  Grading G(z23, degs);
  EXPECT_TRUE(grading_verify(chain.algebra, G).ok);
}

TEST(ParaHurwitz, Laws) {
  PrimeField f(13);
  auto C = cayley_split(f);
  std::mt19937_64 rng(21);
  auto one = C.one();
  for (int t = 0; t < 500; ++t) {
    auto x = random_vec(f, 8, rng), y = random_vec(f, 8, rng), z = random_vec(f, 8, rng);
    ASSERT_TRUE(vec_eq(f, para_product(C, one, x), conj(C, x)));
    ASSERT_TRUE(f.eq(polar(C, para_product(C, x, y), z), polar(C, x, para_product(C, y, z))));
    ASSERT_TRUE(vec_eq(f, para_product(C, para_product(C, x, y), x), vec_scale(f, norm(C, x), y)));
    ASSERT_TRUE(vec_eq(f, para_product(C, x, para_product(C, y, x)), vec_scale(f, norm(C, x), y)));
  }
  EXPECT_TRUE(verify_symmetric_composition(para_hurwitz(C), 500).ok);
}

TEST(SymmetricComposition, CayleyProductIsNotSymmetric) {
  PrimeField f(13);
  auto C = cayley_split(f);
  auto r = verify_symmetric_composition(C);
  EXPECT_FALSE(r.ok);
  EXPECT_FALSE(r.detail.empty());
}

TEST(Tau, IsOrderThreeAutomorphism) {
  PrimeField f(13);
  auto C = cayley_split(f);
  auto t = tau_automorphism(C);
  EXPECT_TRUE(is_automorphism(C.algebra, t));
  EXPECT_TRUE(mat_eq(f, mat_mul(f, t, mat_mul(f, t, t)), Matrix<PrimeField>::identity(f, 8)));
  EXPECT_TRUE(vec_eq(f, mat_apply(f, t, unit_vec(f, 8, idx("u3"))), unit_vec(f, 8, idx("u1"))));
}

TEST(Okubo, TableMatchesFigureEntryForEntry) {
  EXPECT_EQ(okubo_table_matches(PrimeField(13)), 64u);
  EXPECT_EQ(okubo_table_matches(RationalField{}), 64u);
  PrimeField f(13);
  auto O = okubo(f);
  EXPECT_TRUE(vec_eq(f, O.algebra.product_of_basis(idx("e1"), idx("e1")), entry(f, "e2")));
  EXPECT_TRUE(vec_eq(f, O.algebra.product_of_basis(idx("u1"), idx("v3")), entry(f, "-e1")));
}

TEST(Okubo, SymmetricCompositionWithoutUnit) {
  PrimeField f(13);
  auto O = okubo(f);
  EXPECT_TRUE(verify_symmetric_composition(O, 500).ok);
  // no e with e*x = x on the basis: e*b_j = b_j is linear in e
  std::vector<Vec<PrimeField>> rows;
  Vec<PrimeField> rhs;
  for (std::size_t j = 0; j < 8; ++j)
    for (std::size_t k = 0; k < 8; ++k) {
      Vec<PrimeField> r(8, 0);
      for (std::size_t i = 0; i < 8; ++i) r[i] = O.algebra.product_of_basis(i, j)[k];
      rows.push_back(r);
      rhs.push_back(j == k ? 1 : 0);
    }
  auto s = solve_linear(f, Matrix<PrimeField>::from_rows(f, rows, 8), rhs);
  EXPECT_FALSE(s.particular.has_value());
  EXPECT_THROW(okubo(PrimeField(2)), CompositionError);
}

TEST(Okubo, GradingMatchesPropagationOracle) {
  PrimeField f(13);
  auto O = okubo(f);
  auto G = okubo_grading(O);
  // independent oracle: scan Z3^2 assignments consistent with every product in the figure
  std::vector<std::pair<int, int>> deg(8, {-1, -1});
  deg[idx("e1")] = {1, 0};
  deg[idx("u1")] = {0, 1};
  for (int round = 0; round < 8; ++round)
    for (std::size_t r = 0; r < 8; ++r)
      for (std::size_t c = 0; c < 8; ++c) {
        std::string e = kOkuboTable[r][c];
        if (e == "0") continue;
        std::size_t a = idx(kOkuboOrder[r]), b = idx(kOkuboOrder[c]), k = idx(e[0] == '-' ? e.substr(1) : e);
        if (deg[a].first >= 0 && deg[b].first >= 0)
          deg[k] = {(deg[a].first + deg[b].first) % 3, (deg[a].second + deg[b].second) % 3};
      }
  for (std::size_t i = 0; i < 8; ++i) {
    auto c = G.group.coords(G.degrees[i]);
    EXPECT_EQ(c[0], deg[i].first) << kNames[i];
    EXPECT_EQ(c[1], deg[i].second) << kNames[i];
  }
  EXPECT_EQ(G.group.coords(G.degrees[idx("v3")]), (std::vector<std::int64_t>{1, 2}));
  EXPECT_EQ(G.group.coords(G.degrees[idx("u3")]), (std::vector<std::int64_t>{2, 1}));
  EXPECT_TRUE(G.verified);
  EXPECT_EQ(grading_type(G), (TypeVector{8}));
}

TEST(RelatedTriples, Basics) {
  PrimeField f(13);
  auto C = cayley_split(f);
  auto I = Matrix<PrimeField>::identity(f, 8);
  EXPECT_TRUE(verify_related_triple(C, I, I, I));
  EXPECT_FALSE(verify_related_triple(C, I, I, mat_scale(f, f.from_int(-1), I)));
  auto s = cayley_sigma(C);
  EXPECT_TRUE(verify_related_triple(C, s, s, s));
  auto t = triple_from_spin_generators(C, {});
  EXPECT_TRUE(mat_eq(f, t.f1, I) && mat_eq(f, t.f2, I) && mat_eq(f, t.f3, I));
}

TEST(RelatedTriples, SpinGeneratorValidation) {
  PrimeField f(13);
  auto C = cayley_split(f);
  auto u1 = unit_vec(f, 8, idx("u1")), v1 = unit_vec(f, 8, idx("v1"));
  auto a = vec_add(f, u1, v1);  // trace zero, norm 1
  EXPECT_THROW(triple_from_spin_generators(C, {a}), CompositionError);
  EXPECT_THROW(triple_from_spin_generators(C, {C.one(), C.one()}), CompositionError);
  EXPECT_THROW(triple_from_spin_generators(C, {a, vec_scale(f, f.from_int(2), a)}), CompositionError);
  auto t = triple_from_spin_generators(C, {a, a});
  EXPECT_TRUE(verify_related_triple(C, t.f1, t.f2, t.f3));
}

TEST(RelatedTriples, RandomSpinGeneratorsGiveRelatedTriples) {
  PrimeField f(13);
  auto C = cayley_split(f);
  std::mt19937_64 rng(77);
  auto one = C.one();
  auto random_trace_zero = [&]() {
    while (true) {
      auto x = random_vec(f, 8, rng);
      // project away from 1: x - n(x,1)/2 * 1 has trace zero
      x = vec_sub(f, x, vec_scale(f, f.div(polar(C, x, one), f.from_int(2)), one));
      if (!f.is_zero(norm(C, x))) return x;
    }
  };
  for (int t = 0; t < 50; ++t) {
    std::size_t count = 2 * (1 + rng() % 3);
    std::vector<Vec<PrimeField>> xs;
    auto prod = f.one();
    for (std::size_t k = 0; k + 1 < count; ++k) {
      xs.push_back(random_trace_zero());
      prod = f.mul(prod, norm(C, xs.back()));
    }
    // last generator: scale a trace-zero element so the norm product is 1
    Vec<PrimeField> last;
    while (true) {
      last = random_trace_zero();
      auto need = f.inv(f.mul(prod, norm(C, last)));
      if (auto s = f.sqrt(need)) {
        last = vec_scale(f, *s, last);
        break;
      }
    }
    xs.push_back(last);
    auto tr = triple_from_spin_generators(C, xs);
    EXPECT_TRUE(verify_related_triple(C, tr.f1, tr.f2, tr.f3));
    EXPECT_TRUE(is_orthogonal(C, tr.f1) && is_orthogonal(C, tr.f2) && is_orthogonal(C, tr.f3));
  }
}

TEST(RelatedTriples, NormalizationSendsX2ToOne) {
  PrimeField f(13);
  auto C = cayley_split(f);
  std::mt19937_64 rng(5);
  int done = 0;
  while (done < 20) {
    auto x = random_vec(f, 8, rng);
    auto n = norm(C, x);
    if (f.is_zero(n)) continue;
    auto s = f.sqrt(f.inv(n));
    if (!s) continue;
    x = vec_scale(f, *s, x);
    auto gens = normalizing_generators(C, x);
    auto t = triple_from_spin_generators(C, gens);
    EXPECT_TRUE(vec_eq(f, mat_apply(f, t.f2, x), C.one()));
    EXPECT_TRUE(vec_eq(f, mat_apply(f, t.f1, C.one()), C.one()));
    ++done;
  }
}

TEST(CompositionJson, HasNormConjugationUnit) {
  PrimeField f(13);
  auto j = composition_to_json(cayley_split(f));
  EXPECT_EQ(j["norm"].size(), 8u);
  EXPECT_EQ(j["conjugation"].size(), 8u);
  EXPECT_EQ(j["unit"], json::array({"1", "1", "0", "0", "0", "0", "0", "0"}));
  EXPECT_TRUE(composition_to_json(okubo(f))["unit"].is_null());
}
