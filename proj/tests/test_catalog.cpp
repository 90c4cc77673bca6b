#include <functional>
#include <random>

#include <gtest/gtest.h>

#include "gradings/catalog.hpp"

using namespace gradings;

namespace {

using PF = PrimeField;
using cayley_index::u;
using cayley_index::v;

Catalog<PF>& gf13() {
  static Catalog<PF> c(PF(13));
  return c;
}

std::vector<std::size_t> component_of(const Grading& G, const GroupElement& g) {
  auto comps = G.components();
  auto it = comps.find(g);
  return it == comps.end() ? std::vector<std::size_t>{} : it->second;
}

// Weights of the split Cayley algebra and roots of G2 in the coordinates of deg u1, deg u2.
using Weight = std::array<int, 2>;

std::vector<Weight> cayley_weights() {
  return {{0, 0}, {0, 0}, {1, 0}, {0, 1}, {-1, -1}, {-1, 0}, {0, -1}, {1, 1}};
}

std::vector<Weight> g2_roots() {
  return {{1, 0}, {0, 1}, {1, 1}, {-1, 0}, {0, -1}, {-1, -1}, {1, -1}, {2, 1}, {1, 2}, {-1, 1}, {-2, -1}, {-1, -2}};
}

struct OracleGrading {
  TypeVector type;
  FgAbGroup universal;
};

// Type and universal group of the coarsening of a weight-space decomposition.
// pieces: weight and dimension of each piece; nonzero(a, b) tells whether the product of the pieces of
// weights a and b is nonzero, in which case it lands in the piece of weight a + b.
OracleGrading coarsen(const FgAbGroup& T, const GroupElement& x, const GroupElement& y,
                      const std::vector<std::pair<Weight, std::size_t>>& pieces,
                      const std::function<bool(const Weight&, const Weight&)>& nonzero) {
  auto img = [&](const Weight& w) { return T.add(T.scale(w[0], x), T.scale(w[1], y)); };
  std::map<GroupElement, std::size_t> dims;
  for (const auto& [w, d] : pieces) dims[img(w)] += d;
  TypeVector t;
  for (const auto& [g, d] : dims) {
    if (t.size() < d) t.resize(d, 0);
    ++t[d - 1];
  }
  std::map<GroupElement, std::size_t> index;
  for (const auto& [g, d] : dims) index.emplace(g, index.size());
  std::vector<std::vector<std::int64_t>> rel;
  for (const auto& [a, da] : pieces)
    for (const auto& [b, db] : pieces) {
      if (!nonzero(a, b)) continue;
      std::vector<std::int64_t> r(index.size(), 0);
      r[index[img(a)]] += 1;
      r[index[img(b)]] += 1;
      r[index[img({a[0] + b[0], a[1] + b[1]})]] -= 1;
      if (std::any_of(r.begin(), r.end(), [](auto c) { return c != 0; })) rel.push_back(r);
    }
  return {t, group_from_presentation(index.size(), rel).group};
}

OracleGrading cayley_oracle(const FgAbGroup& T, const GroupElement& x, const GroupElement& y) {
  std::vector<std::pair<Weight, std::size_t>> pieces;
  std::set<Weight> W;
  for (const auto& w : cayley_weights()) W.insert(w);
  for (const auto& w : W) pieces.emplace_back(w, w == Weight{0, 0} ? 2 : 1);
  return coarsen(T, x, y, pieces, [&](const Weight& a, const Weight& b) { return W.count({a[0] + b[0], a[1] + b[1]}) > 0; });
}

OracleGrading g2_oracle(const FgAbGroup& T, const GroupElement& x, const GroupElement& y) {
  std::set<Weight> R;
  for (const auto& r : g2_roots()) R.insert(r);
  std::vector<std::pair<Weight, std::size_t>> pieces{{{0, 0}, 2}};
  for (const auto& r : R) pieces.emplace_back(r, 1);
  auto nonzero = [&](const Weight& a, const Weight& b) {
    bool za = a == Weight{0, 0}, zb = b == Weight{0, 0};
    if (za && zb) return false;
    if (za || zb) return true;
    Weight s{a[0] + b[0], a[1] + b[1]};
    return s == Weight{0, 0} || R.count(s) > 0;
  };
  return coarsen(T, x, y, pieces, nonzero);
}

TypeVector type_of(const std::map<GroupElement, std::size_t>& dims) {
  TypeVector t;
  for (const auto& [g, d] : dims) {
    if (d == 0) continue;
    if (t.size() < d) t.resize(d, 0);
    ++t[d - 1];
  }
  return t;
}

}  // namespace

TEST(CatalogBuild, AlbertCartanIsZ4OfType24_0_1) {
  auto b = gf13().build("albert/cartan");
  EXPECT_EQ(universal_group(b.graded.algebra, b.graded.grading).group, FgAbGroup::free_group(4));
  EXPECT_EQ(grading_type(b.graded.grading), (TypeVector{24, 0, 1}));
}

TEST(CatalogBuild, CayleyFiveGradingComponents) {
  auto b = gf13().build("cayley/5-grading");
  const Grading& G = b.graded.grading;
  const FgAbGroup& Z = G.group;
  ASSERT_EQ(Z, FgAbGroup::free_group(1));
  auto at = [&](std::int64_t k) { return component_of(G, Z.element({k})); };
  EXPECT_EQ(at(0), (std::vector<std::size_t>{cayley_index::e1, cayley_index::e2}));
  EXPECT_EQ(at(1), (std::vector<std::size_t>{u(1), u(2)}));
  EXPECT_EQ(at(2), (std::vector<std::size_t>{v(3)}));
  EXPECT_EQ(at(-1), (std::vector<std::size_t>{v(1), v(2)}));
  EXPECT_EQ(at(-2), (std::vector<std::size_t>{u(3)}));
  EXPECT_EQ(G.components().size(), 5u);
}

TEST(CatalogBuild, AlbertZ2_5ComponentsAreTraceOrthogonal) {
  auto b = gf13().build("albert/z2^5");
  const auto& A = b.graded.algebra;
  const Grading& G = b.graded.grading;
  EXPECT_EQ(grading_type(G), (TypeVector{24, 0, 1}));
  ASSERT_TRUE(A.form().has_value());
  const auto& T = *A.form();
  const PF& f = A.field();
  for (std::size_t i = 0; i < A.dim(); ++i)
    for (std::size_t j = 0; j < A.dim(); ++j)
      if (!f.is_zero(T(i, j))) EXPECT_TRUE(G.group.is_identity(G.group.add(G.degrees[i], G.degrees[j])));
  EXPECT_TRUE(trace_orthogonality_check(A, b.graded.grading).ok);
}

TEST(CatalogBuild, FieldRequirements) {
  Catalog<RationalField> q{RationalField{}};
  EXPECT_THROW(q.build("albert/zxz2^3"), CatalogError);
  EXPECT_THROW(q.build("albert/z3^3"), CatalogError);
  EXPECT_NO_THROW(q.build("albert/cartan"));
  Catalog<PF> gf3{PF(3)};
  EXPECT_THROW(gf3.build("albert/z3^3"), CatalogError);
  EXPECT_THROW(gf3.build("g2/cartan"), CatalogError);
  EXPECT_THROW(gf13().build("nosuch/entry"), CatalogError);
  auto qi = make_field(named_field("q-i"));
  Catalog<QuadraticField<RationalField>> cqi(std::get<QuadraticField<RationalField>>(qi));
  EXPECT_EQ(grading_type(cqi.build("albert/zxz2^3").graded.grading), (TypeVector{25, 1}));
}

TEST(Registry, LoadsEveryScope) {
  const Registry& r = gf13().registry();
  EXPECT_EQ(r.scope("cayley").size(), 9u);
  EXPECT_EQ(r.scope("g2").size(), 25u);
  EXPECT_EQ(r.scope("albert").size(), 9u);
  EXPECT_EQ(r.scope("f4").size(), 13u);
  for (const auto& e : r.entries) {
    if (!e.base.empty()) EXPECT_TRUE(r.contains(e.base)) << e.name;
    if (!e.via.empty()) EXPECT_TRUE(r.contains(e.via)) << e.name;
    EXPECT_TRUE(e.type.has_value()) << e.name;
    EXPECT_FALSE(e.source.empty()) << e.name;
  }
  EXPECT_EQ(Registry::from_json(r.to_json()).to_json(), r.to_json());
}

TEST(Registry, InvariantPairsAreDistinctWithinAScope) {
  const Registry& r = gf13().registry();
  for (const auto& s : catalog_scopes()) {
    std::map<std::pair<std::string, TypeVector>, std::string> seen;
    for (const auto* e : r.scope(s)) {
      if (e->name.rfind("f4/coarse/", 0) == 0 && r.contains("f4/" + e->name.substr(10))) continue;
      auto [it, fresh] = seen.emplace(std::make_pair(e->group.to_string(), *e->type), e->name);
      if (!fresh) EXPECT_EQ(e->invariant_equal, it->second) << e->name;
    }
  }
}

class VerifyScope : public ::testing::TestWithParam<std::string> {};

TEST_P(VerifyScope, EveryEntryPassesOverGF13) {
  RegistryReport r = verify_registry(gf13(), {GetParam()}, false);
  for (const auto& l : r.lines) EXPECT_EQ(l.status, "PASS") << l.name << ": " << l.detail;
  for (const auto& l : r.checks) EXPECT_EQ(l.status, "PASS") << l.name << ": " << l.detail;
  EXPECT_EQ(r.lines.size(), gf13().registry().scope(GetParam()).size());
}

INSTANTIATE_TEST_SUITE_P(Scopes, VerifyScope, ::testing::Values("cayley", "g2", "albert", "f4"));

TEST(Verify, F4ZxZ2_3FreeCoordinateDimensions) {
  auto b = gf13().build("f4/zxz2^3");
  auto z = free_coordinate_dims(b.graded.grading);
  EXPECT_EQ(z, (std::map<std::int64_t, std::size_t>{{-2, 7}, {-1, 8}, {0, 22}, {1, 8}, {2, 7}}));
}

TEST(Verify, F4Z3_3IsOfType0_26) {
  auto b = gf13().build("f4/z3^3");
  EXPECT_EQ(grading_type(b.graded.grading), (TypeVector{0, 26}));
}

TEST(Verify, AlbertOverRationalsSkipsEntriesNeedingRoots) {
  Catalog<RationalField> q{RationalField{}};
  RegistryReport r = verify_registry(q, {"albert"}, false);
  std::set<std::string> skipped;
  for (const auto& l : r.lines) {
    if (l.status == "SKIP") skipped.insert(l.name);
    else EXPECT_EQ(l.status, "PASS") << l.name << ": " << l.detail;
  }
  EXPECT_EQ(skipped, (std::set<std::string>{"albert/z3^3", "albert/z3xz2^3", "albert/z4xz2^2", "albert/z4xz2^3",
                                            "albert/zxz2^3"}));
  EXPECT_TRUE(r.all_pass());
}

TEST(Verify, UnknownScopeThrows) { EXPECT_THROW(verify_registry(gf13(), {"nosuch"}, false), CatalogError); }

TEST(Verify, ReportIsDeterministic) {
  Catalog<PF> a{PF(13)}, b{PF(13)};
  EXPECT_EQ(verify_registry(a, {"cayley", "g2"}, true).to_json().dump(),
            verify_registry(b, {"cayley", "g2"}, true).to_json().dump());
}

TEST(Verify, DetectsAWrongExpectation) {
  Registry reg = gf13().registry();
  for (auto& e : reg.entries)
    if (e.name == "cayley/z3") e.type = TypeVector{0, 4};
  Catalog<PF> c(PF(13), reg, gf13().golden());
  RegistryReport r = verify_registry(c, {"cayley"}, false);
  EXPECT_FALSE(r.all_pass());
  EXPECT_EQ(r.count("FAIL"), 1u);
}

// G2: independent root-system computation of every registry entry induced from the Cartan grading.
TEST(G2Oracle, TypesAndUniversalGroupsMatchTheRegistry) {
  const Registry& reg = gf13().registry();
  std::size_t checked = 0;
  for (const auto* e : reg.scope("g2")) {
    if (e->base != "g2/cartan") continue;
    const RegistryEntry& via = reg.at(e->via);
    const FgAbGroup& T = e->group;
    std::set<TypeVector> types;
    auto els = T.bounded_elements(3);
    for (const auto& x : els)
      for (const auto& y : els) {
        OracleGrading c = cayley_oracle(T, x, y);
        if (!(c.universal == via.group) || c.type != *via.type) continue;
        OracleGrading g = g2_oracle(T, x, y);
        if (g.universal == T) types.insert(g.type);
      }
    ASSERT_EQ(types.size(), 1u) << e->name;
    EXPECT_EQ(*types.begin(), *e->type) << e->name;
    ++checked;
  }
  EXPECT_EQ(checked, 21u);
}

TEST(G2Oracle, CartanItself) {
  FgAbGroup Z2 = FgAbGroup::free_group(2);
  OracleGrading g = g2_oracle(Z2, Z2.element({1, 0}), Z2.element({0, 1}));
  EXPECT_EQ(g.type, (TypeVector{12, 1}));
  EXPECT_EQ(g.universal, Z2);
  EXPECT_EQ(*gf13().registry().at("g2/cartan").type, g.type);
}

// Doubling gradings: Der(C) has a 2-dimensional component at every nonzero element of Z2^3.
TEST(G2Oracle, DoublingGradings) {
  const Registry& reg = gf13().registry();
  FgAbGroup Z23(0, {2, 2, 2});
  for (int r = 1; r <= 3; ++r) {
    std::map<GroupElement, std::size_t> dims;
    FgAbGroup Zr(0, std::vector<std::int64_t>(static_cast<std::size_t>(r), 2));
    for (const auto& g : Z23.bounded_elements(0)) {
      auto c = Z23.coords(g);
      if (Z23.is_identity(g)) continue;
      dims[Zr.element(std::vector<std::int64_t>(c.end() - r, c.end()))] += 2;
    }
    EXPECT_EQ(type_of(dims), *reg.at("g2/cd-z2^" + std::to_string(r)).type) << r;
  }
}

TEST(G2Oracle, PaperTypesOfTheThreeGrading) {
  const Registry& reg = gf13().registry();
  EXPECT_EQ(*reg.at("g2/3-grading/z").type, (TypeVector{2, 0, 0, 3}));
  EXPECT_FALSE(reg.at("g2/3-grading/z").type_derived);
  EXPECT_EQ(*reg.at("g2/3-grading/z3").type, (TypeVector{0, 0, 0, 1, 2}));
  EXPECT_FALSE(reg.at("g2/3-grading/z3").type_derived);
  auto b = gf13().build("g2/3-grading/z");
  auto z = free_coordinate_dims(b.graded.grading);
  EXPECT_EQ(z, (std::map<std::int64_t, std::size_t>{{-2, 1}, {-1, 4}, {0, 4}, {1, 4}, {2, 1}}));
}

TEST(G2Oracle, CountIs25) {
  EXPECT_EQ(gf13().registry().scope("g2").size(), 25u);
  std::size_t derived = 0;
  for (const auto* e : gf13().registry().scope("g2")) derived += e->type_derived;
  EXPECT_EQ(derived, 22u);
}

// Every Albert grading induces the registered F4 grading through the same homomorphism.
TEST(AlbertToF4, InducedGradingsMatchTheF4Registry) {
  Catalog<PF>& c = gf13();
  const Registry& reg = c.registry();
  std::size_t matched = 0;
  for (const auto* e : reg.scope("albert")) {
    auto b = c.build(e->name);
    std::string fine = e->fine() ? e->name : e->base;
    GradedAlgebra<PF> f4 = induce(c.fine("f4/" + fine.substr(7)), b.hom);
    TypeVector t = grading_type(f4.grading);
    FgAbGroup U = universal_group(f4.algebra, f4.grading).group;
    for (const auto* g : reg.scope("f4")) {
      bool partner = g->via == e->name || (e->fine() && g->name == "f4/" + e->name.substr(7));
      if (!partner) continue;
      EXPECT_EQ(t, *g->type) << e->name << " -> " << g->name;
      EXPECT_EQ(U, g->group) << e->name << " -> " << g->name;
      ++matched;
    }
    Grading carrier = f4.carrier->grading;
    EXPECT_TRUE(grading_verify(f4.carrier->algebra, carrier).ok);
    EXPECT_EQ(grading_type(f4.carrier->grading), *e->type) << e->name;
  }
  EXPECT_EQ(matched, 12u);
}

TEST(Coarsening, G2CartanToTheFiveGradingOverZ) {
  Catalog<PF>& c = gf13();
  const Registry& reg = c.registry();
  CoarseningTarget t{FgAbGroup::free_group(1), reg.at("g2/5-grading/z").type, FgAbGroup::free_group(1),
                     TypeVector{2, 3}};
  auto alpha = realize_coarsening(c.fine("g2/cartan"), t);
  ASSERT_TRUE(alpha.has_value());
  auto g = induce(c.fine("g2/cartan"), *alpha);
  EXPECT_EQ(grading_type(g.grading), *reg.at("g2/5-grading/z").type);
  EXPECT_EQ(grading_type(g.carrier->grading), (TypeVector{2, 3}));
  EXPECT_EQ(universal_group(g.algebra, g.grading).group, FgAbGroup::free_group(1));
}

TEST(Coarsening, F4Z8xZ2_2HasFourthPowerInH) {
  Catalog<PF>& c = gf13();
  FgAbGroup target(0, {2, 2, 8});
  auto alpha = realize_coarsening(c.fine("f4/zxz2^3"), CoarseningTarget{target, TypeVector{19, 6, 7}});
  ASSERT_TRUE(alpha.has_value());
  const FgAbGroup& D = alpha->domain();
  GroupElement a = alpha->apply(D.generator(0));
  std::vector<GroupElement> hgens;
  for (int i = 1; i < D.num_generators(); ++i) hgens.push_back(alpha->apply(D.generator(i)));
  auto H = finite_subgroup(target, hgens);
  EXPECT_EQ(H.size(), 8u);
  GroupElement a4 = target.scale(4, a);
  EXPECT_FALSE(target.is_identity(a4));
  EXPECT_TRUE(H.count(a4));
  EXPECT_EQ(target.order(a).value_or(0), 8);
}

TEST(Coarsening, AlbertGamma3OrderFourOutsideH) {
  Catalog<PF>& c = gf13();
  auto b = c.build("albert/z4xz2^3");
  const FgAbGroup& T = b.hom.codomain();
  const FgAbGroup& D = b.hom.domain();
  GroupElement a = b.hom.apply(D.generator(0));
  std::vector<GroupElement> hgens;
  for (int i = 1; i < D.num_generators(); ++i) hgens.push_back(b.hom.apply(D.generator(i)));
  auto H = finite_subgroup(T, hgens);
  EXPECT_EQ(T.order(a).value_or(0), 4);
  EXPECT_FALSE(H.count(T.scale(2, a)));
  EXPECT_EQ(grading_type(b.graded.grading), (TypeVector{23, 2}));
}

TEST(Coarsening, OwnUniversalGroupGivesTheIdentity) {
  Catalog<PF>& c = gf13();
  for (const auto& name : {"albert/cartan", "cayley/cd-z2^3", "g2/cartan"}) {
    const auto& base = c.fine(name);
    auto alpha = realize_coarsening(base, CoarseningTarget{base.grading.group, grading_type(base.grading)});
    ASSERT_TRUE(alpha.has_value()) << name;
    EXPECT_EQ(alpha->to_json(), GroupHom::identity(base.grading.group).to_json()) << name;
  }
}

TEST(Coarsening, ExhaustedSearchIsAbsent) {
  auto alpha = realize_coarsening(gf13().fine("cayley/cartan"), CoarseningTarget{FgAbGroup(0, {3}), TypeVector{8}});
  EXPECT_FALSE(alpha.has_value());
}

TEST(Coarsening, GoldenHomsMatchASearch) {
  Catalog<PF>& c = gf13();
  for (const auto& name : {"g2/cartan/z7", "g2/zxz2/z4xz2", "albert/z2^4", "f4/coarse/z3xz2^3"}) {
    auto found = c.search(c.registry().at(name));
    ASSERT_TRUE(found.has_value()) << name;
    ASSERT_TRUE(c.golden().homs.count(name)) << name;
    EXPECT_EQ(found->to_json(), c.golden().homs.at(name).to_json()) << name;
  }
}

TEST(Coarsening, FineCayleyGradingsAreMutuallyNonCoarsenable) {
  PF f(13);
  auto split = cayley_split(f);
  auto chain = cayley_dickson_chain(f);
  Grading cartan = cayley_cartan_grading(split.algebra);
  Grading cd = doubling_grading(chain);
  Matrix<PF> P = chain_to_split(split);
  EXPECT_FALSE(is_coarsening(split.algebra, cd, cartan, P).has_value());
  EXPECT_FALSE(is_coarsening(chain.algebra, cartan, cd, inverse(f, P)).has_value());
  EXPECT_TRUE(is_coarsening(split.algebra, cartan, cartan).has_value());
}

TEST(RootVectors, GoldenTableIsReproduced) {
  json golden = read_json_file(data_dir() + "/root_vectors.json");
  json now = root_vector_table(albert_build(cayley_split(PF(13))));
  EXPECT_EQ(now, golden);
  ASSERT_EQ(now["roots"].size(), 24u);
  std::map<std::string, int> kinds;
  for (const auto& r : now["roots"]) ++kinds[r["kind"].get<std::string>()];
  EXPECT_EQ(kinds["long"], 12);
  EXPECT_EQ(kinds["short"], 4);
  EXPECT_EQ(kinds["half"], 8);
}

TEST(GammaEquiv, Examples) {
  FgAbGroup G(0, {12});
  auto e = [&](std::int64_t k) { return G.element({k}); };
  EXPECT_TRUE(gamma_equiv(G, GammaKind::cayley_gamma1, {e(1), e(2), e(9)}, {e(2), e(1), e(9)}));
  EXPECT_TRUE(gamma_equiv(G, GammaKind::cayley_gamma1, {e(1), e(1), e(-2)}, {e(-1), e(-1), e(2)}));
  EXPECT_FALSE(gamma_equiv(G, GammaKind::cayley_gamma1, {e(1), e(1), e(-2)}, {e(1), e(2), e(-3)}));

  FgAbGroup K(0, {2, 2, 2, 4});
  std::vector<GroupElement> H{K.element({1, 0, 0, 0}), K.element({0, 1, 0, 0}), K.element({0, 0, 1, 0})};
  EXPECT_TRUE(gamma_equiv(K, GammaKind::albert_gamma3, {K.element({0, 0, 0, 1})}, {K.element({1, 0, 0, 3})}, H));
  EXPECT_TRUE(gamma_equiv(K, GammaKind::albert_gamma3, {K.element({0, 0, 0, 1})}, {K.element({1, 1, 0, 1})}, H));
  EXPECT_FALSE(gamma_equiv(K, GammaKind::albert_gamma3, {K.element({0, 0, 0, 1})}, {K.element({0, 0, 1, 3})},
                           {K.element({1, 0, 0, 0}), K.element({0, 1, 0, 0}), K.element({0, 0, 0, 2})}));
}

TEST(GammaEquiv, MalformedTuplesThrow) {
  FgAbGroup G(0, {12});
  auto e = [&](std::int64_t k) { return G.element({k}); };
  EXPECT_THROW(gamma_equiv(G, GammaKind::cayley_gamma1, {e(1), e(1), e(1)}, {e(1), e(1), e(-2)}), CatalogError);
  EXPECT_THROW(gamma_equiv(G, GammaKind::cayley_gamma1, {e(1), e(-1)}, {e(1), e(-1)}), CatalogError);
  FgAbGroup K(0, {2, 2, 2, 4});
  std::vector<GroupElement> H{K.element({1, 0, 0, 0}), K.element({0, 1, 0, 0}), K.element({0, 0, 1, 0})};
  EXPECT_THROW(gamma_equiv(K, GammaKind::albert_gamma3, {K.element({1, 0, 0, 2})}, {K.element({0, 0, 0, 1})}, H),
               CatalogError);
  EXPECT_THROW(gamma_equiv(K, GammaKind::albert_gamma2, {K.element({0, 0, 0, 1}), K.element({0, 0, 0, 1}),
                                                          K.element({0, 0, 0, 2})},
                           {K.identity(), K.identity(), K.identity()}, H),
               CatalogError);
  EXPECT_THROW(gamma_equiv(K, GammaKind::albert_gamma3, {K.element({0, 0, 0, 1})}, {K.element({0, 0, 0, 1})},
                           {K.element({1, 0, 0, 0})}),
               CatalogError);
}

namespace {

struct GammaSample {
  FgAbGroup G;
  GammaKind kind;
  std::vector<GroupElement> H;
  std::vector<std::vector<GroupElement>> params;
};

GammaSample sample(GammaKind kind, std::mt19937_64& rng) {
  GammaSample s;
  s.kind = kind;
  if (kind == GammaKind::cayley_gamma1) {
    s.G = FgAbGroup(0, {3, 3});
  } else if (kind == GammaKind::albert_gamma2) {
    s.G = FgAbGroup(0, {2, 2, 2, 2});
    s.H = {s.G.element({1, 0, 0, 0}), s.G.element({0, 1, 0, 0}), s.G.element({0, 0, 1, 0})};
  } else {
    s.G = FgAbGroup(0, {2, 2, 2, 8});
    s.H = {s.G.element({1, 0, 0, 0}), s.G.element({0, 1, 0, 0}), s.G.element({0, 0, 0, 4})};
  }
  auto all = s.G.bounded_elements(0);
  std::vector<GroupElement> pool;
  for (const auto& g : all) {
    bool two = s.G.is_identity(s.G.scale(2, g));
    if (kind == GammaKind::albert_gamma2 && !two) continue;
    if (kind == GammaKind::albert_gamma3 && two) continue;
    pool.push_back(g);
  }
  std::uniform_int_distribution<std::size_t> pick(0, pool.size() - 1);
  for (int n = 0; n < 40; ++n) {
    if (kind == GammaKind::albert_gamma3) {
      s.params.push_back({pool[pick(rng)]});
    } else {
      GroupElement a = pool[pick(rng)], b = pool[pick(rng)];
      s.params.push_back({a, b, s.G.neg(s.G.add(a, b))});
    }
  }
  return s;
}

}  // namespace

class GammaProperties : public ::testing::TestWithParam<GammaKind> {};

TEST_P(GammaProperties, IsAnEquivalenceRelation) {
  std::mt19937_64 rng(20241016);
  GammaSample s = sample(GetParam(), rng);
  std::size_t n = s.params.size(), related = 0;
  std::vector<std::vector<bool>> R(n, std::vector<bool>(n));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) R[i][j] = gamma_equiv(s.G, s.kind, s.params[i], s.params[j], s.H);
  for (std::size_t i = 0; i < n; ++i) {
    EXPECT_TRUE(R[i][i]);
    for (std::size_t j = 0; j < n; ++j) {
      EXPECT_EQ(R[i][j], R[j][i]);
      related += i != j && R[i][j];
      for (std::size_t k = 0; k < n; ++k)
        if (R[i][j] && R[j][k]) EXPECT_TRUE(R[i][k]) << i << " " << j << " " << k;
    }
  }
  EXPECT_GT(related, 0u);
}

INSTANTIATE_TEST_SUITE_P(Kinds, GammaProperties,
                         ::testing::Values(GammaKind::cayley_gamma1, GammaKind::albert_gamma2,
                                           GammaKind::albert_gamma3));
