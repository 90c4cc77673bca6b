#pragma once

#include <algorithm>
#include <array>
#include <cstdlib>
#include <fstream>
#include <iomanip>
#include <map>
#include <memory>
#include <optional>
#include <set>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "gradings/f4.hpp"

#ifndef GRADINGS_DATA_DIR
#define GRADINGS_DATA_DIR "data"
#endif

namespace gradings {

class CatalogError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Directory holding registry.json and the golden files; GRADINGS_GOLDEN_DIR overrides the build default.
inline std::string data_dir() {
  if (const char* e = std::getenv("GRADINGS_GOLDEN_DIR"); e && *e) return e;
  return GRADINGS_DATA_DIR;
}

inline json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw CatalogError("cannot open " + path);
  try {
    return json::parse(in);
  } catch (const json::parse_error& e) {
    throw CatalogError(path + ": " + e.what());
  }
}

inline void write_json_file(const std::string& path, const json& j) {
  std::ofstream out(path);
  if (!out) throw CatalogError("cannot write " + path);
  out << j.dump(2) << "\n";
}

struct Requirements {
  bool needs_i = false;
  bool needs_omega = false;
  std::vector<std::uint64_t> char_exclusions;

  /// Reason the field cannot carry the entry, or absent.
  template <class F>
  std::optional<std::string> unmet(const F& f) const {
    std::uint64_t p = f.characteristic();
    for (auto c : char_exclusions)
      if (p == c) return "characteristic " + std::to_string(c) + " is excluded";
    if (needs_i && !sqrt_minus_one(f)) return "needs a square root of -1";
    if (needs_omega && (p == 3 || !primitive_cube_root(f))) return "needs a primitive cube root of unity";
    return std::nullopt;
  }

  json to_json() const {
    return json{{"needs_i", needs_i}, {"needs_omega", needs_omega}, {"char_exclusions", char_exclusions}};
  }
  static Requirements from_json(const json& j) {
    Requirements r;
    if (j.is_null()) return r;
    r.needs_i = j.value("needs_i", false);
    r.needs_omega = j.value("needs_omega", false);
    if (j.contains("char_exclusions")) r.char_exclusions = j["char_exclusions"].get<std::vector<std::uint64_t>>();
    return r;
  }
};

/// One line of the expected-results registry.
struct RegistryEntry {
  std::string name;
  std::string scope;   // cayley, g2, albert or f4
  std::string base;    // fine grading it coarsens; empty for a fine grading
  std::string via;     // registry entry the grading induced on the underlying algebra must match
  std::string source;  // where the expected values come from
  std::string invariant_equal;  // distinct entry with the same universal group and type
  FgAbGroup group;     // universal group
  std::optional<TypeVector> type;
  bool type_derived = false;
  std::optional<std::vector<std::vector<std::int64_t>>> hom;  // explicit images of the base generators
  std::map<std::int64_t, std::size_t> z_dims;                 // dimensions along the first free coordinate
  Requirements requires_;

  bool fine() const { return base.empty(); }

  static RegistryEntry from_json(const json& j) {
    RegistryEntry e;
    try {
      e.name = j.at("name").get<std::string>();
      e.scope = j.at("scope").get<std::string>();
      e.base = j.value("base", "");
      e.via = j.value("via", "");
      e.source = j.value("source", "");
      e.invariant_equal = j.value("invariant_equal", "");
      e.group = FgAbGroup::from_json(j.at("group"));
      if (j.contains("type") && !j["type"].is_null()) e.type = j["type"].get<TypeVector>();
      e.type_derived = j.value("type_derived", false);
      if (j.contains("hom")) e.hom = j["hom"].get<std::vector<std::vector<std::int64_t>>>();
      if (j.contains("z_dims"))
        for (const auto& [k, v] : j["z_dims"].items()) e.z_dims[std::stoll(k)] = v.get<std::size_t>();
      e.requires_ = Requirements::from_json(j.value("requires", json()));
    } catch (const json::exception& ex) {
      throw CatalogError("registry entry: " + std::string(ex.what()));
    }
    return e;
  }

  json to_json() const {
    json j{{"name", name}, {"scope", scope}, {"group", group.to_json()}, {"requires", requires_.to_json()},
           {"source", source}, {"type_derived", type_derived}};
    j["type"] = type ? json(*type) : json(nullptr);
    if (!base.empty()) j["base"] = base;
    if (!via.empty()) j["via"] = via;
    if (!invariant_equal.empty()) j["invariant_equal"] = invariant_equal;
    if (hom) j["hom"] = *hom;
    if (!z_dims.empty()) {
      json z = json::object();
      for (const auto& [k, v] : z_dims) z[std::to_string(k)] = v;
      j["z_dims"] = z;
    }
    return j;
  }
};

inline const std::vector<std::string>& catalog_scopes() {
  static const std::vector<std::string> s{"cayley", "g2", "albert", "f4"};
  return s;
}

struct Registry {
  int version = 1;
  std::vector<RegistryEntry> entries;

  const RegistryEntry& at(const std::string& name) const {
    for (const auto& e : entries)
      if (e.name == name) return e;
    throw CatalogError("unknown catalog name " + name);
  }
  bool contains(const std::string& name) const {
    return std::any_of(entries.begin(), entries.end(), [&](const auto& e) { return e.name == name; });
  }
  std::vector<const RegistryEntry*> scope(const std::string& s) const {
    std::vector<const RegistryEntry*> out;
    for (const auto& e : entries)
      if (e.scope == s) out.push_back(&e);
    std::sort(out.begin(), out.end(), [](auto a, auto b) { return a->name < b->name; });
    return out;
  }

  static Registry from_json(const json& j) {
    if (!j.is_object() || !j.contains("entries") || !j["entries"].is_array()) throw CatalogError("registry: expected {\"version\",\"entries\"}");
    Registry r;
    r.version = j.value("version", 1);
    for (const auto& e : j["entries"]) r.entries.push_back(RegistryEntry::from_json(e));
    return r;
  }
  json to_json() const {
    json es = json::array();
    for (const auto& e : entries) es.push_back(e.to_json());
    return json{{"version", version}, {"entries", es}};
  }
  static Registry load(const std::string& dir = data_dir()) { return from_json(read_json_file(dir + "/registry.json")); }
};

/// Realizing homomorphisms found by the coarsening search, keyed by entry name.
struct GoldenHoms {
  std::map<std::string, GroupHom> homs;

  static GoldenHoms from_json(const json& j) {
    GoldenHoms g;
    for (const auto& [k, v] : j.items()) g.homs.emplace(k, GroupHom::from_json(v));
    return g;
  }
  json to_json() const {
    json j = json::object();
    for (const auto& [k, v] : homs) j[k] = v.to_json();
    return j;
  }
  static GoldenHoms load(const std::string& dir = data_dir()) {
    std::ifstream probe(dir + "/golden_homs.json");
    if (!probe) return {};
    return from_json(read_json_file(dir + "/golden_homs.json"));
  }
};

/// An algebra with a grading. Derivation algebras keep the algebra they act on, graded by the same group.
template <class F>
struct GradedAlgebra {
  Algebra<F> algebra;
  Grading grading;
  std::shared_ptr<const GradedAlgebra<F>> carrier;
};

/// Cartan grading on the split Cayley algebra: deg u1 = (1,0), deg u2 = (0,1), deg u3 = (-1,-1), deg v_i = -deg u_i.
template <class F>
Grading cayley_cartan_grading(const Algebra<F>& C) {
  using namespace cayley_index;
  FgAbGroup z2 = FgAbGroup::free_group(2);
  GroupElement g[3] = {z2.element({1, 0}), z2.element({0, 1}), z2.element({-1, -1})};
  std::vector<GroupElement> d(8, z2.identity());
  for (int i = 1; i <= 3; ++i) {
    d[u(i)] = g[i - 1];
    d[v(i)] = z2.neg(g[i - 1]);
  }
  return verified_grading(C, Grading(z2, d));
}

/// Z2^r grading of a doubling chain.
template <class F>
Grading doubling_grading(const CompositionData<F>& C) {
  if (C.doubling_degrees.empty() || C.doubling_degrees[0].empty()) throw CatalogError("not a doubling chain");
  std::size_t r = C.doubling_degrees[0].size();
  FgAbGroup g(0, std::vector<std::int64_t>(r, 2));
  std::vector<GroupElement> d;
  for (const auto& c : C.doubling_degrees) d.push_back(g.element(c));
  return verified_grading(C.algebra, Grading(g, d));
}

template <class F>
GradedAlgebra<F> derivation_grading(std::shared_ptr<const GradedAlgebra<F>> carrier, const std::vector<Matrix<F>>& der,
                                    const std::string& name) {
  DerGrading<F> dg = der_induced_grading(carrier->algebra, carrier->grading, der);
  dg.lie.set_name(name);
  return GradedAlgebra<F>{dg.lie, dg.grading, std::move(carrier)};
}

inline const std::vector<std::string>& fine_base_names() {
  static const std::vector<std::string> n{"cayley/cartan", "cayley/cd-z2^3", "g2/cartan",     "g2/cd-z2^3",
                                          "albert/cartan", "albert/z2^5",    "albert/zxz2^3", "albert/z3^3",
                                          "f4/cartan",     "f4/z2^5",        "f4/zxz2^3",     "f4/z3^3"};
  return n;
}

/// Builds a fine grading by name.
template <class F>
GradedAlgebra<F> build_fine(const std::string& name, const F& f) {
  auto share = [](GradedAlgebra<F> g) { return std::make_shared<const GradedAlgebra<F>>(std::move(g)); };
  auto cayley = [&](bool cartan) {
    if (cartan) {
      auto C = cayley_split(f);
      C.algebra.set_name("cayley/cartan");
      return GradedAlgebra<F>{C.algebra, cayley_cartan_grading(C.algebra), nullptr};
    }
    auto C = cayley_dickson_chain(f);
    C.algebra.set_name("cayley/cd-z2^3");
    return GradedAlgebra<F>{C.algebra, doubling_grading(C), nullptr};
  };
  auto albert = [&](const std::string& which) {
    if (which == "cartan") return albert_cartan_model(f);
    if (which == "z2^5") return albert_z2_5_model(f);
    if (which == "zxz2^3") return albert_zxz2_3_model(f);
    if (which == "z3^3") return albert_z3_3_model(f);
    throw CatalogError("unknown Albert model " + which);
  };
  if (name == "cayley/cartan") return cayley(true);
  if (name == "cayley/cd-z2^3") return cayley(false);
  if (name == "g2/cartan" || name == "g2/cd-z2^3") {
    if (f.characteristic() == 3) throw CatalogError("Der(C) is not simple in characteristic 3");
    auto C = share(cayley(name == "g2/cartan"));
    return derivation_grading(C, derivation_space(C->algebra).basis, name);
  }
  auto slash = name.find('/');
  if (slash == std::string::npos) throw CatalogError("unknown catalog name " + name);
  std::string family = name.substr(0, slash), which = name.substr(slash + 1);
  if (family == "albert") {
    auto M = albert(which);
    return GradedAlgebra<F>{M.algebra, M.grading, nullptr};
  }
  if (family == "f4") {
    auto M = albert(which);
    auto der = transport_maps(f, M.P, f4_derivations(M.standard));
    return derivation_grading(share(GradedAlgebra<F>{M.algebra, M.grading, nullptr}), der, name);
  }
  throw CatalogError("unknown catalog name " + name);
}

/// The grading induced by alpha, applied to the carrier as well.
template <class F>
GradedAlgebra<F> induce(const GradedAlgebra<F>& base, const GroupHom& alpha) {
  GradedAlgebra<F> out{base.algebra, induced_grading(base.grading, alpha), nullptr};
  if (base.carrier) out.carrier = std::make_shared<const GradedAlgebra<F>>(induce(*base.carrier, alpha));
  return out;
}

/// Support of a grading with the dimension of each component, in coordinates of its group.
struct SupportProfile {
  std::vector<std::vector<std::int64_t>> coords;
  std::vector<std::size_t> weights;

  static SupportProfile of(const Grading& G) {
    SupportProfile p;
    for (const auto& [g, idx] : G.components()) {
      p.coords.push_back(G.group.coords(g));
      p.weights.push_back(idx.size());
    }
    return p;
  }
};

/// What a coarsening must look like.
struct CoarseningTarget {
  FgAbGroup group;                       // universal group of the coarsening
  std::optional<TypeVector> type;        // its type, when known
  std::optional<FgAbGroup> carrier_group;  // universal group of the grading induced on the carrier
  std::optional<TypeVector> carrier_type;
  std::int64_t free_bound = 3;
};

namespace detail {

constexpr std::size_t kMaxGens = 8;
using Coords = std::array<std::int64_t, kMaxGens>;

/// Type of the grading obtained by pushing the profile along the images, computed on coordinates.
inline TypeVector pushed_type(const SupportProfile& p, const FgAbGroup& T, const std::vector<Coords>& img,
                              std::vector<std::pair<Coords, std::size_t>>& scratch) {
  std::size_t nt = static_cast<std::size_t>(T.num_generators()), fr = static_cast<std::size_t>(T.free_rank());
  scratch.clear();
  for (std::size_t s = 0; s < p.coords.size(); ++s) {
    Coords c{};
    const auto& sc = p.coords[s];
    for (std::size_t i = 0; i < sc.size(); ++i) {
      if (sc[i] == 0) continue;
      for (std::size_t k = 0; k < nt; ++k) c[k] += sc[i] * img[i][k];
    }
    for (std::size_t k = fr; k < nt; ++k) {
      auto m = T.torsion()[k - fr];
      c[k] %= m;
      if (c[k] < 0) c[k] += m;
    }
    scratch.emplace_back(c, p.weights[s]);
  }
  std::sort(scratch.begin(), scratch.end());
  TypeVector t;
  for (std::size_t a = 0; a < scratch.size();) {
    std::size_t b = a, dim = 0;
    while (b < scratch.size() && scratch[b].first == scratch[a].first) dim += scratch[b++].second;
    if (t.size() < dim) t.resize(dim, 0);
    ++t[dim - 1];
    a = b;
  }
  return t;
}

}  // namespace detail

/// Bounded search for alpha: G -> target.group, G the group of the base grading, whose induced grading
/// has the expected universal group and type. Images of the generators run over target elements with
/// free coordinates in [-free_bound, free_bound], smallest free part first; the first match in odometer
/// order is returned.
template <class F>
std::optional<GroupHom> realize_coarsening(const GradedAlgebra<F>& base, const CoarseningTarget& target) {
  const FgAbGroup& D = base.grading.group;
  const FgAbGroup& T = target.group;
  if (T.num_generators() > static_cast<int>(detail::kMaxGens)) throw CatalogError("target group has too many generators");
  if ((target.carrier_type || target.carrier_group) && !base.carrier) throw CatalogError("base has no carrier algebra");
  std::size_t nd = static_cast<std::size_t>(D.num_generators());
  auto elements = T.bounded_elements(target.free_bound);
  auto size = [&](const GroupElement& x) {
    std::int64_t n = 0;
    for (auto c : x.free) n += c < 0 ? -c : c;
    return n;
  };
  std::stable_sort(elements.begin(), elements.end(), [&](const auto& a, const auto& b) { return size(a) < size(b); });
  std::vector<std::vector<detail::Coords>> cand(nd);
  for (std::size_t i = 0; i < nd; ++i) {
    for (const auto& x : elements) {
      if (i >= static_cast<std::size_t>(D.free_rank()) &&
          !T.is_identity(T.scale(D.torsion()[i - static_cast<std::size_t>(D.free_rank())], x)))
        continue;
      detail::Coords c{};
      auto xc = T.coords(x);
      std::copy(xc.begin(), xc.end(), c.begin());
      cand[i].push_back(c);
    }
    if (cand[i].empty()) return std::nullopt;
    if (D == T) {
      detail::Coords id{};
      id[i] = 1;
      auto it = std::find(cand[i].begin(), cand[i].end(), id);
      if (it != cand[i].end()) std::rotate(cand[i].begin(), it, it + 1);
    }
  }
  SupportProfile prof = SupportProfile::of(base.grading);
  std::optional<SupportProfile> cprof;
  if (base.carrier) cprof = SupportProfile::of(base.carrier->grading);
  std::vector<std::pair<detail::Coords, std::size_t>> scratch;
  std::vector<std::size_t> pos(nd, 0);
  std::vector<detail::Coords> img(nd);
  while (true) {
    for (std::size_t i = 0; i < nd; ++i) img[i] = cand[i][pos[i]];
    bool ok = true;
    if (target.type) ok = detail::pushed_type(prof, T, img, scratch) == *target.type;
    if (ok && target.carrier_type) ok = detail::pushed_type(*cprof, T, img, scratch) == *target.carrier_type;
    if (ok) {
      std::vector<GroupElement> imgs;
      for (std::size_t i = 0; i < nd; ++i)
        imgs.push_back(T.element(std::vector<std::int64_t>(img[i].begin(), img[i].begin() + T.num_generators())));
      GroupHom alpha(D, T, imgs);
      GradedAlgebra<F> c = induce(base, alpha);
      ok = universal_group(c.algebra, c.grading).group == T;
      if (ok && target.carrier_group) ok = universal_group(c.carrier->algebra, c.carrier->grading).group == *target.carrier_group;
      if (ok) return alpha;
    }
    std::size_t k = nd;
    while (k > 0 && pos[k - 1] + 1 == cand[k - 1].size()) pos[--k] = 0;
    if (k == 0) return std::nullopt;
    ++pos[k - 1];
  }
}

/// The search target of a registry entry.
inline CoarseningTarget coarsening_target(const Registry& reg, const RegistryEntry& e) {
  CoarseningTarget t{e.group, e.type_derived ? std::nullopt : e.type, std::nullopt, std::nullopt};
  if (!e.via.empty()) {
    const auto& v = reg.at(e.via);
    t.carrier_group = v.group;
    t.carrier_type = v.type;
  }
  return t;
}

enum class HomPolicy { golden_or_search, search };

template <class F>
struct EntryBuild {
  GradedAlgebra<F> graded;
  GroupHom hom;
  std::string hom_source;  // identity, explicit, golden or search
};

/// Builds registry entries over a fixed field, caching the fine gradings.
template <class F>
class Catalog {
 public:
  explicit Catalog(F f, Registry reg = Registry::load(), GoldenHoms golden = GoldenHoms::load())
      : f_(std::move(f)), reg_(std::move(reg)), golden_(std::move(golden)) {}

  const F& field() const { return f_; }
  const Registry& registry() const { return reg_; }
  const GoldenHoms& golden() const { return golden_; }

  const GradedAlgebra<F>& fine(const std::string& name) {
    auto it = cache_.find(name);
    if (it == cache_.end()) it = cache_.emplace(name, std::make_shared<GradedAlgebra<F>>(build_fine(name, f_))).first;
    return *it->second;
  }

  std::optional<GroupHom> search(const RegistryEntry& e) {
    if (e.fine()) throw CatalogError(e.name + " is a fine grading");
    return realize_coarsening(fine(e.base), coarsening_target(reg_, e));
  }

  EntryBuild<F> build(const std::string& name, HomPolicy policy = HomPolicy::golden_or_search) {
    const RegistryEntry& e = reg_.at(name);
    if (auto why = e.requires_.unmet(f_)) throw CatalogError(name + ": " + *why);
    if (e.fine()) {
      const auto& g = fine(name);
      return {g, GroupHom::identity(g.grading.group), "identity"};
    }
    const auto& b = fine(e.base);
    std::optional<GroupHom> alpha;
    std::string source;
    if (e.hom) {
      std::vector<GroupElement> imgs;
      for (const auto& c : *e.hom) imgs.push_back(e.group.element(c));
      alpha.emplace(b.grading.group, e.group, imgs);
      source = "explicit";
    } else if (auto it = golden_.homs.find(name); it != golden_.homs.end() && policy == HomPolicy::golden_or_search) {
      alpha = it->second;
      source = "golden";
    } else {
      alpha = search(e);
      source = "search";
      if (!alpha) throw CatalogError(name + ": no realizing homomorphism found");
    }
    return {induce(b, *alpha), *alpha, source};
  }

 private:
  F f_;
  Registry reg_;
  GoldenHoms golden_;
  std::map<std::string, std::shared_ptr<GradedAlgebra<F>>> cache_;
};

/// (Algebra, Grading) of a catalog entry.
template <class F>
GradedAlgebra<F> build(const std::string& name, const F& f) {
  Catalog<F> c(f);
  return c.build(name).graded;
}

/// Subgroup generated by finitely many elements of finite order.
inline std::set<GroupElement> finite_subgroup(const FgAbGroup& G, const std::vector<GroupElement>& gens) {
  std::set<GroupElement> H{G.identity()};
  std::vector<GroupElement> frontier{G.identity()};
  while (!frontier.empty()) {
    std::vector<GroupElement> next;
    for (const auto& h : frontier)
      for (const auto& g : gens) {
        auto x = G.add(h, g);
        if (H.insert(x).second) next.push_back(x);
        if (H.size() > 100000) throw CatalogError("subgroup is too large or infinite");
      }
    frontier = std::move(next);
  }
  return H;
}

enum class GammaKind { cayley_gamma1, albert_gamma2, albert_gamma3 };

inline GammaKind gamma_kind_from_string(const std::string& s) {
  if (s == "cayley-gamma1") return GammaKind::cayley_gamma1;
  if (s == "albert-gamma2") return GammaKind::albert_gamma2;
  if (s == "albert-gamma3") return GammaKind::albert_gamma3;
  throw CatalogError("unknown parameter kind " + s);
}

/// Equivalence of the parameters of induced gradings: triples up to permutation and global inversion,
/// Z2 triples up to permutation modulo H, or a single element up to inversion modulo H.
inline bool gamma_equiv(const FgAbGroup& G, GammaKind kind, const std::vector<GroupElement>& p,
                        const std::vector<GroupElement>& q, const std::vector<GroupElement>& H_gens = {}) {
  for (const auto& x : p) G.check(x);
  for (const auto& x : q) G.check(x);
  std::set<GroupElement> H;
  if (kind != GammaKind::cayley_gamma1) {
    for (const auto& h : H_gens) G.check(h);
    H = finite_subgroup(G, H_gens);
    bool two = std::all_of(H.begin(), H.end(), [&](const auto& h) { return G.is_identity(G.scale(2, h)); });
    if (H.size() != 8 || !two) throw CatalogError("H must be a subgroup isomorphic to Z2^3");
  }
  auto in_H = [&](const GroupElement& x) { return H.count(G.reduce(x)) > 0; };
  auto sum = [&](const std::vector<GroupElement>& v) {
    GroupElement s = G.identity();
    for (const auto& x : v) s = G.add(s, x);
    return s;
  };
  std::array<int, 3> perm{0, 1, 2};
  switch (kind) {
    case GammaKind::cayley_gamma1: {
      for (const auto* t : {&p, &q})
        if (t->size() != 3 || !G.is_identity(sum(*t))) throw CatalogError("expected a triple with product e");
      do {
        bool same = true, inv = true;
        for (int i = 0; i < 3; ++i) {
          same &= q[i] == G.reduce(p[perm[i]]);
          inv &= q[i] == G.neg(p[perm[i]]);
        }
        if (same || inv) return true;
      } while (std::next_permutation(perm.begin(), perm.end()));
      return false;
    }
    case GammaKind::albert_gamma2: {
      for (const auto* t : {&p, &q}) {
        if (t->size() != 3 || !G.is_identity(sum(*t))) throw CatalogError("expected a triple with product e");
        for (const auto& b : *t)
          if (!G.is_identity(G.scale(2, b))) throw CatalogError("triple elements must have b^2 = e");
      }
      do {
        bool ok = true;
        for (int i = 0; i < 3; ++i) ok &= in_H(G.sub(q[i], p[perm[i]]));
        if (ok) return true;
      } while (std::next_permutation(perm.begin(), perm.end()));
      return false;
    }
    case GammaKind::albert_gamma3: {
      if (p.size() != 1 || q.size() != 1) throw CatalogError("expected a single element");
      for (const auto* t : {&p, &q})
        if (G.is_identity(G.scale(2, (*t)[0]))) throw CatalogError("the element must satisfy g^2 != e");
      return in_H(G.sub(q[0], p[0])) || in_H(G.add(q[0], p[0]));
    }
  }
  return false;
}

/// Dimensions of the components along the first free coordinate.
inline std::map<std::int64_t, std::size_t> free_coordinate_dims(const Grading& G) {
  if (G.group.free_rank() < 1) throw CatalogError("grading group has no free part");
  std::map<std::int64_t, std::size_t> out;
  for (const auto& d : G.degrees) ++out[d.free[0]];
  return out;
}

struct ReportLine {
  std::string name, scope, status, hom_source, group, type, expected_group, expected_type, detail;

  json to_json() const {
    return json{{"name", name},     {"scope", scope}, {"status", status},
                {"hom", hom_source}, {"group", group}, {"type", type},
                {"expected", {{"group", expected_group}, {"type", expected_type}}},
                {"detail", detail}};
  }
};

struct RegistryReport {
  json field;
  std::string mode;
  std::vector<std::string> scopes;
  std::vector<ReportLine> lines;   // one per registry entry
  std::vector<ReportLine> checks;  // scope-wide checks

  std::size_t count(const std::string& status) const {
    std::size_t n = 0;
    for (const auto* v : {&lines, &checks})
      for (const auto& l : *v) n += l.status == status;
    return n;
  }
  bool all_pass() const { return count("FAIL") == 0; }

  json to_json() const {
    json ls = json::array(), cs = json::array();
    for (const auto& l : lines) ls.push_back(l.to_json());
    for (const auto& c : checks) cs.push_back(c.to_json());
    return json{{"field", field},
                {"mode", mode},
                {"scopes", scopes},
                {"entries", ls},
                {"checks", cs},
                {"summary", {{"pass", count("PASS")}, {"fail", count("FAIL")}, {"skip", count("SKIP")}}}};
  }

  std::string table() const {
    std::ostringstream os;
    auto row = [&](const ReportLine& l) {
      os << std::left << std::setw(7) << l.status << std::setw(26) << l.name << std::setw(16) << l.group
         << std::setw(24) << l.type << std::setw(9) << l.hom_source;
      if (!l.detail.empty()) os << l.detail;
      os << "\n";
    };
    os << std::left << std::setw(7) << "status" << std::setw(26) << "entry" << std::setw(16) << "group" << std::setw(24)
       << "type" << std::setw(9) << "hom"
       << "detail\n";
    for (const auto& l : lines) row(l);
    for (const auto& c : checks) row(c);
    os << "pass " << count("PASS") << ", fail " << count("FAIL") << ", skip " << count("SKIP") << "\n";
    return os.str();
  }
};

namespace detail {

template <class F>
void check_entry(Catalog<F>& cat, const RegistryEntry& e, bool slow, ReportLine& line) {
  const Registry& reg = cat.registry();
  line.expected_group = e.group.to_string();
  line.expected_type = e.type ? type_to_string(*e.type) + (e.type_derived ? " (derived)" : "") : "-";
  if (auto why = e.requires_.unmet(cat.field())) {
    line.status = "SKIP";
    line.detail = *why;
    return;
  }
  if (e.scope == "f4" && !slow && cat.field().characteristic() == 0) {
    line.status = "SKIP";
    line.detail = "derivations over characteristic 0 run in slow mode";
    return;
  }
  std::vector<std::string> problems;
  EntryBuild<F> b = cat.build(e.name);
  line.hom_source = b.hom_source;
  if (slow && !e.fine() && !e.hom) {
    auto found = cat.search(e);
    auto it = cat.golden().homs.find(e.name);
    if (!found) problems.push_back("search found no homomorphism");
    else if (it != cat.golden().homs.end() && !(found->to_json() == it->second.to_json()))
      problems.push_back("search result differs from the golden homomorphism");
    if (it != cat.golden().homs.end()) line.hom_source = "golden+search";
  }
  GradedAlgebra<F>& g = b.graded;
  auto gv = grading_verify(g.algebra, g.grading);
  if (!gv.ok) problems.push_back("not a grading: " + gv.describe(g.algebra.basis()));
  if (gv.ok) {
    TypeVector t = grading_type(g.grading);
    FgAbGroup U = universal_group(g.algebra, g.grading).group;
    line.type = type_to_string(t);
    line.group = U.to_string();
    if (!(U == e.group)) problems.push_back("universal group " + U.to_string() + ", expected " + e.group.to_string());
    if (e.type && t != *e.type) problems.push_back("type " + type_to_string(t) + ", expected " + type_to_string(*e.type));
    if (e.scope == "albert") {
      auto tr = trace_orthogonality_check(g.algebra, g.grading);
      if (!tr.ok) problems.push_back("trace orthogonality: " + tr.detail);
    }
    if (!e.z_dims.empty()) {
      auto z = free_coordinate_dims(g.grading);
      if (z != e.z_dims) problems.push_back("dimensions along the free coordinate differ");
    }
  }
  if (!e.via.empty()) {
    const auto& v = reg.at(e.via);
    if (!g.carrier) {
      problems.push_back("no carrier algebra");
    } else {
      Grading cg = g.carrier->grading;
      if (!grading_verify(g.carrier->algebra, cg).ok) {
        problems.push_back("induced grading on the carrier does not verify");
      } else {
        FgAbGroup cu = universal_group(g.carrier->algebra, cg).group;
        if (!(cu == v.group) || (v.type && grading_type(cg) != *v.type))
          problems.push_back("grading on the carrier does not match " + e.via);
      }
    }
  }
  line.status = problems.empty() ? "PASS" : "FAIL";
  for (std::size_t i = 0; i < problems.size(); ++i) line.detail += (i ? "; " : "") + problems[i];
}

template <class F>
void scope_checks(Catalog<F>& cat, const std::string& scope, bool slow, std::vector<ReportLine>& out) {
  if (scope == "g2") {
    ReportLine l{"g2/count", scope, "PASS", "", "", "", "", "", ""};
    auto n = cat.registry().scope("g2").size();
    l.type = std::to_string(n) + " entries";
    l.expected_type = "25 entries";
    if (n != 25) {
      l.status = "FAIL";
      l.detail = "registry has " + std::to_string(n) + " G2 entries";
    }
    out.push_back(l);
  }
  if (scope == "f4" && slow) {
    ReportLine l{"f4/inner-derivations", scope, "", "", "", "", "", "", ""};
    l.expected_type = "dim 52";
    auto dim = derivation_space(cat.fine("f4/cartan").algebra).dim();
    l.type = "dim " + std::to_string(dim);
    l.status = dim == 52 ? "PASS" : "FAIL";
    out.push_back(l);
  }
}

}  // namespace detail

/// Builds every entry of the selected scopes and compares universal group and type with the registry.
template <class F>
RegistryReport verify_registry(Catalog<F>& cat, std::vector<std::string> scopes, bool slow) {
  RegistryReport r;
  r.field = cat.field().spec().to_json();
  r.mode = slow ? "slow" : "fast";
  std::vector<std::string> ordered;
  for (const auto& s : catalog_scopes())
    if (std::find(scopes.begin(), scopes.end(), s) != scopes.end() ||
        std::find(scopes.begin(), scopes.end(), "all") != scopes.end())
      ordered.push_back(s);
  for (const auto& s : scopes)
    if (s != "all" && std::find(ordered.begin(), ordered.end(), s) == ordered.end())
      throw CatalogError("unknown scope " + s);
  r.scopes = ordered;
  for (const auto& s : ordered) {
    for (const auto* e : cat.registry().scope(s)) {
      ReportLine line{e->name, s, "", "", "", "", "", "", ""};
      try {
        detail::check_entry(cat, *e, slow, line);
      } catch (const std::exception& ex) {
        line.status = "FAIL";
        line.detail = ex.what();
      }
      r.lines.push_back(line);
    }
    detail::scope_checks(cat, s, slow, r.checks);
  }
  return r;
}

/// Searches every registry entry without an explicit homomorphism over the given field.
template <class F>
GoldenHoms compute_golden_homs(Catalog<F>& cat) {
  GoldenHoms g;
  for (const auto& e : cat.registry().entries) {
    if (e.fine() || e.hom || e.requires_.unmet(cat.field())) continue;
    auto alpha = cat.search(e);
    if (!alpha) throw CatalogError(e.name + ": no realizing homomorphism found");
    g.homs.emplace(e.name, *alpha);
  }
  return g;
}

/// Positive root vectors of the Chevalley basis with their Cartan degrees, in the basis order.
template <class F>
json root_vector_table(const AlbertData<F>& A) {
  ChevalleyBasis<F> B = chevalley_basis(A);
  RootDatum<F> R = cartan_and_roots(A);
  auto eps_str = [](int c) {
    if (c % 2 == 0) return std::to_string(c / 2);
    return std::to_string(c) + "/2";
  };
  json roots = json::array();
  for (std::size_t k = 0; k < B.positive.size(); ++k) {
    const auto& e = B.positive[k];
    json eps = json::array();
    for (int c : e) eps.push_back(eps_str(c));
    json degree;
    for (const auto& r : R.roots)
      if (r.eps2 == e) degree = R.der.grading.group.coords(r.degree);
    roots.push_back({{"degree", degree}, {"eps", eps}, {"kind", eps_kind(e)}, {"vector", B.names[k]}});
  }
  return json{{"cartan", {"D(e1,e2)", "D(u1,v1)", "D(u2,v2)", "D(u3,v3)"}}, {"roots", roots}};
}

}  // namespace gradings
