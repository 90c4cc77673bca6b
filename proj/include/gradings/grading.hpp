#pragma once

#include <deque>
#include <map>
#include <optional>
#include <set>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "gradings/algebra.hpp"
#include "gradings/group.hpp"

namespace gradings {

class GradingError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Degrees of a homogeneous basis. The verified flag is only set by grading_verify.
struct Grading {
  FgAbGroup group;
  std::vector<GroupElement> degrees;
  bool verified = false;

  Grading() = default;
  Grading(FgAbGroup g, std::vector<GroupElement> d) : group(std::move(g)), degrees(std::move(d)) {
    for (auto& x : degrees) x = group.reduce(x);
  }

  static Grading trivial(std::size_t dim) { return Grading(FgAbGroup::trivial(), std::vector<GroupElement>(dim, GroupElement{})); }

  std::size_t dim() const { return degrees.size(); }

  /// Basis indices of each nonzero component, keyed by degree.
  std::map<GroupElement, std::vector<std::size_t>> components() const {
    std::map<GroupElement, std::vector<std::size_t>> c;
    for (std::size_t i = 0; i < degrees.size(); ++i) c[degrees[i]].push_back(i);
    return c;
  }

  std::vector<GroupElement> support() const {
    std::vector<GroupElement> s;
    for (const auto& [g, idx] : components()) s.push_back(g);
    return s;
  }
};

using TypeVector = std::vector<std::size_t>;

inline std::string type_to_string(const TypeVector& t) {
  std::string s = "(";
  for (std::size_t i = 0; i < t.size(); ++i) s += (i ? "," : "") + std::to_string(t[i]);
  return s + ")";
}

struct GradingCheck {
  bool ok = true;
  std::size_t i = 0, j = 0, k = 0;  // b_i b_j has a b_k term of the wrong degree

  std::string describe(const std::vector<std::string>& names) const {
    if (ok) return "ok";
    return "product " + names[i] + "*" + names[j] + " has a component on " + names[k] + " of the wrong degree";
  }
};

template <class F>
GradingCheck grading_verify(const Algebra<F>& A, Grading& G) {
  if (G.dim() != A.dim()) throw GradingError("degree map length differs from algebra dimension");
  for (const auto& d : G.degrees) G.group.check(d);
  GradingCheck r;
  for (std::size_t i = 0; i < A.dim() && r.ok; ++i)
    for (std::size_t j = 0; j < A.dim() && r.ok; ++j) {
      GroupElement want = G.group.add(G.degrees[i], G.degrees[j]);
      A.for_each_term(i, j, [&](std::size_t k, const auto&) {
        if (r.ok && !(G.degrees[k] == want)) r = GradingCheck{false, i, j, k};
      });
    }
  G.verified = r.ok;
  return r;
}

/// Marks a grading as verified, throwing with the violating triple otherwise.
template <class F>
Grading verified_grading(const Algebra<F>& A, Grading G) {
  auto r = grading_verify(A, G);
  if (!r.ok) throw GradingError("not a grading: " + r.describe(A.basis()));
  return G;
}

inline TypeVector grading_type(const Grading& G) {
  if (!G.verified) throw GradingError("type requested for an unverified grading");
  TypeVector t;
  for (const auto& [g, idx] : G.components()) {
    if (t.size() < idx.size()) t.resize(idx.size(), 0);
    ++t[idx.size() - 1];
  }
  return t;
}

inline Grading induced_grading(const Grading& G, const GroupHom& alpha) {
  if (!(alpha.domain() == G.group)) throw GradingError("homomorphism domain differs from the grading group");
  std::vector<GroupElement> d;
  d.reserve(G.dim());
  for (const auto& g : G.degrees) d.push_back(alpha.apply(g));
  Grading H(alpha.codomain(), std::move(d));
  H.verified = G.verified;
  return H;
}

/// Result of presenting the universal group of a grading.
struct UniversalGroup {
  FgAbGroup group;
  std::vector<GroupElement> support;        // the presentation generators, in degree order
  std::vector<GroupElement> support_images;  // class of each support element in the group
  std::vector<std::vector<mpz_class>> section;
  Grading regraded;          // the grading rewritten over the universal group
  std::optional<GroupHom> to_original;  // U -> original group sending the class of s to s
};

template <class F>
UniversalGroup universal_group(const Algebra<F>& A, const Grading& G) {
  if (!G.verified) throw GradingError("universal group requested for an unverified grading");
  auto comps = G.components();
  std::vector<GroupElement> supp;
  std::map<GroupElement, std::size_t> pos;
  for (const auto& [g, idx] : comps) {
    pos[g] = supp.size();
    supp.push_back(g);
  }
  std::size_t m = supp.size();
  std::vector<std::vector<bool>> nonzero(m, std::vector<bool>(m, false));
  for (std::size_t i = 0; i < A.dim(); ++i)
    for (std::size_t j = 0; j < A.dim(); ++j)
      if (!A.basis_product_is_zero(i, j)) {
        std::size_t a = pos[G.degrees[i]], b = pos[G.degrees[j]];
        nonzero[std::min(a, b)][std::max(a, b)] = true;
      }
  std::vector<std::vector<std::int64_t>> rel;
  for (std::size_t a = 0; a < m; ++a)
    for (std::size_t b = a; b < m; ++b) {
      if (!nonzero[a][b]) continue;
      auto it = pos.find(G.group.add(supp[a], supp[b]));
      if (it == pos.end()) throw GradingError("nonzero product lands outside the support");
      std::vector<std::int64_t> r(m, 0);
      r[a] += 1;
      r[b] += 1;
      r[it->second] -= 1;
      rel.push_back(std::move(r));
    }
  Presentation p = group_from_presentation(m, rel);
  UniversalGroup u;
  u.group = p.group;
  u.support = supp;
  u.support_images = p.generator_images;
  u.section = p.section;
  std::vector<GroupElement> d;
  for (const auto& g : G.degrees) d.push_back(p.generator_images[pos[g]]);
  u.regraded = Grading(p.group, std::move(d));
  u.regraded.verified = true;
  std::vector<GroupElement> imgs;
  for (const auto& sec : p.section) {
    GroupElement acc = G.group.identity();
    for (std::size_t k = 0; k < m; ++k) {
      if (sec[k] == 0) continue;
      if (!sec[k].fits_slong_p()) throw GradingError("section coefficient overflow");
      acc = G.group.add(acc, G.group.scale(sec[k].get_si(), supp[k]));
    }
    imgs.push_back(acc);
  }
  u.to_original = GroupHom(p.group, G.group, imgs);
  return u;
}

/// Degree map s -> h on the support of G, extended to the universal group via the section.
/// Returns absent if the constraints are inconsistent or do not define a homomorphism.
inline std::optional<GroupHom> hom_from_support_map(const UniversalGroup& U, const FgAbGroup& target,
                                                    const std::map<GroupElement, GroupElement>& on_support) {
  std::vector<GroupElement> imgs;
  for (const auto& sec : U.section) {
    GroupElement acc = target.identity();
    for (std::size_t k = 0; k < U.support.size(); ++k) {
      if (sec[k] == 0) continue;
      auto it = on_support.find(U.support[k]);
      if (it == on_support.end()) return std::nullopt;
      acc = target.add(acc, target.scale(sec[k].get_si(), it->second));
    }
    imgs.push_back(acc);
  }
  std::optional<GroupHom> alpha;
  try {
    alpha.emplace(U.group, target, imgs);
  } catch (const GroupError&) {
    return std::nullopt;
  }
  for (std::size_t k = 0; k < U.support.size(); ++k) {
    auto it = on_support.find(U.support[k]);
    if (it == on_support.end()) continue;
    if (!(alpha->apply(U.support_images[k]) == target.reduce(it->second))) return std::nullopt;
  }
  return alpha;
}

/// Searches for alpha: U(G) -> group(Gc) with Gc the grading induced by alpha.
/// The basis of Gc is given by the columns of P in the basis of G (identity when absent).
template <class F>
std::optional<GroupHom> is_coarsening(const Algebra<F>& A, const Grading& Gc, const Grading& G,
                                      const std::optional<Matrix<F>>& P = std::nullopt) {
  const F& f = A.field();
  UniversalGroup U = universal_group(A, G);
  std::map<GroupElement, GroupElement> on_support;
  for (std::size_t j = 0; j < Gc.dim(); ++j)
    for (std::size_t k = 0; k < G.dim(); ++k) {
      bool present = P ? !f.is_zero((*P)(k, j)) : (k == j);
      if (!present) continue;
      auto [it, inserted] = on_support.emplace(G.degrees[k], Gc.degrees[j]);
      if (!inserted && !(it->second == Gc.degrees[j])) return std::nullopt;
    }
  return hom_from_support_map(U, Gc.group, on_support);
}

template <class F>
std::optional<GroupHom> is_coarsening(const Algebra<F>& A, const Grading& Gc, const Grading& G, const Matrix<F>& P) {
  return is_coarsening(A, Gc, G, std::optional<Matrix<F>>(P));
}

/// Closes a partial degree map along basis products with a single term.
template <class F>
Grading propagate_degrees(const Algebra<F>& A, const std::map<std::size_t, GroupElement>& seed, const FgAbGroup& group) {
  std::size_t n = A.dim();
  std::vector<std::optional<GroupElement>> deg(n);
  for (const auto& [i, g] : seed) {
    if (i >= n) throw GradingError("seed index out of range");
    deg[i] = group.reduce(g);
  }
  struct Rule {
    std::size_t i, j, k;
  };
  std::vector<Rule> rules;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      std::size_t count = 0, k = 0;
      A.for_each_term(i, j, [&](std::size_t kk, const auto&) {
        ++count;
        k = kk;
      });
      if (count == 1) rules.push_back({i, j, k});
    }
  auto assign = [&](std::size_t idx, const GroupElement& g, const Rule& r) {
    if (deg[idx]) {
      if (!(*deg[idx] == g))
        throw GradingError("inconsistent degrees: " + A.basis()[r.i] + "*" + A.basis()[r.j] + " = " + A.basis()[r.k]);
      return false;
    }
    deg[idx] = g;
    return true;
  };
  bool changed = true;
  while (changed) {
    changed = false;
    for (const auto& r : rules) {
      const auto &di = deg[r.i], &dj = deg[r.j];
      if (di && dj) changed |= assign(r.k, group.add(*di, *dj), r);
      if (di && deg[r.k]) changed |= assign(r.j, group.sub(*deg[r.k], *di), r);
      if (dj && deg[r.k]) changed |= assign(r.i, group.sub(*deg[r.k], *dj), r);
    }
  }
  std::vector<GroupElement> out;
  for (std::size_t i = 0; i < n; ++i) {
    if (!deg[i]) throw GradingError("seed does not determine the degree of " + A.basis()[i]);
    out.push_back(*deg[i]);
  }
  return verified_grading(A, Grading(group, std::move(out)));
}

/// Der(A) with a homogeneous basis and the grading it inherits from a grading of A.
template <class F>
struct DerGrading {
  std::vector<Matrix<F>> maps;  // homogeneous basis, grouped by degree
  Algebra<F> lie;
  Grading grading;
  std::map<GroupElement, std::size_t> dims;
};

/// Splits every derivation into pieces d_g mapping A_h into A_{g+h} and echelonizes each block.
template <class F>
DerGrading<F> der_induced_grading(const Algebra<F>& A, const Grading& G, const std::vector<Matrix<F>>& der) {
  if (!G.verified) throw GradingError("derivation grading requested for an unverified grading");
  const F& f = A.field();
  std::size_t n = A.dim();
  std::map<GroupElement, std::vector<Vec<F>>> blocks;
  for (const auto& d : der) {
    std::map<GroupElement, Vec<F>> pieces;
    for (std::size_t k = 0; k < n; ++k)
      for (std::size_t m = 0; m < n; ++m) {
        if (f.is_zero(d(k, m))) continue;
        GroupElement g = G.group.sub(G.degrees[k], G.degrees[m]);
        auto [it, ins] = pieces.try_emplace(g, Vec<F>(n * n, f.zero()));
        it->second[k * n + m] = d(k, m);
      }
    for (auto& [g, v] : pieces) blocks[g].push_back(std::move(v));
  }
  DerGrading<F> out{{}, Algebra<F>::from_entries(f, "", {}, {}), {}, {}};
  std::vector<GroupElement> degs;
  for (auto& [g, vs] : blocks) {
    Matrix<F> M = Matrix<F>::from_rows(f, vs, n * n);
    auto piv = rref_in_place(f, M);
    for (std::size_t r = 0; r < piv.size(); ++r) {
      out.maps.push_back(Matrix<F>::from_flat(n, n, M.row(r)));
      degs.push_back(g);
    }
    out.dims[g] = piv.size();
  }
  if (out.maps.size() != der.size())
    throw GradingError("graded components of Der have total dimension " + std::to_string(out.maps.size()) +
                       ", expected " + std::to_string(der.size()));
  std::vector<std::string> names;
  for (std::size_t i = 0; i < out.maps.size(); ++i) names.push_back("d" + std::to_string(i));
  out.lie = close_under_bracket(f, out.maps, names, "der(" + A.name() + ")");
  out.grading = verified_grading(out.lie, Grading(G.group, degs));
  return out;
}

inline json grading_to_json(const Grading& G) {
  json d = json::array();
  for (const auto& g : G.degrees) d.push_back(G.group.element_to_json(g));
  return json{{"group", G.group.to_json()}, {"degrees", d}};
}

inline Grading grading_from_json(const json& j, std::size_t dim) {
  if (!j.is_object() || !j.contains("group") || !j.contains("degrees") || !j["degrees"].is_array())
    throw GradingError("grading JSON: expected {\"group\",\"degrees\"}");
  FgAbGroup g = FgAbGroup::from_json(j["group"]);
  if (j["degrees"].size() != dim)
    throw GradingError("grading JSON: " + std::to_string(j["degrees"].size()) + " degrees for dimension " +
                       std::to_string(dim));
  std::vector<GroupElement> d;
  for (const auto& e : j["degrees"]) d.push_back(g.element_from_json(e));
  return Grading(g, std::move(d));
}

}  // namespace gradings
