#pragma once

#include <algorithm>
#include <compare>
#include <cstdint>
#include <numeric>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include <gmpxx.h>
#include <json.hpp>

namespace gradings {

using json = nlohmann::json;

class GroupError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

using IntMatrix = std::vector<std::vector<mpz_class>>;

/// Coordinates of an element of a finitely generated abelian group.
/// The owning group is carried separately; operations go through FgAbGroup.
struct GroupElement {
  std::vector<std::int64_t> free;
  std::vector<std::int64_t> torsion;

  auto operator<=>(const GroupElement&) const = default;
  bool operator==(const GroupElement&) const = default;
};

/// Z^r x Z_{d1} x ... x Z_{dk} with d1 | d2 | ... | dk, every di >= 2.
class FgAbGroup {
 public:
  FgAbGroup() = default;
  FgAbGroup(int free_rank, std::vector<std::int64_t> torsion) : free_rank_(free_rank), torsion_(std::move(torsion)) {
    if (free_rank_ < 0) throw GroupError("negative free rank");
    for (std::size_t i = 0; i < torsion_.size(); ++i) {
      if (torsion_[i] < 2) throw GroupError("invariant factors must be >= 2");
      if (i > 0 && torsion_[i] % torsion_[i - 1] != 0) throw GroupError("invariant factors must form a divisibility chain");
    }
  }

  static FgAbGroup free_group(int rank) { return FgAbGroup(rank, {}); }
  static FgAbGroup trivial() { return FgAbGroup(0, {}); }
  /// Canonical form of Z^r x Z_{m1} x ... for arbitrary moduli (e.g. Z3 x Z2^3 -> Z2 x Z2 x Z6).
  static FgAbGroup from_cyclic_factors(int free_rank, const std::vector<std::int64_t>& moduli);

  int free_rank() const { return free_rank_; }
  const std::vector<std::int64_t>& torsion() const { return torsion_; }
  int num_generators() const { return free_rank_ + static_cast<int>(torsion_.size()); }
  bool is_finite() const { return free_rank_ == 0; }
  std::int64_t order() const {
    if (!is_finite()) throw GroupError("infinite group has no finite order");
    std::int64_t n = 1;
    for (auto d : torsion_) n *= d;
    return n;
  }
  /// Least common multiple of the torsion factors (1 for torsion-free groups).
  std::int64_t exponent() const { return torsion_.empty() ? 1 : torsion_.back(); }

  bool operator==(const FgAbGroup& o) const { return free_rank_ == o.free_rank_ && torsion_ == o.torsion_; }

  GroupElement identity() const {
    return GroupElement{std::vector<std::int64_t>(free_rank_, 0), std::vector<std::int64_t>(torsion_.size(), 0)};
  }
  GroupElement generator(int i) const {
    GroupElement g = identity();
    if (i < free_rank_)
      g.free[i] = 1;
    else
      g.torsion.at(i - free_rank_) = 1;
    return g;
  }
  /// Element with the given coordinates (free first, then torsion), reduced.
  GroupElement element(const std::vector<std::int64_t>& coords) const {
    if (static_cast<int>(coords.size()) != num_generators()) throw GroupError("mismatched groups: coordinate count");
    GroupElement g;
    g.free.assign(coords.begin(), coords.begin() + free_rank_);
    g.torsion.assign(coords.begin() + free_rank_, coords.end());
    return reduce(g);
  }
  std::vector<std::int64_t> coords(const GroupElement& g) const {
    check(g);
    std::vector<std::int64_t> c = g.free;
    c.insert(c.end(), g.torsion.begin(), g.torsion.end());
    return c;
  }

  void check(const GroupElement& g) const {
    if (static_cast<int>(g.free.size()) != free_rank_ || g.torsion.size() != torsion_.size())
      throw GroupError("mismatched groups");
  }
  bool contains(const GroupElement& g) const {
    if (static_cast<int>(g.free.size()) != free_rank_ || g.torsion.size() != torsion_.size()) return false;
    for (std::size_t i = 0; i < torsion_.size(); ++i)
      if (g.torsion[i] < 0 || g.torsion[i] >= torsion_[i]) return false;
    return true;
  }

  GroupElement reduce(GroupElement g) const {
    check(g);
    for (std::size_t i = 0; i < torsion_.size(); ++i) {
      g.torsion[i] %= torsion_[i];
      if (g.torsion[i] < 0) g.torsion[i] += torsion_[i];
    }
    return g;
  }
  GroupElement add(const GroupElement& a, const GroupElement& b) const {
    check(a);
    check(b);
    GroupElement r = a;
    for (int i = 0; i < free_rank_; ++i) r.free[i] += b.free[i];
    for (std::size_t i = 0; i < torsion_.size(); ++i) r.torsion[i] = (a.torsion[i] + b.torsion[i]) % torsion_[i];
    return r;
  }
  GroupElement neg(const GroupElement& a) const { return scale(-1, a); }
  GroupElement sub(const GroupElement& a, const GroupElement& b) const { return add(a, neg(b)); }
  GroupElement scale(std::int64_t n, const GroupElement& a) const {
    check(a);
    GroupElement r = a;
    for (auto& x : r.free) x *= n;
    for (std::size_t i = 0; i < torsion_.size(); ++i) r.torsion[i] = (a.torsion[i] % torsion_[i]) * (n % torsion_[i]);
    return reduce(r);
  }
  bool is_identity(const GroupElement& a) const { return a == identity(); }

  /// Order of a; nullopt means infinite.
  std::optional<std::int64_t> order(const GroupElement& a) const {
    check(a);
    for (auto x : a.free)
      if (x != 0) return std::nullopt;
    std::int64_t n = 1;
    for (std::size_t i = 0; i < torsion_.size(); ++i) {
      std::int64_t t = ((a.torsion[i] % torsion_[i]) + torsion_[i]) % torsion_[i];
      std::int64_t oi = torsion_[i] / std::gcd(t, torsion_[i]);
      n = std::lcm(n, oi);
    }
    return n;
  }

  /// Every element with free coordinates in [-bound, bound], in lexicographic coordinate order.
  std::vector<GroupElement> bounded_elements(std::int64_t bound) const {
    std::vector<GroupElement> out;
    std::vector<std::int64_t> lo, hi;
    for (int i = 0; i < free_rank_; ++i) {
      lo.push_back(-bound);
      hi.push_back(bound);
    }
    for (auto d : torsion_) {
      lo.push_back(0);
      hi.push_back(d - 1);
    }
    std::vector<std::int64_t> c = lo;
    while (true) {
      out.push_back(element(c));
      int k = static_cast<int>(c.size()) - 1;
      while (k >= 0 && c[k] == hi[k]) {
        c[k] = lo[k];
        --k;
      }
      if (k < 0) break;
      ++c[k];
    }
    return out;
  }

  std::string to_string() const {
    std::vector<std::string> parts;
    if (free_rank_ == 1) parts.push_back("Z");
    if (free_rank_ > 1) parts.push_back("Z^" + std::to_string(free_rank_));
    for (std::size_t i = 0; i < torsion_.size();) {
      std::size_t j = i;
      while (j < torsion_.size() && torsion_[j] == torsion_[i]) ++j;
      std::string s = "Z" + std::to_string(torsion_[i]);
      if (j - i > 1) s += "^" + std::to_string(j - i);
      parts.push_back(s);
      i = j;
    }
    if (parts.empty()) return "0";
    std::string out = parts[0];
    for (std::size_t i = 1; i < parts.size(); ++i) out += " x " + parts[i];
    return out;
  }

  json to_json() const { return json{{"free_rank", free_rank_}, {"torsion", torsion_}}; }
  static FgAbGroup from_json(const json& j) {
    if (!j.is_object() || !j.contains("free_rank") || !j.contains("torsion")) throw GroupError("group JSON: missing keys");
    if (!j["free_rank"].is_number_integer() || !j["torsion"].is_array()) throw GroupError("group JSON: bad types");
    std::vector<std::int64_t> t;
    for (const auto& x : j["torsion"]) {
      if (!x.is_number_integer()) throw GroupError("group JSON: torsion must be integers");
      t.push_back(x.get<std::int64_t>());
    }
    return FgAbGroup(j["free_rank"].get<int>(), t);
  }
  json element_to_json(const GroupElement& g) const {
    check(g);
    return json{{"free", g.free}, {"torsion", g.torsion}};
  }
  GroupElement element_from_json(const json& j) const {
    if (!j.is_object() || !j.contains("free") || !j.contains("torsion") || !j["free"].is_array() ||
        !j["torsion"].is_array())
      throw GroupError("element JSON: missing keys");
    GroupElement g;
    for (const auto& x : j["free"]) {
      if (!x.is_number_integer()) throw GroupError("element JSON: coordinates must be integers");
      g.free.push_back(x.get<std::int64_t>());
    }
    for (const auto& x : j["torsion"]) {
      if (!x.is_number_integer()) throw GroupError("element JSON: coordinates must be integers");
      g.torsion.push_back(x.get<std::int64_t>());
    }
    return reduce(g);
  }
  std::string element_to_string(const GroupElement& g) const {
    std::string s = "(";
    auto c = coords(g);
    for (std::size_t i = 0; i < c.size(); ++i) {
      if (i) s += ",";
      s += std::to_string(c[i]);
    }
    return s + ")";
  }

 private:
  int free_rank_ = 0;
  std::vector<std::int64_t> torsion_;
};

/// Result of Smith normal form: U * M * V = D with U, V unimodular.
struct SmithForm {
  IntMatrix U, V, Vinv, D;
  std::vector<mpz_class> factors;  // nonzero diagonal entries, each dividing the next
};

inline IntMatrix int_identity(std::size_t n) {
  IntMatrix I(n, std::vector<mpz_class>(n, 0));
  for (std::size_t i = 0; i < n; ++i) I[i][i] = 1;
  return I;
}

inline IntMatrix int_multiply(const IntMatrix& A, const IntMatrix& B, std::size_t inner) {
  std::size_t m = A.size(), n = B.empty() ? 0 : B[0].size();
  IntMatrix C(m, std::vector<mpz_class>(n, 0));
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t k = 0; k < inner; ++k) {
      if (A[i][k] == 0) continue;
      for (std::size_t j = 0; j < n; ++j) C[i][j] += A[i][k] * B[k][j];
    }
  return C;
}

/// Smith normal form. Pivot: smallest nonzero absolute value, ties broken row-major.
inline SmithForm smith_normal_form(const IntMatrix& M, std::size_t cols) {
  std::size_t m = M.size(), n = cols;
  for (const auto& row : M)
    if (row.size() != n) throw GroupError("ragged integer matrix");
  SmithForm r;
  r.D = M;
  r.U = int_identity(m);
  r.V = int_identity(n);
  r.Vinv = int_identity(n);
  IntMatrix& A = r.D;

  auto swap_rows = [&](std::size_t a, std::size_t b) {
    if (a == b) return;
    std::swap(A[a], A[b]);
    std::swap(r.U[a], r.U[b]);
  };
  auto swap_cols = [&](std::size_t a, std::size_t b) {
    if (a == b) return;
    for (auto& row : A) std::swap(row[a], row[b]);
    for (auto& row : r.V) std::swap(row[a], row[b]);
    std::swap(r.Vinv[a], r.Vinv[b]);
  };
  auto add_row = [&](std::size_t dst, std::size_t src, const mpz_class& k) {  // row dst += k row src
    for (std::size_t j = 0; j < n; ++j) A[dst][j] += k * A[src][j];
    for (std::size_t j = 0; j < m; ++j) r.U[dst][j] += k * r.U[src][j];
  };
  auto add_col = [&](std::size_t dst, std::size_t src, const mpz_class& k) {  // col dst += k col src
    for (std::size_t i = 0; i < m; ++i) A[i][dst] += k * A[i][src];
    for (std::size_t i = 0; i < n; ++i) r.V[i][dst] += k * r.V[i][src];
    for (std::size_t j = 0; j < n; ++j) r.Vinv[src][j] -= k * r.Vinv[dst][j];
  };

  for (std::size_t t = 0; t < std::min(m, n); ++t) {
    bool found_any = true;
    while (true) {
      std::size_t pi = 0, pj = 0;
      bool found = false;
      mpz_class best;
      for (std::size_t i = t; i < m; ++i)
        for (std::size_t j = t; j < n; ++j) {
          if (A[i][j] == 0) continue;
          mpz_class a = abs(A[i][j]);
          if (!found || a < best) {
            best = a;
            pi = i;
            pj = j;
            found = true;
          }
        }
      if (!found) {
        found_any = false;
        break;
      }
      swap_rows(t, pi);
      swap_cols(t, pj);
      bool clean = true;
      for (std::size_t i = t + 1; i < m; ++i) {
        if (A[i][t] == 0) continue;
        mpz_class q;
        mpz_fdiv_q(q.get_mpz_t(), A[i][t].get_mpz_t(), A[t][t].get_mpz_t());
        add_row(i, t, -q);
        if (A[i][t] != 0) clean = false;
      }
      for (std::size_t j = t + 1; j < n; ++j) {
        if (A[t][j] == 0) continue;
        mpz_class q;
        mpz_fdiv_q(q.get_mpz_t(), A[t][j].get_mpz_t(), A[t][t].get_mpz_t());
        add_col(j, t, -q);
        if (A[t][j] != 0) clean = false;
      }
      if (!clean) continue;
      bool divisible = true;
      for (std::size_t i = t + 1; i < m && divisible; ++i)
        for (std::size_t j = t + 1; j < n; ++j)
          if (A[i][j] % A[t][t] != 0) {
            add_row(t, i, 1);
            divisible = false;
            break;
          }
      if (divisible) break;
    }
    if (!found_any) break;
    if (A[t][t] < 0) {
      for (std::size_t j = 0; j < n; ++j) A[t][j] = -A[t][j];
      for (std::size_t j = 0; j < m; ++j) r.U[t][j] = -r.U[t][j];
    }
    r.factors.push_back(A[t][t]);
  }
  return r;
}

class GroupHom;

/// Z^n modulo a relation lattice, in canonical form.
struct Presentation {
  FgAbGroup group;
  std::vector<GroupElement> generator_images;  // class of each of the n presentation generators
  std::vector<std::vector<mpz_class>> section;  // an integer preimage of each canonical generator
};

inline Presentation group_from_presentation(std::size_t n, const std::vector<std::vector<std::int64_t>>& relations) {
  IntMatrix R;
  for (const auto& rel : relations) {
    if (rel.size() != n) throw GroupError("relation length differs from generator count");
    std::vector<mpz_class> row;
    for (auto x : rel) row.emplace_back(static_cast<long>(x));
    R.push_back(std::move(row));
  }
  SmithForm s = smith_normal_form(R, n);
  std::size_t r = s.factors.size();
  // Row vectors: y = x V sends the relation lattice onto the row space of D, so coordinate
  // i < r is cyclic of order factors[i] and i >= r is free.
  std::vector<std::size_t> free_idx, tors_idx;
  std::vector<std::int64_t> tors;
  for (std::size_t i = r; i < n; ++i) free_idx.push_back(i);
  for (std::size_t i = 0; i < r; ++i)
    if (s.factors[i] != 1) {
      if (!s.factors[i].fits_slong_p()) throw GroupError("invariant factor too large");
      tors_idx.push_back(i);
      tors.push_back(s.factors[i].get_si());
    }
  Presentation p;
  p.group = FgAbGroup(static_cast<int>(free_idx.size()), tors);
  for (std::size_t j = 0; j < n; ++j) {
    GroupElement g = p.group.identity();
    for (std::size_t a = 0; a < free_idx.size(); ++a) {
      const mpz_class& y = s.V[j][free_idx[a]];
      if (!y.fits_slong_p()) throw GroupError("coordinate overflow");
      g.free[a] = y.get_si();
    }
    for (std::size_t a = 0; a < tors_idx.size(); ++a) {
      mpz_class y;
      mpz_fdiv_r(y.get_mpz_t(), s.V[j][tors_idx[a]].get_mpz_t(), s.factors[tors_idx[a]].get_mpz_t());
      g.torsion[a] = y.get_si();
    }
    p.generator_images.push_back(g);
  }
  for (auto i : free_idx) p.section.push_back(s.Vinv[i]);
  for (auto i : tors_idx) p.section.push_back(s.Vinv[i]);
  return p;
}

/// Homomorphism given by the images of the canonical generators of the domain.
class GroupHom {
 public:
  GroupHom(FgAbGroup domain, FgAbGroup codomain, std::vector<GroupElement> images)
      : domain_(std::move(domain)), codomain_(std::move(codomain)), images_(std::move(images)) {
    if (static_cast<int>(images_.size()) != domain_.num_generators()) throw GroupError("hom: wrong number of images");
    for (auto& g : images_) g = codomain_.reduce(g);
    for (std::size_t i = 0; i < domain_.torsion().size(); ++i) {
      const GroupElement& img = images_[domain_.free_rank() + i];
      if (!codomain_.is_identity(codomain_.scale(domain_.torsion()[i], img)))
        throw GroupError("hom: image order does not divide generator order");
    }
  }

  static GroupHom identity(const FgAbGroup& g) {
    std::vector<GroupElement> imgs;
    for (int i = 0; i < g.num_generators(); ++i) imgs.push_back(g.generator(i));
    return GroupHom(g, g, imgs);
  }

  const FgAbGroup& domain() const { return domain_; }
  const FgAbGroup& codomain() const { return codomain_; }
  const std::vector<GroupElement>& images() const { return images_; }

  GroupElement apply(const GroupElement& g) const {
    domain_.check(g);
    std::vector<std::int64_t> acc(codomain_.num_generators(), 0);
    auto c = domain_.coords(g);
    for (std::size_t i = 0; i < c.size(); ++i) {
      if (c[i] == 0) continue;
      auto ic = codomain_.coords(images_[i]);
      for (std::size_t k = 0; k < acc.size(); ++k) {
        acc[k] += c[i] * ic[k];
        if (k >= static_cast<std::size_t>(codomain_.free_rank()))
          acc[k] %= codomain_.torsion()[k - codomain_.free_rank()];
      }
    }
    return codomain_.element(acc);
  }

  /// (this o inner)
  GroupHom compose(const GroupHom& inner) const {
    if (!(inner.codomain() == domain_)) throw GroupError("mismatched groups in composition");
    std::vector<GroupElement> imgs;
    for (const auto& g : inner.images()) imgs.push_back(apply(g));
    return GroupHom(inner.domain(), codomain_, imgs);
  }

  bool is_surjective() const {
    // Cokernel presented by codomain relations plus generator images.
    std::size_t n = codomain_.num_generators();
    std::vector<std::vector<std::int64_t>> rel;
    for (std::size_t i = 0; i < codomain_.torsion().size(); ++i) {
      std::vector<std::int64_t> r(n, 0);
      r[codomain_.free_rank() + i] = codomain_.torsion()[i];
      rel.push_back(r);
    }
    for (const auto& g : images_) rel.push_back(codomain_.coords(g));
    auto p = group_from_presentation(n, rel);
    return p.group.num_generators() == 0;
  }

  /// A surjection between isomorphic finitely generated abelian groups is an isomorphism.
  bool is_iso() const { return domain_ == codomain_ && is_surjective(); }

  json to_json() const {
    json imgs = json::array();
    for (const auto& g : images_) imgs.push_back(codomain_.element_to_json(g));
    return json{{"domain", domain_.to_json()}, {"codomain", codomain_.to_json()}, {"images", imgs}};
  }
  static GroupHom from_json(const json& j) {
    if (!j.is_object() || !j.contains("domain") || !j.contains("codomain") || !j.contains("images"))
      throw GroupError("hom JSON: missing keys");
    FgAbGroup d = FgAbGroup::from_json(j["domain"]), c = FgAbGroup::from_json(j["codomain"]);
    std::vector<GroupElement> imgs;
    for (const auto& e : j["images"]) imgs.push_back(c.element_from_json(e));
    return GroupHom(d, c, imgs);
  }

 private:
  FgAbGroup domain_, codomain_;
  std::vector<GroupElement> images_;
};

inline FgAbGroup FgAbGroup::from_cyclic_factors(int free_rank, const std::vector<std::int64_t>& moduli) {
  std::size_t n = static_cast<std::size_t>(free_rank) + moduli.size();
  std::vector<std::vector<std::int64_t>> rel;
  for (std::size_t i = 0; i < moduli.size(); ++i) {
    std::vector<std::int64_t> r(n, 0);
    r[free_rank + i] = moduli[i];
    rel.push_back(r);
  }
  return group_from_presentation(n, rel).group;
}

}  // namespace gradings
