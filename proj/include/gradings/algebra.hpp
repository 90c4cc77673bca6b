#pragma once

#include <functional>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "gradings/field.hpp"
#include "gradings/linalg.hpp"

namespace gradings {

class AlgebraError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Outcome of an identity check, with a description of the first failure.
struct CheckResult {
  bool ok = true;
  std::string detail;
};

template <class F>
struct Term {
  std::uint32_t k;
  typename F::value_type c;
};

/// Finite-dimensional algebra given by sparse structure constants b_i b_j = sum c b_k.
///
/// Commutative algebras store only the pairs i <= j, anticommutative ones only i < j.
template <class F>
class Algebra {
 public:
  using value_type = typename F::value_type;
  using Product = std::vector<Term<F>>;

  struct Flags {
    bool commutative = false;
    bool anticommutative = false;
  };

  /// Builds the algebra from a function returning the coordinate vector of b_i b_j.
  static Algebra from_function(const F& f, std::string name, std::vector<std::string> basis,
                               const std::function<Vec<F>(std::size_t, std::size_t)>& prod, Flags flags = {}) {
    std::size_t n = basis.size();
    std::vector<std::vector<Vec<F>>> table(n, std::vector<Vec<F>>(n));
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) {
        table[i][j] = prod(i, j);
        if (table[i][j].size() != n) throw AlgebraError("product vector has wrong length");
      }
    return from_table(f, std::move(name), std::move(basis), table, flags);
  }

  /// Builds the algebra from (i, j, k, c) entries; absent entries are zero.
  static Algebra from_entries(const F& f, std::string name, std::vector<std::string> basis,
                              const std::vector<std::tuple<std::size_t, std::size_t, std::size_t, value_type>>& entries,
                              Flags flags = {}) {
    std::size_t n = basis.size();
    std::vector<std::vector<Vec<F>>> table(n, std::vector<Vec<F>>(n, Vec<F>(n, f.zero())));
    for (const auto& [i, j, k, c] : entries) {
      if (i >= n || j >= n || k >= n) throw AlgebraError("structure constant index out of range");
      table[i][j][k] = f.add(table[i][j][k], c);
    }
    return from_table(f, std::move(name), std::move(basis), table, flags);
  }

  static Algebra from_table(const F& f, std::string name, std::vector<std::string> basis,
                            const std::vector<std::vector<Vec<F>>>& table, Flags flags = {}) {
    Algebra A(f);
    A.name_ = std::move(name);
    A.basis_ = std::move(basis);
    A.flags_ = flags;
    std::size_t n = A.basis_.size();
    A.n_ = n;
    if (flags.commutative && flags.anticommutative && f.characteristic() != 2)
      throw AlgebraError("algebra cannot be flagged both commutative and anticommutative");
    A.table_.assign(n * n, {});
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) {
        const Vec<F>& v = table[i][j];
        if (flags.commutative && !vec_eq(f, v, table[j][i]))
          throw AlgebraError("products are not commutative at (" + A.basis_[i] + "," + A.basis_[j] + ")");
        if (flags.anticommutative && !vec_eq(f, v, vec_neg(f, table[j][i])))
          throw AlgebraError("products are not anticommutative at (" + A.basis_[i] + "," + A.basis_[j] + ")");
        if (flags.anticommutative && i == j && !vec_is_zero(f, v))
          throw AlgebraError("anticommutative algebra with nonzero square");
        if ((flags.commutative || flags.anticommutative) && j < i) continue;
        Product p;
        for (std::size_t k = 0; k < n; ++k)
          if (!f.is_zero(v[k])) p.push_back({static_cast<std::uint32_t>(k), v[k]});
        A.table_[i * n + j] = std::move(p);
      }
    return A;
  }

  const F& field() const { return f_; }
  const std::string& name() const { return name_; }
  void set_name(std::string n) { name_ = std::move(n); }
  std::size_t dim() const { return n_; }
  const std::vector<std::string>& basis() const { return basis_; }
  const Flags& flags() const { return flags_; }
  const std::optional<Vec<F>>& unit() const { return unit_; }
  void set_unit(Vec<F> u) { unit_ = std::move(u); }
  const std::optional<Matrix<F>>& form() const { return form_; }
  void set_form(Matrix<F> b) {
    if (b.rows() != n_ || b.cols() != n_) throw AlgebraError("form has wrong size");
    if (!mat_eq(f_, b, mat_transpose(b))) throw AlgebraError("bilinear form is not symmetric");
    form_ = std::move(b);
  }

  std::size_t index_of(const std::string& name) const {
    for (std::size_t i = 0; i < n_; ++i)
      if (basis_[i] == name) return i;
    throw AlgebraError("no basis element named " + name);
  }

  /// Calls fn(k, c) for every term of b_i b_j.
  template <class Fn>
  void for_each_term(std::size_t i, std::size_t j, Fn&& fn) const {
    if (flags_.anticommutative) {
      if (i == j) return;
      if (i > j) {
        for (const auto& t : table_[j * n_ + i]) fn(t.k, f_.neg(t.c));
        return;
      }
    } else if (flags_.commutative && i > j) {
      std::swap(i, j);
    }
    for (const auto& t : table_[i * n_ + j]) fn(t.k, t.c);
  }

  Vec<F> product_of_basis(std::size_t i, std::size_t j) const {
    Vec<F> r(n_, f_.zero());
    for_each_term(i, j, [&](std::size_t k, const value_type& c) { r[k] = f_.add(r[k], c); });
    return r;
  }

  bool basis_product_is_zero(std::size_t i, std::size_t j) const {
    bool zero = true;
    for_each_term(i, j, [&](std::size_t, const value_type&) { zero = false; });
    return zero;
  }

  Vec<F> multiply(const Vec<F>& x, const Vec<F>& y) const {
    if (x.size() != n_ || y.size() != n_) throw AlgebraError("dimension mismatch in multiply");
    Vec<F> r(n_, f_.zero());
    std::vector<std::size_t> ny;
    for (std::size_t j = 0; j < n_; ++j)
      if (!f_.is_zero(y[j])) ny.push_back(j);
    for (std::size_t i = 0; i < n_; ++i) {
      if (f_.is_zero(x[i])) continue;
      for (auto j : ny) {
        value_type s = f_.mul(x[i], y[j]);
        for_each_term(i, j, [&](std::size_t k, const value_type& c) { r[k] = f_.add(r[k], f_.mul(s, c)); });
      }
    }
    return r;
  }

  /// Matrix of y -> x y.
  Matrix<F> left_mult(const Vec<F>& x) const {
    Matrix<F> L = Matrix<F>::zero(f_, n_, n_);
    for (std::size_t j = 0; j < n_; ++j) L.set_column(j, multiply(x, unit_vec(f_, n_, j)));
    return L;
  }
  /// Matrix of y -> y x.
  Matrix<F> right_mult(const Vec<F>& x) const {
    Matrix<F> R = Matrix<F>::zero(f_, n_, n_);
    for (std::size_t j = 0; j < n_; ++j) R.set_column(j, multiply(unit_vec(f_, n_, j), x));
    return R;
  }

  value_type form_value(const Vec<F>& x, const Vec<F>& y) const {
    if (!form_) throw AlgebraError("algebra carries no bilinear form");
    return bilinear(f_, *form_, x, y);
  }

  /// All nonzero structure constants (i, j, k, c), including the pairs not stored.
  std::vector<std::tuple<std::size_t, std::size_t, std::size_t, value_type>> entries() const {
    std::vector<std::tuple<std::size_t, std::size_t, std::size_t, value_type>> out;
    for (std::size_t i = 0; i < n_; ++i)
      for (std::size_t j = 0; j < n_; ++j) {
        std::vector<std::pair<std::size_t, value_type>> ts;
        for_each_term(i, j, [&](std::size_t k, const value_type& c) { ts.emplace_back(k, c); });
        std::sort(ts.begin(), ts.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
        for (auto& [k, c] : ts) out.emplace_back(i, j, k, c);
      }
    return out;
  }

  std::size_t stored_constants() const {
    std::size_t s = 0;
    for (const auto& p : table_) s += p.size();
    return s;
  }

  bool same_structure(const Algebra& o) const {
    if (o.n_ != n_) return false;
    for (std::size_t i = 0; i < n_; ++i)
      for (std::size_t j = 0; j < n_; ++j)
        if (!vec_eq(f_, product_of_basis(i, j), o.product_of_basis(i, j))) return false;
    return true;
  }

  static value_type bilinear(const F& f, const Matrix<F>& B, const Vec<F>& x, const Vec<F>& y) {
    value_type s = f.zero();
    for (std::size_t i = 0; i < x.size(); ++i) {
      if (f.is_zero(x[i])) continue;
      for (std::size_t j = 0; j < y.size(); ++j)
        if (!f.is_zero(y[j]) && !f.is_zero(B(i, j))) s = f.add(s, f.mul(x[i], f.mul(B(i, j), y[j])));
    }
    return s;
  }

 private:
  explicit Algebra(const F& f) : f_(f) {}

  F f_;
  std::string name_;
  std::vector<std::string> basis_;
  std::size_t n_ = 0;
  Flags flags_;
  std::vector<Product> table_;
  std::optional<Vec<F>> unit_;
  std::optional<Matrix<F>> form_;
};

/// Commutator d1 d2 - d2 d1.
template <class F>
Matrix<F> bracket(const F& f, const Matrix<F>& a, const Matrix<F>& b) {
  return mat_sub(f, mat_mul(f, a, b), mat_mul(f, b, a));
}

template <class F>
bool is_derivation(const Algebra<F>& A, const Matrix<F>& d) {
  const F& f = A.field();
  std::size_t n = A.dim();
  if (d.rows() != n || d.cols() != n) throw AlgebraError("derivation has wrong size");
  std::vector<Vec<F>> img(n);
  for (std::size_t i = 0; i < n; ++i) img[i] = d.column(i);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      Vec<F> lhs = mat_apply(f, d, A.product_of_basis(i, j));
      Vec<F> rhs = vec_add(f, A.multiply(img[i], unit_vec(f, n, j)), A.multiply(unit_vec(f, n, i), img[j]));
      if (!vec_eq(f, lhs, rhs)) return false;
    }
  return true;
}

template <class F>
bool is_automorphism(const Algebra<F>& A, const Matrix<F>& phi) {
  const F& f = A.field();
  std::size_t n = A.dim();
  if (phi.rows() != n || phi.cols() != n) throw AlgebraError("map has wrong size");
  if (rank(f, phi) != n) return false;
  std::vector<Vec<F>> img(n);
  for (std::size_t i = 0; i < n; ++i) img[i] = phi.column(i);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      if (!vec_eq(f, mat_apply(f, phi, A.product_of_basis(i, j)), A.multiply(img[i], img[j]))) return false;
  return true;
}

/// Basis of Der(A) in reduced echelon form, one map per free unknown.
template <class F>
struct DerivationSpace {
  std::vector<Matrix<F>> basis;
  std::vector<std::size_t> free_columns;  // flattened (row-major) positions of the free unknowns

  std::size_t dim() const { return basis.size(); }

  /// Coordinates of a map known to lie in the span.
  Vec<F> coordinates(const Matrix<F>& d) const {
    Vec<F> c;
    c.reserve(free_columns.size());
    for (auto u : free_columns) c.push_back(d.flat()[u]);
    return c;
  }
};

/// Solves d(b_i b_j) = d(b_i) b_j + b_i d(b_j) for the n^2 entries of d.
/// Unknown k*n + m is the coefficient of b_k in d(b_m).
template <class F>
DerivationSpace<F> derivation_space(const Algebra<F>& A) {
  const F& f = A.field();
  std::size_t n = A.dim();
  SparseEchelon<F> ech(f, n * n);
  bool symmetric = A.flags().commutative || A.flags().anticommutative;
  std::vector<std::map<std::uint32_t, typename F::value_type>> rows(n);
  auto addto = [&](std::size_t k, std::size_t var, const typename F::value_type& c) {
    auto [it, inserted] = rows[k].try_emplace(static_cast<std::uint32_t>(var), c);
    if (!inserted) it->second = f.add(it->second, c);
  };
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = symmetric ? i : 0; j < n; ++j) {
      for (auto& r : rows) r.clear();
      A.for_each_term(i, j, [&](std::size_t m, const auto& c) {
        for (std::size_t k = 0; k < n; ++k) addto(k, k * n + m, c);
      });
      for (std::size_t m = 0; m < n; ++m) {
        A.for_each_term(m, j, [&](std::size_t k, const auto& c) { addto(k, m * n + i, f.neg(c)); });
        A.for_each_term(i, m, [&](std::size_t k, const auto& c) { addto(k, m * n + j, f.neg(c)); });
      }
      for (auto& r : rows) {
        SparseRow<F> sr;
        for (auto& [var, c] : r)
          if (!f.is_zero(c)) sr.emplace_back(var, c);
        if (!sr.empty()) ech.add_row(std::move(sr));
      }
    }
  DerivationSpace<F> D;
  D.free_columns = ech.free_columns();
  for (auto& v : ech.kernel_basis()) D.basis.push_back(Matrix<F>::from_flat(n, n, std::move(v)));
  return D;
}

/// Anticommutative algebra of the brackets of the given maps, expressed in the same maps.
template <class F>
Algebra<F> close_under_bracket(const F& f, const std::vector<Matrix<F>>& maps, std::vector<std::string> names = {},
                               std::string name = "lie") {
  std::size_t k = maps.size();
  if (names.empty())
    for (std::size_t i = 0; i < k; ++i) names.push_back("X" + std::to_string(i));
  std::vector<Vec<F>> flat;
  for (const auto& m : maps) flat.push_back(m.flat());
  SpanCoordinates<F> coords(f, flat);
  std::vector<std::vector<Vec<F>>> table(k, std::vector<Vec<F>>(k, Vec<F>(k, f.zero())));
  for (std::size_t i = 0; i < k; ++i)
    for (std::size_t j = i + 1; j < k; ++j) {
      auto c = coords.coordinates(bracket(f, maps[i], maps[j]).flat());
      if (!c) throw AlgebraError("maps are not closed under the bracket");
      table[i][j] = *c;
      table[j][i] = vec_neg(f, *c);
    }
  typename Algebra<F>::Flags fl;
  fl.anticommutative = true;
  return Algebra<F>::from_table(f, std::move(name), std::move(names), table, fl);
}

/// Matrix of ad_x on an algebra, where x is a coordinate vector.
template <class F>
Matrix<F> adjoint(const Algebra<F>& L, const Vec<F>& x) {
  return L.left_mult(x);
}

/// I + N + N^2/2 for N with N^3 = 0.
template <class F>
Matrix<F> exp_nilpotent(const F& f, const Matrix<F>& N) {
  if (f.characteristic() == 2) throw AlgebraError("nilpotent exponential needs characteristic != 2");
  if (N.rows() != N.cols()) throw AlgebraError("exponential of non-square matrix");
  Matrix<F> N2 = mat_mul(f, N, N);
  if (!mat_is_zero(f, mat_mul(f, N2, N))) throw AlgebraError("map is not nilpotent of index <= 3");
  Matrix<F> r = mat_add(f, Matrix<F>::identity(f, N.rows()), N);
  return mat_add(f, r, mat_scale(f, f.inv(f.from_int(2)), N2));
}

/// Algebra in the basis given by the columns of P (coordinates in the old basis).
template <class F>
Algebra<F> change_basis(const Algebra<F>& A, const Matrix<F>& P, std::vector<std::string> names = {},
                        std::string name = "") {
  const F& f = A.field();
  std::size_t n = A.dim();
  if (P.rows() != n || P.cols() != n) throw AlgebraError("change of basis has wrong size");
  auto Pinv = try_inverse(f, P);
  if (!Pinv) throw AlgebraError("change of basis is singular");
  if (names.empty()) names = A.basis();
  std::vector<Vec<F>> cols(n);
  for (std::size_t j = 0; j < n; ++j) cols[j] = P.column(j);
  std::vector<std::vector<Vec<F>>> table(n, std::vector<Vec<F>>(n));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) table[i][j] = mat_apply(f, *Pinv, A.multiply(cols[i], cols[j]));
  Algebra<F> B = Algebra<F>::from_table(f, name.empty() ? A.name() : name, std::move(names), table, A.flags());
  if (A.unit()) B.set_unit(mat_apply(f, *Pinv, *A.unit()));
  if (A.form()) B.set_form(mat_mul(f, mat_transpose(P), mat_mul(f, *A.form(), P)));
  return B;
}

template <class F>
json matrix_to_json(const F& f, const Matrix<F>& M) {
  json cols = json::array();
  for (std::size_t j = 0; j < M.cols(); ++j) {
    json c = json::array();
    for (std::size_t i = 0; i < M.rows(); ++i) c.push_back(f.to_json(M(i, j)));
    cols.push_back(c);
  }
  return cols;
}

template <class F>
Matrix<F> matrix_from_json(const F& f, const json& j, std::size_t rows) {
  if (!j.is_array()) throw AlgebraError("matrix JSON must be an array of columns");
  Matrix<F> M = Matrix<F>::zero(f, rows, j.size());
  for (std::size_t c = 0; c < j.size(); ++c) {
    if (!j[c].is_array() || j[c].size() != rows) throw AlgebraError("matrix JSON column has wrong length");
    for (std::size_t r = 0; r < rows; ++r) M(r, c) = f.from_json(j[c][r]);
  }
  return M;
}

template <class F>
json algebra_to_json(const Algebra<F>& A) {
  const F& f = A.field();
  json products = json::array();
  for (const auto& [i, j, k, c] : A.entries()) products.push_back(json::array({i, j, k, f.to_json(c)}));
  json unit = nullptr;
  if (A.unit()) {
    unit = json::array();
    for (const auto& a : *A.unit()) unit.push_back(f.to_json(a));
  }
  json out{{"name", A.name()},
           {"field", f.spec().to_json()},
           {"dim", A.dim()},
           {"basis", A.basis()},
           {"products", products},
           {"flags",
            {{"commutative", A.flags().commutative}, {"anticommutative", A.flags().anticommutative}, {"unit", unit}}}};
  if (A.form()) out["form"] = matrix_to_json(f, *A.form());
  return out;
}

template <class F>
Algebra<F> algebra_from_json(const F& f, const json& j) {
  for (const char* key : {"name", "dim", "basis", "products"})
    if (!j.contains(key)) throw AlgebraError(std::string("algebra JSON: missing key ") + key);
  if (!j["dim"].is_number_unsigned() || !j["basis"].is_array() || !j["products"].is_array())
    throw AlgebraError("algebra JSON: bad types");
  std::size_t n = j["dim"].get<std::size_t>();
  if (j["basis"].size() != n) throw AlgebraError("algebra JSON: basis length differs from dim");
  std::vector<std::string> names;
  for (const auto& b : j["basis"]) {
    if (!b.is_string()) throw AlgebraError("algebra JSON: basis names must be strings");
    names.push_back(b.get<std::string>());
  }
  std::vector<std::tuple<std::size_t, std::size_t, std::size_t, typename F::value_type>> entries;
  for (const auto& p : j["products"]) {
    if (!p.is_array() || p.size() != 4 || !p[0].is_number_unsigned() || !p[1].is_number_unsigned() ||
        !p[2].is_number_unsigned())
      throw AlgebraError("algebra JSON: product entries must be [i,j,k,coeff]");
    entries.emplace_back(p[0].get<std::size_t>(), p[1].get<std::size_t>(), p[2].get<std::size_t>(), f.from_json(p[3]));
  }
  typename Algebra<F>::Flags fl;
  if (j.contains("flags")) {
    const json& fj = j["flags"];
    fl.commutative = fj.value("commutative", false);
    fl.anticommutative = fj.value("anticommutative", false);
  }
  Algebra<F> A = Algebra<F>::from_entries(f, j["name"].get<std::string>(), names, entries, fl);
  if (j.contains("flags") && j["flags"].contains("unit") && !j["flags"]["unit"].is_null()) {
    const json& u = j["flags"]["unit"];
    if (!u.is_array() || u.size() != n) throw AlgebraError("algebra JSON: unit has wrong length");
    Vec<F> uv;
    for (const auto& a : u) uv.push_back(f.from_json(a));
    A.set_unit(uv);
  }
  if (j.contains("form")) A.set_form(matrix_from_json(f, j["form"], n));
  return A;
}

}  // namespace gradings
