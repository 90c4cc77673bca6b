#pragma once

#include <optional>
#include <random>
#include <stdexcept>
#include <string>
#include <vector>

#include "gradings/algebra.hpp"
#include "gradings/grading.hpp"

namespace gradings {

class CompositionError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Split Cayley basis order, used throughout.
inline const std::vector<std::string>& cayley_basis_names() {
  static const std::vector<std::string> names{"e1", "e2", "u1", "u2", "u3", "v1", "v2", "v3"};
  return names;
}

namespace cayley_index {
constexpr std::size_t e1 = 0, e2 = 1;
constexpr std::size_t u(int i) { return 1 + static_cast<std::size_t>(i); }  // i in 1..3
constexpr std::size_t v(int i) { return 4 + static_cast<std::size_t>(i); }
}  // namespace cayley_index

/// An algebra with a multiplicative quadratic norm (given by its polar form) and a conjugation.
template <class F>
struct CompositionData {
  Algebra<F> algebra;
  Matrix<F> norm;         // polar form n(x,y) = n(x+y) - n(x) - n(y)
  Matrix<F> conjugation;  // x -> n(x,1)1 - x when unital
  std::optional<Vec<F>> unit;
  std::vector<std::vector<std::int64_t>> doubling_degrees;  // Z2^r degree of each basis vector (doubling chain only)

  const F& field() const { return algebra.field(); }
  std::size_t dim() const { return algebra.dim(); }
  Vec<F> basis_vec(std::size_t i) const { return unit_vec(field(), dim(), i); }
  Vec<F> one() const {
    if (!unit) throw CompositionError("composition algebra has no unit");
    return *unit;
  }
};

template <class F>
auto polar(const CompositionData<F>& C, const Vec<F>& x, const Vec<F>& y) {
  return Algebra<F>::bilinear(C.field(), C.norm, x, y);
}

template <class F>
auto norm(const CompositionData<F>& C, const Vec<F>& x) {
  const F& f = C.field();
  return f.div(polar(C, x, x), f.from_int(2));
}

template <class F>
Vec<F> conj(const CompositionData<F>& C, const Vec<F>& x) {
  return mat_apply(C.field(), C.conjugation, x);
}

template <class F>
Vec<F> mul(const CompositionData<F>& C, const Vec<F>& x, const Vec<F>& y) {
  return C.algebra.multiply(x, y);
}

template <class F>
Matrix<F> conjugation_matrix(const F& f, const Matrix<F>& polar_form, const Vec<F>& unit) {
  std::size_t n = unit.size();
  Matrix<F> c = Matrix<F>::zero(f, n, n);
  for (std::size_t j = 0; j < n; ++j) {
    Vec<F> bj = unit_vec(f, n, j);
    auto t = Algebra<F>::bilinear(f, polar_form, bj, unit);
    c.set_column(j, vec_sub(f, vec_scale(f, t, unit), bj));
  }
  return c;
}

template <class F>
void require_char_not_two(const F& f, const char* what) {
  if (f.characteristic() == 2) throw CompositionError(std::string(what) + " needs characteristic != 2");
}

/// The split Cayley algebra in its good basis.
template <class F>
CompositionData<F> cayley_split(const F& f) {
  require_char_not_two(f, "the split Cayley algebra");
  using namespace cayley_index;
  using E = std::tuple<std::size_t, std::size_t, std::size_t, typename F::value_type>;
  std::vector<E> t;
  auto one = f.one(), m1 = f.from_int(-1);
  t.emplace_back(e1, e1, e1, one);
  t.emplace_back(e2, e2, e2, one);
  for (int i = 1; i <= 3; ++i) {
    int i1 = i % 3 + 1, i2 = i1 % 3 + 1;
    t.emplace_back(e1, u(i), u(i), one);
    t.emplace_back(u(i), e2, u(i), one);
    t.emplace_back(e2, v(i), v(i), one);
    t.emplace_back(v(i), e1, v(i), one);
    t.emplace_back(u(i), v(i), e1, m1);
    t.emplace_back(v(i), u(i), e2, m1);
    t.emplace_back(u(i), u(i1), v(i2), one);
    t.emplace_back(u(i1), u(i), v(i2), m1);
    t.emplace_back(v(i), v(i1), u(i2), one);
    t.emplace_back(v(i1), v(i), u(i2), m1);
  }
  Algebra<F> A = Algebra<F>::from_entries(f, "cayley", cayley_basis_names(), t);
  Matrix<F> nrm = Matrix<F>::zero(f, 8, 8);
  auto pair = [&](std::size_t a, std::size_t b) { nrm(a, b) = nrm(b, a) = one; };
  pair(e1, e2);
  for (int i = 1; i <= 3; ++i) pair(u(i), v(i));
  Vec<F> unit = vec_add(f, unit_vec(f, 8, e1), unit_vec(f, 8, e2));
  A.set_unit(unit);
  A.set_form(nrm);
  return CompositionData<F>{A, nrm, conjugation_matrix(f, nrm, unit), unit, {}};
}

/// x^2 - n(x,1)x + n(x)1 = 0.
template <class F>
bool cayley_hamilton_check(const CompositionData<F>& C, const Vec<F>& x) {
  const F& f = C.field();
  Vec<F> one = C.one();
  Vec<F> r = mul(C, x, x);
  r = vec_sub(f, r, vec_scale(f, polar(C, x, one), x));
  r = vec_add(f, r, vec_scale(f, norm(C, x), one));
  return vec_is_zero(f, r);
}

/// n(xy) = n(x)n(y).
template <class F>
bool composition_law_check(const CompositionData<F>& C, const Vec<F>& x, const Vec<F>& y) {
  const F& f = C.field();
  return f.eq(norm(C, mul(C, x, y)), f.mul(norm(C, x), norm(C, y)));
}

/// The ground field as a one-dimensional composition algebra, the start of the doubling chain.
template <class F>
CompositionData<F> ground_composition(const F& f) {
  require_char_not_two(f, "composition algebras");
  Algebra<F> A = Algebra<F>::from_entries(f, "F", {"1"}, {{0, 0, 0, f.one()}});
  Vec<F> unit{f.one()};
  Matrix<F> nrm = Matrix<F>::zero(f, 1, 1);
  nrm(0, 0) = f.from_int(2);
  A.set_unit(unit);
  A.set_form(nrm);
  return CompositionData<F>{A, nrm, conjugation_matrix(f, nrm, unit), unit, {{}}};
}

/// Doubling Q + Qu with (a+bu)(c+du) = (ac - alpha dbar b) + (da + b cbar)u and n(a+bu) = n(a) + alpha n(b).
/// The new generator u has u^2 = -alpha. Basis: Q's basis followed by its products with u.
template <class F>
CompositionData<F> cayley_dickson(const CompositionData<F>& Q, const typename F::value_type& alpha,
                                  const std::string& generator = "u") {
  const F& f = Q.field();
  if (f.is_zero(alpha)) throw CompositionError("doubling parameter must be nonzero");
  if (!Q.unit) throw CompositionError("doubling needs a unital algebra");
  std::size_t m = Q.dim(), n = 2 * m;
  std::vector<std::string> names = Q.algebra.basis();
  for (std::size_t k = 0; k < m; ++k) names.push_back(Q.algebra.basis()[k] == "1" ? generator : Q.algebra.basis()[k] + generator);
  auto split = [&](const Vec<F>& x) {
    return std::pair<Vec<F>, Vec<F>>{Vec<F>(x.begin(), x.begin() + m), Vec<F>(x.begin() + m, x.end())};
  };
  auto prod = [&](std::size_t i, std::size_t j) {
    auto [a, b] = split(unit_vec(f, n, i));
    auto [c, d] = split(unit_vec(f, n, j));
    Vec<F> lo = vec_sub(f, mul(Q, a, c), vec_scale(f, alpha, mul(Q, conj(Q, d), b)));
    Vec<F> hi = vec_add(f, mul(Q, d, a), mul(Q, b, conj(Q, c)));
    lo.insert(lo.end(), hi.begin(), hi.end());
    return lo;
  };
  Algebra<F> A = Algebra<F>::from_function(f, Q.algebra.name() + "+" + generator, names, prod);
  Matrix<F> nrm = Matrix<F>::zero(f, n, n);
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = 0; j < m; ++j) {
      nrm(i, j) = Q.norm(i, j);
      nrm(m + i, m + j) = f.mul(alpha, Q.norm(i, j));
    }
  Vec<F> unit = *Q.unit;
  unit.resize(n, f.zero());
  A.set_unit(unit);
  A.set_form(nrm);
  std::vector<std::vector<std::int64_t>> degs;
  for (int bit = 0; bit < 2; ++bit)
    for (std::size_t k = 0; k < m; ++k) {
      auto d = Q.doubling_degrees.empty() ? std::vector<std::int64_t>{} : Q.doubling_degrees[k];
      d.push_back(bit);
      degs.push_back(d);
    }
  return CompositionData<F>{A, nrm, conjugation_matrix(f, nrm, unit), unit, degs};
}

/// Three doublings with w_i^2 = 1; basis 1, w1, w2, w1w2, w3, w1w3, w2w3, w1w2w3.
template <class F>
CompositionData<F> cayley_dickson_chain(const F& f) {
  auto m1 = f.from_int(-1);
  auto C = cayley_dickson(cayley_dickson(cayley_dickson(ground_composition(f), m1, "w1"), m1, "w2"), m1, "w3");
  C.algebra.set_name("cayley-dickson");
  return C;
}

/// Columns: images in the good basis of the doubling-chain basis, from w1=e1-e2, w2=u1-v1, w3=u2-v2.
template <class F>
Matrix<F> chain_to_split(const CompositionData<F>& split) {
  using namespace cayley_index;
  const F& f = split.field();
  auto b = [&](std::size_t i) { return split.basis_vec(i); };
  Vec<F> w1 = vec_sub(f, b(e1), b(e2)), w2 = vec_sub(f, b(u(1)), b(v(1))), w3 = vec_sub(f, b(u(2)), b(v(2)));
  Vec<F> w12 = mul(split, w1, w2);
  std::vector<Vec<F>> cols{split.one(), w1, w2, w12, w3, mul(split, w1, w3), mul(split, w2, w3), mul(split, w12, w3)};
  return Matrix<F>::from_columns(f, cols, 8);
}

/// P(b_i b_j) = P(b_i) P(b_j) for all basis pairs, with P invertible.
template <class F>
bool is_algebra_isomorphism(const Algebra<F>& A, const Algebra<F>& B, const Matrix<F>& P) {
  const F& f = A.field();
  if (P.rows() != B.dim() || P.cols() != A.dim() || A.dim() != B.dim()) return false;
  if (rank(f, P) != A.dim()) return false;
  for (std::size_t i = 0; i < A.dim(); ++i)
    for (std::size_t j = 0; j < A.dim(); ++j)
      if (!vec_eq(f, mat_apply(f, P, A.product_of_basis(i, j)), B.multiply(P.column(i), P.column(j)))) return false;
  return true;
}

/// Para-Hurwitz product x . y = xbar ybar.
template <class F>
Vec<F> para_product(const CompositionData<F>& C, const Vec<F>& x, const Vec<F>& y) {
  return mul(C, conj(C, x), conj(C, y));
}

/// The para-Hurwitz algebra (C, .) with the same norm; it has no unit.
template <class F>
CompositionData<F> para_hurwitz(const CompositionData<F>& C) {
  const F& f = C.field();
  std::size_t n = C.dim();
  Algebra<F> A = Algebra<F>::from_function(f, "para-" + C.algebra.name(), C.algebra.basis(),
                                           [&](std::size_t i, std::size_t j) {
                                             return para_product(C, C.basis_vec(i), C.basis_vec(j));
                                           });
  A.set_form(C.norm);
  (void)n;
  return CompositionData<F>{A, C.norm, C.conjugation, std::nullopt, {}};
}

/// Order three automorphism fixing e1, e2 and cycling u1 -> u2 -> u3, v1 -> v2 -> v3.
template <class F>
Matrix<F> tau_automorphism(const CompositionData<F>& split) {
  using namespace cayley_index;
  const F& f = split.field();
  Matrix<F> t = Matrix<F>::zero(f, 8, 8);
  t(e1, e1) = f.one();
  t(e2, e2) = f.one();
  for (int j = 1; j <= 3; ++j) {
    int j1 = j % 3 + 1;
    t(u(j1), u(j)) = f.one();
    t(v(j1), v(j)) = f.one();
  }
  return t;
}

/// Order two automorphism e1 <-> e2, u_i <-> v_i.
template <class F>
Matrix<F> cayley_sigma(const CompositionData<F>& split) {
  using namespace cayley_index;
  const F& f = split.field();
  Matrix<F> s = Matrix<F>::zero(f, 8, 8);
  s(e1, e2) = s(e2, e1) = f.one();
  for (int i = 1; i <= 3; ++i) s(u(i), v(i)) = s(v(i), u(i)) = f.one();
  return s;
}

/// Okubo product x*y = tau(xbar) tau^2(ybar) on the good basis, with the Cayley norm.
template <class F>
CompositionData<F> okubo(const F& f) {
  CompositionData<F> C = cayley_split(f);
  Matrix<F> t = tau_automorphism(C);
  Matrix<F> t2 = mat_mul(f, t, t);
  Algebra<F> A = Algebra<F>::from_function(f, "okubo", cayley_basis_names(), [&](std::size_t i, std::size_t j) {
    return mul(C, mat_apply(f, t, conj(C, C.basis_vec(i))), mat_apply(f, t2, conj(C, C.basis_vec(j))));
  });
  A.set_form(C.norm);
  return CompositionData<F>{A, C.norm, C.conjugation, std::nullopt, {}};
}

/// Z3^2-grading on the Okubo algebra from deg e1 = (1,0), deg u1 = (0,1).
template <class F>
Grading okubo_grading(const CompositionData<F>& O) {
  FgAbGroup g(0, {3, 3});
  return propagate_degrees(O.algebra, {{cayley_index::e1, g.element({1, 0})}, {cayley_index::u(1), g.element({0, 1})}}, g);
}

/// n(x*y,z) = n(x,y*z) on basis triples; n(x*y) = n(x)n(y) and (x*y)*x = n(x)y = x*(y*x) on
/// basis pairs and on random pairs.
template <class F>
CheckResult verify_symmetric_composition(const CompositionData<F>& C, std::size_t samples = 200, std::uint64_t seed = 7) {
  const F& f = C.field();
  std::size_t n = C.dim();
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      Vec<F> xy = mul(C, C.basis_vec(i), C.basis_vec(j));
      for (std::size_t k = 0; k < n; ++k) {
        Vec<F> yz = mul(C, C.basis_vec(j), C.basis_vec(k));
        if (!f.eq(polar(C, xy, C.basis_vec(k)), polar(C, C.basis_vec(i), yz)))
          return {false, "n(x*y,z) != n(x,y*z) at (" + C.algebra.basis()[i] + "," + C.algebra.basis()[j] + "," +
                             C.algebra.basis()[k] + ")"};
      }
    }
  auto quadratic = [&](const Vec<F>& x, const Vec<F>& y) -> std::optional<std::string> {
    Vec<F> xy = mul(C, x, y);
    if (!f.eq(norm(C, xy), f.mul(norm(C, x), norm(C, y)))) return "n(x*y) != n(x)n(y)";
    Vec<F> ny = vec_scale(f, norm(C, x), y);
    if (!vec_eq(f, mul(C, xy, x), ny)) return "(x*y)*x != n(x)y";
    if (!vec_eq(f, mul(C, x, mul(C, y, x)), ny)) return "x*(y*x) != n(x)y";
    return std::nullopt;
  };
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      if (auto w = quadratic(C.basis_vec(i), C.basis_vec(j)))
        return {false, *w + " at (" + C.algebra.basis()[i] + "," + C.algebra.basis()[j] + ")"};
  std::mt19937_64 rng(seed);
  for (std::size_t s = 0; s < samples; ++s) {
    Vec<F> x = random_vec(f, n, rng), y = random_vec(f, n, rng);
    if (auto w = quadratic(x, y)) return {false, *w + " on a random pair"};
  }
  return {};
}

/// n(f x, f y) = n(x, y).
template <class F>
bool is_orthogonal(const CompositionData<F>& C, const Matrix<F>& m) {
  const F& f = C.field();
  return mat_eq(f, mat_mul(f, mat_transpose(m), mat_mul(f, C.norm, m)), C.norm);
}

template <class F>
bool related_on_basis(const CompositionData<F>& C, const Matrix<F>& f1, const Matrix<F>& f2, const Matrix<F>& f3) {
  const F& f = C.field();
  for (std::size_t i = 0; i < C.dim(); ++i)
    for (std::size_t j = 0; j < C.dim(); ++j) {
      Vec<F> lhs = mat_apply(f, f1, para_product(C, C.basis_vec(i), C.basis_vec(j)));
      Vec<F> rhs = para_product(C, f2.column(i), f3.column(j));
      if (!vec_eq(f, lhs, rhs)) return false;
    }
  return true;
}

/// f1(xbar ybar) = conj(f2 x) conj(f3 y) with each f_i orthogonal; also checks (f2, f3, f1).
template <class F>
bool verify_related_triple(const CompositionData<F>& C, const Matrix<F>& f1, const Matrix<F>& f2, const Matrix<F>& f3) {
  for (const auto* m : {&f1, &f2, &f3})
    if (!is_orthogonal(C, *m)) return false;
  return related_on_basis(C, f1, f2, f3) && related_on_basis(C, f2, f3, f1);
}

template <class F>
struct RelatedTriple {
  Matrix<F> f1, f2, f3;
};

/// Triple (f1, rho+, rho-) of the spin element x1 x2 ... x_{2r}, with x_i of trace zero:
/// rho+ = (-1)^r R_{x1} ... R_{x2r}, rho- = (-1)^r L_{x1} ... L_{x2r}, f1(x) = conj(f2(xbar)) conj(f3(1)).
template <class F>
RelatedTriple<F> triple_from_spin_generators(const CompositionData<F>& C, const std::vector<Vec<F>>& xs) {
  const F& f = C.field();
  if (xs.size() % 2 != 0) throw CompositionError("spin generators must come in an even number");
  Vec<F> one = C.one();
  auto prod_norm = f.one();
  for (const auto& x : xs) {
    if (!f.is_zero(polar(C, x, one))) throw CompositionError("spin generator has nonzero trace");
    prod_norm = f.mul(prod_norm, norm(C, x));
  }
  if (!f.eq(prod_norm, f.one())) throw CompositionError("product of the generator norms is not 1");
  std::size_t n = C.dim();
  Matrix<F> R = Matrix<F>::identity(f, n), L = Matrix<F>::identity(f, n);
  for (const auto& x : xs) {
    R = mat_mul(f, R, C.algebra.right_mult(x));
    L = mat_mul(f, L, C.algebra.left_mult(x));
  }
  if ((xs.size() / 2) % 2 == 1) {
    R = mat_scale(f, f.from_int(-1), R);
    L = mat_scale(f, f.from_int(-1), L);
  }
  Vec<F> c3 = conj(C, mat_apply(f, L, one));
  Matrix<F> f1 = Matrix<F>::zero(f, n, n);
  for (std::size_t j = 0; j < n; ++j)
    f1.set_column(j, mul(C, conj(C, mat_apply(f, R, conj(C, C.basis_vec(j)))), c3));
  RelatedTriple<F> t{f1, R, L};
  if (!verify_related_triple(C, t.f1, t.f2, t.f3)) throw CompositionError("spin generators produced an unrelated triple");
  return t;
}

/// An element a of trace zero with n(a) = 1 and n(a, x) = 0.
template <class F>
Vec<F> unit_trace_zero_orthogonal_to(const CompositionData<F>& C, const Vec<F>& x) {
  const F& f = C.field();
  std::size_t n = C.dim();
  Matrix<F> M = Matrix<F>::from_rows(f, {mat_apply(f, C.norm, C.one()), mat_apply(f, C.norm, x)}, n);
  auto W = nullspace(f, M);
  auto try_vec = [&](const Vec<F>& a) -> std::optional<Vec<F>> {
    auto na = norm(C, a);
    if (f.is_zero(na)) return std::nullopt;
    auto s = f.sqrt(f.inv(na));
    if (!s) return std::nullopt;
    return vec_scale(f, *s, a);
  };
  for (const auto& w : W)
    if (auto a = try_vec(w)) return *a;
  for (std::size_t i = 0; i < W.size(); ++i)
    for (std::size_t j = i + 1; j < W.size(); ++j)
      for (int c : {1, -1, 2, -2})
        if (auto a = try_vec(vec_add(f, W[i], vec_scale(f, f.from_int(c), W[j])))) return *a;
  throw CompositionError("no norm-one trace-zero element orthogonal to the given vector");
}

/// Generators (x2 a, a) whose triple has rho+(x2) = 1, for n(x2) = 1.
template <class F>
std::vector<Vec<F>> normalizing_generators(const CompositionData<F>& C, const Vec<F>& x2) {
  const F& f = C.field();
  if (!f.eq(norm(C, x2), f.one())) throw CompositionError("normalization needs n(x2) = 1");
  Vec<F> a = unit_trace_zero_orthogonal_to(C, x2);
  return {mul(C, x2, a), a};
}

template <class F>
json composition_to_json(const CompositionData<F>& C) {
  json j = algebra_to_json(C.algebra);
  j["norm"] = matrix_to_json(C.field(), C.norm);
  j["conjugation"] = matrix_to_json(C.field(), C.conjugation);
  if (C.unit) {
    json u = json::array();
    for (const auto& a : *C.unit) u.push_back(C.field().to_json(a));
    j["unit"] = u;
  } else {
    j["unit"] = nullptr;
  }
  return j;
}

}  // namespace gradings
