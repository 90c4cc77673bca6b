#pragma once

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "gradings/composition.hpp"
#include "gradings/grading.hpp"

namespace gradings {

class AlbertError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// H3(C) in the basis E1, E2, E3, iota_1(b_k), iota_2(b_k), iota_3(b_k).
template <class F>
struct AlbertData {
  Algebra<F> algebra;
  CompositionData<F> C;

  const F& field() const { return algebra.field(); }
  std::size_t m() const { return C.dim(); }
  std::size_t dim() const { return algebra.dim(); }

  /// i in 1..3, taken modulo 3
  static int wrap(int i) { return ((i - 1) % 3 + 3) % 3 + 1; }
  std::size_t e_index(int i) const { return static_cast<std::size_t>(wrap(i) - 1); }
  std::size_t iota_index(int i, std::size_t k) const { return 3 + m() * static_cast<std::size_t>(wrap(i) - 1) + k; }

  Vec<F> E(int i) const { return unit_vec(field(), dim(), e_index(i)); }
  Vec<F> one() const { return vec_add(field(), E(1), vec_add(field(), E(2), E(3))); }
  Vec<F> iota(int i, const Vec<F>& x) const {
    Vec<F> v(dim(), field().zero());
    for (std::size_t k = 0; k < m(); ++k) v[iota_index(i, k)] = x[k];
    return v;
  }
  typename F::value_type alpha(const Vec<F>& X, int i) const { return X[e_index(i)]; }
  Vec<F> component(const Vec<F>& X, int i) const {
    Vec<F> a(m());
    for (std::size_t k = 0; k < m(); ++k) a[k] = X[iota_index(i, k)];
    return a;
  }
};

template <class F>
AlbertData<F> albert_build(const CompositionData<F>& C) {
  const F& f = C.field();
  if (f.characteristic() == 2) throw AlbertError("the Albert algebra needs characteristic != 2");
  if (!C.unit) throw AlbertError("the Albert algebra needs a unital composition algebra");
  std::size_t m = C.dim(), n = 3 + 3 * m;
  std::vector<std::string> names{"E1", "E2", "E3"};
  for (int i = 1; i <= 3; ++i)
    for (const auto& b : C.algebra.basis()) names.push_back("i" + std::to_string(i) + "(" + b + ")");
  AlbertData<F> A{Algebra<F>::from_entries(f, "albert", {}, {}), C};
  auto half = f.inv(f.from_int(2));
  // Slot of a basis index: 0 for E_i, 1 for iota_i; plus i and k.
  struct Slot {
    bool iota;
    int i;
    std::size_t k;
  };
  auto slot = [&](std::size_t idx) {
    if (idx < 3) return Slot{false, static_cast<int>(idx) + 1, 0};
    return Slot{true, static_cast<int>((idx - 3) / m) + 1, (idx - 3) % m};
  };
  auto wrap = AlbertData<F>::wrap;
  auto iota = [&](int i, const Vec<F>& x) {
    Vec<F> v(n, f.zero());
    for (std::size_t k = 0; k < m; ++k) v[3 + m * static_cast<std::size_t>(wrap(i) - 1) + k] = x[k];
    return v;
  };
  auto prod = [&](std::size_t p, std::size_t q) -> Vec<F> {
    Slot a = slot(p), b = slot(q);
    Vec<F> r(n, f.zero());
    if (!a.iota && !b.iota) {
      if (a.i == b.i) r[p] = f.one();
      return r;
    }
    if (a.iota && !b.iota) std::swap(a, b);
    if (!a.iota) {  // E_a.i * iota_b.i(x)
      if (a.i == b.i) return r;
      r[slot(q).iota ? q : p] = half;
      return r;
    }
    Vec<F> x = C.basis_vec(a.k), y = C.basis_vec(b.k);
    if (a.i == b.i) {
      auto c = f.mul(f.from_int(2), polar(C, x, y));
      r[static_cast<std::size_t>(wrap(a.i + 1) - 1)] = c;
      r[static_cast<std::size_t>(wrap(a.i + 2) - 1)] = c;
      return r;
    }
    if (wrap(a.i + 1) == b.i) return iota(a.i + 2, para_product(C, x, y));
    return iota(b.i + 2, para_product(C, y, x));  // b.i + 1 == a.i
  };
  typename Algebra<F>::Flags fl;
  fl.commutative = true;
  A.algebra = Algebra<F>::from_function(f, "albert", names, prod, fl);
  A.algebra.set_unit(A.one());
  Matrix<F> T = Matrix<F>::zero(f, n, n);
  for (std::size_t p = 0; p < n; ++p)
    for (std::size_t q = 0; q < n; ++q) {
      auto v = A.algebra.product_of_basis(p, q);
      T(p, q) = f.add(v[0], f.add(v[1], v[2]));
    }
  A.algebra.set_form(T);
  return A;
}

template <class F>
typename F::value_type albert_T(const AlbertData<F>& A, const Vec<F>& X) {
  const F& f = A.field();
  return f.add(A.alpha(X, 1), f.add(A.alpha(X, 2), A.alpha(X, 3)));
}

template <class F>
typename F::value_type albert_S(const AlbertData<F>& A, const Vec<F>& X) {
  const F& f = A.field();
  auto s = f.zero();
  for (int i = 1; i <= 3; ++i) {
    s = f.add(s, f.mul(A.alpha(X, i + 1), A.alpha(X, i + 2)));
    s = f.sub(s, f.mul(f.from_int(4), norm(A.C, A.component(X, i))));
  }
  return s;
}

template <class F>
typename F::value_type albert_N(const AlbertData<F>& A, const Vec<F>& X) {
  const F& f = A.field();
  auto r = f.mul(A.alpha(X, 1), f.mul(A.alpha(X, 2), A.alpha(X, 3)));
  auto a1 = A.component(X, 1), a2 = A.component(X, 2), a3 = A.component(X, 3);
  r = f.add(r, f.mul(f.from_int(8), polar(A.C, a1, para_product(A.C, a2, a3))));
  for (int i = 1; i <= 3; ++i) r = f.sub(r, f.mul(f.from_int(4), f.mul(A.alpha(X, i), norm(A.C, A.component(X, i)))));
  return r;
}

/// X^3 - T(X)X^2 + S(X)X - N(X)1 = 0 with X^3 = X(XX).
template <class F>
bool generic_equation_check(const AlbertData<F>& A, const Vec<F>& X) {
  const F& f = A.field();
  Vec<F> X2 = A.algebra.multiply(X, X);
  Vec<F> r = A.algebra.multiply(X, X2);
  r = vec_sub(f, r, vec_scale(f, albert_T(A, X), X2));
  r = vec_add(f, r, vec_scale(f, albert_S(A, X), X));
  r = vec_sub(f, r, vec_scale(f, albert_N(A, X), A.one()));
  return vec_is_zero(f, r);
}

/// T(xy) = 0 for homogeneous basis pairs with deg x + deg y != 0, and T is nondegenerate on the
/// identity component. The algebra must carry its trace form.
template <class F>
CheckResult trace_orthogonality_check(const Algebra<F>& A, const Grading& G) {
  if (!A.form()) throw AlbertError("trace orthogonality needs the trace form");
  if (!G.verified) throw GradingError("trace orthogonality requested for an unverified grading");
  const F& f = A.field();
  const Matrix<F>& T = *A.form();
  for (std::size_t i = 0; i < A.dim(); ++i)
    for (std::size_t j = 0; j < A.dim(); ++j)
      if (!G.group.is_identity(G.group.add(G.degrees[i], G.degrees[j])) && !f.is_zero(T(i, j)))
        return {false, "T(" + A.basis()[i] + " " + A.basis()[j] + ") != 0"};
  std::vector<std::size_t> e;
  for (std::size_t i = 0; i < A.dim(); ++i)
    if (G.group.is_identity(G.degrees[i])) e.push_back(i);
  Matrix<F> Te = Matrix<F>::zero(f, e.size(), e.size());
  for (std::size_t a = 0; a < e.size(); ++a)
    for (std::size_t b = 0; b < e.size(); ++b) Te(a, b) = T(e[a], e[b]);
  if (rank(f, Te) != e.size()) return {false, "trace form degenerate on the identity component"};
  return {};
}

/// Block map fixing each E_i and acting as f_i on iota_i(C).
template <class F>
Matrix<F> albert_block_map(const AlbertData<F>& A, const Matrix<F>& f1, const Matrix<F>& f2, const Matrix<F>& f3) {
  const F& f = A.field();
  Matrix<F> phi = Matrix<F>::zero(f, A.dim(), A.dim());
  for (int i = 1; i <= 3; ++i) phi(A.e_index(i), A.e_index(i)) = f.one();
  const Matrix<F>* fs[3] = {&f1, &f2, &f3};
  for (int i = 1; i <= 3; ++i)
    for (std::size_t k = 0; k < A.m(); ++k)
      for (std::size_t l = 0; l < A.m(); ++l) phi(A.iota_index(i, l), A.iota_index(i, k)) = (*fs[i - 1])(l, k);
  return phi;
}

template <class F>
Matrix<F> automorphism_from_related_triple(const AlbertData<F>& A, const RelatedTriple<F>& t) {
  if (!verify_related_triple(A.C, t.f1, t.f2, t.f3)) throw AlbertError("triple is not related");
  return albert_block_map(A, t.f1, t.f2, t.f3);
}

template <class F>
Matrix<F> sigma_albert(const AlbertData<F>& A) {
  Matrix<F> s = cayley_sigma(A.C);
  return albert_block_map(A, s, s, s);
}

/// Trace-zero elements b - n(b,1)/2 1 of the basis, keeping those independent of the earlier ones.
template <class F>
std::vector<Vec<F>> trace_zero_basis(const CompositionData<F>& C) {
  const F& f = C.field();
  Vec<F> one = C.one();
  std::vector<Vec<F>> out;
  for (std::size_t k = 0; k < C.dim(); ++k) {
    Vec<F> b = C.basis_vec(k);
    b = vec_sub(f, b, vec_scale(f, f.div(polar(C, b, one), f.from_int(2)), one));
    if (vec_is_zero(f, b)) continue;
    auto trial = out;
    trial.push_back(b);
    if (rank_of_vectors(f, trial) == trial.size()) out.push_back(b);
  }
  return out;
}

/// Change of basis with its column names.
template <class F>
struct AlbertBasis {
  Matrix<F> P;
  std::vector<std::string> names;
  std::vector<Vec<F>> trace_zero;  // the elements a with nu(a) in the basis
};

/// E, Et, S+, S-, nu(a) for a trace-zero basis, nu+(x), nu-(x) for x in the basis of C.
template <class F>
AlbertBasis<F> nu_basis(const AlbertData<F>& A, const typename F::value_type& i) {
  const F& f = A.field();
  if (!f.eq(f.mul(i, i), f.from_int(-1))) throw AlbertError("nu basis needs i with i^2 = -1");
  const auto& C = A.C;
  auto half_i = f.div(i, f.from_int(2));
  Vec<F> iota1_one = A.iota(1, C.one());
  std::vector<Vec<F>> cols;
  AlbertBasis<F> B;
  cols.push_back(A.E(1));
  cols.push_back(vec_add(f, A.E(2), A.E(3)));
  Vec<F> d = vec_sub(f, A.E(3), A.E(2));
  cols.push_back(vec_add(f, d, vec_scale(f, half_i, iota1_one)));
  cols.push_back(vec_sub(f, d, vec_scale(f, half_i, iota1_one)));
  B.names = {"E", "Et", "S+", "S-"};
  B.trace_zero = trace_zero_basis(C);
  for (std::size_t z = 0; z < B.trace_zero.size(); ++z) {
    cols.push_back(vec_scale(f, i, A.iota(1, B.trace_zero[z])));
    std::string nm = "a" + std::to_string(z + 1);
    for (std::size_t k = 0; k < C.dim(); ++k)
      if (vec_eq(f, B.trace_zero[z], C.basis_vec(k))) nm = C.algebra.basis()[k];
    B.names.push_back("nu(" + nm + ")");
  }
  for (int sgn : {1, -1})
    for (std::size_t k = 0; k < C.dim(); ++k) {
      Vec<F> x = C.basis_vec(k);
      cols.push_back(vec_add(f, A.iota(2, x), vec_scale(f, f.mul(f.from_int(sgn), i), A.iota(3, conj(C, x)))));
      B.names.push_back(std::string(sgn > 0 ? "nu+(" : "nu-(") + C.algebra.basis()[k] + ")");
    }
  if (cols.size() != A.dim()) throw AlbertError("nu basis has the wrong number of vectors");
  B.P = Matrix<F>::from_columns(f, cols, A.dim());
  if (rank(f, B.P) != A.dim()) throw AlbertError("nu vectors are not a basis");
  return B;
}

/// E1, E2, E3 and iota~_i(x) = iota_i(tau^i x) for x in the good basis; needs the split Cayley base.
template <class F>
AlbertBasis<F> okubo_model(const AlbertData<F>& A) {
  const F& f = A.field();
  if (A.m() != 8 || A.C.algebra.name() != "cayley") throw AlbertError("the Okubo model needs the split Cayley base");
  Matrix<F> t = tau_automorphism(A.C);
  AlbertBasis<F> B;
  std::vector<Vec<F>> cols{A.E(1), A.E(2), A.E(3)};
  B.names = {"E1", "E2", "E3"};
  Matrix<F> ti = Matrix<F>::identity(f, 8);
  for (int i = 1; i <= 3; ++i) {
    ti = mat_mul(f, t, ti);
    for (std::size_t k = 0; k < 8; ++k) {
      cols.push_back(A.iota(i, ti.column(k)));
      B.names.push_back("j" + std::to_string(i) + "(" + A.C.algebra.basis()[k] + ")");
    }
  }
  B.P = Matrix<F>::from_columns(f, cols, A.dim());
  return B;
}

/// phi3: E_i -> E_{i+1}, iota~_i(x) -> iota~_{i+1}(x), i.e. iota_i(y) -> iota_{i+1}(tau y).
template <class F>
Matrix<F> phi3(const AlbertData<F>& A) {
  const F& f = A.field();
  Matrix<F> t = tau_automorphism(A.C);
  Matrix<F> phi = Matrix<F>::zero(f, A.dim(), A.dim());
  for (int i = 1; i <= 3; ++i) {
    phi(A.e_index(i + 1), A.e_index(i)) = f.one();
    for (std::size_t k = 0; k < 8; ++k)
      for (std::size_t l = 0; l < 8; ++l) phi(A.iota_index(i + 1, l), A.iota_index(i, k)) = t(l, k);
  }
  return phi;
}

/// 1, E1+w^2E2+wE3, E1+wE2+w^2E3, then rho_c(x) for c = 0, 1, 2 and x in the good basis.
template <class F>
AlbertBasis<F> tits_eigenbasis(const AlbertData<F>& A, const typename F::value_type& w) {
  const F& f = A.field();
  if (f.characteristic() == 3) throw AlbertError("the Z3^3 model needs characteristic != 3");
  auto w2 = f.mul(w, w);
  if (f.eq(w, f.one()) || !f.is_zero(f.add(f.add(w2, w), f.one())))
    throw AlbertError("tits basis needs a primitive cube root of unity");
  AlbertBasis<F> M = okubo_model(A);
  auto col = [&](std::size_t c) { return M.P.column(c); };
  auto tilde = [&](int i, std::size_t k) { return col(3 + 8 * static_cast<std::size_t>(i - 1) + k); };
  AlbertBasis<F> B;
  std::vector<Vec<F>> cols{A.one()};
  cols.push_back(vec_add(f, A.E(1), vec_add(f, vec_scale(f, w2, A.E(2)), vec_scale(f, w, A.E(3)))));
  cols.push_back(vec_add(f, A.E(1), vec_add(f, vec_scale(f, w, A.E(2)), vec_scale(f, w2, A.E(3)))));
  B.names = {"1", "E(w2,w)", "E(w,w2)"};
  typename F::value_type coef[3][2] = {{f.one(), f.one()}, {w2, w}, {w, w2}};
  for (int c = 0; c < 3; ++c)
    for (std::size_t k = 0; k < 8; ++k) {
      Vec<F> v = tilde(1, k);
      v = vec_add(f, v, vec_scale(f, coef[c][0], tilde(2, k)));
      v = vec_add(f, v, vec_scale(f, coef[c][1], tilde(3, k)));
      cols.push_back(v);
      B.names.push_back("rho" + std::to_string(c) + "(" + A.C.algebra.basis()[k] + ")");
    }
  B.P = Matrix<F>::from_columns(f, cols, A.dim());
  if (rank(f, B.P) != A.dim()) throw AlbertError("tits vectors are not a basis");
  return B;
}

/// A graded model of the Albert algebra: the standard algebra, a homogeneous basis and the grading.
template <class F>
struct AlbertModel {
  AlbertData<F> standard;
  Matrix<F> P;  // columns: the homogeneous basis in standard coordinates
  Algebra<F> algebra;
  Grading grading;
};

template <class F>
AlbertModel<F> albert_cartan_model(const F& f) {
  AlbertData<F> A = albert_build(cayley_split(f));
  FgAbGroup z4 = FgAbGroup::free_group(4);
  using V = std::vector<std::int64_t>;
  V a[4] = {{}, {1, 0, 0, 0}, {0, 1, 0, 0}, {-1, -1, 0, 0}};
  V g[4] = {{}, {0, 0, 1, 0}, {0, 0, 0, 1}, {0, 0, -1, -1}};
  auto A_ = [&](int i) { return z4.element(a[AlbertData<F>::wrap(i)]); };
  auto G_ = [&](int i) { return z4.element(g[AlbertData<F>::wrap(i)]); };
  std::vector<GroupElement> d(27, z4.identity());
  using namespace cayley_index;
  for (int i = 1; i <= 3; ++i) {
    auto set = [&](std::size_t k, GroupElement x, std::size_t kneg) {
      d[A.iota_index(i, k)] = x;
      d[A.iota_index(i, kneg)] = z4.neg(x);
    };
    set(e1, A_(i), e2);
    int i1 = AlbertData<F>::wrap(i + 1), i2 = AlbertData<F>::wrap(i + 2);
    set(u(i), G_(i), v(i));
    set(u(i1), z4.add(A_(i + 2), G_(i + 1)), v(i1));
    set(u(i2), z4.add(z4.neg(A_(i + 1)), G_(i + 2)), v(i2));
  }
  Algebra<F> alg = A.algebra;
  alg.set_name("albert/cartan");
  Grading G = verified_grading(alg, Grading(z4, d));
  return AlbertModel<F>{A, Matrix<F>::identity(f, 27), alg, G};
}

template <class F>
AlbertModel<F> albert_z2_5_model(const F& f) {
  AlbertData<F> A = albert_build(cayley_dickson_chain(f));
  FgAbGroup z25(0, {2, 2, 2, 2, 2});
  std::vector<GroupElement> d(27, z25.identity());
  std::int64_t head[4][2] = {{0, 0}, {1, 0}, {0, 1}, {1, 1}};
  for (int i = 1; i <= 3; ++i)
    for (std::size_t k = 0; k < 8; ++k) {
      std::vector<std::int64_t> c{head[i][0], head[i][1]};
      for (auto b : A.C.doubling_degrees[k]) c.push_back(b);
      d[A.iota_index(i, k)] = z25.element(c);
    }
  Algebra<F> alg = A.algebra;
  alg.set_name("albert/z2^5");
  Grading G = verified_grading(alg, Grading(z25, d));
  return AlbertModel<F>{A, Matrix<F>::identity(f, 27), alg, G};
}

template <class F>
AlbertModel<F> albert_zxz2_3_model(const F& f) {
  auto i = sqrt_minus_one(f);
  if (!i) throw AlbertError("the Z x Z2^3 model needs a square root of -1 in the field");
  AlbertData<F> A = albert_build(cayley_dickson_chain(f));
  AlbertBasis<F> B = nu_basis(A, *i);
  FgAbGroup g(1, {2, 2, 2});
  auto deg_of = [&](const Vec<F>& x) {
    for (std::size_t k = 0; k < 8; ++k)
      if (vec_eq(f, x, A.C.basis_vec(k))) return A.C.doubling_degrees[k];
    throw AlbertError("trace-zero element is not a basis vector of the doubling chain");
  };
  auto elem = [&](std::int64_t z, const std::vector<std::int64_t>& t) {
    std::vector<std::int64_t> c{z};
    c.insert(c.end(), t.begin(), t.end());
    return g.element(c);
  };
  std::vector<GroupElement> d{g.identity(), g.identity(), elem(2, {0, 0, 0}), elem(-2, {0, 0, 0})};
  for (const auto& a : B.trace_zero) d.push_back(elem(0, deg_of(a)));
  for (std::int64_t s : {1, -1})
    for (std::size_t k = 0; k < 8; ++k) d.push_back(elem(s, A.C.doubling_degrees[k]));
  Algebra<F> alg = change_basis(A.algebra, B.P, B.names, "albert/zxz2^3");
  Grading G = verified_grading(alg, Grading(g, d));
  return AlbertModel<F>{A, B.P, alg, G};
}

template <class F>
AlbertModel<F> albert_z3_3_model(const F& f) {
  if (f.characteristic() == 3) throw AlbertError("the Z3^3 grading does not exist in characteristic 3");
  auto w = primitive_cube_root(f);
  if (!w) throw AlbertError("the Z3^3 model needs a primitive cube root of unity in the field");
  AlbertData<F> A = albert_build(cayley_split(f));
  AlbertBasis<F> B = tits_eigenbasis(A, *w);
  Grading og = okubo_grading(okubo(f));
  FgAbGroup g(0, {3, 3, 3});
  std::vector<GroupElement> d{g.identity(), g.element({0, 0, 1}), g.element({0, 0, 2})};
  for (std::int64_t c = 0; c < 3; ++c)
    for (std::size_t k = 0; k < 8; ++k) {
      auto oc = og.group.coords(og.degrees[k]);
      d.push_back(g.element({oc[0], oc[1], c}));
    }
  Algebra<F> alg = change_basis(A.algebra, B.P, B.names, "albert/z3^3");
  Grading G = verified_grading(alg, Grading(g, d));
  return AlbertModel<F>{A, B.P, alg, G};
}

}  // namespace gradings
