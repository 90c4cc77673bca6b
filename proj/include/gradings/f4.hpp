#pragma once

#include <algorithm>
#include <array>
#include <stdexcept>
#include <string>
#include <vector>

#include "gradings/albert.hpp"

namespace gradings {

class F4Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// (d1, d2, d3) in so(C, n)^3 with d1(x.y) = d2(x).y + x.d3(y) for the para-Hurwitz product.
template <class F>
struct TrialityTriple {
  Matrix<F> d1, d2, d3;

  /// Component i in 1..3, taken modulo 3.
  const Matrix<F>& operator[](int i) const {
    switch (AlbertData<F>::wrap(i)) {
      case 1: return d1;
      case 2: return d2;
      default: return d3;
    }
  }
};

template <class F>
TrialityTriple<F> theta(const TrialityTriple<F>& t) {
  return {t.d3, t.d1, t.d2};
}

template <class F>
TrialityTriple<F> theta_power(TrialityTriple<F> t, int k) {
  for (int s = 0; s < ((k % 3) + 3) % 3; ++s) t = theta(t);
  return t;
}

template <class F>
TrialityTriple<F> triple_bracket(const F& f, const TrialityTriple<F>& a, const TrialityTriple<F>& b) {
  return {bracket(f, a.d1, b.d1), bracket(f, a.d2, b.d2), bracket(f, a.d3, b.d3)};
}

template <class F>
bool is_skew(const CompositionData<F>& C, const Matrix<F>& d) {
  const F& f = C.field();
  Matrix<F> nd = mat_mul(f, mat_transpose(d), C.norm);
  return mat_is_zero(f, mat_add(f, nd, mat_transpose(nd)));
}

template <class F>
bool in_tri(const CompositionData<F>& C, const TrialityTriple<F>& t) {
  const F& f = C.field();
  if (!is_skew(C, t.d1) || !is_skew(C, t.d2) || !is_skew(C, t.d3)) return false;
  for (std::size_t a = 0; a < C.dim(); ++a)
    for (std::size_t b = 0; b < C.dim(); ++b) {
      Vec<F> x = C.basis_vec(a), y = C.basis_vec(b);
      Vec<F> lhs = mat_apply(f, t.d1, para_product(C, x, y));
      Vec<F> rhs = vec_add(f, para_product(C, mat_apply(f, t.d2, x), y), para_product(C, x, mat_apply(f, t.d3, y)));
      if (!vec_eq(f, lhs, rhs)) return false;
    }
  return true;
}

/// Basis of tri(C) as the nullspace of the skewness and triality equations.
/// Unknown c*n^2 + k*n + m is the coefficient of b_k in d_{c+1}(b_m).
template <class F>
std::vector<TrialityTriple<F>> tri_compute(const CompositionData<F>& C) {
  const F& f = C.field();
  require_char_not_two(f, "the triality algebra");
  std::size_t n = C.dim(), nn = n * n;
  SparseEchelon<F> ech(f, 3 * nn);
  auto var = [&](std::size_t c, std::size_t k, std::size_t m) { return static_cast<std::uint32_t>(c * nn + k * n + m); };
  auto push = [&](std::map<std::uint32_t, typename F::value_type>& acc) {
    SparseRow<F> r;
    for (auto& [v, c] : acc)
      if (!f.is_zero(c)) r.emplace_back(v, c);
    if (!r.empty()) ech.add_row(std::move(r));
  };
  auto addto = [&](std::map<std::uint32_t, typename F::value_type>& acc, std::uint32_t v, const typename F::value_type& c) {
    auto [it, ins] = acc.try_emplace(v, c);
    if (!ins) it->second = f.add(it->second, c);
  };
  // n(d b_a, b_b) + n(b_a, d b_b) = 0
  for (std::size_t c = 0; c < 3; ++c)
    for (std::size_t a = 0; a < n; ++a)
      for (std::size_t b = a; b < n; ++b) {
        std::map<std::uint32_t, typename F::value_type> acc;
        for (std::size_t k = 0; k < n; ++k) {
          if (!f.is_zero(C.norm(k, b))) addto(acc, var(c, k, a), C.norm(k, b));
          if (!f.is_zero(C.norm(a, k))) addto(acc, var(c, k, b), C.norm(a, k));
        }
        push(acc);
      }
  // d1(x.y) - d2(x).y - x.d3(y) = 0 on basis pairs
  std::vector<std::vector<Vec<F>>> dot(n, std::vector<Vec<F>>(n));
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = 0; b < n; ++b) dot[a][b] = para_product(C, C.basis_vec(a), C.basis_vec(b));
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = 0; b < n; ++b) {
      std::vector<std::map<std::uint32_t, typename F::value_type>> acc(n);
      for (std::size_t p = 0; p < n; ++p)
        if (!f.is_zero(dot[a][b][p]))
          for (std::size_t k = 0; k < n; ++k) addto(acc[k], var(0, k, p), dot[a][b][p]);
      for (std::size_t m = 0; m < n; ++m)
        for (std::size_t k = 0; k < n; ++k) {
          if (!f.is_zero(dot[m][b][k])) addto(acc[k], var(1, m, a), f.neg(dot[m][b][k]));
          if (!f.is_zero(dot[a][m][k])) addto(acc[k], var(2, m, b), f.neg(dot[a][m][k]));
        }
      for (auto& r : acc) push(r);
    }
  std::vector<TrialityTriple<F>> out;
  for (auto& v : ech.kernel_basis()) {
    auto part = [&](std::size_t c) { return Matrix<F>::from_flat(n, n, Vec<F>(v.begin() + c * nn, v.begin() + (c + 1) * nn)); };
    out.push_back({part(0), part(1), part(2)});
  }
  return out;
}

/// sigma_{x,y}(z) = n(x,z)y - n(y,z)x.
template <class F>
Matrix<F> sigma_xy(const CompositionData<F>& C, const Vec<F>& x, const Vec<F>& y) {
  const F& f = C.field();
  Matrix<F> s = Matrix<F>::zero(f, C.dim(), C.dim());
  for (std::size_t j = 0; j < C.dim(); ++j) {
    Vec<F> z = C.basis_vec(j);
    s.set_column(j, vec_sub(f, vec_scale(f, polar(C, x, z), y), vec_scale(f, polar(C, y, z), x)));
  }
  return s;
}

/// l_x(y) = r_y(x) = x.y for the para-Hurwitz product.
template <class F>
Matrix<F> para_left(const CompositionData<F>& C, const Vec<F>& x) {
  Matrix<F> m = Matrix<F>::zero(C.field(), C.dim(), C.dim());
  for (std::size_t j = 0; j < C.dim(); ++j) m.set_column(j, para_product(C, x, C.basis_vec(j)));
  return m;
}

template <class F>
Matrix<F> para_right(const CompositionData<F>& C, const Vec<F>& x) {
  Matrix<F> m = Matrix<F>::zero(C.field(), C.dim(), C.dim());
  for (std::size_t j = 0; j < C.dim(); ++j) m.set_column(j, para_product(C, C.basis_vec(j), x));
  return m;
}

/// t_{x,y} = (sigma_{x,y}, n(x,y)/2 id - r_x l_y, n(x,y)/2 id - l_x r_y).
template <class F>
TrialityTriple<F> t_xy(const CompositionData<F>& C, const Vec<F>& x, const Vec<F>& y) {
  const F& f = C.field();
  auto h = f.div(polar(C, x, y), f.from_int(2));
  Matrix<F> hid = mat_scale(f, h, Matrix<F>::identity(f, C.dim()));
  return {sigma_xy(C, x, y), mat_sub(f, hid, mat_mul(f, para_right(C, x), para_left(C, y))),
          mat_sub(f, hid, mat_mul(f, para_left(C, x), para_right(C, y)))};
}

/// E_i -> 0, iota_i(x) -> iota_i(d_i(x)).
template <class F>
Matrix<F> D_from_triple(const AlbertData<F>& A, const TrialityTriple<F>& t) {
  const F& f = A.field();
  Matrix<F> D = Matrix<F>::zero(f, A.dim(), A.dim());
  for (int i = 1; i <= 3; ++i)
    for (std::size_t k = 0; k < A.m(); ++k)
      for (std::size_t l = 0; l < A.m(); ++l) D(A.iota_index(i, l), A.iota_index(i, k)) = t[i](l, k);
  return D;
}

/// D_i(x) = 2[L_{iota_i(x)}, L_{E_{i+1}}].
template <class F>
Matrix<F> D_i(const AlbertData<F>& A, int i, const Vec<F>& x) {
  const F& f = A.field();
  Matrix<F> b = bracket(f, A.algebra.left_mult(A.iota(i, x)), A.algebra.left_mult(A.E(i + 1)));
  return mat_scale(f, f.from_int(2), b);
}

/// D_i(x) from its action on the basis.
template <class F>
Matrix<F> D_i_table(const AlbertData<F>& A, int i, const Vec<F>& x) {
  const F& f = A.field();
  const auto& C = A.C;
  auto half = f.inv(f.from_int(2));
  Matrix<F> D = Matrix<F>::zero(f, A.dim(), A.dim());
  D.set_column(A.e_index(i + 1), vec_scale(f, half, A.iota(i, x)));
  D.set_column(A.e_index(i + 2), vec_scale(f, f.neg(half), A.iota(i, x)));
  for (std::size_t k = 0; k < A.m(); ++k) {
    Vec<F> y = C.basis_vec(k);
    auto c = f.mul(f.from_int(2), polar(C, x, y));
    D.set_column(A.iota_index(i, k), vec_scale(f, c, vec_sub(f, A.E(i + 2), A.E(i + 1))));
    D.set_column(A.iota_index(i + 1, k), vec_neg(f, A.iota(i + 2, para_product(C, x, y))));
    D.set_column(A.iota_index(i + 2, k), A.iota(i + 1, para_product(C, y, x)));
  }
  return D;
}

template <class F>
Matrix<F> D_xy(const AlbertData<F>& A, const Vec<F>& x, const Vec<F>& y) {
  return D_from_triple(A, t_xy(A.C, x, y));
}

/// Linearly independent members of the list, in order.
template <class F>
std::vector<Matrix<F>> independent_maps(const F& f, const std::vector<Matrix<F>>& maps) {
  std::vector<Matrix<F>> out;
  if (maps.empty()) return out;
  SparseEchelon<F> ech(f, maps[0].rows() * maps[0].cols());
  for (const auto& m : maps) {
    SparseRow<F> r;
    const auto& fl = m.flat();
    for (std::size_t k = 0; k < fl.size(); ++k)
      if (!f.is_zero(fl[k])) r.emplace_back(static_cast<std::uint32_t>(k), fl[k]);
    if (ech.add_row(std::move(r))) out.push_back(m);
  }
  return out;
}

template <class F>
std::size_t span_dim(const F& f, const std::vector<Matrix<F>>& maps) {
  return independent_maps(f, maps).size();
}

/// Der(A) as D_tri(C) + D_1(C) + D_2(C) + D_3(C).
template <class F>
std::vector<Matrix<F>> f4_derivations(const AlbertData<F>& A) {
  std::vector<Matrix<F>> maps;
  for (const auto& t : tri_compute(A.C)) maps.push_back(D_from_triple(A, t));
  for (int i = 1; i <= 3; ++i)
    for (std::size_t k = 0; k < A.m(); ++k) maps.push_back(D_i(A, i, A.C.basis_vec(k)));
  return independent_maps(A.field(), maps);
}

struct DerDecomposition {
  std::size_t tri = 0;
  std::array<std::size_t, 3> d{};
  std::size_t span = 0;
  std::size_t nullspace = 0;
  bool same_subspace = false;
  bool ok() const { return tri == 28 && d == std::array<std::size_t, 3>{8, 8, 8} && span == 52 && nullspace == 52 && same_subspace; }
};

/// Compares the explicit decomposition of Der(A) with the nullspace of the derivation equations.
template <class F>
DerDecomposition der_decomposition_check(const AlbertData<F>& A) {
  const F& f = A.field();
  DerDecomposition r;
  std::vector<Matrix<F>> all, tri;
  for (const auto& t : tri_compute(A.C)) tri.push_back(D_from_triple(A, t));
  r.tri = span_dim(f, tri);
  all = tri;
  for (int i = 1; i <= 3; ++i) {
    std::vector<Matrix<F>> di;
    for (std::size_t k = 0; k < A.m(); ++k) di.push_back(D_i(A, i, A.C.basis_vec(k)));
    r.d[static_cast<std::size_t>(i - 1)] = span_dim(f, di);
    all.insert(all.end(), di.begin(), di.end());
  }
  r.span = span_dim(f, all);
  auto N = derivation_space(A.algebra);
  r.nullspace = N.dim();
  std::vector<Matrix<F>> both = all;
  both.insert(both.end(), N.basis.begin(), N.basis.end());
  r.same_subspace = span_dim(f, both) == r.span && r.span == r.nullspace;
  return r;
}

/// Conjugates derivations of the standard algebra to the basis given by the columns of P.
template <class F>
std::vector<Matrix<F>> transport_maps(const F& f, const Matrix<F>& P, const std::vector<Matrix<F>>& maps) {
  Matrix<F> Pinv = inverse(f, P);
  std::vector<Matrix<F>> out;
  out.reserve(maps.size());
  for (const auto& m : maps) out.push_back(mat_mul(f, Pinv, mat_mul(f, m, P)));
  return out;
}

/// Root with its degree in the Cartan grading and twice its coordinates in epsilon_0..epsilon_3.
template <class F>
struct Root {
  GroupElement degree;
  std::array<int, 4> eps2{};
  Matrix<F> vector;
};

inline std::string eps_kind(const std::array<int, 4>& e) {
  int nonzero = 0, odd = 0;
  for (int c : e) {
    nonzero += c != 0;
    odd += (c % 2) != 0;
  }
  if (odd == 4) return "half";
  if (nonzero == 1) return "short";
  if (nonzero == 2) return "long";
  return "none";
}

/// Twice the epsilon coordinates of a degree of the Cartan Z^4 grading. The weights of h on
/// iota_1(e1), iota_1(u1), iota_1(u2), iota_1(u3) are -eps_0, -eps_1, -eps_2, -eps_3.
inline std::array<int, 4> cartan_degree_to_eps2(const std::vector<std::int64_t>& d) {
  static const int L[4][4] = {{-2, 0, 0, 0}, {1, 1, 1, 1}, {0, -2, 0, 0}, {-1, 1, -1, 1}};
  std::array<int, 4> e{};
  for (int a = 0; a < 4; ++a)
    for (int j = 0; j < 4; ++j) e[j] += static_cast<int>(d[a]) * L[a][j];
  return e;
}

template <class F>
struct RootDatum {
  std::vector<Matrix<F>> cartan;  // D_{e1,e2}, D_{u_i,v_i}
  std::vector<Root<F>> roots;
  DerGrading<F> der;
  std::size_t long_roots = 0, short_roots = 0, half_roots = 0;
};

/// h = span(D_{u_j,v_j}) with u_0 = e1, v_0 = e2.
template <class F>
std::vector<Matrix<F>> cartan_subalgebra(const AlbertData<F>& A) {
  using namespace cayley_index;
  const auto& C = A.C;
  std::vector<Matrix<F>> h{D_xy(A, C.basis_vec(e1), C.basis_vec(e2))};
  for (int i = 1; i <= 3; ++i) h.push_back(D_xy(A, C.basis_vec(u(i)), C.basis_vec(v(i))));
  return h;
}

template <class F>
void require_split_base(const AlbertData<F>& A) {
  if (A.m() != 8 || A.C.algebra.name() != "cayley") throw F4Error("root data need the Albert algebra over the split Cayley algebra");
}

/// The Cartan grading on Der(A), its roots in epsilon coordinates and the eigenvalue check.
template <class F>
RootDatum<F> cartan_and_roots(const AlbertData<F>& A, const std::vector<Matrix<F>>& der) {
  require_split_base(A);
  const F& f = A.field();
  Grading G = albert_cartan_model(f).grading;
  RootDatum<F> R{cartan_subalgebra(A), {}, der_induced_grading(A.algebra, G, der)};
  auto half = f.inv(f.from_int(2));
  for (std::size_t b = 0; b < R.der.maps.size(); ++b) {
    const GroupElement& g = R.der.grading.degrees[b];
    if (G.group.is_identity(g)) continue;
    Root<F> r{g, cartan_degree_to_eps2(G.group.coords(g)), R.der.maps[b]};
    for (int j = 0; j < 4; ++j) {
      auto ev = f.mul(f.from_int(r.eps2[static_cast<std::size_t>(j)]), half);
      if (!mat_eq(f, bracket(f, R.cartan[static_cast<std::size_t>(j)], r.vector), mat_scale(f, ev, r.vector)))
        throw F4Error("root vector is not an eigenvector of the Cartan subalgebra");
    }
    auto kind = eps_kind(r.eps2);
    if (kind == "long") ++R.long_roots;
    else if (kind == "short") ++R.short_roots;
    else if (kind == "half") ++R.half_roots;
    else throw F4Error("degree does not correspond to a root");
    R.roots.push_back(std::move(r));
  }
  if (R.roots.size() != 48 || R.long_roots != 24 || R.short_roots != 8 || R.half_roots != 16)
    throw F4Error("root census is not 24 long, 8 short, 16 half roots");
  return R;
}

template <class F>
RootDatum<F> cartan_and_roots(const AlbertData<F>& A) {
  return cartan_and_roots(A, f4_derivations(A));
}

inline bool eps_positive(const std::array<int, 4>& e) {
  for (int c : e)
    if (c != 0) return c > 0;
  return false;
}

/// A root vector candidate of the form D_{x,y} or D_i(x) for x, y in the good basis.
template <class F>
struct RootCandidate {
  std::string name;
  Matrix<F> map;
};

/// Twice the epsilon coordinates of a map homogeneous for the Cartan grading, or absent.
template <class F>
std::optional<std::array<int, 4>> homogeneous_eps2(const F& f, const Grading& G, const Matrix<F>& m) {
  std::optional<GroupElement> deg;
  for (std::size_t k = 0; k < m.rows(); ++k)
    for (std::size_t l = 0; l < m.cols(); ++l) {
      if (f.is_zero(m(k, l))) continue;
      GroupElement g = G.group.sub(G.degrees[k], G.degrees[l]);
      if (deg && !(*deg == g)) return std::nullopt;
      deg = g;
    }
  if (!deg) return std::nullopt;
  return cartan_degree_to_eps2(G.group.coords(*deg));
}

template <class F>
std::vector<RootCandidate<F>> root_candidates(const AlbertData<F>& A) {
  const auto& names = A.C.algebra.basis();
  std::vector<RootCandidate<F>> out;
  for (std::size_t a = 0; a < 8; ++a)
    for (std::size_t b = a + 1; b < 8; ++b)
      out.push_back({"D(" + names[a] + "," + names[b] + ")", D_xy(A, A.C.basis_vec(a), A.C.basis_vec(b))});
  for (int i = 1; i <= 3; ++i)
    for (std::size_t a = 0; a < 8; ++a)
      out.push_back({"D" + std::to_string(i) + "(" + names[a] + ")", D_i(A, i, A.C.basis_vec(a))});
  return out;
}

/// Chevalley basis H_1..H_4, X_alpha (positive roots), X_{-alpha}, with its bracket algebra.
template <class F>
struct ChevalleyBasis {
  std::vector<std::array<int, 4>> simple;  // eps2 of alpha_1..alpha_4
  std::vector<std::array<int, 4>> positive;
  std::vector<std::string> names;  // candidate names of the positive root vectors
  std::vector<Matrix<F>> basis;    // H_1..H_4, X_alpha for alpha in positive, X_{-alpha} in the same order
  Algebra<F> lie;
  bool sl2_ok = false;
  bool nilpotent_ok = false;

  std::size_t index_of_root(const std::array<int, 4>& e) const {
    for (std::size_t k = 0; k < positive.size(); ++k) {
      if (positive[k] == e) return 4 + k;
      auto neg = positive[k];
      for (auto& c : neg) c = -c;
      if (neg == e) return 4 + positive.size() + k;
    }
    throw F4Error("not a root");
  }
};

template <class F>
ChevalleyBasis<F> chevalley_basis(const AlbertData<F>& A) {
  require_split_base(A);
  using namespace cayley_index;
  const F& f = A.field();
  const auto& C = A.C;
  Grading G = albert_cartan_model(f).grading;
  struct Parts {
    std::vector<std::array<int, 4>> simple, positive;
    std::vector<std::string> names;
    std::vector<Matrix<F>> basis;
  } B;
  B.simple = {{1, -1, -1, -1}, {0, 0, 0, 2}, {0, 0, 2, -2}, {0, 2, -2, 0}};
  std::vector<RootCandidate<F>> fixed{{"D3(e1)", D_i(A, 3, C.basis_vec(e1))},
                                      {"D1(v3)", D_i(A, 1, C.basis_vec(v(3)))},
                                      {"D(v2,u3)", D_xy(A, C.basis_vec(v(2)), C.basis_vec(u(3)))},
                                      {"D(v1,u2)", D_xy(A, C.basis_vec(v(1)), C.basis_vec(u(2)))}};
  std::vector<std::pair<std::array<int, 4>, RootCandidate<F>>> pos;
  for (std::size_t s = 0; s < 4; ++s) {
    auto e = homogeneous_eps2(f, G, fixed[s].map);
    if (!e || *e != B.simple[s]) throw F4Error("simple root vector " + fixed[s].name + " has the wrong weight");
    pos.emplace_back(*e, fixed[s]);
  }
  for (auto& c : root_candidates(A)) {
    auto e = homogeneous_eps2(f, G, c.map);
    if (!e || !eps_positive(*e) || eps_kind(*e) == "none") continue;
    bool seen = false;
    for (const auto& [k, v] : pos) seen |= k == *e;
    if (!seen) pos.emplace_back(*e, std::move(c));
  }
  if (pos.size() != 24) throw F4Error("positive root vectors: found " + std::to_string(pos.size()) + ", expected 24");
  std::stable_sort(pos.begin() + 4, pos.end(), [](const auto& a, const auto& b) { return a.first > b.first; });
  Matrix<F> s = sigma_albert(A);  // an involution
  auto minus_sigma = [&](const Matrix<F>& X) { return mat_scale(f, f.from_int(-1), mat_mul(f, s, mat_mul(f, X, s))); };
  std::vector<Matrix<F>> Xp, Xm;
  for (const auto& [e, c] : pos) {
    B.positive.push_back(e);
    B.names.push_back(c.name);
    Xp.push_back(c.map);
    Xm.push_back(minus_sigma(c.map));
  }
  for (std::size_t i = 0; i < 4; ++i) B.basis.push_back(bracket(f, Xp[i], Xm[i]));
  B.basis.insert(B.basis.end(), Xp.begin(), Xp.end());
  B.basis.insert(B.basis.end(), Xm.begin(), Xm.end());
  std::vector<std::string> names{"H1", "H2", "H3", "H4"};
  for (const auto& n : B.names) names.push_back("X+" + n);
  for (const auto& n : B.names) names.push_back("X-" + n);
  ChevalleyBasis<F> out{B.simple, B.positive, B.names, B.basis, close_under_bracket(f, B.basis, names, "f4/chevalley")};
  out.sl2_ok = true;
  auto two = f.from_int(2);
  for (std::size_t i = 0; i < 4; ++i) {
    const auto &H = out.basis[i], &Xa = Xp[i], &Xb = Xm[i];
    out.sl2_ok &= mat_eq(f, bracket(f, H, Xa), mat_scale(f, two, Xa));
    out.sl2_ok &= mat_eq(f, bracket(f, H, Xb), mat_scale(f, f.neg(two), Xb));
    out.sl2_ok &= mat_eq(f, bracket(f, Xa, Xb), H);
  }
  out.nilpotent_ok = true;
  for (std::size_t k = 4; k < out.basis.size(); ++k) {
    const auto& X = out.basis[k];
    out.nilpotent_ok &= mat_is_zero(f, mat_mul(f, X, mat_mul(f, X, X)));
    Matrix<F> ad = out.lie.left_mult(unit_vec(f, out.basis.size(), k));
    out.nilpotent_ok &= mat_is_zero(f, mat_mul(f, ad, mat_mul(f, ad, ad)));
  }
  return out;
}

/// True if every structure constant is an integer.
inline bool structure_constants_integral(const Algebra<RationalField>& L) {
  for (std::size_t i = 0; i < L.dim(); ++i)
    for (std::size_t j = 0; j < L.dim(); ++j) {
      bool ok = true;
      L.for_each_term(i, j, [&](std::size_t, const mpq_class& c) { ok &= c.get_den() == 1; });
      if (!ok) return false;
    }
  return true;
}

/// True if the rational structure constants reduce modulo p to those of L.
inline bool structure_constants_reduce_to(const Algebra<RationalField>& Q, const Algebra<PrimeField>& L) {
  const PrimeField& f = L.field();
  if (Q.dim() != L.dim()) return false;
  for (std::size_t i = 0; i < Q.dim(); ++i)
    for (std::size_t j = 0; j < Q.dim(); ++j) {
      Vec<PrimeField> want(Q.dim(), f.zero());
      bool ok = true;
      Q.for_each_term(i, j, [&](std::size_t k, const mpq_class& c) {
        if (c.get_den() % static_cast<unsigned long>(f.modulus()) == 0) ok = false;
        else want[k] = f.div(f.from_mpz(c.get_num()), f.from_mpz(c.get_den()));
      });
      if (!ok || !vec_eq(f, want, L.product_of_basis(i, j))) return false;
    }
  return true;
}

}  // namespace gradings
