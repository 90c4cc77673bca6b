// Tour of the split Cayley algebra: product table, fine gradings and their coarsenings.

#include <iomanip>
#include <iostream>

#include "gradings/catalog.hpp"

using namespace gradings;

template <class F>
std::string render(const F& f, const std::vector<std::string>& names, const Vec<F>& v) {
  std::string s;
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (f.is_zero(v[i])) continue;
    bool neg = f.to_string(f.neg(v[i])) == "1";
    std::string c = f.to_string(v[i]);
    if (!s.empty()) s += neg ? " - " : " + ";
    else if (neg) s += "-";
    s += (neg || c == "1" ? "" : c + "*") + names[i];
  }
  return s.empty() ? "0" : s;
}

int main() {
  PrimeField f(13);
  auto C = cayley_split(f);
  const auto& names = C.algebra.basis();

  std::cout << "split Cayley algebra over GF(13)\n";
  for (std::size_t i = 0; i < 8; ++i) {
    for (std::size_t j = 0; j < 8; ++j)
      std::cout << std::setw(6) << render(f, names, C.algebra.product_of_basis(i, j));
    std::cout << "\n";
  }
  std::cout << "dim Der(C) = " << derivation_space(C.algebra).dim() << "\n\n";

  Catalog<PrimeField> cat(f);
  std::cout << "gradings in the cayley scope\n";
  for (const auto* e : cat.registry().scope("cayley")) {
    auto b = cat.build(e->name);
    Grading G = b.graded.grading;
    std::cout << "  " << std::left << std::setw(16) << e->name << std::right << " type "
              << type_to_string(grading_type(G)) << ", universal group "
              << universal_group(b.graded.algebra, G).group.to_string() << ", homomorphism from "
              << b.hom_source << "\n";
  }

  std::cout << "\nhomogeneous components of the Cartan grading\n";
  const auto& cartan = cat.fine("cayley/cartan");
  for (const auto& [g, idx] : cartan.grading.components()) {
    std::cout << "  " << cartan.grading.group.element_to_string(g) << ":";
    for (auto i : idx) std::cout << " " << names[i];
    std::cout << "\n";
  }
  return 0;
}
