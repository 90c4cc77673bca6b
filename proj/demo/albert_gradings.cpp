// The four fine gradings of the Albert algebra and the gradings they induce on F4 = Der(A).

#include <iomanip>
#include <iostream>

#include "gradings/catalog.hpp"

using namespace gradings;

int main() {
  PrimeField f(13);
  Catalog<PrimeField> cat(f);

  std::cout << "fine gradings of the Albert algebra over GF(13)\n";
  for (const std::string name : {"albert/cartan", "albert/z2^5", "albert/zxz2^3", "albert/z3^3"}) {
    const auto& g = cat.fine(name);
    Grading G = g.grading;
    auto orth = trace_orthogonality_check(g.algebra, G);
    std::cout << "  " << std::left << std::setw(14) << name << std::right << " type " << std::setw(9)
              << type_to_string(grading_type(G)) << "  universal group " << std::setw(10)
              << universal_group(g.algebra, G).group.to_string() << "  trace form "
              << (orth.ok ? "orthogonal" : orth.detail) << "\n";
  }

  std::cout << "\ninduced gradings on Der(A)\n";
  for (const std::string name : {"f4/cartan", "f4/z2^5", "f4/zxz2^3", "f4/z3^3"}) {
    const auto& g = cat.fine(name);
    std::cout << "  " << std::left << std::setw(14) << name << std::right << " type "
              << type_to_string(grading_type(g.grading)) << "\n";
  }
  std::cout << "  f4/zxz2^3 dimensions by Z-degree:";
  for (const auto& [r, d] : free_coordinate_dims(cat.fine("f4/zxz2^3").grading)) std::cout << " " << r << ":" << d;
  std::cout << "\n";

  auto R = cartan_and_roots(albert_build(cayley_split(f)));
  std::cout << "\nroot system of Der(A): " << R.roots.size() << " roots, " << R.long_roots << " long, "
            << R.short_roots << " short, " << R.half_roots << " with half-integer coordinates\n";
  return 0;
}
