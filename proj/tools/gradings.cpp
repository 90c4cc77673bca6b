// Command-line front end: registry verification, grading checks and JSON export.

#include <CLI11.hpp>

#include <filesystem>
#include <fstream>
#include <iostream>
#include <variant>

#include "gradings/catalog.hpp"

namespace {

using namespace gradings;

constexpr int kOk = 0;
constexpr int kMathFailure = 1;
constexpr int kUsage = 2;

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

template <class Fn>
auto with_field(const FieldSpec& spec, Fn&& fn) {
  return std::visit(std::forward<Fn>(fn), make_field(spec));
}

FieldSpec field_option(const std::string& name) {
  try {
    return named_field(name);
  } catch (const FieldError& e) {
    throw UsageError(e.what());
  }
}

int cmd_verify(std::vector<std::string> scopes, const std::string& field, const std::string& mode,
               const std::string& out) {
  if (scopes.empty()) scopes = {"all"};
  for (const auto& s : scopes)
    if (s != "all" && std::find(catalog_scopes().begin(), catalog_scopes().end(), s) == catalog_scopes().end()) {
      std::cerr << "unknown scope " << s << "\n";
      return kUsage;
    }
  if (mode != "fast" && mode != "slow") throw UsageError("mode must be fast or slow");
  RegistryReport report = with_field(field_option(field), [&](const auto& f) {
    Catalog<std::decay_t<decltype(f)>> cat(f);
    return verify_registry(cat, scopes, mode == "slow");
  });
  std::cout << report.table();
  if (!out.empty()) write_json_file(out, report.to_json());
  return report.all_pass() ? kOk : kMathFailure;
}

int cmd_grading(const std::string& what, const std::string& algebra_path, const std::string& grading_path) {
  json aj, gj;
  try {
    aj = read_json_file(algebra_path);
    gj = read_json_file(grading_path);
  } catch (const CatalogError& e) {
    throw UsageError(e.what());
  }
  if (!aj.is_object() || !aj.contains("field")) throw UsageError("algebra JSON: missing key field");
  FieldSpec spec;
  try {
    spec = FieldSpec::from_json(aj["field"]);
  } catch (const std::exception& e) {
    throw UsageError(std::string("algebra JSON: ") + e.what());
  }
  return with_field(spec, [&](const auto& f) {
    using F = std::decay_t<decltype(f)>;
    std::optional<Algebra<F>> A;
    std::optional<Grading> G;
    try {
      A.emplace(algebra_from_json(f, aj));
      G.emplace(grading_from_json(gj, A->dim()));
    } catch (const std::exception& e) {
      throw UsageError(e.what());
    }
    auto r = grading_verify(*A, *G);
    if (!r.ok) {
      std::cout << "not a grading: " << r.describe(A->basis()) << "\n";
      std::cout << "violating triple: (" << A->basis()[r.i] << ", " << A->basis()[r.j] << ", " << A->basis()[r.k] << ")\n";
      return kMathFailure;
    }
    std::string type = "type: " + type_to_string(grading_type(*G));
    std::string universal = "universal: " + universal_group(*A, *G).group.to_string();
    if (what == "check")
      std::cout << "grading: ok\n" << type << "; " << universal << "\n";
    else if (what == "type")
      std::cout << type << "\n";
    else
      std::cout << universal << "\n";
    return kOk;
  });
}

int cmd_export(const std::string& name, const std::string& field, const std::string& dir) {
  if (!Registry::load().contains(name)) throw UsageError("unknown catalog name " + name);
  return with_field(field_option(field), [&](const auto& f) {
    using F = std::decay_t<decltype(f)>;
    Catalog<F> cat(f);
    std::optional<GradedAlgebra<F>> g;
    try {
      g.emplace(cat.build(name).graded);
    } catch (const CatalogError& e) {
      throw UsageError(e.what());
    }
    std::filesystem::create_directories(dir);
    write_json_file(dir + "/algebra.json", algebra_to_json(g->algebra));
    write_json_file(dir + "/grading.json", grading_to_json(g->grading));
    std::cout << "wrote " << dir << "/algebra.json and " << dir << "/grading.json\n";
    return kOk;
  });
}

int cmd_freeze(const std::string& field) {
  std::string dir = data_dir();
  with_field(field_option(field), [&](const auto& f) {
    using F = std::decay_t<decltype(f)>;
    Catalog<F> cat(f, Registry::load(dir), GoldenHoms{});
    write_json_file(dir + "/golden_homs.json", compute_golden_homs(cat).to_json());
    write_json_file(dir + "/root_vectors.json", root_vector_table(albert_build(cayley_split(f))));
    return 0;
  });
  std::cout << "wrote " << dir << "/golden_homs.json and " << dir << "/root_vectors.json\n";
  return kOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Gradings on Cayley, Albert, G2 and F4 algebras"};
  app.require_subcommand(1);

  auto* verify = app.add_subcommand("verify", "check every registry entry in the selected scopes");
  std::vector<std::string> scopes;
  std::string field = "gf13", mode = "fast", out;
  verify->add_option("--scope", scopes, "cayley, g2, albert, f4 or all (repeatable)");
  verify->add_option("--field", field, "gf13, q, q-i, q-omega or gfP");
  verify->add_option("--mode", mode, "fast or slow");
  verify->add_option("--out", out, "write the JSON report here");

  auto* grading = app.add_subcommand("grading", "inspect a grading given as JSON files");
  std::string what, algebra_path, grading_path;
  grading->add_option("what", what, "check, type or universal-group")
      ->required()
      ->check(CLI::IsMember({"check", "type", "universal-group"}));
  grading->add_option("algebra", algebra_path, "algebra JSON")->required();
  grading->add_option("grading", grading_path, "grading JSON")->required();

  auto* exp = app.add_subcommand("export", "write algebra.json and grading.json for a catalog entry");
  std::string name, export_field = "gf13", dir = ".";
  exp->add_option("name", name, "catalog name, e.g. albert/cartan")->required();
  exp->add_option("--field", export_field, "gf13, q, q-i, q-omega or gfP");
  exp->add_option("--dir", dir, "output directory");

  auto* freeze = app.add_subcommand("freeze-goldens", "recompute golden_homs.json and root_vectors.json");
  std::string freeze_field = "gf13";
  freeze->add_option("--field", freeze_field, "field used for the search");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kUsage;
  }

  try {
    if (*verify) return cmd_verify(scopes, field, mode, out);
    if (*grading) return cmd_grading(what, algebra_path, grading_path);
    if (*exp) return cmd_export(name, export_field, dir);
    if (*freeze) return cmd_freeze(freeze_field);
  } catch (const UsageError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kMathFailure;
  }
  return kUsage;
}
