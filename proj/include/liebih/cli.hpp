#pragma once

// Commands behind the liebih tool. Each returns a JSON report and an exit
// code: 0 success, 1 domain or validation failure, 2 I/O or parse failure.

#include <cstdint>
#include <filesystem>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include <CLI11.hpp>

#include "liebih/catalog.hpp"
#include "liebih/harmonic_cone.hpp"
#include "liebih/maps.hpp"
#include "liebih/semidirect.hpp"
#include "liebih/spec_io.hpp"

namespace liebih::cli {

using json = nlohmann::json;

struct Options {
  double tol = 1e-9;
  bool exact = false;
  std::string format = "text";
  std::uint64_t seed = 0;
};

struct Outcome {
  int exit_code = 0;
  json report;
};

namespace detail {

inline Tolerance tolerance(const Options& o) { return Tolerance{o.tol, o.tol}; }

inline std::filesystem::path dir_of(const std::string& path) {
  const auto parent = std::filesystem::path(path).parent_path();
  return parent.empty() ? std::filesystem::path(".") : parent;
}

inline Outcome failure(int code, const std::string& kind, const std::string& message, json extra = json::object()) {
  extra["error"] = kind;
  extra["message"] = message;
  return {code, std::move(extra)};
}

/// Runs body, mapping library errors to exit codes.
template <class F>
Outcome guarded(F&& body) {
  try {
    return body();
  } catch (const io::ParseError& e) {
    return failure(2, "parse", e.what());
  } catch (const json::exception& e) {
    return failure(2, "parse", e.what());
  } catch (const DimensionError& e) {
    return failure(1, "dimension", e.what());
  } catch (const ValidationError& e) {
    return failure(1, "validation", e.what());
  } catch (const InfeasibleError& e) {
    return failure(1, "infeasible", e.what());
  } catch (const OracleMismatch& e) {
    return failure(1, "oracle", e.what());
  }
}

template <class S>
void require_jacobi(const EuclideanLieAlgebra<S>& ela, const std::string& label, const Tolerance& tol) {
  if (!check_jacobi(ela.algebra(), tol))
    throw ValidationError(label + ": Jacobi identity fails (defect " + std::to_string(jacobi_defect(ela.algebra())) + ")");
}

template <class S>
json basis_json(const Matrix<S>& cols) {
  json out = json::array();
  for (Index c = 0; c < cols.cols(); ++c) out.push_back(io::vector_to_json(Vector<S>(cols.col(c))));
  return out;
}

template <class S>
Outcome check(const std::string& path, const Options& o) {
  const Tolerance tol = tolerance(o);
  const auto spec = io::algebra_from_json<S>(io::load_json(path));
  const auto& ela = spec.ela;
  json r;
  r["name"] = spec.name;
  r["dim"] = ela.dim();
  r["jacobi_defect"] = jacobi_defect(ela.algebra());
  if (!check_jacobi(ela.algebra(), tol))
    return failure(1, "validation", "Jacobi identity fails", r);
  r["jacobi"] = true;
  r["metric_positive_definite"] = true;
  r["unimodular"] = is_unimodular(ela.algebra(), tol);
  r["unimodular_vector"] = io::vector_to_json(unimodular_vector(ela, tol));
  const Matrix<S> kill = killing_subalgebra(ela, tol);
  r["kill_dim"] = kill.cols();
  r["kill_basis"] = basis_json(kill);
  r["biinvariant"] = is_biinvariant(ela, tol);
  return {0, r};
}

template <class S>
Outcome analyze(const std::string& path, const Options& o) {
  const Tolerance tol = tolerance(o);
  const auto map = io::map_from_json<S>(io::load_json(path), dir_of(path));
  require_jacobi(map.source(), "source", tol);
  require_jacobi(map.target(), "target", tol);
  json defects;
  defects["hom_defect"] = hom_defect(map);
  if (!validate_hom(map, tol)) {
    json extra;
    extra["defects"] = defects;
    return failure(1, "validation", "xi is not a homomorphism (max bracket defect " +
                                        std::to_string(hom_defect(map)) + ")", extra);
  }
  const auto c = classify(map, tol);
  json r;
  r["tension"] = io::vector_to_json(c.tension);
  r["bitension"] = io::vector_to_json(c.bitension);
  r["flags"] = {{"harmonic", c.harmonic},
                {"biharmonic", c.biharmonic},
                {"riemannian_immersion", c.riemannian_immersion},
                {"riemannian_submersion", c.riemannian_submersion},
                {"surjective", is_surjective(map, tol)}};
  defects["tension_norm"] = c.tension_norm;
  defects["bitension_norm"] = c.bitension_norm;
  if (is_surjective(map, tol)) {
    const auto split = submersion_split(map, tol);
    json sub;
    sub["kernel_dim"] = split.kernel.dim();
    sub["kernel_mean_curvature"] = io::vector_to_json(split.mean_curvature);
    if (c.riemannian_submersion) {
      const auto t1 = theo1_criteria(map, tol);
      sub["killing_defect"] = t1.killing_defect;
      sub["parallel_defect"] = t1.parallel_defect;
    }
    defects["submersion"] = sub;
  }
  r["defects"] = defects;
  return {0, r};
}

template <class S>
Outcome cone(const std::string& path, const Options& o) {
  const Tolerance tol = tolerance(o);
  const auto spec = io::algebra_from_json<S>(io::load_json(path));
  require_jacobi(spec.ela, spec.name.empty() ? "algebra" : spec.name, tol);
  const auto res = harmonic_cone(spec.ela, tol);
  json r;
  r["name"] = spec.name;
  r["dimension"] = res.dimension;
  json basis = json::array();
  for (const auto& j : res.sym_basis) basis.push_back(io::matrix_to_json(j));
  r["basis"] = basis;
  if (is_unimodular(spec.ela.algebra(), tol))
    r["predicted_dimension"] = spec.ela.dim() * (spec.ela.dim() - 1) / 2 + killing_subalgebra(spec.ela, tol).cols();
  return {0, r};
}

template <class S>
SemidirectData<S> run_recipe(const std::string& recipe, const json& doc, const std::filesystem::path& dir,
                             const Options& o) {
  const Tolerance tol = tolerance(o);
  const auto kernel = io::algebra_ref<S>(io::detail::field(doc, "kernel", "extension"), dir);
  const auto base = io::algebra_ref<S>(io::detail::field(doc, "base", "extension"), dir);
  Matrix<S> gram2 = base.ela.gram();
  if (doc.contains("target_metric"))
    gram2 = io::parse_matrix<S>(doc["target_metric"], base.ela.dim(), base.ela.dim(), "extension.target_metric");
  const RecipeOptions ro{o.seed, 64};
  const auto& h = base.ela.algebra();
  const auto& g1 = base.ela.gram();
  if (recipe == "harmonic") return recipe_harmonic_submersion(h, g1, gram2, kernel.ela, ro, tol);
  if (recipe == "biharmonic") return recipe_biharmonic_submersion(h, g1, gram2, kernel.ela, ro, tol);
  if (recipe == "parallel") return recipe_riemannian_biharmonic(h, g1, kernel.ela, RiemannianVariant::parallel, ro, tol);
  if (recipe == "unimodular_n")
    return recipe_riemannian_biharmonic(h, g1, kernel.ela, RiemannianVariant::unimodular_n, ro, tol);
  if (recipe == "killing_form")
    return recipe_riemannian_biharmonic(h, g1, kernel.ela, RiemannianVariant::killing_form, ro, tol);
  if (recipe == "flat") return theo2_builder(base.ela, kernel.ela, ro, tol);
  throw io::ParseError("unknown recipe '" + recipe + "'");
}

template <class S>
Outcome semidirect(const std::string& path, const std::string& recipe, bool emit_data, const Options& o) {
  const Tolerance tol = tolerance(o);
  const json doc = io::load_json(path);
  const auto sd = recipe.empty() ? io::semidirect_from_json<S>(doc, dir_of(path), tol)
                                 : run_recipe<S>(recipe, doc, dir_of(path), o);
  require_jacobi(sd.n(), "kernel", tol);
  if (!check_jacobi(sd.h(), tol)) throw ValidationError("base: Jacobi identity fails");
  if (emit_data) return {0, io::semidirect_to_json(sd)};
  const auto built = build_semidirect(sd, tol);
  return {0, io::algebra_to_json("extension", built.algebra)};
}

inline json entry_json(const catalog::CatalogEntry<Rational>& e) {
  json r;
  r["algebra"] = io::algebra_to_json(e.name, e.ela);
  json ex = json::object();
  if (e.expected.unimodular) ex["unimodular"] = *e.expected.unimodular;
  if (e.expected.unimodular_vector) ex["unimodular_vector"] = io::vector_to_json(*e.expected.unimodular_vector);
  if (e.expected.kill_dim) ex["kill_dim"] = *e.expected.kill_dim;
  if (e.expected.ch_dim) ex["ch_dim"] = *e.expected.ch_dim;
  for (const auto& [name, t] : e.expected.tensions) ex["tension"][name] = io::vector_to_json(t.second);
  r["expected"] = ex;
  return r;
}

}  // namespace detail

inline Outcome cmd_check(const std::string& path, const Options& o = {}) {
  return detail::guarded([&] { return o.exact ? detail::check<Rational>(path, o) : detail::check<double>(path, o); });
}

inline Outcome cmd_analyze(const std::string& path, const Options& o = {}) {
  return detail::guarded([&] { return o.exact ? detail::analyze<Rational>(path, o) : detail::analyze<double>(path, o); });
}

inline Outcome cmd_cone(const std::string& path, const Options& o = {}) {
  return detail::guarded([&] { return o.exact ? detail::cone<Rational>(path, o) : detail::cone<double>(path, o); });
}

inline Outcome cmd_semidirect(const std::string& path, const std::string& recipe = "", bool emit_data = false,
                              const Options& o = {}) {
  return detail::guarded([&] {
    return o.exact ? detail::semidirect<Rational>(path, recipe, emit_data, o)
                   : detail::semidirect<double>(path, recipe, emit_data, o);
  });
}

/// No name: run the suite. With a name: print the entry.
inline Outcome cmd_catalog(const std::optional<std::string>& name, const std::optional<std::string>& base = {},
                           const Options& o = {}) {
  return detail::guarded([&]() -> Outcome {
    if (name) {
      catalog::Params<Rational> p;
      if (base) p.base = *base;
      return {0, detail::entry_json(catalog::get<Rational>(*name, p))};
    }
    const auto report = catalog::run_paper_suite(detail::tolerance(o));
    json items = json::array();
    for (const auto& i : report.items)
      items.push_back({{"name", i.name}, {"passed", i.passed}, {"measured", i.measured}, {"expected", i.expected}});
    json r;
    r["items"] = items;
    r["all_passed"] = report.all_passed();
    return {report.all_passed() ? 0 : 1, r};
  });
}

namespace detail {

inline void render_text(std::ostream& os, const json& j, const std::string& prefix) {
  if (j.is_object()) {
    for (const auto& [k, v] : j.items()) {
      const std::string key = prefix.empty() ? k : prefix + "." + k;
      if (v.is_object()) {
        render_text(os, v, key);
      } else if (v.is_array() && !v.empty() && v.front().is_array() && v.front().front().is_array()) {
        os << key << ":\n";
        for (const auto& m : v) {
          for (const auto& row : m) os << "  " << row.dump() << "\n";
          os << "\n";
        }
      } else if (v.is_array() && !v.empty() && v.front().is_object()) {
        os << key << ":\n";
        for (const auto& item : v) os << "  " << item.dump() << "\n";
      } else if (v.is_string()) {
        os << key << ": " << v.get<std::string>() << "\n";
      } else {
        os << key << ": " << v.dump() << "\n";
      }
    }
  } else {
    os << j.dump() << "\n";
  }
}

}  // namespace detail

inline void render(std::ostream& os, const Outcome& out, const std::string& format) {
  if (format == "json") os << out.report.dump(2) << "\n";
  else detail::render_text(os, out.report, "");
}

/// Entry point of the tool.
inline int run(int argc, const char* const* argv, std::ostream& out = std::cout, std::ostream& err = std::cerr) {
  CLI::App app{"liebih: harmonic and biharmonic homomorphisms between Riemannian Lie groups"};
  app.require_subcommand(1);
  Options o;
  app.add_option("--tol", o.tol, "absolute and relative tolerance")->check(CLI::PositiveNumber);
  app.add_flag("--exact", o.exact, "rational arithmetic; inputs must be integers or rational strings");
  app.add_option("--format", o.format, "report format")->check(CLI::IsMember({"text", "json"}));
  app.add_option("--seed", o.seed, "seed for recipe searches");

  std::string path;
  auto* check = app.add_subcommand("check", "validate an algebra file");
  check->add_option("file", path, "algebra JSON")->required();
  auto* analyze = app.add_subcommand("analyze", "tension, bitension and flags of a homomorphism");
  analyze->add_option("file", path, "map JSON")->required();
  auto* cone = app.add_subcommand("cone", "harmonic cone of a metric");
  cone->add_option("file", path, "algebra JSON")->required();
  auto* semi = app.add_subcommand("semidirect", "build an extension and print its algebra");
  std::string recipe;
  bool emit_data = false;
  std::string output;
  semi->add_option("file", path, "extension JSON")->required();
  semi->add_option("--recipe", recipe, "fill rho and omega by a recipe")
      ->check(CLI::IsMember({"harmonic", "biharmonic", "parallel", "unimodular_n", "killing_form", "flat"}));
  semi->add_flag("--emit-data", emit_data, "print the extension data instead of the algebra");
  semi->add_option("-o,--output", output, "write the result to a file");
  auto* cat = app.add_subcommand("catalog", "print an entry or run the example suite");
  std::string name;
  std::string base;
  bool list = false;
  cat->add_option("name", name, "entry name");
  cat->add_option("--base", base, "base entry for tangent");
  cat->add_flag("--list", list, "list entry names");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? 0 : 2;
  }

  Outcome result;
  if (*check) result = cmd_check(path, o);
  else if (*analyze) result = cmd_analyze(path, o);
  else if (*cone) result = cmd_cone(path, o);
  else if (*semi) result = cmd_semidirect(path, recipe, emit_data, o);
  else if (list) result = {0, {{"names", catalog::names()}}};
  else result = cmd_catalog(name.empty() ? std::nullopt : std::optional<std::string>(name),
                            base.empty() ? std::nullopt : std::optional<std::string>(base), o);

  if (*semi && result.exit_code == 0 && !output.empty()) {
    std::ofstream f(output);
    if (!f) {
      err << "cannot write '" << output << "'\n";
      return 2;
    }
    f << result.report.dump(2) << "\n";
    return 0;
  }
  if (*semi && result.exit_code == 0) {
    out << result.report.dump(2) << "\n";
    return 0;
  }
  if (result.exit_code != 0 && result.report.contains("message")) {
    err << "error: " << result.report["message"].get<std::string>() << "\n";
    if (o.format == "text") {
      result.report.erase("message");
      result.report.erase("error");
    }
  }
  render(out, result, o.format);
  return result.exit_code;
}

}  // namespace liebih::cli
