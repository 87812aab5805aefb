#pragma once

// JSON documents for algebras, maps and extension data.
//
// Algebra: {"name": s, "dim": n,
//           "brackets": [{"i": i, "j": j, "coeffs": [[k, value], ...]}, ...],
//           "metric": "identity" | [[...], ...]}
// Map:     {"source": algebra | "file.json", "target": algebra | "file.json",
//           "xi": [[...], ...]}
// Extension: {"kernel": algebra, "base": algebra, "target_metric": matrix,
//             "rho": [matrix per base vector],
//             "omega": [{"i": a, "j": b, "value": [...]}, ...]}
//            or {"tangent": algebra}
// Values are JSON numbers or strings "p/q" / decimal literals. Exact mode
// accepts integers and strings only.

#include <filesystem>
#include <fstream>
#include <map>
#include <set>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "liebih/maps.hpp"
#include "liebih/semidirect.hpp"

namespace liebih::io {

using json = nlohmann::json;

/// Unreadable file, malformed JSON or a document of the wrong shape.
class ParseError : public Error {
 public:
  using Error::Error;
};

inline json load_json(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open '" + path.string() + "'");
  try {
    return json::parse(in);
  } catch (const json::parse_error& e) {
    throw ParseError("'" + path.string() + "': " + e.what());
  }
}

namespace detail {

inline const json& field(const json& j, const char* key, const std::string& where) {
  if (!j.is_object() || !j.contains(key)) throw ParseError(where + ": missing \"" + key + "\"");
  return j.at(key);
}

inline Index as_index(const json& j, const std::string& where) {
  if (!j.is_number_integer()) throw ParseError(where + ": expected an integer");
  return j.get<Index>();
}

}  // namespace detail

template <class S>
S parse_scalar(const json& j, const std::string& where = "value") {
  if (j.is_string()) {
    try {
      const Rational q = Rational::parse(j.get<std::string>());
      if constexpr (is_exact_v<S>) return q;
      else return q.to_double();
    } catch (const ValidationError& e) {
      throw ParseError(where + ": " + e.what());
    }
  }
  if (j.is_number_integer()) {
    if constexpr (is_exact_v<S>) return Rational(j.get<long long>());
    else return static_cast<S>(j.get<long long>());
  }
  if (j.is_number_float()) {
    if constexpr (is_exact_v<S>) {
      throw ParseError(where + ": exact mode needs integers or rational strings, got " + j.dump());
    } else {
      return j.get<double>();
    }
  }
  throw ParseError(where + ": expected a number or rational string");
}

template <class S>
Vector<S> parse_vector(const json& j, Index n, const std::string& where) {
  if (!j.is_array() || static_cast<Index>(j.size()) != n)
    throw ParseError(where + ": expected an array of length " + std::to_string(n));
  Vector<S> v(n);
  for (Index i = 0; i < n; ++i) v(i) = parse_scalar<S>(j[static_cast<std::size_t>(i)], where);
  return v;
}

template <class S>
Matrix<S> parse_matrix(const json& j, Index rows, Index cols, const std::string& where) {
  if (!j.is_array() || static_cast<Index>(j.size()) != rows)
    throw ParseError(where + ": expected " + std::to_string(rows) + " rows");
  Matrix<S> m(rows, cols);
  for (Index r = 0; r < rows; ++r) m.row(r) = parse_vector<S>(j[static_cast<std::size_t>(r)], cols, where).transpose();
  return m;
}

template <class S>
json scalar_to_json(const S& s) {
  if constexpr (is_exact_v<S>) return s.str();
  else return s;
}

template <class S>
json matrix_to_json(const Matrix<S>& m) {
  json out = json::array();
  for (Index r = 0; r < m.rows(); ++r) {
    json row = json::array();
    for (Index c = 0; c < m.cols(); ++c) row.push_back(scalar_to_json(m(r, c)));
    out.push_back(std::move(row));
  }
  return out;
}

template <class S>
json vector_to_json(const Vector<S>& v) {
  json out = json::array();
  for (Index i = 0; i < v.size(); ++i) out.push_back(scalar_to_json(v(i)));
  return out;
}

template <class S = double>
struct AlgebraSpec {
  std::string name;
  EuclideanLieAlgebra<S> ela;
};

/// Structure constants and metric; the Jacobi identity is not checked here.
template <class S>
AlgebraSpec<S> algebra_from_json(const json& j) {
  const std::string where = "algebra";
  if (!j.is_object()) throw ParseError(where + ": expected an object");
  const std::string name = j.contains("name") && j["name"].is_string() ? j["name"].get<std::string>() : "";
  const Index n = detail::as_index(detail::field(j, "dim", where), where + ".dim");
  if (n < 1) throw ParseError(where + ".dim: must be positive");
  std::vector<BracketEntry<S>> entries;
  std::set<std::pair<Index, Index>> seen;
  if (j.contains("brackets")) {
    const json& br = j["brackets"];
    if (!br.is_array()) throw ParseError(where + ".brackets: expected an array");
    for (const json& e : br) {
      const Index a = detail::as_index(detail::field(e, "i", where + ".brackets"), where + ".brackets.i");
      const Index b = detail::as_index(detail::field(e, "j", where + ".brackets"), where + ".brackets.j");
      if (a < 0 || b < 0 || a >= n || b >= n) throw ParseError(where + ".brackets: index out of range");
      if (a >= b) throw ParseError(where + ".brackets: entries need i < j");
      if (!seen.insert({a, b}).second) throw ParseError(where + ".brackets: duplicate pair");
      Vector<S> value = Vector<S>::Zero(n);
      const json& coeffs = detail::field(e, "coeffs", where + ".brackets");
      if (!coeffs.is_array()) throw ParseError(where + ".brackets.coeffs: expected an array");
      for (const json& c : coeffs) {
        if (!c.is_array() || c.size() != 2) throw ParseError(where + ".brackets.coeffs: expected [k, value]");
        const Index k = detail::as_index(c[0], where + ".brackets.coeffs");
        if (k < 0 || k >= n) throw ParseError(where + ".brackets.coeffs: index out of range");
        value(k) += parse_scalar<S>(c[1], where + ".brackets.coeffs");
      }
      entries.push_back(BracketEntry<S>{a, b, std::move(value)});
    }
  }
  Matrix<S> gram = Matrix<S>::Identity(n, n);
  if (j.contains("metric")) {
    const json& m = j["metric"];
    if (m.is_string()) {
      if (m.get<std::string>() != "identity") throw ParseError(where + ".metric: unknown keyword");
    } else {
      gram = parse_matrix<S>(m, n, n, where + ".metric");
    }
  }
  if (!numeric::is_symmetric(gram, Tolerance{})) throw ValidationError("algebra metric is not symmetric");
  if (!numeric::is_positive_definite(gram, Tolerance{})) throw ValidationError("algebra metric is not positive definite");
  LieAlgebra<S> alg(n, std::span<const BracketEntry<S>>(entries.data(), entries.size()));
  return {name, EuclideanLieAlgebra<S>(std::move(alg), std::move(gram))};
}

template <class S>
json algebra_to_json(const std::string& name, const EuclideanLieAlgebra<S>& ela) {
  const Index n = ela.dim();
  json out;
  out["name"] = name;
  out["dim"] = n;
  json br = json::array();
  for (Index a = 0; a < n; ++a)
    for (Index b = a + 1; b < n; ++b) {
      const Vector<S> v = ela.algebra().structure(a, b);
      json coeffs = json::array();
      for (Index k = 0; k < n; ++k)
        if (!negligible_scalar(v(k), 0.0, Tolerance{0.0, 0.0})) coeffs.push_back(json::array({k, scalar_to_json(v(k))}));
      if (!coeffs.empty()) br.push_back({{"i", a}, {"j", b}, {"coeffs", std::move(coeffs)}});
    }
  out["brackets"] = std::move(br);
  if (ela.gram() == Matrix<S>::Identity(n, n)) out["metric"] = "identity";
  else out["metric"] = matrix_to_json(ela.gram());
  return out;
}

/// An inline object, or a string naming a file relative to base_dir.
template <class S>
AlgebraSpec<S> algebra_ref(const json& j, const std::filesystem::path& base_dir) {
  if (j.is_string()) return algebra_from_json<S>(load_json(base_dir / j.get<std::string>()));
  return algebra_from_json<S>(j);
}

template <class S>
LieAlgebraMap<S> map_from_json(const json& j, const std::filesystem::path& base_dir = ".") {
  const std::string where = "map";
  auto src = algebra_ref<S>(detail::field(j, "source", where), base_dir);
  auto tgt = algebra_ref<S>(detail::field(j, "target", where), base_dir);
  Matrix<S> xi = parse_matrix<S>(detail::field(j, "xi", where), tgt.ela.dim(), src.ela.dim(), where + ".xi");
  return LieAlgebraMap<S>(std::move(src.ela), std::move(tgt.ela), std::move(xi));
}

template <class S>
json map_to_json(const LieAlgebraMap<S>& map, const std::string& source_name = "source",
                 const std::string& target_name = "target") {
  return {{"source", algebra_to_json(source_name, map.source())},
          {"target", algebra_to_json(target_name, map.target())},
          {"xi", matrix_to_json(map.xi())}};
}

template <class S>
SemidirectData<S> semidirect_from_json(const json& j, const std::filesystem::path& base_dir = ".",
                                       const Tolerance& tol = {}) {
  const std::string where = "extension";
  if (!j.is_object()) throw ParseError(where + ": expected an object");
  if (j.contains("tangent")) return tangent_data(algebra_ref<S>(j["tangent"], base_dir).ela, tol);
  const auto kernel = algebra_ref<S>(detail::field(j, "kernel", where), base_dir);
  const auto base = algebra_ref<S>(detail::field(j, "base", where), base_dir);
  const Index m = kernel.ela.dim();
  const Index k = base.ela.dim();
  Matrix<S> gram2 = base.ela.gram();
  if (j.contains("target_metric")) {
    const json& t = j["target_metric"];
    if (t.is_string()) {
      if (t.get<std::string>() != "identity") throw ParseError(where + ".target_metric: unknown keyword");
      gram2 = Matrix<S>::Identity(k, k);
    } else {
      gram2 = parse_matrix<S>(t, k, k, where + ".target_metric");
    }
  }
  std::vector<Matrix<S>> rho;
  if (j.contains("rho")) {
    const json& r = j["rho"];
    if (!r.is_array() || static_cast<Index>(r.size()) != k)
      throw ParseError(where + ".rho: expected one matrix per base vector");
    for (const json& x : r) rho.push_back(parse_matrix<S>(x, m, m, where + ".rho"));
  } else {
    rho.assign(static_cast<std::size_t>(k), Matrix<S>::Zero(m, m));
  }
  std::vector<Vector<S>> omega(static_cast<std::size_t>(k * k), Vector<S>::Zero(m));
  if (j.contains("omega")) {
    const json& w = j["omega"];
    if (!w.is_array()) throw ParseError(where + ".omega: expected an array");
    for (const json& e : w) {
      const Index a = detail::as_index(detail::field(e, "i", where + ".omega"), where + ".omega.i");
      const Index b = detail::as_index(detail::field(e, "j", where + ".omega"), where + ".omega.j");
      if (a < 0 || b < 0 || a >= k || b >= k || a >= b) throw ParseError(where + ".omega: need 0 <= i < j < dim base");
      const Vector<S> v = parse_vector<S>(detail::field(e, "value", where + ".omega"), m, where + ".omega.value");
      omega[static_cast<std::size_t>(a * k + b)] = v;
      omega[static_cast<std::size_t>(b * k + a)] = -v;
    }
  }
  return SemidirectData<S>(kernel.ela, base.ela.algebra(), base.ela.gram(), gram2, std::move(rho), std::move(omega), tol);
}

template <class S>
json semidirect_to_json(const SemidirectData<S>& sd, const std::string& kernel_name = "kernel",
                        const std::string& base_name = "base") {
  json out;
  out["kernel"] = algebra_to_json(kernel_name, sd.n());
  out["base"] = algebra_to_json(base_name, EuclideanLieAlgebra<S>(sd.h(), sd.gram1()));
  out["target_metric"] = matrix_to_json(sd.gram2());
  json rho = json::array();
  for (const auto& r : sd.rho()) rho.push_back(matrix_to_json(r));
  out["rho"] = std::move(rho);
  json omega = json::array();
  const Index k = sd.h().dim();
  for (Index a = 0; a < k; ++a)
    for (Index b = a + 1; b < k; ++b)
      if (!negligible(sd.omega(a, b), 0.0, Tolerance{0.0, 0.0}))
        omega.push_back({{"i", a}, {"j", b}, {"value", vector_to_json(sd.omega(a, b))}});
  out["omega"] = std::move(omega);
  return out;
}

}  // namespace liebih::io
