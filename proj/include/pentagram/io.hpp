#pragma once
// JSON serialization for polygons, corner vectors, invariant reports, and
// ray charts.  Rational scalars travel as "p/q" strings, doubles as numbers.

#include <json.hpp>

#include <fstream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include <pentagram/closure.hpp>
#include <pentagram/field.hpp>
#include <pentagram/invariants.hpp>
#include <pentagram/polygon.hpp>

namespace pentagram {

using nlohmann::json;

template <class F>
const char* field_name();
template <>
inline const char* field_name<Rational>() {
  return "rational";
}
template <>
inline const char* field_name<double>() {
  return "f64";
}

inline json scalar_to_json(const Rational& v) { return json(rational_str(v)); }
inline json scalar_to_json(double v) { return json(v); }

template <class F>
F scalar_from_json(const json& j);

template <>
inline Rational scalar_from_json<Rational>(const json& j) {
  if (j.is_string()) return parse_rational(j.get<std::string>());
  if (j.is_number_integer()) return Rational(j.get<long long>());
  throw std::invalid_argument("expected a rational scalar (\"p/q\" string or integer)");
}

template <>
inline double scalar_from_json<double>(const json& j) {
  if (j.is_number()) return j.get<double>();
  if (j.is_string()) return to_double(parse_rational(j.get<std::string>()));
  throw std::invalid_argument("expected a numeric scalar");
}

template <class F>
json scalar_list_to_json(const std::vector<F>& xs) {
  json out = json::array();
  for (const F& x : xs) out.push_back(scalar_to_json(x));
  return out;
}

template <class F>
std::vector<F> scalar_list_from_json(const json& j) {
  if (!j.is_array()) throw std::invalid_argument("expected an array of scalars");
  std::vector<F> out;
  out.reserve(j.size());
  for (const json& e : j) out.push_back(scalar_from_json<F>(e));
  return out;
}

template <class F>
json triple_to_json(const Vec3<F>& p) {
  return json::array({scalar_to_json(p[0]), scalar_to_json(p[1]), scalar_to_json(p[2])});
}

template <class F>
Vec3<F> triple_from_json(const json& j) {
  if (!j.is_array() || j.size() != 3)
    throw std::invalid_argument("vertices must be [a, b, c] triples");
  return Vec3<F>{scalar_from_json<F>(j[0]), scalar_from_json<F>(j[1]),
                 scalar_from_json<F>(j[2])};
}

template <class F>
json polygon_to_json(const ClosedPolygon<F>& p) {
  json verts = json::array();
  for (const auto& vtx : p.v) verts.push_back(triple_to_json(vtx));
  return json{{"n", p.size()}, {"field", field_name<F>()}, {"vertices", verts}};
}

template <class F>
ClosedPolygon<F> polygon_from_json(const json& j) {
  if (!j.is_object() || !j.contains("n") || !j.contains("vertices"))
    throw std::invalid_argument("polygon files need keys \"n\" and \"vertices\"");
  long n = j.at("n").get<long>();
  const json& verts = j.at("vertices");
  if (!verts.is_array() || static_cast<long>(verts.size()) != n)
    throw std::invalid_argument("polygon \"vertices\" must list exactly n triples");
  ClosedPolygon<F> p;
  p.v.reserve(verts.size());
  for (const json& e : verts) p.v.push_back(triple_from_json<F>(e));
  return p;
}

template <class F>
json corners_to_json(const std::vector<F>& x) {
  if (x.size() % 2 != 0 || x.size() < 10)
    throw std::invalid_argument("corner vector must hold 2n >= 10 entries");
  return json{{"n", x.size() / 2}, {"x", scalar_list_to_json(x)}};
}

template <class F>
std::vector<F> corners_from_json(const json& j) {
  if (!j.is_object() || !j.contains("n") || !j.contains("x"))
    throw std::invalid_argument("corner files need keys \"n\" and \"x\"");
  long n = j.at("n").get<long>();
  std::vector<F> x = scalar_list_from_json<F>(j.at("x"));
  if (static_cast<long>(x.size()) != 2 * n)
    throw std::invalid_argument("corner list length must be 2n");
  return x;
}

template <class F>
json invariants_to_json(const InvariantValues<F>& iv) {
  json out{{"n", iv.n},
           {"O", scalar_list_to_json(iv.O)},
           {"E", scalar_list_to_json(iv.E)},
           {"On", scalar_to_json(iv.On)},
           {"En", scalar_to_json(iv.En)}};
  if (iv.has_half_casimirs)
    out["half_casimirs"] =
        json{{"O", scalar_to_json(iv.half_O)}, {"E", scalar_to_json(iv.half_E)}};
  return out;
}

template <class F>
json chart_to_json(const RayChart<F>& chart) {
  const auto outer = chart.outer();
  json outer_json = json::array();
  for (const F& x : outer) outer_json.push_back(scalar_to_json(x));
  json verts = json::array();
  for (const auto& vtx : chart.polygon.v) verts.push_back(triple_to_json(vtx));
  return json{{"n", chart.n},
              {"inner", scalar_list_to_json(chart.inner)},
              {"outer", outer_json},
              {"vertices", verts}};
}

inline json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open input file: " + path);
  json j;
  in >> j;
  return j;
}

inline void write_json_file(const std::string& path, const json& j) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot open output file: " + path);
  out << j.dump(2) << "\n";
}

}  // namespace pentagram
