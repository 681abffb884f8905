#ifndef TORICDT_GEOMETRY_HPP
#define TORICDT_GEOMETRY_HPP

// Toric Calabi-Yau local geometries as graphs of charts glued along invariant lines.

#include "toricdt/charcalc.hpp"
#include "toricdt/partitions.hpp"

#include <nlohmann/json.hpp>

#include <array>
#include <cstddef>
#include <fstream>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace toricdt {

inline constexpr int kOpenRay = -1;
inline constexpr std::array<int, 3> kAllOpen{kOpenRay, kOpenRay, kOpenRay};

struct GeoVertex {
  std::string id;
  Frame frame{};
  /// Edge index per local axis, or kOpenRay.
  std::array<int, 3> incident = kAllOpen;

  bool operator==(const GeoVertex&) const = default;
};

struct GeoEdge {
  std::string id;
  std::size_t from = 0;
  int axis_from = 0;
  std::size_t to = 0;
  int axis_to = 0;
  EdgeFrame frame;
  std::size_t curve_class = 0;
  /// Set by validation: the transverse axes swap order across the edge, so the
  /// partition read at `to` is the transpose of the one read at `from`.
  bool flip = false;

  bool operator==(const GeoEdge&) const = default;
};

struct ToricCY3 {
  std::string name;
  std::vector<std::string> classes;
  std::vector<GeoVertex> vertices;
  std::vector<GeoEdge> edges;

  bool operator==(const ToricCY3&) const = default;
};

enum class ViolationKind {
  Structure,
  UnknownClass,
  NotUnimodular,
  ProductCharacter,
  CalabiYau,
  FrameConsistency,
};

struct Violation {
  ViolationKind kind;
  std::string message;
};

struct ValidationReport {
  std::vector<Violation> violations;

  bool ok() const { return violations.empty(); }
  bool has(ViolationKind k) const
  {
    for (const auto& v : violations)
      if (v.kind == k)
        return true;
    return false;
  }
  std::string str() const
  {
    std::ostringstream os;
    for (const auto& v : violations)
      os << v.message << '\n';
    return os.str();
  }
};

class GeometryError : public std::runtime_error {
public:
  explicit GeometryError(const std::string& what, ValidationReport report = {})
      : std::runtime_error(what), report_(std::move(report))
  {
  }
  const ValidationReport& report() const { return report_; }

private:
  ValidationReport report_;
};

namespace detail {

using Vec3 = std::array<int, 3>;

inline Vec3 axpy(const Vec3& x, int a, const Vec3& y)
{
  return {x[0] + a * y[0], x[1] + a * y[1], x[2] + a * y[2]};
}

inline long det3(const Frame& f)
{
  return static_cast<long>(f[0][0]) * (f[1][1] * f[2][2] - f[1][2] * f[2][1]) -
         static_cast<long>(f[0][1]) * (f[1][0] * f[2][2] - f[1][2] * f[2][0]) +
         static_cast<long>(f[0][2]) * (f[1][0] * f[2][1] - f[1][1] * f[2][0]);
}

inline std::string vec_str(const Vec3& v)
{
  return "(" + std::to_string(v[0]) + "," + std::to_string(v[1]) + "," + std::to_string(v[2]) + ")";
}

} // namespace detail

/// Weights of the far chart's coordinates along an edge: the edge axis flips
/// sign and the transverse weights shift by -m and -m' times the edge weight.
/// Returned as {edge axis, image of the lower transverse axis, image of the higher one}.
inline std::array<std::array<int, 3>, 3> transported_weights(const Frame& near, int axis, const EdgeFrame& ef)
{
  const auto [lo, hi] = other_axes(axis);
  const auto& w = near[static_cast<std::size_t>(axis)];
  return {detail::Vec3{-w[0], -w[1], -w[2]},
          detail::axpy(near[static_cast<std::size_t>(lo)], -ef.m, w),
          detail::axpy(near[static_cast<std::size_t>(hi)], -ef.mprime, w)};
}

/// Frame of the far chart obtained by transport; `flip` swaps the transverse images.
inline Frame transport_frame(const Frame& near, int axis_near, const EdgeFrame& ef, int axis_far, bool flip)
{
  const auto img = transported_weights(near, axis_near, ef);
  const auto [lo, hi] = other_axes(axis_far);
  Frame far{};
  far[static_cast<std::size_t>(axis_far)] = img[0];
  far[static_cast<std::size_t>(lo)] = flip ? img[2] : img[1];
  far[static_cast<std::size_t>(hi)] = flip ? img[1] : img[2];
  return far;
}

/// Normal degrees seen from the `to` end of an edge.
inline EdgeFrame reversed_frame(const GeoEdge& e)
{
  return e.flip ? EdgeFrame{e.frame.mprime, e.frame.m} : e.frame;
}

/// Checks all invariants; on success also fills in each edge's flip flag.
inline ValidationReport validate(ToricCY3& g)
{
  ValidationReport rep;
  auto fail = [&](ViolationKind k, std::string msg) { rep.violations.push_back({k, std::move(msg)}); };

  for (std::size_t v = 0; v < g.vertices.size(); ++v) {
    const auto& vx = g.vertices[v];
    for (std::size_t u = 0; u < v; ++u)
      if (g.vertices[u].id == vx.id)
        fail(ViolationKind::Structure, "duplicate vertex id '" + vx.id + "'");
    const long d = detail::det3(vx.frame);
    if (d != 1 && d != -1)
      fail(ViolationKind::NotUnimodular, "vertex '" + vx.id + "': frame determinant " + std::to_string(d));
    detail::Vec3 sum{};
    for (const auto& row : vx.frame)
      sum = detail::axpy(sum, 1, row);
    if (sum != detail::Vec3{1, 1, 1})
      fail(ViolationKind::ProductCharacter,
           "vertex '" + vx.id + "': local t1 t2 t3 maps to " + detail::vec_str(sum) + ", not (1,1,1)");
    for (int a = 0; a < 3; ++a) {
      const int e = vx.incident[static_cast<std::size_t>(a)];
      if (e == kOpenRay)
        continue;
      if (e < 0 || static_cast<std::size_t>(e) >= g.edges.size()) {
        fail(ViolationKind::Structure, "vertex '" + vx.id + "': incident slot refers to a missing edge");
        continue;
      }
      const auto& ed = g.edges[static_cast<std::size_t>(e)];
      const bool matches = (ed.from == v && ed.axis_from == a) || (ed.to == v && ed.axis_to == a);
      if (!matches)
        fail(ViolationKind::Structure,
             "vertex '" + vx.id + "': axis " + std::to_string(a + 1) + " lists edge '" + ed.id +
                 "' which does not end there");
    }
  }

  for (std::size_t ei = 0; ei < g.edges.size(); ++ei) {
    auto& e = g.edges[ei];
    for (std::size_t u = 0; u < ei; ++u)
      if (g.edges[u].id == e.id)
        fail(ViolationKind::Structure, "duplicate edge id '" + e.id + "'");
    if (e.curve_class >= g.classes.size())
      fail(ViolationKind::UnknownClass, "edge '" + e.id + "': unknown curve class");
    if (e.from >= g.vertices.size() || e.to >= g.vertices.size() || e.axis_from < 0 || e.axis_from > 2 ||
        e.axis_to < 0 || e.axis_to > 2) {
      fail(ViolationKind::Structure, "edge '" + e.id + "': bad endpoint");
      continue;
    }
    if (e.from == e.to)
      fail(ViolationKind::Structure, "edge '" + e.id + "': both ends at the same vertex");
    const int idx = static_cast<int>(ei);
    if (g.vertices[e.from].incident[static_cast<std::size_t>(e.axis_from)] != idx ||
        g.vertices[e.to].incident[static_cast<std::size_t>(e.axis_to)] != idx)
      fail(ViolationKind::Structure, "edge '" + e.id + "': endpoints do not list it as incident");
    if (!e.frame.is_cy())
      fail(ViolationKind::CalabiYau, "edge '" + e.id + "': m + m' = " + std::to_string(e.frame.m + e.frame.mprime) +
                                         ", expected -2");

    const Frame& near = g.vertices[e.from].frame;
    const Frame& far = g.vertices[e.to].frame;
    const auto img = transported_weights(near, e.axis_from, e.frame);
    const auto [lo, hi] = other_axes(e.axis_to);
    const auto& flo = far[static_cast<std::size_t>(lo)];
    const auto& fhi = far[static_cast<std::size_t>(hi)];
    const bool axis_ok = far[static_cast<std::size_t>(e.axis_to)] == img[0];
    if (axis_ok && flo == img[1] && fhi == img[2]) {
      e.flip = false;
    } else if (axis_ok && flo == img[2] && fhi == img[1]) {
      e.flip = true;
    } else {
      fail(ViolationKind::FrameConsistency,
           "edge '" + e.id + "': frame of '" + g.vertices[e.to].id + "' is not the transport of '" +
               g.vertices[e.from].id + "' (expected weights " + detail::vec_str(img[0]) + ", " +
               detail::vec_str(img[1]) + ", " + detail::vec_str(img[2]) + ")");
    }
  }
  return rep;
}

inline ToricCY3 validated(ToricCY3 g)
{
  auto rep = validate(g);
  if (!rep.ok())
    throw GeometryError("invalid geometry '" + g.name + "':\n" + rep.str(), rep);
  return g;
}

namespace detail {

inline void add_edge(ToricCY3& g, std::string id, std::size_t from, int af, std::size_t to, int at, EdgeFrame ef,
                     std::size_t cls)
{
  const int idx = static_cast<int>(g.edges.size());
  g.edges.push_back(GeoEdge{std::move(id), from, af, to, at, ef, cls, false});
  g.vertices[from].incident[static_cast<std::size_t>(af)] = idx;
  g.vertices[to].incident[static_cast<std::size_t>(at)] = idx;
}

} // namespace detail

inline std::vector<std::string> builtin_names() { return {"c3", "conifold", "local_p2", "local_p1p1"}; }

inline ToricCY3 builtin(const std::string& name)
{
  ToricCY3 g;
  g.name = name;
  if (name == "c3") {
    g.vertices.push_back({"v0", identity_frame, kAllOpen});
  } else if (name == "conifold") {
    g.classes = {"C"};
    g.vertices.push_back({"v0", identity_frame, kAllOpen});
    g.vertices.push_back({"v1", Frame{{{-1, 0, 0}, {1, 1, 0}, {1, 0, 1}}}, kAllOpen});
    detail::add_edge(g, "e0", 0, 0, 1, 0, {-1, -1}, 0);
  } else if (name == "local_p2") {
    g.classes = {"L"};
    g.vertices.push_back({"v0", identity_frame, kAllOpen});
    g.vertices.push_back({"v1", Frame{{{-1, 0, 0}, {-1, 1, 0}, {3, 0, 1}}}, kAllOpen});
    g.vertices.push_back({"v2", Frame{{{0, -1, 0}, {1, -1, 0}, {0, 3, 1}}}, kAllOpen});
    detail::add_edge(g, "e01", 0, 0, 1, 0, {1, -3}, 0);
    detail::add_edge(g, "e02", 0, 1, 2, 0, {1, -3}, 0);
    detail::add_edge(g, "e12", 1, 1, 2, 1, {1, -3}, 0);
  } else if (name == "local_p1p1") {
    g.classes = {"H", "V"};
    g.vertices.push_back({"v0", identity_frame, kAllOpen});
    g.vertices.push_back({"v1", Frame{{{-1, 0, 0}, {0, 1, 0}, {2, 0, 1}}}, kAllOpen});
    g.vertices.push_back({"v2", Frame{{{-1, 0, 0}, {0, -1, 0}, {2, 2, 1}}}, kAllOpen});
    g.vertices.push_back({"v3", Frame{{{1, 0, 0}, {0, -1, 0}, {0, 2, 1}}}, kAllOpen});
    detail::add_edge(g, "e01", 0, 0, 1, 0, {0, -2}, 0);
    detail::add_edge(g, "e03", 0, 1, 3, 1, {0, -2}, 1);
    detail::add_edge(g, "e12", 1, 1, 2, 1, {0, -2}, 1);
    detail::add_edge(g, "e32", 3, 0, 2, 0, {0, -2}, 0);
  } else {
    throw GeometryError("unknown builtin geometry '" + name + "'");
  }
  return validated(std::move(g));
}

inline bool is_builtin(const std::string& name)
{
  for (const auto& n : builtin_names())
    if (n == name)
      return true;
  return false;
}

// File format: JSON, see "Geometry files" in README.md.

inline nlohmann::json to_json(const ToricCY3& g)
{
  using nlohmann::json;
  json j;
  j["name"] = g.name;
  j["classes"] = g.classes;
  j["vertices"] = json::array();
  for (const auto& v : g.vertices) {
    json inc = json::array();
    for (int e : v.incident)
      inc.push_back(e == kOpenRay ? json("open") : json(g.edges[static_cast<std::size_t>(e)].id));
    j["vertices"].push_back({{"id", v.id}, {"frame", v.frame}, {"incident", inc}});
  }
  j["edges"] = json::array();
  for (const auto& e : g.edges)
    j["edges"].push_back({{"id", e.id},
                          {"from", {{"vertex", g.vertices[e.from].id}, {"axis", e.axis_from + 1}}},
                          {"to", {{"vertex", g.vertices[e.to].id}, {"axis", e.axis_to + 1}}},
                          {"m", e.frame.m},
                          {"mprime", e.frame.mprime},
                          {"class", g.classes[e.curve_class]}});
  return j;
}

inline std::string save(const ToricCY3& g) { return to_json(g).dump(2) + "\n"; }

namespace detail {

[[noreturn]] inline void schema_error(const std::string& where, const std::string& what)
{
  throw GeometryError("geometry file: at " + where + ": " + what);
}

inline const nlohmann::json& field(const nlohmann::json& j, const std::string& where, const char* key)
{
  if (!j.is_object())
    schema_error(where, "expected an object");
  auto it = j.find(key);
  if (it == j.end())
    schema_error(where, std::string("missing key '") + key + "'");
  return *it;
}

inline int int_field(const nlohmann::json& j, const std::string& where, const char* key)
{
  const auto& v = field(j, where, key);
  if (!v.is_number_integer())
    schema_error(where + "/" + key, "expected an integer");
  return v.get<int>();
}

inline std::string string_field(const nlohmann::json& j, const std::string& where, const char* key)
{
  const auto& v = field(j, where, key);
  if (!v.is_string())
    schema_error(where + "/" + key, "expected a string");
  return v.get<std::string>();
}

} // namespace detail

inline ToricCY3 from_json(const nlohmann::json& j)
{
  using detail::schema_error;
  ToricCY3 g;
  g.name = j.contains("name") ? detail::string_field(j, "", "name") : std::string("unnamed");

  const auto& classes = detail::field(j, "", "classes");
  if (!classes.is_array())
    schema_error("/classes", "expected an array");
  for (std::size_t i = 0; i < classes.size(); ++i) {
    if (!classes[i].is_string())
      schema_error("/classes/" + std::to_string(i), "expected a string");
    g.classes.push_back(classes[i].get<std::string>());
  }

  const auto& verts = detail::field(j, "", "vertices");
  const auto& edges = detail::field(j, "", "edges");
  if (!verts.is_array())
    schema_error("/vertices", "expected an array");
  if (!edges.is_array())
    schema_error("/edges", "expected an array");

  auto vertex_index = [&](const std::string& id, const std::string& where) {
    for (std::size_t i = 0; i < g.vertices.size(); ++i)
      if (g.vertices[i].id == id)
        return i;
    schema_error(where, "unknown vertex '" + id + "'");
  };

  for (std::size_t i = 0; i < verts.size(); ++i) {
    const std::string where = "/vertices/" + std::to_string(i);
    GeoVertex v;
    v.id = detail::string_field(verts[i], where, "id");
    const auto& fr = detail::field(verts[i], where, "frame");
    if (!fr.is_array() || fr.size() != 3)
      schema_error(where + "/frame", "expected 3 rows");
    for (std::size_t r = 0; r < 3; ++r) {
      if (!fr[r].is_array() || fr[r].size() != 3)
        schema_error(where + "/frame/" + std::to_string(r), "expected 3 integers");
      for (std::size_t c = 0; c < 3; ++c) {
        if (!fr[r][c].is_number_integer())
          schema_error(where + "/frame/" + std::to_string(r) + "/" + std::to_string(c), "expected an integer");
        v.frame[r][c] = fr[r][c].get<int>();
      }
    }
    g.vertices.push_back(std::move(v));
  }

  for (std::size_t i = 0; i < edges.size(); ++i) {
    const std::string where = "/edges/" + std::to_string(i);
    const auto& ej = edges[i];
    GeoEdge e;
    e.id = detail::string_field(ej, where, "id");
    const auto& from = detail::field(ej, where, "from");
    const auto& to = detail::field(ej, where, "to");
    e.from = vertex_index(detail::string_field(from, where + "/from", "vertex"), where + "/from/vertex");
    e.to = vertex_index(detail::string_field(to, where + "/to", "vertex"), where + "/to/vertex");
    e.axis_from = detail::int_field(from, where + "/from", "axis") - 1;
    e.axis_to = detail::int_field(to, where + "/to", "axis") - 1;
    if (e.axis_from < 0 || e.axis_from > 2)
      schema_error(where + "/from/axis", "axis must be 1, 2 or 3");
    if (e.axis_to < 0 || e.axis_to > 2)
      schema_error(where + "/to/axis", "axis must be 1, 2 or 3");
    e.frame.m = detail::int_field(ej, where, "m");
    e.frame.mprime = detail::int_field(ej, where, "mprime");
    const std::string cls = detail::string_field(ej, where, "class");
    e.curve_class = g.classes.size();
    for (std::size_t c = 0; c < g.classes.size(); ++c)
      if (g.classes[c] == cls)
        e.curve_class = c;
    if (e.curve_class == g.classes.size())
      schema_error(where + "/class", "unknown curve class '" + cls + "'");
    g.edges.push_back(std::move(e));
  }

  for (std::size_t i = 0; i < verts.size(); ++i) {
    const std::string where = "/vertices/" + std::to_string(i) + "/incident";
    const auto& inc = detail::field(verts[i], "/vertices/" + std::to_string(i), "incident");
    if (!inc.is_array() || inc.size() != 3)
      schema_error(where, "a vertex needs exactly 3 incident directions (edge ids or \"open\")");
    for (std::size_t a = 0; a < 3; ++a) {
      if (!inc[a].is_string())
        schema_error(where + "/" + std::to_string(a), "expected an edge id or \"open\"");
      const auto s = inc[a].get<std::string>();
      if (s == "open")
        continue;
      int found = kOpenRay;
      for (std::size_t e = 0; e < g.edges.size(); ++e)
        if (g.edges[e].id == s)
          found = static_cast<int>(e);
      if (found == kOpenRay)
        schema_error(where + "/" + std::to_string(a), "unknown edge '" + s + "'");
      g.vertices[i].incident[a] = found;
    }
  }
  return g;
}

inline ToricCY3 parse_geometry(const std::string& text)
{
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw GeometryError(std::string("geometry file: parse error: ") + e.what());
  }
  return validated(from_json(j));
}

inline ToricCY3 load(const std::string& path)
{
  std::ifstream in(path);
  if (!in)
    throw GeometryError("cannot open geometry file '" + path + "'");
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_geometry(ss.str());
}

/// A builtin name or a path to a geometry file.
inline ToricCY3 resolve_geometry(const std::string& spec)
{
  return is_builtin(spec) ? builtin(spec) : load(spec);
}

} // namespace toricdt

#endif // TORICDT_GEOMETRY_HPP
