#pragma once

#include <array>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <string>

#include <json.hpp>

#include "hypergon/core.hpp"
#include "hypergon/polygon.hpp"

namespace hypergon {

// Shortest-exact double formatting: 17 significant digits round-trip.
inline std::string fmt_g17(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return std::string(buf);
}

// Plain-text polygon description:
//   # comment
//   auto_orient true|false      (optional, default true)
//   allow_ideal true|false      (optional, default true)
//   vertices N
//   x y                          (N lines)
struct PolygonFile {
  std::vector<std::array<double, 2>> vertices;
  bool auto_orient = true;
  bool allow_ideal = true;

  // DiskPoint conversion plus validation; IdealVertex when ideal points are
  // present but disallowed.
  HyperbolicPolygon realize() const {
    std::vector<DiskPoint> pts;
    pts.reserve(vertices.size());
    for (const std::array<double, 2>& v : vertices) {
      pts.push_back(DiskPoint::from_xy(v[0], v[1]));
    }
    if (!allow_ideal) {
      for (const DiskPoint& p : pts) {
        if (p.ideal()) {
          throw IdealVertex("input disallows ideal vertices (allow_ideal false)");
        }
      }
    }
    return validate(std::move(pts), ValidationOptions{auto_orient});
  }
};

namespace detail {

inline bool parse_bool(const std::string& word, const std::string& key) {
  if (word == "true") return true;
  if (word == "false") return false;
  throw ParseError("expected true or false after '" + key + "', got '" + word + "'");
}

}  // namespace detail

inline PolygonFile parse_polygon_text(std::istream& in) {
  PolygonFile file;
  std::string line;
  long remaining = -1;  // -1 until the vertices header arrives
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const std::size_t hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    std::istringstream ls(line);
    std::string key;
    if (!(ls >> key)) continue;
    if (remaining > 0) {
      double x, y;
      std::istringstream vs(line);
      if (!(vs >> x >> y)) {
        throw ParseError("line " + std::to_string(lineno) + ": expected 'x y'");
      }
      std::string extra;
      if (vs >> extra) {
        throw ParseError("line " + std::to_string(lineno) + ": trailing token '" +
                         extra + "'");
      }
      if (!(std::hypot(x, y) <= 1.0 + kBoundarySnapEps)) {
        throw ParseError("line " + std::to_string(lineno) +
                         ": vertex lies outside the closed unit disk");
      }
      file.vertices.push_back({x, y});
      --remaining;
      continue;
    }
    std::string word;
    if (key == "auto_orient") {
      if (!(ls >> word)) throw ParseError("auto_orient needs a value");
      file.auto_orient = detail::parse_bool(word, key);
    } else if (key == "allow_ideal") {
      if (!(ls >> word)) throw ParseError("allow_ideal needs a value");
      file.allow_ideal = detail::parse_bool(word, key);
    } else if (key == "vertices") {
      if (remaining != -1) throw ParseError("duplicate vertices header");
      long n;
      if (!(ls >> n) || n < 3) {
        throw ParseError("vertices header needs a count of at least 3");
      }
      remaining = n;
    } else {
      throw ParseError("line " + std::to_string(lineno) + ": unknown key '" + key +
                       "'");
    }
  }
  if (remaining == -1) throw ParseError("missing 'vertices N' header");
  if (remaining != 0) {
    throw ParseError("vertex count mismatch: " + std::to_string(remaining) +
                     " more vertex lines expected");
  }
  return file;
}

inline PolygonFile read_polygon_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open input file '" + path + "'");
  return parse_polygon_text(in);
}

inline void write_polygon_text(std::ostream& out, const PolygonFile& file) {
  out << "auto_orient " << (file.auto_orient ? "true" : "false") << "\n";
  out << "allow_ideal " << (file.allow_ideal ? "true" : "false") << "\n";
  out << "vertices " << file.vertices.size() << "\n";
  for (const std::array<double, 2>& v : file.vertices) {
    out << fmt_g17(v[0]) << " " << fmt_g17(v[1]) << "\n";
  }
}

namespace detail {

// Serializer for report JSON. Finite numbers print as %.17g, infinities as
// the strings "inf"/"-inf"; layout is fixed (2-space indent, ordered keys) so
// identical reports are identical bytes.
inline void dump_json(std::ostream& out, const nlohmann::ordered_json& j, int indent) {
  const std::string pad(2 * static_cast<std::size_t>(indent), ' ');
  const std::string pad_in(2 * static_cast<std::size_t>(indent + 1), ' ');
  switch (j.type()) {
    case nlohmann::ordered_json::value_t::object: {
      if (j.empty()) {
        out << "{}";
        return;
      }
      out << "{\n";
      std::size_t i = 0;
      for (auto it = j.begin(); it != j.end(); ++it, ++i) {
        out << pad_in << nlohmann::ordered_json(it.key()).dump() << ": ";
        dump_json(out, it.value(), indent + 1);
        if (i + 1 < j.size()) out << ",";
        out << "\n";
      }
      out << pad << "}";
      return;
    }
    case nlohmann::ordered_json::value_t::array: {
      if (j.empty()) {
        out << "[]";
        return;
      }
      out << "[\n";
      for (std::size_t i = 0; i < j.size(); ++i) {
        out << pad_in;
        dump_json(out, j[i], indent + 1);
        if (i + 1 < j.size()) out << ",";
        out << "\n";
      }
      out << pad << "]";
      return;
    }
    case nlohmann::ordered_json::value_t::number_float: {
      const double v = j.get<double>();
      if (std::isinf(v)) {
        out << (v > 0 ? "\"inf\"" : "\"-inf\"");
      } else {
        out << fmt_g17(v);
      }
      return;
    }
    default:
      out << j.dump();
      return;
  }
}

}  // namespace detail

inline std::string dump_report(const nlohmann::ordered_json& j) {
  std::ostringstream out;
  detail::dump_json(out, j, 0);
  out << "\n";
  return out.str();
}

}  // namespace hypergon
