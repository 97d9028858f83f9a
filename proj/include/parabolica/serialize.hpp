#pragma once

// Text and JSON forms of arrangements, lattices, loops and homotopy grids.

#include <json.hpp>

#include <algorithm>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "parabolica/homotopy.hpp"
#include "parabolica/parabolic.hpp"

namespace parabolica {

using Json = nlohmann::ordered_json;

inline constexpr int kSchemaVersion = 1;

inline Json vector_json(Vector const& v) {
  Json out = Json::array();
  for (auto const& x : v) out.push_back(x.to_string());
  return out;
}

inline Json matrix_json(Matrix const& m) {
  Json out = Json::array();
  for (auto const& row : m) out.push_back(vector_json(row));
  return out;
}

// Scalars are written as polynomials in z, the field generator.
inline Json field_json(NumberField const& f) {
  std::string poly = f.polynomial_string();
  std::replace(poly.begin(), poly.end(), 'x', 'z');
  return {{"symbol", "z"}, {"value", f.generator_name()}, {"minimal_polynomial", poly}};
}

inline Json subspace_json(Subspace const& x) {
  return {{"dimension", x.dimension()},
          {"codimension", x.codimension()},
          {"basis", matrix_json(x.basis())},
          {"equations", matrix_json(x.equations())}};
}

inline Json arrangement_json(RootSystem const& rs, Arrangement const& a, int k) {
  Json subs = Json::array();
  for (std::size_t i = 0; i < a.size(); ++i) {
    Json s = subspace_json(a.subspaces[i]);
    s["type"] = a.origin_types[i];
    subs.push_back(std::move(s));
  }
  return {{"schema_version", kSchemaVersion},
          {"kind", "arrangement"},
          {"system", rs.W().system().display_name()},
          {"label", a.label},
          {"k", k},
          {"ambient_dimension", a.ambient},
          {"field", field_json(*rs.field())},
          {"subspace_count", a.size()},
          {"subspaces", std::move(subs)}};
}

inline Json lattice_json(RootSystem const& rs, IntersectionLattice const& lat, std::string const& source) {
  Json elems = Json::array();
  for (auto const& x : lat.elements) elems.push_back(subspace_json(x));
  Json covers = Json::array();
  for (auto [a, b] : lat.covers) covers.push_back({a, b});
  return {{"schema_version", kSchemaVersion},
          {"kind", "intersection_lattice"},
          {"system", rs.W().system().display_name()},
          {"source", source},
          {"field", field_json(*rs.field())},
          {"element_count", lat.size()},
          {"elements", std::move(elems)},
          {"covers", std::move(covers)}};
}

// One "q <level>" line, then one line per row: chambers as canonical words
// separated by " | ".
inline std::string grid_to_text(CoxeterGroup const& w, HomotopyGrid const& grid) {
  std::ostringstream os;
  os << "q " << grid.q << '\n';
  for (auto const& row : grid.rows) {
    for (std::size_t c = 0; c < row.size(); ++c) os << (c ? " | " : "") << w.format(row[c]);
    os << '\n';
  }
  return os.str();
}

namespace detail {

inline std::string trim(std::string_view s) {
  std::size_t a = 0;
  std::size_t b = s.size();
  while (a < b && std::isspace(static_cast<unsigned char>(s[a]))) ++a;
  while (b > a && std::isspace(static_cast<unsigned char>(s[b - 1]))) --b;
  return std::string(s.substr(a, b - a));
}

inline std::vector<std::string> split(std::string const& s, char sep) {
  std::vector<std::string> out;
  std::string cur;
  for (char c : s) {
    if (c == sep) {
      out.push_back(trim(cur));
      cur.clear();
    } else {
      cur.push_back(c);
    }
  }
  out.push_back(trim(cur));
  return out;
}

inline InvalidInput line_error(std::size_t line, std::string const& what) {
  return InvalidInput("line " + std::to_string(line) + ": " + what);
}

inline ElementId parse_chamber(CoxeterGroup const& w, std::string const& token, std::size_t line) {
  try {
    return w.evaluate(w.system().parse_word(token));
  } catch (InvalidInput const& e) {
    throw line_error(line, e.what());
  }
}

}  // namespace detail

inline HomotopyGrid grid_from_text(CoxeterGroup const& w, std::string const& text) {
  std::istringstream is(text);
  std::string raw;
  std::size_t line = 0;
  HomotopyGrid grid{-1, {}};
  while (std::getline(is, raw)) {
    ++line;
    std::string const s = detail::trim(raw);
    if (s.empty() || s[0] == '#') continue;
    if (grid.q < 0) {
      std::istringstream head(s);
      std::string key;
      int q = -1;
      if (!(head >> key >> q) || key != "q" || q < 0) throw detail::line_error(line, "expected 'q <level>'");
      grid.q = q;
      continue;
    }
    Chain row;
    for (auto const& tok : detail::split(s, '|')) row.push_back(detail::parse_chamber(w, tok, line));
    if (!grid.rows.empty() && row.size() != grid.rows.front().size()) {
      throw detail::line_error(line, "row has " + std::to_string(row.size()) + " cells, expected " +
                                         std::to_string(grid.rows.front().size()));
    }
    grid.rows.push_back(std::move(row));
  }
  if (grid.q < 0) throw InvalidInput("grid file has no 'q' line");
  if (grid.rows.empty()) throw InvalidInput("grid file has no rows");
  return grid;
}

struct LoopPair {
  QLoop loop1;
  QLoop loop2;
};

// Lines "loop1: word s1 s2 s1 ..." or "loop2: chambers e; s1; e"; '#' starts
// a comment. Loops live at level n-2.
inline LoopPair parse_loop_file(CoxeterGroup const& w, std::string const& text) {
  std::istringstream is(text);
  std::string raw;
  std::size_t line = 0;
  std::optional<QLoop> loops[2];
  int const q = gallery_level(w);
  while (std::getline(is, raw)) {
    ++line;
    std::string const s = detail::trim(raw.substr(0, raw.find('#')));
    if (s.empty()) continue;
    auto const colon = s.find(':');
    if (colon == std::string::npos) throw detail::line_error(line, "expected 'loop1:' or 'loop2:'");
    std::string const name = detail::trim(s.substr(0, colon));
    int slot = name == "loop1" ? 0 : name == "loop2" ? 1 : -1;
    if (slot < 0) throw detail::line_error(line, "unknown key '" + name + "'");
    if (loops[slot]) throw detail::line_error(line, name + " given twice");
    std::istringstream body(s.substr(colon + 1));
    std::string form;
    body >> form;
    std::string rest;
    std::getline(body, rest);
    QLoop loop{q, {}};
    if (form == "word") {
      Word word;
      try {
        word = w.system().parse_word(rest);
      } catch (InvalidInput const& e) {
        throw detail::line_error(line, e.what());
      }
      if (w.evaluate(word) != kBaseChamber) {
        throw detail::line_error(line, "word " + w.system().format_word(word) + " does not close up");
      }
      loop = loop_of_word(w, word);
    } else if (form == "chambers") {
      for (auto const& tok : detail::split(rest, ';')) loop.chambers.push_back(detail::parse_chamber(w, tok, line));
      try {
        check_loop(w, loop);
      } catch (InvalidInput const& e) {
        throw detail::line_error(line, e.what());
      }
    } else {
      throw detail::line_error(line, "expected 'word' or 'chambers', got '" + form + "'");
    }
    loops[slot] = std::move(loop);
  }
  if (!loops[0] || !loops[1]) throw InvalidInput("loop file needs both loop1 and loop2");
  return {*loops[0], *loops[1]};
}

}  // namespace parabolica
