#pragma once

#include <cctype>
#include <cstdlib>
#include <fstream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "dpalpha/errors.hpp"
#include "dpalpha/perm.hpp"
#include "dpalpha/perm_group.hpp"
#include "dpalpha/pipeline.hpp"
#include "dpalpha/polytope.hpp"

namespace dpa {

using json = nlohmann::json;

constexpr const char* kCacheVersion = "1";
constexpr const char* kCacheEnvVar = "DPALPHA_CACHE_DIR";

// Generator files: one permutation per line in disjoint-cycle notation,
// 1-based points; '#' starts a comment, blank lines are skipped.
inline std::vector<Perm> parse_generators(std::istream& in, int n) {
  std::vector<Perm> gens;
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    size_t a = line.find_first_not_of(" \t\r\n");
    if (a == std::string::npos) continue;
    size_t b = line.find_last_not_of(" \t\r\n");
    try {
      gens.push_back(Perm::from_cycle_string(line.substr(a, b - a + 1), n));
    } catch (const ParseError& e) {
      throw ParseError("line " + std::to_string(lineno) + ": " + e.what());
    }
  }
  return gens;
}

inline std::vector<Perm> parse_generators_file(const std::string& path, int n) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open generator file '" + path + "'");
  try {
    return parse_generators(in, n);
  } catch (const ParseError& e) {
    throw ParseError(path + ": " + e.what());
  }
}

inline PermGroup group_from_file(const std::string& path, int n) {
  return PermGroup::from_generators(parse_generators_file(path, n), n);
}

// ---- polytope files ----

inline json polytope_to_json(const HPolytope& p,
                             const std::optional<SymmetrySpec>& sym = std::nullopt) {
  json j;
  j["dim"] = p.dim;
  json rows = json::array();
  for (const auto& r : p.rows) {
    json row = json::array();
    for (const auto& x : r) row.push_back(rat_to_string(x));
    rows.push_back(std::move(row));
  }
  j["inequalities"] = std::move(rows);
  if (sym && !sym->generators.empty()) {
    json g = json::array();
    for (const auto& p2 : sym->generators) g.push_back(p2.cycle_string());
    j["symmetry"] = std::move(g);
  }
  return j;
}

inline std::pair<HPolytope, std::optional<SymmetrySpec>> polytope_from_json(const json& j) {
  if (!j.is_object() || !j.contains("dim") || !j.contains("inequalities"))
    throw ParseError("polytope JSON needs 'dim' and 'inequalities'");
  HPolytope p;
  p.dim = j.at("dim").get<int>();
  if (p.dim < 1) throw ParseError("polytope JSON: dim must be positive");
  for (const auto& row : j.at("inequalities")) {
    std::vector<Rat> r;
    for (const auto& x : row) r.push_back(rat_from_string(x.get<std::string>()));
    if (static_cast<int>(r.size()) != p.dim + 1)
      throw ParseError("polytope JSON: inequality row length must be dim+1");
    p.rows.push_back(std::move(r));
  }
  std::optional<SymmetrySpec> sym;
  if (j.contains("symmetry")) {
    SymmetrySpec s;
    for (const auto& g : j.at("symmetry"))
      s.generators.push_back(Perm::from_cycle_string(g.get<std::string>(), p.dim));
    sym = std::move(s);
  }
  return {std::move(p), std::move(sym)};
}

// Polymake-style listing: every innermost bracketed group of numbers is one
// inequality row [a0, a1, ..., an] meaning a0 + a1 x1 + ... + an xn >= 0;
// all surrounding code is ignored.
inline HPolytope polytope_from_polymake_listing(const std::string& text) {
  std::vector<std::vector<Rat>> rows;
  size_t pos = 0;
  int lineno = 1;
  auto line_of = [&](size_t p) {
    int l = 1;
    for (size_t i = 0; i < p && i < text.size(); ++i)
      if (text[i] == '\n') ++l;
    return l;
  };
  while (pos < text.size()) {
    if (text[pos] == '\n') ++lineno;
    if (text[pos] != '[') {
      ++pos;
      continue;
    }
    size_t close = text.find_first_of("[]", pos + 1);
    if (close == std::string::npos || text[close] == '[') {
      ++pos;  // not an innermost group
      continue;
    }
    std::string body = text.substr(pos + 1, close - pos - 1);
    bool numeric = body.find_first_not_of("0123456789+-/, \t\r\n") == std::string::npos &&
                   body.find_first_of("0123456789") != std::string::npos;
    if (numeric) {
      std::vector<Rat> row;
      std::stringstream ss(body);
      std::string tok;
      while (std::getline(ss, tok, ',')) {
        size_t a = tok.find_first_not_of(" \t\r\n");
        size_t b = tok.find_last_not_of(" \t\r\n");
        if (a == std::string::npos)
          throw ParseError("line " + std::to_string(line_of(pos)) + ": empty entry in row");
        row.push_back(rat_from_string(tok.substr(a, b - a + 1)));
      }
      if (!rows.empty() && rows[0].size() != row.size())
        throw ParseError("line " + std::to_string(line_of(pos)) + ": inconsistent row length");
      rows.push_back(std::move(row));
    }
    pos = close + 1;
  }
  if (rows.empty()) throw ParseError("no inequality rows found in listing");
  HPolytope p;
  p.dim = static_cast<int>(rows[0].size()) - 1;
  if (p.dim < 1) throw ParseError("inequality rows need at least two entries");
  p.rows = std::move(rows);
  return p;
}

// Reads either format: JSON if the first non-space character is '{'.
inline std::pair<HPolytope, std::optional<SymmetrySpec>> polytope_from_file(
    const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open polytope file '" + path + "'");
  std::stringstream buf;
  buf << in.rdbuf();
  std::string text = buf.str();
  size_t a = text.find_first_not_of(" \t\r\n");
  if (a != std::string::npos && text[a] == '{') {
    json j;
    try {
      j = json::parse(text);
    } catch (const json::parse_error& e) {
      throw ParseError(path + ": " + e.what());
    }
    try {
      return polytope_from_json(j);
    } catch (const ParseError& e) {
      throw ParseError(path + ": " + e.what());
    }
  }
  try {
    return {polytope_from_polymake_listing(text), std::nullopt};
  } catch (const ParseError& e) {
    throw ParseError(path + ": " + e.what());
  }
}

// ---- result serialization ----

inline std::string orbit_structure_string(const std::vector<int>& s) {
  std::string out = "[";
  for (size_t i = 0; i < s.size(); ++i) {
    if (i) out += ",";
    out += std::to_string(s[i]);
  }
  return out + "]";
}

inline json result_to_json(const AlphaResult& r) {
  json j;
  j["degree"] = r.degree;
  j["subgroup_order"] = r.subgroup_order.get_str();
  j["key"] = r.key;
  j["class_size"] = r.class_size.get_str();
  j["orbit_structure"] = r.orbit_structure;
  j["rho"] = r.rho;
  j["alpha"] = rat_to_string(r.alpha);
  if (r.degree == 3) j["case"] = r.label;
  if (!r.rho_maximal_parent.empty()) j["rho_maximal_parent"] = r.rho_maximal_parent;
  if (r.children > 0) j["children"] = r.children;
  j["millis"] = r.millis;
  if (r.polytope) j["polytope"] = polytope_to_json(*r.polytope);
  return j;
}

inline json results_to_json(const std::vector<AlphaResult>& rs) {
  json arr = json::array();
  for (const auto& r : rs) arr.push_back(result_to_json(r));
  return arr;
}

inline std::string results_to_csv(const std::vector<AlphaResult>& rs) {
  std::string out = "degree,subgroup_order,key,class_size,rho,alpha,orbit_structure,case\n";
  for (const auto& r : rs) {
    out += std::to_string(r.degree) + "," + r.subgroup_order.get_str() + ",\"" + r.key + "\"," +
           r.class_size.get_str() + "," + std::to_string(r.rho) + "," + rat_to_string(r.alpha) +
           ",\"" + orbit_structure_string(r.orbit_structure) + "\"," + r.label + "\n";
  }
  return out;
}

inline std::string results_to_text(const std::vector<AlphaResult>& rs) {
  std::ostringstream out;
  for (const auto& r : rs) {
    out << "degree " << r.degree << "  |G|=" << r.subgroup_order.get_str()
        << "  rho=" << r.rho << "  alpha=" << rat_to_string(r.alpha) << "  orbits "
        << orbit_structure_string(r.orbit_structure);
    if (!r.label.empty()) out << "  case " << r.label;
    if (r.class_size != 1) out << "  classes " << r.class_size.get_str();
    out << "\n";
  }
  return out.str();
}

// ---- subgroup-class cache ----

inline std::string cache_directory(const std::string& flag_value) {
  if (!flag_value.empty()) return flag_value;
  if (const char* env = std::getenv(kCacheEnvVar)) return env;
  return "";
}

inline json classes_to_json(int degree, const std::vector<SubgroupClassRecord>& classes) {
  json j;
  j["version"] = kCacheVersion;
  j["degree"] = degree;
  json arr = json::array();
  for (const auto& c : classes) {
    json e;
    json gens = json::array();
    for (const auto& g : c.representative.generators()) gens.push_back(g.cycle_string());
    e["generators"] = std::move(gens);
    e["class_size"] = c.class_size.get_str();
    e["orbit_structure"] = c.orbit_structure;
    e["key"] = c.key;
    arr.push_back(std::move(e));
  }
  j["classes"] = std::move(arr);
  return j;
}

inline std::vector<SubgroupClassRecord> classes_from_json(const json& j, int degree, int points) {
  if (!j.is_object() || j.value("version", "") != kCacheVersion || j.value("degree", -1) != degree)
    throw ParseError("cache entry is missing or for a different degree/version");
  std::vector<SubgroupClassRecord> out;
  for (const auto& e : j.at("classes")) {
    SubgroupClassRecord c;
    std::vector<Perm> gens;
    for (const auto& g : e.at("generators")) gens.push_back(Perm::from_cycle_string(g, points));
    c.representative = PermGroup::from_generators(gens, points);
    c.class_size = mpz_class(e.at("class_size").get<std::string>());
    c.orbit_structure = e.at("orbit_structure").get<std::vector<int>>();
    c.key = e.at("key").get<std::string>();
    out.push_back(std::move(c));
  }
  return out;
}

}  // namespace dpa
