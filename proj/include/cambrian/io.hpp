#pragma once

#include <algorithm>
#include <fstream>
#include <map>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "cambrian/coxeter.hpp"
#include "cambrian/errors.hpp"
#include "cambrian/lattice.hpp"
#include "cambrian/report.hpp"
#include "cambrian/sortable.hpp"
#include "cambrian/verifier.hpp"

namespace cambrian {

// A system definition independent of the scalar backend; callers pick the
// backend with all_labels_exact.
struct SystemSpec {
  CoxeterMatrix matrix = CoxeterMatrix(1, {{1}});
  std::vector<std::string> names;
};

inline Json load_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ValidationError("cannot open file: " + path);
  Json j;
  try {
    in >> j;
  } catch (const Json::parse_error& e) {
    throw ValidationError("invalid JSON in " + path + ": " + std::string(e.what()));
  }
  return j;
}

inline void write_text_file(const std::string& path, const std::string& text) {
  std::ofstream out(path);
  if (!out) throw ValidationError("cannot write file: " + path);
  out << text;
}

namespace detail {

inline int int_field(const Json& j, const char* key) {
  if (!j.contains(key) || !j[key].is_number_integer()) {
    throw ValidationError(std::string("expected integer field '") + key + "'");
  }
  return j[key].get<int>();
}

}  // namespace detail

// System format: {"rank": n, "names": [...], "m": [[...]]}, where the bond
// value 0 encodes infinity and the diagonal is 1.
inline SystemSpec system_from_json(const Json& j) {
  if (!j.is_object()) throw ValidationError("system definition must be a JSON object");
  SystemSpec spec;
  const int rank = detail::int_field(j, "rank");
  if (!j.contains("m") || !j["m"].is_array()) {
    throw ValidationError("system definition needs an 'm' matrix");
  }
  std::vector<std::vector<int>> rows;
  for (const Json& row : j["m"]) {
    if (!row.is_array()) throw ValidationError("'m' must be an array of integer rows");
    std::vector<int> r;
    for (const Json& entry : row) {
      if (!entry.is_number_integer()) throw ValidationError("'m' entries must be integers");
      r.push_back(entry.get<int>());
    }
    rows.push_back(std::move(r));
  }
  spec.matrix = CoxeterMatrix(rank, rows);
  if (j.contains("names")) {
    for (const Json& name : j["names"]) {
      if (!name.is_string()) throw ValidationError("'names' must be strings");
      spec.names.push_back(name.get<std::string>());
    }
  }
  return spec;
}

inline Json system_to_json(const SystemSpec& spec) {
  const int n = spec.matrix.rank();
  Json m = Json::array();
  for (int i = 0; i < n; ++i) {
    Json row = Json::array();
    for (int j = 0; j < n; ++j) row.push_back(spec.matrix.bond(i, j));
    m.push_back(std::move(row));
  }
  Json names = Json::array();
  for (int i = 0; i < n; ++i) {
    names.push_back(i < static_cast<int>(spec.names.size()) ? spec.names[static_cast<std::size_t>(i)]
                                                            : "s" + std::to_string(i));
  }
  return Json{{"rank", n}, {"names", names}, {"m", m}};
}

template <class S>
Json system_to_json(const SystemPtr<S>& sys) {
  return system_to_json(SystemSpec{sys->matrix(), sys->names()});
}

inline SystemSpec load_system(const std::string& path) { return system_from_json(load_json_file(path)); }

// Lattice format: {"labels": [...], "covers": [[lower, upper], ...]}.
inline FiniteLattice lattice_from_json(const Json& j) {
  if (!j.is_object() || !j.contains("labels") || !j.contains("covers")) {
    throw ValidationError("lattice definition needs 'labels' and 'covers'");
  }
  std::vector<std::string> labels;
  for (const Json& l : j["labels"]) {
    if (!l.is_string()) throw ValidationError("'labels' must be strings");
    labels.push_back(l.get<std::string>());
  }
  std::vector<std::pair<int, int>> covers;
  for (const Json& c : j["covers"]) {
    if (!c.is_array() || c.size() != 2 || !c[0].is_number_integer() || !c[1].is_number_integer()) {
      throw ValidationError("'covers' entries must be [lower, upper] index pairs");
    }
    covers.emplace_back(c[0].get<int>(), c[1].get<int>());
  }
  return FiniteLattice::from_covers(std::move(labels), std::move(covers));
}

inline Json lattice_to_json(const FiniteLattice& L) {
  Json labels = Json::array();
  for (const std::string& l : L.labels()) labels.push_back(l);
  Json covers = Json::array();
  for (const auto& [a, b] : L.covers()) covers.push_back(Json::array({a, b}));
  return Json{{"labels", labels}, {"covers", covers}};
}

inline FiniteLattice load_lattice(const std::string& path) {
  return lattice_from_json(load_json_file(path));
}

// Words on the command line are space- or comma-separated generator names.
inline std::vector<std::string> split_tokens(const std::string& text) {
  std::vector<std::string> out;
  std::string token;
  for (char c : text) {
    if (c == ' ' || c == ',' || c == '\t') {
      if (!token.empty()) out.push_back(std::move(token));
      token.clear();
    } else {
      token += c;
    }
  }
  if (!token.empty()) out.push_back(std::move(token));
  return out;
}

template <class S>
Word parse_word(const SystemPtr<S>& sys, const std::string& text) {
  Word word;
  for (const std::string& tok : split_tokens(text)) word.push_back(sys->generator_index(tok));
  return word;
}

template <class S>
GammaSpec parse_gamma(const SystemPtr<S>& sys, const std::string& text) {
  return make_gamma(sys, parse_word(sys, text));
}

inline Json report_json(Json instance, const PropertyReport& report) {
  return Json{{"instance", std::move(instance)}, {"verdicts", report.to_json()}};
}

// Interval JSON doubles as a lattice file: it carries top-level "labels" and
// "covers" so it can be fed back into the lattice analyzer.
template <class S>
Json interval_to_json(const CambrianInterval<S>& iv, const PropertyReport& report) {
  Json elements = Json::array();
  for (std::size_t i = 0; i < iv.elements.size(); ++i) {
    elements.push_back(Json{{"label", iv.labels[i]}, {"canonical", iv.elements[i].display()}});
  }
  Json out = lattice_to_json(iv.lattice);
  std::string gamma;
  for (std::size_t i = 0; i < iv.gamma.order.size(); ++i) {
    if (i) gamma += ' ';
    gamma += iv.sys->name(iv.gamma.order[i]);
  }
  out["instance"] = Json{{"system", system_to_json(iv.sys)},
                         {"gamma", gamma},
                         {"bottom", iv.bottom.display()},
                         {"top", iv.top.display()}};
  out["elements"] = std::move(elements);
  out["chain"] = iv.chain;
  out["verdicts"] = report.to_json();
  return out;
}

// DOT rendering: nodes ranked by element length, cover edges drawn upward,
// the sorting chain of the top drawn with penwidth=3. Output is stable for
// fixed input.
template <class S>
std::string interval_to_dot(const CambrianInterval<S>& iv) {
  std::ostringstream os;
  os << "digraph interval {\n";
  os << "  rankdir=BT;\n";
  os << "  node [shape=box];\n";
  for (std::size_t i = 0; i < iv.labels.size(); ++i) {
    os << "  " << i << " [label=\"" << iv.labels[i] << "\"];\n";
  }
  std::map<int, std::vector<std::size_t>> by_len;
  for (std::size_t i = 0; i < iv.elements.size(); ++i) {
    by_len[iv.elements[i].length()].push_back(i);
  }
  for (const auto& [len, idxs] : by_len) {
    os << "  { rank=same;";
    for (std::size_t i : idxs) os << ' ' << i << ';';
    os << " }\n";
  }
  std::vector<std::pair<int, int>> thick;
  for (std::size_t i = 0; i + 1 < iv.chain.size(); ++i) {
    thick.emplace_back(iv.chain[i], iv.chain[i + 1]);
  }
  for (const auto& [a, b] : iv.lattice.covers()) {
    os << "  " << a << " -> " << b;
    if (std::find(thick.begin(), thick.end(), std::make_pair(a, b)) != thick.end()) {
      os << " [penwidth=3]";
    }
    os << ";\n";
  }
  os << "}\n";
  return os.str();
}

// Sweep config: {"systems": [{"name", "system", "gammas": "all"|[[names]],
// "max_len", "max_elems", "max_ball", "pairs"}]}.
inline std::vector<SweepSystem> sweep_config_from_json(const Json& j) {
  if (!j.is_object() || !j.contains("systems") || !j["systems"].is_array()) {
    throw ValidationError("sweep config needs a 'systems' array");
  }
  std::vector<SweepSystem> out;
  for (const Json& item : j["systems"]) {
    SweepSystem cfg;
    if (!item.contains("name") || !item["name"].is_string()) {
      throw ValidationError("sweep system needs a 'name'");
    }
    cfg.name = item["name"].get<std::string>();
    if (!item.contains("system")) throw ValidationError("sweep system '" + cfg.name + "' needs a 'system'");
    const SystemSpec spec = system_from_json(item["system"]);
    cfg.matrix = spec.matrix;
    cfg.names = spec.names;
    if (item.contains("gammas") && !(item["gammas"].is_string() && item["gammas"] == "all")) {
      if (!item["gammas"].is_array()) {
        throw ValidationError("'gammas' must be \"all\" or an array of name lists");
      }
      cfg.all_gammas = false;
      std::vector<std::string> names = spec.names;
      if (names.empty()) {
        for (int i = 0; i < spec.matrix.rank(); ++i) names.push_back("s" + std::to_string(i));
      }
      for (const Json& g : item["gammas"]) {
        Word perm;
        for (const Json& name : g) {
          const auto it = std::find(names.begin(), names.end(), name.get<std::string>());
          if (it == names.end()) {
            throw ValidationError("unknown generator name '" + name.get<std::string>() +
                                  "' in sweep gammas");
          }
          perm.push_back(static_cast<int>(it - names.begin()));
        }
        cfg.gammas.push_back(std::move(perm));
      }
    }
    if (item.contains("max_len")) cfg.max_len = detail::int_field(item, "max_len");
    if (item.contains("max_elems")) cfg.max_elems = item["max_elems"].get<std::size_t>();
    if (item.contains("max_ball")) cfg.max_ball = item["max_ball"].get<std::size_t>();
    if (item.contains("pairs")) cfg.pairs = item["pairs"].get<bool>();
    if (cfg.max_len < 0) throw ValidationError("'max_len' must be nonnegative");
    out.push_back(std::move(cfg));
  }
  return out;
}

}  // namespace cambrian
