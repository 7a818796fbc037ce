#pragma once

#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

namespace cambrian {

using Json = nlohmann::json;

// Outcome of one checked property. When the property fails, witness carries
// the first counterexample found; when it holds, witness may carry summary
// data (counts, chains) useful in reports.
struct Verdict {
  bool holds = false;
  Json witness = Json::object();

  static Verdict pass(Json data = Json::object()) { return Verdict{true, std::move(data)}; }
  static Verdict fail(Json data) { return Verdict{false, std::move(data)}; }
};

// Named verdicts in insertion order.
class PropertyReport {
 public:
  void add(std::string name, Verdict v) { entries_.emplace_back(std::move(name), std::move(v)); }

  bool all_hold() const {
    for (const auto& [name, v] : entries_) {
      if (!v.holds) return false;
    }
    return true;
  }

  const std::vector<std::pair<std::string, Verdict>>& entries() const { return entries_; }

  const Verdict* find(const std::string& name) const {
    for (const auto& [n, v] : entries_) {
      if (n == name) return &v;
    }
    return nullptr;
  }

  Json to_json() const {
    Json verdicts = Json::object();
    for (const auto& [name, v] : entries_) {
      verdicts[name] = Json{{"holds", v.holds}, {"witness", v.witness}};
    }
    return verdicts;
  }

 private:
  std::vector<std::pair<std::string, Verdict>> entries_;
};

}  // namespace cambrian
