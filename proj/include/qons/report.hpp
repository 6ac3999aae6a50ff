#pragma once
// Verdict bookkeeping shared by all verification suites.

#include <functional>
#include <string>
#include <vector>

#include <json.hpp>

namespace qons {

using ojson = nlohmann::ordered_json;

struct Verdict {
  std::string name;
  bool pass = true;
  std::size_t instances = 0;
  std::size_t failures = 0;
  std::string witness;  // first failing instance
  std::string note;     // e.g. "inconclusive"
};

class Report {
 public:
  Report() = default;
  explicit Report(std::string t) : title(std::move(t)) {}

  std::string title;
  std::vector<Verdict> verdicts;
  ojson data = ojson::object();

  Verdict& verdict(const std::string& name) {
    for (auto& v : verdicts)
      if (v.name == name) return v;
    verdicts.push_back(Verdict{name, true, 0, 0, {}, {}});
    return verdicts.back();
  }

  // one relation instance; the witness text is only built on failure
  void record(const std::string& name, bool ok, const std::function<std::string()>& witness = {}) {
    Verdict& v = verdict(name);
    ++v.instances;
    if (!ok) {
      ++v.failures;
      v.pass = false;
      if (v.witness.empty() && witness) v.witness = witness();
    }
  }
  void record(const std::string& name, bool ok, const std::string& witness) {
    record(name, ok, [&] { return witness; });
  }

  void inconclusive(const std::string& name, const std::string& why) {
    Verdict& v = verdict(name);
    ++v.instances;
    ++v.failures;
    v.pass = false;
    v.note = "inconclusive";
    if (v.witness.empty()) v.witness = why;
  }

  // copies verdicts of another report under a name prefix
  void merge(const Report& other, const std::string& prefix = "") {
    for (const auto& v : other.verdicts) {
      Verdict& mine = verdict(prefix + v.name);
      mine.instances += v.instances;
      mine.failures += v.failures;
      mine.pass = mine.pass && v.pass;
      if (mine.witness.empty()) mine.witness = v.witness;
      if (mine.note.empty()) mine.note = v.note;
    }
    for (const auto& [k, v] : other.data.items()) data[prefix + k] = v;
  }

  bool pass() const {
    for (const auto& v : verdicts)
      if (!v.pass) return false;
    return true;
  }

  std::string first_failure() const {
    for (const auto& v : verdicts)
      if (!v.pass) return v.name + ": " + v.witness;
    return "";
  }

  ojson to_json() const {
    ojson j = ojson::object();
    j["title"] = title;
    j["pass"] = pass();
    ojson vs = ojson::array();
    for (const auto& v : verdicts) {
      ojson e = ojson::object();
      e["name"] = v.name;
      e["pass"] = v.pass;
      e["instances"] = v.instances;
      e["failures"] = v.failures;
      if (!v.witness.empty()) e["witness"] = v.witness;
      if (!v.note.empty()) e["note"] = v.note;
      vs.push_back(e);
    }
    j["verdicts"] = vs;
    if (!data.empty()) j["data"] = data;
    return j;
  }
};

}  // namespace qons
