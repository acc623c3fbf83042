#ifndef CONLAT_REPORT_HPP_
#define CONLAT_REPORT_HPP_

#include <algorithm>
#include <cstddef>
#include <string>
#include <utility>
#include <vector>

namespace conlat {

struct Check {
  std::string name;
  bool passed = false;
  std::string detail;
  std::vector<std::size_t> witness;
};

/// An ordered list of named pass/fail checks.
class Report {
 public:
  void add(std::string name, bool passed, std::string detail = {},
           std::vector<std::size_t> witness = {}) {
    checks_.push_back({std::move(name), passed, std::move(detail), std::move(witness)});
  }

  void append(Report const& other, std::string const& prefix = {}) {
    for (auto const& c : other.checks_) {
      checks_.push_back({prefix + c.name, c.passed, c.detail, c.witness});
    }
  }

  bool all_passed() const {
    return std::all_of(checks_.begin(), checks_.end(),
                       [](Check const& c) { return c.passed; });
  }

  Check const* first_failure() const {
    for (auto const& c : checks_) {
      if (!c.passed) return &c;
    }
    return nullptr;
  }

  Check const* find(std::string const& name) const {
    for (auto const& c : checks_) {
      if (c.name == name) return &c;
    }
    return nullptr;
  }

  std::vector<Check> const& checks() const noexcept { return checks_; }

  std::string to_text() const {
    std::string out;
    for (auto const& c : checks_) {
      out += c.passed ? "PASS " : "FAIL ";
      out += c.name;
      if (!c.detail.empty()) out += "  (" + c.detail + ")";
      if (!c.witness.empty()) {
        out += "  witness:";
        for (auto w : c.witness) out += " " + std::to_string(w);
      }
      out += "\n";
    }
    return out;
  }

 private:
  std::vector<Check> checks_;
};

}  // namespace conlat

#endif  // CONLAT_REPORT_HPP_
