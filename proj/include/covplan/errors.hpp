#pragma once

#include <stdexcept>
#include <string>
#include <vector>

namespace covplan {

// Invalid or inconsistent user configuration. Collects all issues so the CLI
// can report them in one pass.
class ConfigError : public std::runtime_error {
 public:
  explicit ConfigError(std::vector<std::string> issues)
      : std::runtime_error(join(issues)), issues_(std::move(issues)) {}
  explicit ConfigError(std::string issue)
      : ConfigError(std::vector<std::string>{std::move(issue)}) {}

  const std::vector<std::string>& issues() const { return issues_; }

 private:
  static std::string join(const std::vector<std::string>& issues) {
    std::string out = "configuration invalid:";
    for (const auto& s : issues) {
      out += "\n  - ";
      out += s;
    }
    return out;
  }
  std::vector<std::string> issues_;
};

// The instance admits no plan (empty grid, unreachable cells, ...).
class InfeasibleError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// An iterative stage hit its iteration cap without converging.
class NonTerminatingError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace covplan
