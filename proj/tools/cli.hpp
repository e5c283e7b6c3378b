#pragma once

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

namespace onerel::cli {

enum class Format { Json, Dot, Text };

struct RunConfig {
  std::string command;
  std::string presentation;  // inline text, or a path to a file holding it
  std::optional<std::size_t> radius;
  std::optional<std::size_t> inner;  // ends: first annulus radius
  std::vector<std::size_t> radii;    // pro-pi1, semistable
  std::vector<std::string> subset;   // freiheitssatz generator names
  std::string ray = "max";           // pro-pi1, semistable: max | min
  std::size_t budget_states = 0;     // 0: default or MAGNUS_BUDGET_STATES
  std::optional<std::size_t> budget_length;
  std::size_t depth_limit = 64;
  Format format = Format::Json;
  bool strict = false;
  std::uint64_t seed = 1;
};

inline const std::vector<std::string>& commands() {
  static const std::vector<std::string> names{"parse", "normalize",     "magnus-tree", "complex",   "ball",
                                              "ends",  "freiheitssatz", "pro-pi1",     "semistable"};
  return names;
}

// Exit status: 0 on success, 1 on parse or validation errors, 2 when
// --strict is set and a verdict stayed Unknown for lack of budget.
int run(const RunConfig& config, std::ostream& out, std::ostream& err);

}  // namespace onerel::cli
