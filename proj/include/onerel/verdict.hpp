#pragma once

#include <string>

namespace onerel {

// Three-valued answer of every bounded decision procedure.
enum class Verdict { Yes, No, Unknown };

inline std::string to_string(Verdict v) {
  switch (v) {
    case Verdict::Yes: return "Yes";
    case Verdict::No: return "No";
    default: return "Unknown";
  }
}

}  // namespace onerel
