#include "cli.hpp"

#include <cctype>
#include <charconv>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <ostream>
#include <sstream>

#include <json.hpp>

#include "onerel/cayley.hpp"
#include "onerel/cw_complex.hpp"
#include "onerel/error.hpp"
#include "onerel/magnus.hpp"
#include "onerel/presentation.hpp"
#include "onerel/towers.hpp"

namespace onerel::cli {

namespace {

using nlohmann::json;

constexpr int kOk = 0;
constexpr int kInvalid = 1;
constexpr int kUnknown = 2;

struct Output {
  std::string text;
  bool unknown = false;  // some verdict stayed Unknown for lack of budget
};

std::string read_source(const std::string& source) {
  const auto first = source.find_first_not_of(" \t\r\n");
  if (first != std::string::npos && source[first] == '<') return source;
  std::error_code ec;
  if (!std::filesystem::is_regular_file(source, ec)) return source;
  std::ifstream in(source);
  if (!in) throw Error(ErrorKind::InvalidArgument, "cannot read '" + source + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

std::size_t budget_states(const RunConfig& cfg) {
  if (cfg.budget_states > 0) return cfg.budget_states;
  if (const char* env = std::getenv("MAGNUS_BUDGET_STATES"); env && *env) {
    std::size_t value = 0;
    const char* end = env + std::char_traits<char>::length(env);
    auto [ptr, ec] = std::from_chars(env, end, value);
    if (ec != std::errc() || ptr != end || value == 0) {
      throw Error(ErrorKind::InvalidArgument, "MAGNUS_BUDGET_STATES must be a positive integer");
    }
    return value;
  }
  return kDefaultMaxStates;
}

OracleBudget make_budget(const RunConfig& cfg) {
  OracleBudget b;
  b.max_states = budget_states(cfg);
  b.max_length = cfg.budget_length;
  b.seed = cfg.seed;
  return b;
}

json invariants_json(const AbelianInvariants& inv) {
  json torsion = json::array();
  for (const BigInt& d : inv.torsion) torsion.push_back(d.str());
  return {{"free_rank", inv.free_rank}, {"torsion", torsion}, {"text", format_invariants(inv)}};
}

std::string dump(const json& j) { return j.dump(2) + "\n"; }

[[noreturn]] void no_format(const RunConfig& cfg) {
  throw Error(ErrorKind::InvalidArgument, "format not available for '" + cfg.command + "'");
}

std::vector<std::size_t> stage_radii(const RunConfig& cfg, std::size_t ball_radius) {
  if (!cfg.radii.empty()) return cfg.radii;
  std::vector<std::size_t> out;
  for (std::size_t r = 2; r < ball_radius; ++r) out.push_back(r);
  if (out.empty()) throw Error(ErrorKind::InvalidArgument, "radius too small to leave a filtration stage");
  return out;
}

RayChoice ray_choice(const RunConfig& cfg) {
  if (cfg.ray == "max") return RayChoice::ShortlexMax;
  if (cfg.ray == "min") return RayChoice::ShortlexMin;
  throw Error(ErrorKind::InvalidArgument, "ray must be 'max' or 'min'");
}

Output cmd_parse(const RunConfig& cfg, const Presentation& p) {
  if (cfg.format == Format::Text) return {format_presentation(p) + "\n"};
  if (cfg.format == Format::Dot) no_format(cfg);
  json j = to_json(p);
  j["text"] = format_presentation(p);
  j["abelianization"] = invariants_json(abelian_invariants(p));
  return {dump(j)};
}

Output cmd_normalize(const RunConfig& cfg, const Presentation& p) {
  const NormalizedRelator n = normalize_relator(p);
  const Alphabet& a = p.alphabet;
  const AbelianInvariants inv = abelian_invariants(p);
  if (cfg.format == Format::Text) {
    std::ostringstream os;
    os << "relator    " << format_word(p.relators.front(), a) << "\n"
       << "core       " << format_word(n.core, a) << "\n"
       << "root       " << format_word(n.root, a) << "\n"
       << "s          " << n.power << "\n"
       << "conjugator " << format_word(n.conjugator, a) << "\n"
       << "abelian    " << format_invariants(inv) << "\n";
    return {os.str()};
  }
  if (cfg.format == Format::Dot) no_format(cfg);
  return {dump({{"relator", format_word(p.relators.front(), a)},
                {"core", format_word(n.core, a)},
                {"root", format_word(n.root, a)},
                {"s", n.power},
                {"conjugator", format_word(n.conjugator, a)},
                {"abelian_invariants", invariants_json(inv)}})};
}

Output cmd_magnus_tree(const RunConfig& cfg, const Presentation& p) {
  const MagnusHierarchy h = build_hierarchy(p, cfg.depth_limit);
  switch (cfg.format) {
    case Format::Json: return {dump(to_json(h))};
    case Format::Dot: return {to_dot(h)};
    case Format::Text: return {to_text(h)};
  }
  return {};
}

std::string complex_summary(const CWComplex2& c) {
  std::ostringstream os;
  os << c.vertices().size() << " vertices, " << c.edges().size() << " edges, " << c.faces().size()
     << " faces, euler characteristic " << euler_characteristic(c) << "\n";
  return os.str();
}

Output cmd_complex(const RunConfig& cfg, const Presentation& p) {
  CWComplex2 c;
  json j;
  bool unknown = false;
  if (cfg.radius) {
    const Ball ball = cayley_ball(p, *cfg.radius, make_budget(cfg));
    c = complex_ball(ball);
    unknown = !ball.complete;
    j["kind"] = "ball";
    j["radius"] = *cfg.radius;
    j["complete"] = ball.complete;
  } else {
    c = standard_complex(p);
    j["kind"] = "standard";
  }
  switch (cfg.format) {
    case Format::Dot: return {to_dot(c), unknown};
    case Format::Text: return {complex_summary(c), unknown};
    case Format::Json: break;
  }
  j["presentation"] = format_presentation(p);
  j["complex"] = to_json(c);
  j["euler_characteristic"] = euler_characteristic(c);
  return {dump(j), unknown};
}

Output cmd_ball(const RunConfig& cfg, const Presentation& p) {
  const Ball ball = cayley_ball(p, cfg.radius.value_or(3), make_budget(cfg));
  const bool unknown = !ball.complete;
  switch (cfg.format) {
    case Format::Json: return {dump(to_json(ball)), unknown};
    case Format::Dot: return {to_dot(ball), unknown};
    case Format::Text: break;
  }
  std::ostringstream os;
  os << "radius " << ball.radius << ": " << ball.vertices.size() << " vertices, " << ball.edges.size() << " edges\n";
  for (std::size_t d = 0; d <= ball.radius; ++d) os << "  sphere " << d << ": " << ball.sphere_size(d) << "\n";
  os << "complete " << (ball.complete ? "yes" : "no") << ", unresolved " << ball.unresolved << ", stabilized "
     << (ball.stabilized ? "yes" : "no") << "\n";
  return {os.str(), unknown};
}

Output cmd_ends(const RunConfig& cfg, const Presentation& p) {
  const std::size_t outer = cfg.radius.value_or(6);
  const std::size_t inner = cfg.inner.value_or(outer > 4 ? outer - 4 : 1);
  const EndsEstimate e = count_ends(p, inner, outer, make_budget(cfg));
  const bool unknown = e.classification == EndsClass::Inconclusive;
  if (cfg.format == Format::Json) return {dump(to_json(e)), unknown};
  if (cfg.format == Format::Dot) no_format(cfg);
  std::ostringstream os;
  os << "ends: " << to_string(e.classification) << "\n";
  for (const auto& r : e.readings) os << "  outside B(" << r.r_inner << "): " << r.components << " component(s)\n";
  if (!e.note.empty()) os << e.note << "\n";
  return {os.str(), unknown};
}

Output cmd_freiheitssatz(const RunConfig& cfg, const Presentation& p) {
  std::set<GenId> subset;
  if (cfg.subset.empty()) {
    if (p.rank() == 0) throw Error(ErrorKind::InvalidArgument, "no generators to probe");
    subset.insert(0);
  }
  for (const std::string& name : cfg.subset) {
    const auto g = p.alphabet.find(name);
    if (!g) throw Error(ErrorKind::UnknownGenerator, "unknown generator '" + name + "'");
    subset.insert(*g);
  }
  const std::size_t radius = cfg.radius.value_or(4);
  const ProbeResult r = freiheitssatz_probe(p, subset, radius, make_budget(cfg));
  const bool unknown = r.outcome == ProbeOutcome::Unknown;
  std::vector<std::string> names;
  for (GenId g : subset) names.push_back(p.alphabet.name(g));
  if (cfg.format == Format::Json) {
    json j = to_json(r);
    j["subset"] = names;
    j["radius"] = radius;
    return {dump(j), unknown};
  }
  if (cfg.format == Format::Dot) no_format(cfg);
  std::ostringstream os;
  os << "subset {";
  for (std::size_t i = 0; i < names.size(); ++i) os << (i ? ", " : "") << names[i];
  os << "} radius " << radius << ": " << to_string(r.outcome) << " (" << r.vertices << " vertices, " << r.edges
     << " edges)\n";
  if (!r.witness.empty()) {
    os << "cycle:";
    for (CellId e : r.witness) os << " e" << e;
    os << "\n";
  }
  return {os.str(), unknown};
}

Output cmd_pro_pi1(const RunConfig& cfg, const Presentation& p) {
  const std::size_t radius = cfg.radius.value_or(6);
  const auto radii = stage_radii(cfg, radius);
  if (radii.size() < 2) throw Error(ErrorKind::InvalidArgument, "a tower needs at least two radii");
  const OracleBudget budget = make_budget(cfg);
  const Ball ball = cayley_ball(p, radius, budget);
  const CWComplex2 c = complex_ball(ball);
  const auto filtration = concentric_filtration(ball, c, radii);
  const auto ray = outward_ray(ball, radii, ray_choice(cfg));
  const Tower t = pro_pi1(c, filtration, ray, budget);
  const TowerVerdict v = telescopic_check(t, budget);
  bool unknown = !ball.complete || v.telescopic_evidence == Verdict::Unknown;
  for (const auto& b : t.bonds) unknown = unknown || b.relators_verified == Verdict::Unknown;
  if (cfg.format == Format::Text) {
    std::ostringstream os;
    for (std::size_t i = 0; i < t.groups.size(); ++i) {
      os << "G" << i << " (outside B(" << radii[i] << ")) = " << format_presentation(t.groups[i]) << "\n";
    }
    os << to_text(v);
    return {os.str(), unknown};
  }
  if (cfg.format == Format::Dot) no_format(cfg);
  return {dump({{"presentation", format_presentation(p)},
                {"ball_radius", radius},
                {"ball_complete", ball.complete},
                {"radii", radii},
                {"ray", cfg.ray},
                {"tower", to_json(t)},
                {"verdict", to_json(v)}}),
          unknown};
}

Output cmd_semistable(const RunConfig& cfg, const Presentation& p) {
  const std::size_t radius = cfg.radius.value_or(5);
  const auto radii = stage_radii(cfg, radius);
  const SemistabilityReport r = semistability_report(p, radii, make_budget(cfg), ray_choice(cfg));
  const bool unknown = !r.ball_complete || r.all_bonds_surjective == Verdict::Unknown;
  if (cfg.format == Format::Json) return {dump(to_json(r)), unknown};
  if (cfg.format == Format::Dot) no_format(cfg);
  return {to_text(r), unknown};
}

Output dispatch(const RunConfig& cfg) {
  if (cfg.radius && *cfg.radius < 1) throw Error(ErrorKind::InvalidArgument, "radius must be at least 1");
  if (cfg.budget_length && *cfg.budget_length == 0) throw Error(ErrorKind::InvalidArgument, "budgets must be positive");
  const Presentation p = parse_presentation(read_source(cfg.presentation));
  const std::string& c = cfg.command;
  if (c == "parse") return cmd_parse(cfg, p);
  if (c == "normalize") return cmd_normalize(cfg, p);
  if (c == "magnus-tree") return cmd_magnus_tree(cfg, p);
  if (c == "complex") return cmd_complex(cfg, p);
  if (c == "ball") return cmd_ball(cfg, p);
  if (c == "ends") return cmd_ends(cfg, p);
  if (c == "freiheitssatz") return cmd_freiheitssatz(cfg, p);
  if (c == "pro-pi1") return cmd_pro_pi1(cfg, p);
  if (c == "semistable") return cmd_semistable(cfg, p);
  throw Error(ErrorKind::InvalidArgument, "unknown command '" + c + "'");
}

}  // namespace

int run(const RunConfig& config, std::ostream& out, std::ostream& err) {
  try {
    const Output o = dispatch(config);
    out << o.text;
    out.flush();
    if (o.unknown) {
      err << "warning: some verdicts are Unknown within the budget\n";
      if (config.strict) return kUnknown;
    }
    return kOk;
  } catch (const SyntaxError& e) {
    err << "error: " << e.what() << "\n";
  } catch (const DisconnectedComplement& e) {
    err << "error: " << e.what() << "\n";
    for (std::size_t i = 0; i < e.groups().size(); ++i) {
      err << "  component " << i << ": " << format_presentation(e.groups()[i]) << "\n";
    }
  } catch (const DepthLimitExceeded& e) {
    err << "error: " << e.what() << " (" << e.partial().nodes.size() << " nodes built)\n";
  } catch (const Error& e) {
    err << "error: " << to_string(e.kind()) << ": " << e.what() << "\n";
  }
  return kInvalid;
}

}  // namespace onerel::cli
