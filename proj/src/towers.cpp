#include "onerel/towers.hpp"

#include <algorithm>
#include <map>
#include <sstream>

#include "onerel/tietze.hpp"

namespace onerel {

Word GroupHom::apply(const Word& w) const {
  Substitution s;
  for (std::size_t g = 0; g < images.size(); ++g) s[static_cast<GenId>(g)] = images[g];
  return substitute(w, s, target.rank());
}

GroupHom identity_hom(const Presentation& p) {
  GroupHom h{p, p, {}, Verdict::Yes};
  for (std::size_t g = 0; g < p.rank(); ++g) h.images.push_back(Word::generator(static_cast<GenId>(g)));
  return h;
}

GroupHom compose(const GroupHom& outer, const GroupHom& inner) {
  if (inner.target.rank() != outer.source.rank()) {
    throw Error(ErrorKind::InvalidArgument, "composed homomorphisms do not match");
  }
  GroupHom h{inner.source, outer.target, {}, Verdict::Unknown};
  for (const Word& w : inner.images) h.images.push_back(outer.apply(w));
  if (inner.relators_verified == Verdict::Yes && outer.relators_verified == Verdict::Yes) {
    h.relators_verified = Verdict::Yes;
  }
  return h;
}

Verdict verify_hom(GroupHom& h, const OracleBudget& budget) {
  if (h.images.size() != h.source.rank()) {
    throw Error(ErrorKind::InvalidArgument, "homomorphism needs one image per source generator");
  }
  const WordOracle oracle(h.target, budget);
  Verdict v = Verdict::Yes;
  for (const Word& r : h.source.relators) {
    const Verdict d = oracle.decide_trivial(h.apply(r)).verdict;
    if (d == Verdict::No) {
      v = Verdict::No;
      break;
    }
    if (d == Verdict::Unknown) v = Verdict::Unknown;
  }
  h.relators_verified = v;
  return v;
}

DisconnectedComplement::DisconnectedComplement(std::size_t stage, std::vector<Presentation> groups)
    : Error(ErrorKind::DisconnectedComplement,
            "complement of filtration member " + std::to_string(stage) + " has " + std::to_string(groups.size()) +
                " components"),
      stage_(stage),
      groups_(std::move(groups)) {}

namespace {

// Fundamental group of a connected subcomplex, simplified.
struct StageGroup {
  CellId base = 0;
  FundamentalGroup fg;
  TietzeResult simplified;
  std::map<GenId, CellId> edge_of;

  StageGroup(const CWComplex2& c, const Subcomplex& part, CellId b)
      : base(b), fg(restrict_to(c, part), b), simplified(tietze_simplify(fg.presentation())) {
    for (CellId e : part.edges) {
      if (auto g = fg.generator_of(e)) edge_of[*g] = e;
    }
  }

  const Presentation& group() const { return simplified.presentation; }

  // Word over the simplified generators for a path closed at `base`.
  Word read(const EdgePath& loop) const {
    Substitution s;
    const auto& images = simplified.generator_images;
    for (std::size_t g = 0; g < images.size(); ++g) s[static_cast<GenId>(g)] = images[g];
    return substitute(fg.word_of_path(loop), s, group().rank());
  }
};

EdgePath concat(EdgePath a, const EdgePath& b) {
  a.insert(a.end(), b.begin(), b.end());
  return a;
}

EdgePath reversed(const EdgePath& p) {
  EdgePath out;
  for (auto it = p.rbegin(); it != p.rend(); ++it) out.push_back(it->inverse());
  return out;
}

// Inclusion-induced hom from a subcomplex group into a larger one, moving
// the base point along the larger group's tree.
GroupHom inclusion(const CWComplex2& c, const StageGroup& inner, const StageGroup& outer) {
  GroupHom h{inner.group(), outer.group(), {}, Verdict::Unknown};
  const EdgePath to_inner = outer.fg.tree_path(inner.base);
  for (GenId k : inner.simplified.surviving) {
    const CellId e = inner.edge_of.at(k);
    const Edge& edge = c.edge(e);
    EdgePath loop = concat(inner.fg.tree_path(edge.tail), EdgePath{{e, 1}});
    loop = concat(loop, reversed(inner.fg.tree_path(edge.head)));
    h.images.push_back(outer.read(concat(concat(to_inner, loop), reversed(to_inner))));
  }
  return h;
}

void check_filtration(const CWComplex2& ball, const std::vector<Subcomplex>& filtration,
                      const std::vector<CellId>& base_ray) {
  if (base_ray.size() != filtration.size()) {
    throw Error(ErrorKind::InvalidArgument, "need one base vertex per filtration member");
  }
  for (std::size_t i = 0; i < filtration.size(); ++i) {
    if (!is_closed(ball, filtration[i])) {
      throw Error(ErrorKind::InvalidFiltration, "member " + std::to_string(i) + " is not a subcomplex");
    }
    if (i > 0 && !filtration[i].contains(filtration[i - 1])) {
      throw Error(ErrorKind::InvalidFiltration, "member " + std::to_string(i) + " does not contain its predecessor");
    }
  }
  if (components(ball, whole(ball)).size() != 1) throw Error(ErrorKind::Disconnected, "ball is disconnected");
}

StageGroup make_stage(const CWComplex2& ball, const std::vector<Subcomplex>& filtration,
                      const std::vector<CellId>& base_ray, std::size_t i) {
  const Subcomplex k = complement(ball, filtration[i]);
  if (k.vertices.empty()) throw DisconnectedComplement(i, {});
  if (filtration[i].vertices.contains(base_ray[i]) || !k.vertices.contains(base_ray[i])) {
    throw Error(ErrorKind::RayInsideFiltration,
                "base vertex " + std::to_string(base_ray[i]) + " is not outside member " + std::to_string(i));
  }
  const auto parts = components(ball, k);
  if (parts.size() > 1) {
    std::vector<Presentation> groups;
    for (const Subcomplex& part : parts) groups.push_back(StageGroup(ball, part, *part.vertices.begin()).group());
    throw DisconnectedComplement(i, std::move(groups));
  }
  return StageGroup(ball, k, base_ray[i]);
}

std::pair<Verdict, std::optional<std::size_t>> freeness(const Presentation& p) {
  const TietzeResult t = tietze_simplify(p);
  if (t.presentation.relators.empty()) return {Verdict::Yes, t.presentation.rank()};
  if (!abelian_invariants(p).torsion.empty()) return {Verdict::No, std::nullopt};
  return {Verdict::Unknown, std::nullopt};
}

AbelianInvariants cokernel(const GroupHom& h) {
  std::vector<Word> rows = h.target.relators;
  rows.insert(rows.end(), h.images.begin(), h.images.end());
  return invariants_of(exponent_matrix(rows, h.target.rank()), h.target.rank());
}

Verdict combine(Verdict acc, Verdict v) {
  if (acc == Verdict::No || v == Verdict::No) return Verdict::No;
  if (acc == Verdict::Unknown || v == Verdict::Unknown) return Verdict::Unknown;
  return Verdict::Yes;
}

}  // namespace

Tower pro_pi1(const CWComplex2& ball, const std::vector<Subcomplex>& filtration, const std::vector<CellId>& base_ray,
              const OracleBudget& budget) {
  check_filtration(ball, filtration, base_ray);
  Tower t;
  t.base_ray = base_ray;
  std::vector<StageGroup> stages;
  for (std::size_t i = 0; i < filtration.size(); ++i) {
    stages.push_back(make_stage(ball, filtration, base_ray, i));
    t.groups.push_back(stages.back().group());
  }
  for (std::size_t i = 0; i + 1 < stages.size(); ++i) {
    GroupHom h = inclusion(ball, stages[i + 1], stages[i]);
    verify_hom(h, budget);
    t.bonds.push_back(std::move(h));
  }
  return t;
}

GroupHom induced_hom(const CWComplex2& ball, const std::vector<Subcomplex>& filtration,
                     const std::vector<CellId>& base_ray, std::size_t from, std::size_t to) {
  check_filtration(ball, filtration, base_ray);
  if (from <= to || from >= filtration.size()) throw Error(ErrorKind::InvalidArgument, "need to < from < length");
  return inclusion(ball, make_stage(ball, filtration, base_ray, from), make_stage(ball, filtration, base_ray, to));
}

Verdict bond_surjective(const GroupHom& h, const OracleBudget& budget) {
  const std::size_t n = h.target.rank();
  std::vector<bool> covered(n, false);
  std::vector<Word> known = h.images;
  known.insert(known.end(), h.target.relators.begin(), h.target.relators.end());
  for (bool changed = true; changed;) {
    changed = false;
    for (const Word& w : known) {
      std::optional<GenId> lone;
      std::size_t uncovered = 0;
      for (GenId g : support(w)) {
        if (!covered[g]) {
          ++uncovered;
          lone = g;
        }
      }
      if (uncovered == 1 && occurrences(w, *lone) == 1) {
        covered[*lone] = true;
        changed = true;
      }
    }
  }
  if (std::all_of(covered.begin(), covered.end(), [](bool b) { return b; })) return Verdict::Yes;
  if (!cokernel(h).trivial()) return Verdict::No;
  // An abelian target is generated by the images once the cokernel vanishes.
  if (WordOracle(h.target, budget).abelian()) return Verdict::Yes;
  return Verdict::Unknown;
}

TowerVerdict telescopic_check(const Tower& t, const OracleBudget& budget) {
  if (t.groups.size() < 2) throw Error(ErrorKind::InvalidArgument, "a tower needs at least two stages");
  if (t.bonds.size() + 1 != t.groups.size()) throw Error(ErrorKind::InvalidArgument, "need one bond per stage pair");
  TowerVerdict v;
  Verdict overall = Verdict::Yes;
  for (std::size_t i = 0; i < t.groups.size(); ++i) {
    StageRecord rec;
    std::tie(rec.free, rec.rank) = freeness(t.groups[i]);
    if (rec.free == Verdict::No) rec.notes = "abelianization has torsion";
    if (rec.free == Verdict::Unknown) rec.notes = "relators survive simplification";
    overall = combine(overall, rec.free);
    if (i > 0) {
      const GroupHom& bond = t.bonds[i - 1];
      rec.bond_surjective = bond_surjective(bond, budget);
      Verdict evidence = *rec.bond_surjective;
      if (!cokernel(bond).trivial()) evidence = Verdict::No;
      rec.projection_evidence = evidence;
      overall = combine(overall, evidence);
      const auto& prev = v.stages.back().rank;
      if (rec.rank && prev && *rec.rank < *prev) {
        overall = Verdict::No;
        rec.notes += (rec.notes.empty() ? "" : "; ") + std::string("rank drops");
      }
    }
    v.stages.push_back(std::move(rec));
  }
  v.telescopic_evidence = overall;
  return v;
}

std::vector<Subcomplex> concentric_filtration(const Ball& ball, const CWComplex2& c,
                                              const std::vector<std::size_t>& radii) {
  std::vector<Subcomplex> out;
  for (std::size_t r : radii) {
    Subcomplex s;
    for (CellId v : c.vertices()) {
      if (ball.distance.at(v - 1) <= r) s.vertices.insert(v);
    }
    for (const auto& [id, e] : c.edges()) {
      if (s.vertices.contains(e.tail) && s.vertices.contains(e.head)) s.edges.insert(id);
    }
    for (const auto& [id, f] : c.faces()) {
      const bool inside = std::all_of(f.boundary.begin(), f.boundary.end(),
                                      [&](const OrientedEdge& oe) { return s.edges.contains(oe.edge); });
      if (inside && s.vertices.contains(f.anchor)) s.faces.insert(id);
    }
    out.push_back(std::move(s));
  }
  return out;
}

namespace {

// Shortlex-extreme vertex at maximal distance among `candidates`.
std::size_t extreme_vertex(const Ball& ball, const std::vector<std::size_t>& candidates, RayChoice choice) {
  std::size_t best = candidates.front();
  for (std::size_t v : candidates) {
    const bool better = choice == RayChoice::ShortlexMax ? ball.vertices[v] > ball.vertices[best]
                                                         : ball.vertices[v] < ball.vertices[best];
    if (better) best = v;
  }
  return best;
}

CellId prefix_vertex(const Ball& ball, std::size_t v, std::size_t length) {
  const Word& w = ball.vertices[v];
  if (length > w.size()) throw Error(ErrorKind::InvalidArgument, "ray shorter than the requested radius");
  const Word prefix = w.subword(0, length);
  const auto it = std::find(ball.vertices.begin(), ball.vertices.end(), prefix);
  return static_cast<CellId>(it - ball.vertices.begin() + 1);
}

}  // namespace

std::vector<CellId> outward_ray(const Ball& ball, const std::vector<std::size_t>& radii, RayChoice choice) {
  const std::size_t far = *std::max_element(ball.distance.begin(), ball.distance.end());
  std::vector<std::size_t> outer;
  for (std::size_t v = 0; v < ball.vertices.size(); ++v) {
    if (ball.distance[v] == far) outer.push_back(v);
  }
  const std::size_t tip = extreme_vertex(ball, outer, choice);
  std::vector<CellId> ray;
  for (std::size_t r : radii) ray.push_back(prefix_vertex(ball, tip, r + 1));
  return ray;
}

SemistabilityReport semistability_report(const Presentation& p, const std::vector<std::size_t>& radii,
                                         const OracleBudget& budget, RayChoice choice) {
  if (radii.empty() || radii.front() < 1 || !std::is_sorted(radii.begin(), radii.end()) ||
      std::adjacent_find(radii.begin(), radii.end()) != radii.end()) {
    throw Error(ErrorKind::InvalidArgument, "radii must be positive and strictly increasing");
  }
  SemistabilityReport rep;
  rep.radii = radii;
  rep.ball_radius = radii.back() + 1;
  const Ball ball = cayley_ball(p, rep.ball_radius, budget);
  rep.ball_complete = ball.complete;
  const CWComplex2 c = complex_ball(ball, FaceConvention::OnePerCycle);
  const auto filtration = concentric_filtration(ball, c, radii);

  Verdict all = Verdict::Yes;
  std::vector<StageGroup> previous;
  std::vector<Subcomplex> previous_parts;
  for (std::size_t i = 0; i < radii.size(); ++i) {
    const auto parts = components(c, complement(c, filtration[i]));
    std::vector<ComponentStage> stage;
    std::vector<StageGroup> groups;
    for (std::size_t j = 0; j < parts.size(); ++j) {
      const Subcomplex& part = parts[j];
      ComponentStage cs;
      cs.component = j;
      cs.vertices = part.vertices.size();
      std::vector<std::size_t> outer;
      for (CellId v : part.vertices) {
        if (ball.distance[v - 1] == rep.ball_radius) outer.push_back(v - 1);
      }
      cs.reaches_outer = !outer.empty();
      cs.base = cs.reaches_outer ? prefix_vertex(ball, extreme_vertex(ball, outer, choice), radii[i] + 1)
                                 : *part.vertices.begin();
      groups.emplace_back(c, part, cs.base);
      cs.group = groups.back().group();
      std::tie(cs.free, cs.rank) = freeness(cs.group);
      if (i > 0) {
        for (std::size_t k = 0; k < previous_parts.size(); ++k) {
          if (previous_parts[k].vertices.contains(cs.base)) cs.parent = k;
        }
        const GroupHom bond = inclusion(c, groups.back(), previous[*cs.parent]);
        cs.bond_surjective = bond_surjective(bond, budget);
        all = combine(all, *cs.bond_surjective);
      }
      stage.push_back(std::move(cs));
    }
    rep.stages.push_back(std::move(stage));
    previous = std::move(groups);
    previous_parts = parts;
  }
  for (const auto& cs : rep.stages.back()) rep.chains += cs.reaches_outer;
  rep.all_bonds_surjective = radii.size() > 1 ? all : Verdict::Unknown;
  if (!ball.complete) rep.note = "ball incomplete: " + std::to_string(ball.unresolved) + " unresolved queries";
  if (ball.stabilized) rep.note = "finite group: the ball exhausts it";
  return rep;
}

nlohmann::json to_json(const GroupHom& h) {
  nlohmann::json images = nlohmann::json::array();
  for (std::size_t g = 0; g < h.images.size(); ++g) {
    images.push_back({{"generator", h.source.alphabet.name(static_cast<GenId>(g))},
                      {"image", format_word(h.images[g], h.target.alphabet)}});
  }
  return {{"source", format_presentation(h.source)},
          {"target", format_presentation(h.target)},
          {"images", images},
          {"relators_verified", to_string(h.relators_verified)}};
}

nlohmann::json to_json(const Tower& t) {
  nlohmann::json groups = nlohmann::json::array(), bonds = nlohmann::json::array();
  for (const auto& g : t.groups) groups.push_back(format_presentation(g));
  for (const auto& b : t.bonds) bonds.push_back(to_json(b));
  return {{"groups", groups}, {"bonds", bonds}, {"base_ray", t.base_ray}};
}

nlohmann::json to_json(const TowerVerdict& v) {
  nlohmann::json stages = nlohmann::json::array();
  for (const auto& s : v.stages) {
    nlohmann::json j{{"free", to_string(s.free)}, {"notes", s.notes}};
    j["rank"] = s.rank ? nlohmann::json(*s.rank) : nlohmann::json("Unknown");
    if (s.bond_surjective) j["bond_surjective"] = to_string(*s.bond_surjective);
    if (s.projection_evidence) j["projection_evidence"] = to_string(*s.projection_evidence);
    stages.push_back(std::move(j));
  }
  return {{"stages", stages}, {"telescopic_evidence", to_string(v.telescopic_evidence)}};
}

nlohmann::json to_json(const SemistabilityReport& r) {
  nlohmann::json stages = nlohmann::json::array();
  for (std::size_t i = 0; i < r.stages.size(); ++i) {
    nlohmann::json comps = nlohmann::json::array();
    for (const auto& cs : r.stages[i]) {
      nlohmann::json j{{"component", cs.component},
                       {"base", cs.base},
                       {"vertices", cs.vertices},
                       {"reaches_outer", cs.reaches_outer},
                       {"group", format_presentation(cs.group)},
                       {"free", to_string(cs.free)}};
      j["rank"] = cs.rank ? nlohmann::json(*cs.rank) : nlohmann::json("Unknown");
      if (cs.parent) j["parent"] = *cs.parent;
      if (cs.bond_surjective) j["bond_surjective"] = to_string(*cs.bond_surjective);
      comps.push_back(std::move(j));
    }
    stages.push_back({{"radius", r.radii[i]}, {"components", comps}});
  }
  return {{"radii", r.radii},
          {"ball_radius", r.ball_radius},
          {"ball_complete", r.ball_complete},
          {"chains", r.chains},
          {"all_bonds_surjective", to_string(r.all_bonds_surjective)},
          {"stages", stages},
          {"note", r.note}};
}

std::string to_text(const TowerVerdict& v) {
  std::ostringstream os;
  for (std::size_t i = 0; i < v.stages.size(); ++i) {
    const auto& s = v.stages[i];
    os << "stage " << i << ": free " << to_string(s.free) << ", rank "
       << (s.rank ? std::to_string(*s.rank) : std::string("?"));
    if (s.bond_surjective) os << ", bond surjective " << to_string(*s.bond_surjective);
    if (s.projection_evidence) os << ", projection " << to_string(*s.projection_evidence);
    if (!s.notes.empty()) os << " (" << s.notes << ")";
    os << '\n';
  }
  os << "telescopic evidence at tested stages: " << to_string(v.telescopic_evidence) << '\n';
  return os.str();
}

std::string to_text(const SemistabilityReport& r) {
  std::ostringstream os;
  os << "ball radius " << r.ball_radius << (r.ball_complete ? "" : " (incomplete)") << '\n';
  for (std::size_t i = 0; i < r.stages.size(); ++i) {
    os << "radius " << r.radii[i] << ": " << r.stages[i].size() << " component(s)\n";
    for (const auto& cs : r.stages[i]) {
      os << "  #" << cs.component << " base v" << cs.base << (cs.reaches_outer ? "" : " bounded") << "  "
         << format_presentation(cs.group);
      if (cs.parent) os << "  -> #" << *cs.parent;
      if (cs.bond_surjective) os << " surjective " << to_string(*cs.bond_surjective);
      os << '\n';
    }
  }
  os << "chains reaching the outer sphere: " << r.chains << '\n';
  os << "all bonds surjective at tested stages: " << to_string(r.all_bonds_surjective) << '\n';
  if (!r.note.empty()) os << r.note << '\n';
  return os.str();
}

}  // namespace onerel
