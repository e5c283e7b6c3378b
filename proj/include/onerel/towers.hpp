#pragma once

// Towers of finitely presented groups and their finite-stage analysis.
//
// A tower G_0 <- G_1 <- ... has bonds[i] : G_{i+1} -> G_i. The fundamental
// pro-group of a ball window is approximated by the complements of a nested
// filtration, one stage per member, based along a ray of vertices.

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "onerel/cayley.hpp"
#include "onerel/cw_complex.hpp"
#include "onerel/error.hpp"
#include "onerel/presentation.hpp"
#include "onerel/verdict.hpp"

namespace onerel {

struct GroupHom {
  Presentation source;
  Presentation target;
  std::vector<Word> images;  // one per source generator, over the target alphabet
  // Yes when every source relator maps to a word certified trivial.
  Verdict relators_verified = Verdict::Unknown;

  Word apply(const Word& w) const;
};

GroupHom identity_hom(const Presentation& p);
// outer after inner; requires inner.target to match outer.source in rank.
GroupHom compose(const GroupHom& outer, const GroupHom& inner);
// Fills relators_verified with the bounded oracle on the target.
Verdict verify_hom(GroupHom& h, const OracleBudget& budget = {});

struct Tower {
  std::vector<Presentation> groups;
  std::vector<GroupHom> bonds;  // bonds[i] : groups[i+1] -> groups[i]
  std::vector<CellId> base_ray;
};

class DisconnectedComplement : public Error {
 public:
  DisconnectedComplement(std::size_t stage, std::vector<Presentation> groups);
  std::size_t stage() const { return stage_; }
  // Tietze-simplified group of each component, ordered by least vertex.
  const std::vector<Presentation>& groups() const { return groups_; }

 private:
  std::size_t stage_;
  std::vector<Presentation> groups_;
};

// Throws InvalidFiltration, InvalidArgument, Disconnected (ball),
// DisconnectedComplement (an empty complement reports zero components),
// RayInsideFiltration.
Tower pro_pi1(const CWComplex2& ball, const std::vector<Subcomplex>& filtration, const std::vector<CellId>& base_ray,
              const OracleBudget& budget = {});

// Hom induced by inclusion from stage `from` to stage `to` (from > to),
// with the same conventions as pro_pi1.
GroupHom induced_hom(const CWComplex2& ball, const std::vector<Subcomplex>& filtration,
                     const std::vector<CellId>& base_ray, std::size_t from, std::size_t to);

// Yes when a closure argument expresses every target generator through the
// images; No when the abelianized cokernel is nonzero; Unknown otherwise.
Verdict bond_surjective(const GroupHom& h, const OracleBudget& budget = {});

struct StageRecord {
  Verdict free = Verdict::Unknown;
  std::optional<std::size_t> rank;
  // For the bond from this stage into the previous one; absent at stage 0.
  std::optional<Verdict> bond_surjective;
  std::optional<Verdict> projection_evidence;
  std::string notes;
};

struct TowerVerdict {
  std::vector<StageRecord> stages;
  Verdict telescopic_evidence = Verdict::Unknown;
};

// Throws InvalidArgument for fewer than two stages.
TowerVerdict telescopic_check(const Tower& t, const OracleBudget& budget = {});

// Closed balls of the given radii inside complex_ball(ball).
std::vector<Subcomplex> concentric_filtration(const Ball& ball, const CWComplex2& c,
                                              const std::vector<std::size_t>& radii);

enum class RayChoice { ShortlexMax, ShortlexMin };

// Ray through the prefixes of an outer-sphere vertex: entry i is the prefix
// of length radii[i] + 1.
std::vector<CellId> outward_ray(const Ball& ball, const std::vector<std::size_t>& radii, RayChoice choice);

struct ComponentStage {
  std::size_t component = 0;
  CellId base = 0;
  std::size_t vertices = 0;
  bool reaches_outer = false;
  Presentation group;
  Verdict free = Verdict::Unknown;
  std::optional<std::size_t> rank;
  std::optional<std::size_t> parent;  // component index at the previous stage
  std::optional<Verdict> bond_surjective;
};

struct SemistabilityReport {
  std::vector<std::size_t> radii;
  std::size_t ball_radius = 0;
  bool ball_complete = true;
  std::vector<std::vector<ComponentStage>> stages;
  std::size_t chains = 0;  // components of the last stage reaching the outer sphere
  Verdict all_bonds_surjective = Verdict::Unknown;
  std::string note;
};

// Ball of radius max(radii) + 1, concentric filtration, one component chain
// per end seen at the finite stages. Throws InvalidArgument unless radii are
// strictly increasing and positive.
SemistabilityReport semistability_report(const Presentation& p, const std::vector<std::size_t>& radii,
                                         const OracleBudget& budget = {},
                                         RayChoice choice = RayChoice::ShortlexMax);

nlohmann::json to_json(const GroupHom& h);
nlohmann::json to_json(const Tower& t);
nlohmann::json to_json(const TowerVerdict& v);
nlohmann::json to_json(const SemistabilityReport& r);
std::string to_text(const TowerVerdict& v);
std::string to_text(const SemistabilityReport& r);

}  // namespace onerel
