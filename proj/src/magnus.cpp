#include "onerel/magnus.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <sstream>

namespace onerel {

std::string case_name(const CaseTag& tag) {
  switch (tag.index()) {
    case 0: return "Base";
    case 1: return "Case1";
    default: return "Case2";
  }
}

CaseTag classify_case(const Presentation& p) {
  const NormalizedRelator nr = normalize_relator(p);
  const Word& q = nr.root;
  if (q.size() == 1) return BaseCase{q[0].gen(), q[0].sign(), nr.power};
  const std::set<GenId> gens = support(q);
  for (GenId g : gens) {
    if (exponent_sum(q, g) == 0) return Case1Tag{g};
  }
  // |Q| >= 2 and no zero exponent sum: Q involves at least two generators.
  auto it = gens.begin();
  const GenId x0 = *it++;
  const GenId x1 = *it;
  return Case2Tag{x0, x1, exponent_sum(q, x0), exponent_sum(q, x1)};
}

namespace {

std::string subscripted_name(const Alphabet& alphabet, SubscriptedGenerator sg) {
  return alphabet.name(sg.original) + "@" + std::to_string(sg.subscript);
}

}  // namespace

Case1Result rewrite_case1(const Presentation& p, GenId x0) {
  const NormalizedRelator nr = normalize_relator(p);
  const Word& q = nr.root;
  if (x0 >= p.rank()) throw Error(ErrorKind::UnknownGenerator, "Case 1 generator out of range");
  if (exponent_sum(q, x0) != 0) {
    throw Error(ErrorKind::NonzeroExponentSum,
                "generator '" + p.alphabet.name(x0) + "' has exponent sum " +
                    std::to_string(exponent_sum(q, x0)));
  }

  // Lift: scan Q tracking the x0-level; each other letter is read at its level.
  std::vector<std::pair<SubscriptedGenerator, int>> lifted;
  long level = 0;
  for (Letter l : q.letters()) {
    if (l.gen() == x0) {
      level += l.sign();
    } else {
      lifted.push_back({{l.gen(), level}, l.sign()});
    }
  }

  Case1Result r;
  r.s = nr.power;
  std::set<SubscriptedGenerator> occurring;
  for (const auto& [sg, sign] : lifted) occurring.insert(sg);
  // Sort by subscript first, then by original generator.
  std::vector<SubscriptedGenerator> sorted(occurring.begin(), occurring.end());
  std::sort(sorted.begin(), sorted.end(), [](const auto& a, const auto& b) {
    return std::tie(a.subscript, a.original) < std::tie(b.subscript, b.original);
  });
  r.generators = sorted;
  std::map<SubscriptedGenerator, GenId> index;
  for (const auto& sg : sorted) index.emplace(sg, r.alphabet.add(subscripted_name(p.alphabet, sg)));

  std::vector<Letter> raw;
  raw.reserve(lifted.size());
  for (const auto& [sg, sign] : lifted) raw.emplace_back(index.at(sg), sign);
  r.rewritten = Word(std::span<const Letter>(raw));
  if (!sorted.empty()) {
    r.u = sorted.front().subscript;
    r.v = sorted.back().subscript;
  }
  return r;
}

Word expand_case1(const Case1Result& r, GenId x0) {
  Word out;
  for (Letter l : r.rewritten.letters()) {
    const SubscriptedGenerator& sg = r.generators.at(l.gen());
    const Word conj = Word::generator(x0).pow(sg.subscript);
    out *= conj * Word::generator(sg.original).pow(l.sign()) * conj.inverse();
  }
  return out;
}

std::pair<Presentation, std::vector<std::string>> case1_child(const Presentation& p, GenId x0,
                                                             const Case1Result& r) {
  Presentation child;
  std::map<SubscriptedGenerator, GenId> index;
  for (long k = r.u; k <= r.v; ++k) {
    for (GenId y = 0; y < p.rank(); ++y) {
      if (y == x0) continue;
      const SubscriptedGenerator sg{y, k};
      index.emplace(sg, child.alphabet.add(subscripted_name(p.alphabet, sg)));
    }
  }
  Substitution remap;
  for (GenId i = 0; i < r.generators.size(); ++i) {
    remap.emplace(i, Word::generator(index.at(r.generators[i])));
  }
  child.relators.push_back(substitute(r.rewritten, remap).pow(r.s));

  std::vector<std::string> free_factors;
  const std::set<GenId> used = support(child.relators.front());
  for (GenId g = 0; g < child.rank(); ++g) {
    if (!used.contains(g)) free_factors.push_back(child.alphabet.name(g));
  }
  return {std::move(child), std::move(free_factors)};
}

Word Case2Result::transport(const Word& w) const {
  const Word first = substitute(w, {{a, substitution_1()}});
  return substitute(first, {{b, substitution_2()}});
}

Case2Result rewrite_case2(const Presentation& p, GenId x0, GenId x1) {
  const NormalizedRelator nr = normalize_relator(p);
  const Word& q = nr.root;
  if (x0 >= p.rank() || x1 >= p.rank() || x0 == x1) {
    throw Error(ErrorKind::InvalidArgument, "Case 2 needs two distinct generators");
  }
  Case2Result r;
  r.p = exponent_sum(q, x0);
  r.q = exponent_sum(q, x1);
  if (r.p == 0 || r.q == 0) {
    throw Error(ErrorKind::ZeroExponentSum, "Case 2 requires nonzero exponent sums; use Case 1");
  }
  r.a = x0;
  r.b = x1;
  r.s = nr.power;

  const std::string a_name = p.alphabet.fresh_name("A");
  Alphabet taken = p.alphabet;
  taken.add(a_name);
  const std::string b_name = taken.fresh_name("B");
  for (GenId g = 0; g < p.rank(); ++g) {
    r.prime_alphabet.add(g == x0 ? a_name : p.alphabet.name(g));
    r.alphabet.add(g == x0 ? a_name : g == x1 ? b_name : p.alphabet.name(g));
  }

  r.q_prime = substitute(q, {{x0, r.substitution_1()}});
  const Word raw = substitute(r.q_prime, {{x1, r.substitution_2()}});
  CyclicReduction cr = cyclic_reduce(raw);
  r.q_double_prime = cr.core;
  r.conjugator = cr.conjugator;
  r.q_prime_primitive = primitive_root(r.q_prime).power == 1;
  r.q_double_prime_primitive = r.q_double_prime.empty() || primitive_root(r.q_double_prime).power == 1;
  return r;
}

std::size_t MagnusHierarchy::depth() const {
  std::size_t d = 0;
  for (const auto& n : nodes) d = std::max(d, n.depth);
  return d;
}

std::size_t MagnusHierarchy::height() const {
  std::size_t h = 0;
  for (const auto& n : nodes) h = std::max(h, n.height);
  return h;
}

bool MagnusHierarchy::leaves_are_base() const {
  return std::all_of(nodes.begin(), nodes.end(), [](const MagnusNode& n) {
    return !n.children.empty() || std::holds_alternative<BaseCase>(n.tag);
  });
}

DepthLimitExceeded::DepthLimitExceeded(std::size_t limit, MagnusHierarchy partial)
    : Error(ErrorKind::DepthLimitExceeded, "hierarchy deeper than " + std::to_string(limit)),
      partial_(std::move(partial)) {}

MagnusHierarchy build_hierarchy(const Presentation& p, std::size_t depth_limit) {
  MagnusHierarchy h;
  {
    MagnusNode root;
    root.presentation = p;
    root.relator = normalize_relator(p);
    root.tag = classify_case(p);
    h.nodes.push_back(std::move(root));
  }
  for (std::size_t i = 0; i < h.nodes.size(); ++i) {
    if (std::holds_alternative<BaseCase>(h.nodes[i].tag)) continue;
    const bool descends = std::holds_alternative<Case1Tag>(h.nodes[i].tag);
    if (descends && h.nodes[i].depth + 1 > depth_limit) throw DepthLimitExceeded(depth_limit, h);

    MagnusNode child;
    child.depth = h.nodes[i].depth + (descends ? 1 : 0);
    child.height = h.nodes[i].height + 1;
    MagnusNode& node = h.nodes[i];
    if (const auto* c1 = std::get_if<Case1Tag>(&node.tag)) {
      Case1Result r = rewrite_case1(node.presentation, c1->generator);
      auto [child_p, free_factors] = case1_child(node.presentation, c1->generator, r);
      node.case1 = std::move(r);
      node.free_factors = std::move(free_factors);
      child.presentation = std::move(child_p);
    } else {
      const auto& c2 = std::get<Case2Tag>(node.tag);
      Case2Result r = rewrite_case2(node.presentation, c2.x0, c2.x1);
      child.presentation.alphabet = r.alphabet;
      child.presentation.relators.push_back(r.q_double_prime.pow(r.s));
      node.case2 = std::move(r);
    }
    child.relator = normalize_relator(child.presentation);
    child.tag = classify_case(child.presentation);
    node.children.push_back(h.nodes.size());
    h.nodes.push_back(std::move(child));
  }
  return h;
}

namespace {

nlohmann::json tag_json(const CaseTag& tag, const Alphabet& alphabet) {
  nlohmann::json j;
  if (const auto* b = std::get_if<BaseCase>(&tag)) {
    j["generator"] = alphabet.name(b->generator);
    j["sign"] = b->sign;
    j["s"] = b->s;
  } else if (const auto* c1 = std::get_if<Case1Tag>(&tag)) {
    j["generator"] = alphabet.name(c1->generator);
  } else {
    const auto& c2 = std::get<Case2Tag>(tag);
    j["x0"] = alphabet.name(c2.x0);
    j["x1"] = alphabet.name(c2.x1);
    j["p"] = c2.p;
    j["q"] = c2.q;
  }
  return j;
}

nlohmann::json node_json(const MagnusHierarchy& h, std::size_t i) {
  const MagnusNode& n = h.nodes[i];
  const Alphabet& alphabet = n.presentation.alphabet;
  nlohmann::json j;
  j["case"] = case_name(n.tag);
  j["depth"] = n.depth;
  j["height"] = n.height;
  j["presentation"] = to_json(n.presentation);
  j["relator"] = format_word(n.presentation.relators.front(), alphabet);
  j["root"] = format_word(n.relator.root, alphabet);
  j["s"] = n.relator.power;
  j["tag"] = tag_json(n.tag, alphabet);
  j["substitutions"] = nlohmann::json::array();
  if (n.case1) {
    const auto& r = *n.case1;
    const GenId x0 = std::get<Case1Tag>(n.tag).generator;
    for (GenId g = 0; g < r.generators.size(); ++g) {
      const auto& sg = r.generators[g];
      const Word conj = Word::generator(x0).pow(sg.subscript);
      j["substitutions"].push_back(
          {{"generator", r.alphabet.name(g)},
           {"image", format_word(conj * Word::generator(sg.original) * conj.inverse(), alphabet)}});
    }
    j["rewritten"] = format_word(r.rewritten, r.alphabet);
    j["interval"] = {r.u, r.v};
    j["free_factors"] = n.free_factors;
  }
  if (n.case2) {
    const auto& r = *n.case2;
    const auto& c2 = std::get<Case2Tag>(n.tag);
    j["substitutions"].push_back({{"generator", alphabet.name(c2.x0)},
                                  {"image", format_word(r.substitution_1(), r.prime_alphabet)}});
    j["substitutions"].push_back({{"generator", alphabet.name(c2.x1)},
                                  {"image", format_word(r.substitution_2(), r.alphabet)}});
    j["q_prime"] = format_word(r.q_prime, r.prime_alphabet);
    j["q_double_prime"] = format_word(r.q_double_prime, r.alphabet);
    j["conjugator"] = format_word(r.conjugator, r.alphabet);
  }
  j["children"] = nlohmann::json::array();
  for (std::size_t c : n.children) j["children"].push_back(node_json(h, c));
  return j;
}

std::string node_label(const MagnusNode& n) {
  std::string label = case_name(n.tag) + "\\n" + format_word(n.presentation.relators.front(), n.presentation.alphabet);
  if (const auto* c2 = std::get_if<Case2Tag>(&n.tag)) {
    label += "\\np=" + std::to_string(c2->p) + " q=" + std::to_string(c2->q);
  }
  return label;
}

}  // namespace

nlohmann::json to_json(const MagnusHierarchy& h) {
  nlohmann::json j;
  j["depth"] = h.depth();
  j["height"] = h.height();
  j["root"] = node_json(h, 0);
  return j;
}

std::string to_dot(const MagnusHierarchy& h) {
  std::ostringstream out;
  out << "digraph magnus {\n  node [shape=box];\n";
  for (std::size_t i = 0; i < h.nodes.size(); ++i) {
    out << "  n" << i << " [label=\"" << node_label(h.nodes[i]) << "\"];\n";
  }
  for (std::size_t i = 0; i < h.nodes.size(); ++i) {
    for (std::size_t c : h.nodes[i].children) out << "  n" << i << " -> n" << c << ";\n";
  }
  out << "}\n";
  return out.str();
}

std::string to_text(const MagnusHierarchy& h) {
  std::ostringstream out;
  for (const MagnusNode& n : h.nodes) {
    out << std::string(2 * n.height, ' ') << case_name(n.tag) << "  "
        << format_presentation(n.presentation);
    if (const auto* c2 = std::get_if<Case2Tag>(&n.tag)) out << "  p=" << c2->p << " q=" << c2->q;
    if (n.case1) out << "  interval=[" << n.case1->u << "," << n.case1->v << "]";
    out << '\n';
  }
  return out.str();
}

}  // namespace onerel
