#include "onerel/cayley.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <queue>
#include <random>
#include <sstream>
#include <unordered_map>
#include <unordered_set>

#include "onerel/error.hpp"

namespace onerel {

namespace {

// Rewriting works on strings of letter order keys: x -> 2g, x^-1 -> 2g+1.
using Str = std::u16string;

Str to_str(const Word& w) {
  Str s;
  s.reserve(w.size());
  for (Letter l : w.letters()) s.push_back(static_cast<char16_t>(l.order_key()));
  return s;
}

Letter to_letter(char16_t c) { return Letter(static_cast<GenId>(c / 2), (c & 1) ? -1 : 1); }

Word to_word(const Str& s) {
  std::vector<Letter> raw;
  raw.reserve(s.size());
  for (char16_t c : s) raw.push_back(to_letter(c));
  return Word(raw);
}

bool shortlex_less(const Str& a, const Str& b) {
  if (a.size() != b.size()) return a.size() < b.size();
  return a < b;
}

// Shortlex Knuth-Bendix completion with a rule budget. Every rule is a
// consequence of the presentation, so rewriting to a common normal form
// always certifies equality; distinct normal forms certify inequality only
// once the system is confluent.
class Rewriter {
 public:
  Rewriter(std::size_t letters, std::size_t max_rules, std::size_t max_length)
      : by_last_(letters), max_rules_(max_rules), max_length_(max_length) {}

  void add_equation(const Str& a, const Str& b) { add(a, b); }

  Str reduce(const Str& w) const {
    Str out;
    std::vector<char16_t> pending(w.rbegin(), w.rend());
    while (!pending.empty()) {
      char16_t c = pending.back();
      pending.pop_back();
      out.push_back(c);
      for (std::size_t i : by_last_[c]) {
        const Rule& r = rules_[i];
        if (!r.live || r.lhs.size() > out.size()) continue;
        if (out.compare(out.size() - r.lhs.size(), r.lhs.size(), r.lhs) != 0) continue;
        out.resize(out.size() - r.lhs.size());
        pending.insert(pending.end(), r.rhs.rbegin(), r.rhs.rend());
        break;
      }
    }
    return out;
  }

  // Returns true when the system is confluent.
  bool complete() {
    const std::size_t max_created = 20 * max_rules_;
    for (;;) {
      interreduce();
      bool added = false;
      const std::size_t n = rules_.size();
      for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) {
          if (!rules_[i].live || !rules_[j].live) continue;
          const Str li = rules_[i].lhs, ri = rules_[i].rhs;
          const Str lj = rules_[j].lhs, rj = rules_[j].rhs;
          const std::size_t top = std::min(li.size(), lj.size());
          for (std::size_t k = 1; k < top; ++k) {
            if (li.compare(li.size() - k, k, lj, 0, k) != 0) continue;
            if (add(ri + lj.substr(k), li.substr(0, li.size() - k) + rj)) added = true;
            if (live_ > max_rules_ || rules_.size() > max_created) return false;
          }
        }
      }
      if (!added) return !truncated_;
    }
  }

  std::size_t size() const { return live_; }

 private:
  struct Rule {
    Str lhs;
    Str rhs;
    bool live = true;
  };

  bool add(const Str& a, const Str& b) {
    Str x = reduce(a);
    Str y = reduce(b);
    if (x == y) return false;
    if (shortlex_less(x, y)) std::swap(x, y);
    if (x.size() > max_length_) {
      truncated_ = true;
      return false;
    }
    rules_.push_back({x, y, true});
    by_last_[x.back()].push_back(rules_.size() - 1);
    ++live_;
    return true;
  }

  bool reducible_by_other(const Str& s, std::size_t self) const {
    for (std::size_t end = 1; end <= s.size(); ++end) {
      for (std::size_t i : by_last_[s[end - 1]]) {
        const Rule& r = rules_[i];
        if (i == self || !r.live || r.lhs.size() > end) continue;
        if (s.compare(end - r.lhs.size(), r.lhs.size(), r.lhs) == 0) return true;
      }
    }
    return false;
  }

  void interreduce() {
    bool changed = true;
    while (changed) {
      changed = false;
      for (std::size_t i = 0; i < rules_.size(); ++i) {
        if (!rules_[i].live) continue;
        if (reducible_by_other(rules_[i].lhs, i)) {
          rules_[i].live = false;
          --live_;
          add(rules_[i].lhs, rules_[i].rhs);
          changed = true;
          continue;
        }
        Str rhs = reduce(rules_[i].rhs);
        if (rhs != rules_[i].rhs) {
          rules_[i].rhs = std::move(rhs);
          changed = true;
        }
      }
    }
  }

  std::vector<Rule> rules_;
  std::vector<std::vector<std::size_t>> by_last_;
  std::size_t live_ = 0;
  std::size_t max_rules_;
  std::size_t max_length_;
  bool truncated_ = false;
};

using Perm = std::vector<std::uint8_t>;

std::vector<std::size_t> cycle_type(const Perm& p) {
  std::vector<std::size_t> lengths;
  std::vector<bool> seen(p.size());
  for (std::size_t i = 0; i < p.size(); ++i) {
    std::size_t len = 0;
    for (std::size_t j = i; !seen[j]; j = p[j]) {
      seen[j] = true;
      ++len;
    }
    if (len) lengths.push_back(len);
  }
  std::sort(lengths.begin(), lengths.end());
  return lengths;
}

Perm identity_perm(std::size_t n) {
  Perm p(n);
  std::iota(p.begin(), p.end(), std::uint8_t{0});
  return p;
}

Perm inverse_perm(const Perm& p) {
  Perm q(p.size());
  for (std::size_t i = 0; i < p.size(); ++i) q[p[i]] = static_cast<std::uint8_t>(i);
  return q;
}

// Image of a word, acting on the right: letters are applied in order.
Perm evaluate(const PermutationRep& rep, const std::vector<Perm>& inverses, const Word& w) {
  Perm cur = identity_perm(rep.degree);
  for (Letter l : w.letters()) {
    const Perm& g = l.sign() > 0 ? rep.images[l.gen()] : inverses[l.gen()];
    for (auto& x : cur) x = g[x];
  }
  return cur;
}

struct Symmetrized {
  std::vector<Word> entries;  // with repeats, one per position
  std::vector<Word> distinct;
};

Symmetrized symmetrize(const std::vector<Word>& relators) {
  Symmetrized s;
  std::set<Word> seen;
  for (const Word& r : relators) {
    if (r.empty()) continue;
    const Word core = cyclic_reduce(r).core;
    for (const Word& base : {core, core.inverse()}) {
      for (std::size_t k = 0; k < base.size(); ++k) {
        Word rot = base.rotated(k);
        s.entries.push_back(rot);
        if (seen.insert(rot).second) s.distinct.push_back(rot);
      }
    }
  }
  return s;
}

std::size_t common_prefix(const Word& a, const Word& b) {
  std::size_t n = std::min(a.size(), b.size()), k = 0;
  while (k < n && a[k] == b[k]) ++k;
  return k;
}

bool pieces_below(const std::vector<Word>& entries, long num, long den) {
  for (std::size_t i = 0; i < entries.size(); ++i) {
    for (std::size_t j = i + 1; j < entries.size(); ++j) {
      const long piece = static_cast<long>(common_prefix(entries[i], entries[j]));
      const long li = static_cast<long>(entries[i].size());
      const long lj = static_cast<long>(entries[j].size());
      if (piece * den >= num * li || piece * den >= num * lj) return false;
    }
  }
  return true;
}

std::int64_t to_i64(const BigInt& x) { return x.convert_to<std::int64_t>(); }

}  // namespace

std::string to_string(Method m) {
  switch (m) {
    case Method::FreeReduction: return "free-reduction";
    case Method::Abelianization: return "abelian-filter";
    case Method::Quotient: return "finite-quotient";
    case Method::Rewriting: return "rewriting";
    case Method::Dehn: return "dehn-small-cancellation";
    case Method::AbelianMode: return "abelian-mode";
    case Method::Search: return "relator-insertion-search";
    case Method::None: return "none";
  }
  return "none";
}

struct WordOracle::Impl {
  Presentation p;
  OracleBudget budget;
  AbelianMap abelian_map;
  Symmetrized sym;
  std::size_t max_relator = 0;
  std::optional<Rewriter> rewriter;
  bool confluent = false;
  bool dehn = false;
  std::vector<std::pair<Str, Str>> dehn_rules;
  std::vector<PermutationRep> quotients;
  std::vector<std::vector<Perm>> quotient_inverses;
  bool abelian_mode = false;

  Impl(const Presentation& pres, OracleBudget b) : p(pres), budget(b), abelian_map(pres) {
    sym = symmetrize(p.relators);
    for (const Word& r : p.relators) max_relator = std::max(max_relator, cyclic_reduce(r).core.size());
    if (budget.methods.rewriting) build_rewriter();
    if (budget.methods.dehn && !sym.entries.empty() && pieces_below(sym.entries, 1, 6)) {
      dehn = true;
      for (const Word& s : sym.distinct) {
        for (std::size_t k = s.size() / 2 + 1; k <= s.size(); ++k) {
          dehn_rules.emplace_back(to_str(s.subword(0, k)), to_str(s.subword(k, s.size() - k).inverse()));
        }
      }
    }
    if (!confluent && budget.methods.finite_quotients) find_quotients();
    detect_abelian();
  }

  void build_rewriter() {
    const std::size_t letters = 2 * p.rank();
    rewriter.emplace(std::max<std::size_t>(letters, 1), budget.max_rules, 2 * max_relator + 4);
    for (std::size_t c = 0; c < letters; c += 2) {
      rewriter->add_equation(Str{static_cast<char16_t>(c), static_cast<char16_t>(c + 1)}, Str{});
      rewriter->add_equation(Str{static_cast<char16_t>(c + 1), static_cast<char16_t>(c)}, Str{});
    }
    for (const Word& s : sym.distinct) {
      for (std::size_t k = (s.size() + 1) / 2; k <= s.size(); ++k) {
        rewriter->add_equation(to_str(s.subword(0, k)), to_str(s.subword(k, s.size() - k).inverse()));
      }
    }
    confluent = rewriter->complete();
  }

  // Homomorphisms to S_3..S_7. The first generator runs over one
  // permutation per cycle type, which loses nothing up to conjugacy; the
  // others are enumerated when that is cheap and sampled otherwise.
  void find_quotients() {
    const std::size_t rank = p.rank();
    if (rank == 0) return;
    std::mt19937_64 rng(budget.seed);
    constexpr double kAttempts = 100000;
    constexpr std::size_t kPerDegree = 24;
    for (std::size_t n = 3; n <= 7; ++n) {
      std::vector<Perm> perms;
      Perm cur = identity_perm(n);
      do perms.push_back(cur);
      while (std::next_permutation(cur.begin(), cur.end()));
      std::vector<Perm> class_reps;
      std::set<std::vector<std::size_t>> types;
      for (const Perm& q : perms) {
        if (types.insert(cycle_type(q)).second) class_reps.push_back(q);
      }

      double total = static_cast<double>(class_reps.size());
      for (std::size_t g = 1; g < rank; ++g) total *= static_cast<double>(perms.size());
      const bool exhaustive = total <= kAttempts;
      const auto attempts = static_cast<std::size_t>(exhaustive ? total : kAttempts);
      std::uniform_int_distribution<std::size_t> pick(0, perms.size() - 1);
      std::uniform_int_distribution<std::size_t> pick_class(0, class_reps.size() - 1);
      std::set<std::vector<Perm>> seen;
      const Perm id = identity_perm(n);
      std::size_t found = 0;
      for (std::size_t t = 0; t < attempts && found < kPerDegree; ++t) {
        PermutationRep rep{n, {}};
        std::size_t code = t;
        for (std::size_t g = 0; g < rank; ++g) {
          const std::size_t base = g == 0 ? class_reps.size() : perms.size();
          const std::size_t idx = exhaustive ? code % base : (g == 0 ? pick_class(rng) : pick(rng));
          code /= base;
          rep.images.push_back(g == 0 ? class_reps[idx] : perms[idx]);
        }
        if (std::all_of(rep.images.begin(), rep.images.end(), [&](const Perm& q) { return q == id; })) continue;
        std::vector<Perm> inv;
        for (const Perm& q : rep.images) inv.push_back(inverse_perm(q));
        const bool ok = std::all_of(p.relators.begin(), p.relators.end(),
                                    [&](const Word& r) { return evaluate(rep, inv, r) == id; });
        if (!ok || !seen.insert(rep.images).second) continue;
        quotients.push_back(std::move(rep));
        quotient_inverses.push_back(std::move(inv));
        ++found;
      }
    }
  }

  void detect_abelian() {
    const std::size_t rank = p.rank();
    if (rank <= 1) {
      abelian_mode = true;
      return;
    }
    for (std::size_t g = 0; g < rank; ++g) {
      for (std::size_t h = g + 1; h < rank; ++h) {
        const Word x = Word::generator(static_cast<GenId>(g));
        const Word y = Word::generator(static_cast<GenId>(h));
        const Word comm = x * y * x.inverse() * y.inverse();
        for (std::size_t i = 0; i < quotients.size(); ++i) {
          if (evaluate(quotients[i], quotient_inverses[i], comm) != identity_perm(quotients[i].degree)) return;
        }
        if (rewriter && rewriter->reduce(to_str(comm)).empty()) continue;
        if (confluent) return;
        if (dehn) {
          if (dehn_reduce(comm).empty()) continue;
          return;
        }
        if (!budget.methods.search) return;
        OracleBudget small = budget;
        small.max_states = std::min<std::size_t>(budget.max_states, 20000);
        if (search(comm, small).verdict != Verdict::Yes) return;
      }
    }
    abelian_mode = true;
  }

  Word dehn_reduce(const Word& w) const {
    Str s = to_str(w);
    bool changed = true;
    while (changed) {
      changed = false;
      for (const auto& [lhs, rhs] : dehn_rules) {
        std::size_t at = s.find(lhs);
        if (at == Str::npos) continue;
        s = to_str(to_word(s.substr(0, at) + rhs + s.substr(at + lhs.size())));
        changed = true;
        break;
      }
    }
    return to_word(s);
  }

  bool quotient_separates(const Word& w) const {
    for (std::size_t i = 0; i < quotients.size(); ++i) {
      if (evaluate(quotients[i], quotient_inverses[i], w) != identity_perm(quotients[i].degree)) return true;
    }
    return false;
  }

  Decision search(const Word& w, const OracleBudget& b) const {
    const std::size_t max_length = b.max_length.value_or(4 * max_relator + 2 * w.size());
    struct Node {
      Word word;
      std::size_t parent;
      InsertionStep step;
    };
    std::vector<Node> nodes{{w, 0, {}}};
    std::unordered_set<Word, WordHash> seen{w};
    using Entry = std::pair<std::size_t, std::size_t>;
    std::priority_queue<Entry, std::vector<Entry>, std::greater<>> open;
    open.emplace(w.size(), 0);
    while (!open.empty()) {
      const std::size_t idx = open.top().second;
      open.pop();
      const Word cur = nodes[idx].word;
      for (std::size_t pos = 0; pos <= cur.size(); ++pos) {
        for (const Word& s : sym.distinct) {
          const bool touches =
              (pos > 0 && cur[pos - 1].cancels(s.front())) || (pos < cur.size() && s.back().cancels(cur[pos]));
          if (!touches) continue;
          Word next = cur.subword(0, pos) * s * cur.subword(pos, cur.size() - pos);
          if (next.size() > max_length || seen.contains(next)) continue;
          seen.insert(next);
          nodes.push_back({next, idx, {pos, s}});
          if (next.empty()) {
            Decision d{Verdict::Yes, Method::Search, {}};
            for (std::size_t at = nodes.size() - 1; at != 0; at = nodes[at].parent) {
              d.insertions.push_back(nodes[at].step);
            }
            std::reverse(d.insertions.begin(), d.insertions.end());
            return d;
          }
          if (nodes.size() >= b.max_states) return {};
          open.emplace(next.size(), nodes.size() - 1);
        }
      }
    }
    return {};
  }

  Decision decide(const Word& w) const {
    const OracleMethods& m = budget.methods;
    if (w.empty()) return {Verdict::Yes, Method::FreeReduction, {}};
    if (m.abelian_filter) {
      for (const BigInt& x : abelian_map.image(w)) {
        if (x != 0) return {Verdict::No, Method::Abelianization, {}};
      }
    }
    if (m.finite_quotients && quotient_separates(w)) return {Verdict::No, Method::Quotient, {}};
    if (rewriter) {
      if (rewriter->reduce(to_str(w)).empty()) return {Verdict::Yes, Method::Rewriting, {}};
      if (confluent) return {Verdict::No, Method::Rewriting, {}};
    }
    if (dehn) return {dehn_reduce(w).empty() ? Verdict::Yes : Verdict::No, Method::Dehn, {}};
    if (abelian_mode) {
      const auto img = abelian_map.image(w);
      const bool zero = std::all_of(img.begin(), img.end(), [](const BigInt& x) { return x == 0; });
      return {zero ? Verdict::Yes : Verdict::No, Method::AbelianMode, {}};
    }
    if (m.search) return search(w, budget);
    return {};
  }
};

WordOracle::WordOracle(const Presentation& p, OracleBudget budget)
    : impl_(std::make_unique<Impl>(p, budget)) {}
WordOracle::~WordOracle() = default;
WordOracle::WordOracle(WordOracle&&) noexcept = default;
WordOracle& WordOracle::operator=(WordOracle&&) noexcept = default;

Decision WordOracle::decide_trivial(const Word& w) const { return impl_->decide(w); }

Decision WordOracle::decide_equal(const Word& a, const Word& b) const {
  return impl_->decide(a * b.inverse());
}

std::optional<std::vector<std::int64_t>> WordOracle::canonical_key(const Word& w) const {
  if (impl_->confluent) {
    const Str nf = impl_->rewriter->reduce(to_str(w));
    return std::vector<std::int64_t>(nf.begin(), nf.end());
  }
  if (impl_->abelian_mode) {
    std::vector<std::int64_t> key;
    for (const BigInt& x : impl_->abelian_map.image(w)) key.push_back(to_i64(x));
    return key;
  }
  return std::nullopt;
}

std::vector<std::int64_t> WordOracle::signature(const Word& w) const {
  std::vector<std::int64_t> sig;
  for (const BigInt& x : impl_->abelian_map.image(w)) sig.push_back(to_i64(x));
  for (std::size_t i = 0; i < impl_->quotients.size(); ++i) {
    for (std::uint8_t x : evaluate(impl_->quotients[i], impl_->quotient_inverses[i], w)) sig.push_back(x);
  }
  return sig;
}

Word WordOracle::rewrite(const Word& w) const {
  return impl_->rewriter ? to_word(impl_->rewriter->reduce(to_str(w))) : w;
}

bool WordOracle::exact() const { return impl_->confluent || impl_->abelian_mode; }
bool WordOracle::confluent() const { return impl_->confluent; }
bool WordOracle::abelian() const { return impl_->abelian_mode; }
bool WordOracle::small_cancellation() const { return impl_->dehn; }
std::size_t WordOracle::rule_count() const { return impl_->rewriter ? impl_->rewriter->size() : 0; }
const std::vector<PermutationRep>& WordOracle::quotients() const { return impl_->quotients; }
const Presentation& WordOracle::presentation() const { return impl_->p; }
const std::vector<Word>& WordOracle::symmetrized() const { return impl_->sym.distinct; }

Verdict equal_in_group(const Presentation& p, const Word& w1, const Word& w2, const OracleBudget& budget) {
  return WordOracle(p, budget).decide_equal(w1, w2).verdict;
}

bool smallcancel_check(const Presentation& p, long num, long den) {
  if (den <= 0 || num < 0) throw Error(ErrorKind::InvalidArgument, "lambda must be a nonnegative fraction");
  const NormalizedRelator n = normalize_relator(p);
  return pieces_below(symmetrize({n.core}).entries, num, den);
}

std::size_t Ball::sphere_size(std::size_t d) const {
  return static_cast<std::size_t>(std::count(distance.begin(), distance.end(), d));
}

namespace {

std::vector<Letter> ordered_letters(std::size_t rank) {
  std::vector<Letter> out;
  for (std::size_t g = 0; g < rank; ++g) {
    out.emplace_back(static_cast<GenId>(g), 1);
    out.emplace_back(static_cast<GenId>(g), -1);
  }
  return out;
}

class BallBuilder {
 public:
  BallBuilder(const WordOracle& oracle, std::size_t r) : oracle_(oracle) {
    ball_.presentation = oracle.presentation();
    ball_.radius = r;
  }

  Ball build() {
    const std::size_t rank = ball_.presentation.rank();
    const auto letters = ordered_letters(rank);
    add_vertex(Word{}, 0);
    std::vector<std::size_t> layer{0};
    bool grew = true;
    for (std::size_t d = 0; d < ball_.radius && grew; ++d) {
      std::vector<std::size_t> next;
      for (std::size_t v : layer) {
        for (Letter l : letters) {
          const Word rep = ball_.vertices[v];
          if (!rep.empty() && rep.back().cancels(l)) continue;
          const Word cand = rep * Word{l};
          if (!resolve(cand)) next.push_back(add_vertex(cand, d + 1));
        }
      }
      grew = !next.empty();
      layer = std::move(next);
    }
    bool closed = !grew;
    if (grew) {
      closed = true;
      for (std::size_t v : layer) {
        for (Letter l : letters) {
          const Word rep = ball_.vertices[v];
          if (!rep.empty() && rep.back().cancels(l)) continue;
          if (!resolve(rep * Word{l})) closed = false;
        }
      }
    }
    for (std::size_t v = 0; v < ball_.vertices.size(); ++v) {
      for (std::size_t g = 0; g < rank; ++g) {
        const auto hit = resolve(ball_.vertices[v] * Word::generator(static_cast<GenId>(g)));
        if (!hit) continue;
        ball_.edges.push_back({static_cast<CellId>(ball_.edges.size() + 1), static_cast<CellId>(v + 1),
                               static_cast<CellId>(*hit + 1), static_cast<GenId>(g)});
      }
    }
    ball_.complete = ball_.unresolved == 0;
    ball_.stabilized = closed && ball_.complete;
    return std::move(ball_);
  }

 private:
  std::size_t add_vertex(const Word& w, std::size_t d) {
    const std::size_t idx = ball_.vertices.size();
    ball_.vertices.push_back(w);
    ball_.distance.push_back(d);
    rep_index_[w] = idx;
    if (auto key = oracle_.canonical_key(w)) {
      keys_[*key] = idx;
    } else {
      normal_forms_.emplace(oracle_.rewrite(w), idx);
      buckets_[oracle_.signature(w)].push_back(idx);
    }
    return idx;
  }

  std::optional<std::size_t> resolve(const Word& w) {
    if (auto it = rep_index_.find(w); it != rep_index_.end()) return it->second;
    if (auto it = cache_.find(w); it != cache_.end()) return it->second;
    std::optional<std::size_t> hit;
    if (auto key = oracle_.canonical_key(w)) {
      if (auto it = keys_.find(*key); it != keys_.end()) hit = it->second;
    } else if (auto it = normal_forms_.find(oracle_.rewrite(w)); it != normal_forms_.end()) {
      hit = it->second;
    } else {
      bool unknown = false;
      for (std::size_t u : buckets_[oracle_.signature(w)]) {
        const Verdict v = oracle_.decide_equal(w, ball_.vertices[u]).verdict;
        if (v == Verdict::Yes) {
          hit = u;
          break;
        }
        if (v == Verdict::Unknown) unknown = true;
      }
      if (!hit && unknown) ++ball_.unresolved;
    }
    cache_[w] = hit;
    return hit;
  }

  const WordOracle& oracle_;
  Ball ball_;
  std::unordered_map<Word, std::size_t, WordHash> rep_index_;
  std::unordered_map<Word, std::optional<std::size_t>, WordHash> cache_;
  std::map<std::vector<std::int64_t>, std::size_t> keys_;
  std::unordered_map<Word, std::size_t, WordHash> normal_forms_;
  std::map<std::vector<std::int64_t>, std::vector<std::size_t>> buckets_;
};

std::vector<std::int64_t> canonical_cycle(const EdgePath& path) {
  std::vector<std::int64_t> fwd, bwd;
  for (const auto& oe : path) fwd.push_back(oe.sign * static_cast<std::int64_t>(oe.edge));
  for (auto it = path.rbegin(); it != path.rend(); ++it) bwd.push_back(-it->sign * static_cast<std::int64_t>(it->edge));
  std::vector<std::int64_t> best;
  for (const auto* seq : {&fwd, &bwd}) {
    for (std::size_t k = 0; k < seq->size(); ++k) {
      std::vector<std::int64_t> rot(seq->begin() + static_cast<long>(k), seq->end());
      rot.insert(rot.end(), seq->begin(), seq->begin() + static_cast<long>(k));
      if (best.empty() || rot < best) best = std::move(rot);
    }
  }
  return best;
}

// Number of rotations fixing the letter sequence; s for a relator Q^s.
std::size_t rotational_symmetry(const Word& r) {
  const auto l = r.letters();
  std::size_t count = 0;
  for (std::size_t k = 0; k < l.size(); ++k) {
    bool same = true;
    for (std::size_t i = 0; i < l.size() && same; ++i) same = l[i] == l[(i + k) % l.size()];
    if (same) ++count;
  }
  return count;
}

struct UnionFind {
  explicit UnionFind(std::size_t n) : parent(n) { std::iota(parent.begin(), parent.end(), 0); }
  std::size_t find(std::size_t x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  }
  bool unite(std::size_t a, std::size_t b) {
    a = find(a);
    b = find(b);
    if (a == b) return false;
    parent[std::max(a, b)] = std::min(a, b);
    return true;
  }
  std::vector<std::size_t> parent;
};

}  // namespace

Ball cayley_ball(const Presentation& p, std::size_t r, const OracleBudget& budget) {
  WordOracle oracle(p, budget);
  return BallBuilder(oracle, r).build();
}

CWComplex2 complex_ball(const Ball& ball, FaceConvention convention) {
  CWComplex2 c;
  for (std::size_t i = 0; i < ball.vertices.size(); ++i) c.add_vertex(static_cast<CellId>(i + 1));
  std::map<std::pair<CellId, GenId>, const BallEdge*> out, in;
  for (const BallEdge& e : ball.edges) {
    c.add_edge(Edge{e.id, e.tail, e.head});
    out[{e.tail, e.generator}] = &e;
    in[{e.head, e.generator}] = &e;
  }
  for (const Word& r : ball.presentation.relators) {
    if (r.empty()) continue;
    const std::size_t copies = convention == FaceConvention::DiskLifts ? rotational_symmetry(r) : 1;
    std::set<std::vector<std::int64_t>> seen;
    for (CellId v = 1; v <= ball.vertices.size(); ++v) {
      EdgePath path;
      CellId cur = v;
      bool ok = true;
      for (Letter l : r.letters()) {
        const auto& table = l.sign() > 0 ? out : in;
        auto it = table.find({cur, l.gen()});
        if (it == table.end()) {
          ok = false;
          break;
        }
        path.push_back({it->second->id, l.sign()});
        cur = l.sign() > 0 ? it->second->head : it->second->tail;
      }
      if (!ok || cur != v || !seen.insert(canonical_cycle(path)).second) continue;
      for (std::size_t k = 0; k < copies; ++k) c.add_face(path, v);
    }
  }
  return c;
}

CWComplex2 complex_ball(const Presentation& p, std::size_t r, const OracleBudget& budget,
                        FaceConvention convention) {
  return complex_ball(cayley_ball(p, r, budget), convention);
}

std::string to_string(ProbeOutcome o) {
  switch (o) {
    case ProbeOutcome::ForestConfirmed: return "ForestConfirmed";
    case ProbeOutcome::CycleFound: return "CycleFound";
    case ProbeOutcome::Unknown: return "Unknown";
  }
  return "Unknown";
}

ProbeResult freiheitssatz_probe(const Presentation& p, const std::set<GenId>& subset, std::size_t r,
                                const OracleBudget& budget) {
  const NormalizedRelator n = normalize_relator(p);
  for (GenId g : subset) {
    if (g >= p.rank()) throw Error(ErrorKind::InvalidArgument, "subset names a generator outside the alphabet");
  }
  const auto supp = support(n.root);
  if (std::includes(subset.begin(), subset.end(), supp.begin(), supp.end())) {
    throw Error(ErrorKind::SubsetCoversRelator, "subset contains every generator of the relator");
  }
  return freiheitssatz_probe(cayley_ball(p, r, budget), subset);
}

ProbeResult freiheitssatz_probe(const Ball& ball, const std::set<GenId>& subset) {
  ProbeResult res;
  res.vertices = ball.vertices.size();
  res.ball_complete = ball.complete;
  UnionFind uf(ball.vertices.size() + 1);
  std::map<CellId, std::vector<const BallEdge*>> forest;
  for (const BallEdge& e : ball.edges) {
    if (!subset.contains(e.generator)) continue;
    ++res.edges;
    if (uf.unite(e.tail, e.head)) {
      forest[e.tail].push_back(&e);
      forest[e.head].push_back(&e);
      continue;
    }
    // Tree path from head back to tail closes the cycle.
    std::map<CellId, const BallEdge*> via;
    std::vector<CellId> stack{e.head};
    via[e.head] = nullptr;
    while (!stack.empty() && !via.contains(e.tail)) {
      CellId v = stack.back();
      stack.pop_back();
      for (const BallEdge* f : forest[v]) {
        CellId w = f->tail == v ? f->head : f->tail;
        if (via.contains(w)) continue;
        via[w] = f;
        stack.push_back(w);
      }
    }
    res.witness.push_back(e.id);
    for (CellId v = e.tail; via[v] != nullptr;) {
      const BallEdge* f = via[v];
      res.witness.push_back(f->id);
      v = f->tail == v ? f->head : f->tail;
    }
    res.outcome = ProbeOutcome::CycleFound;
    return res;
  }
  res.outcome = ball.complete ? ProbeOutcome::ForestConfirmed : ProbeOutcome::Unknown;
  return res;
}

std::string to_string(EndsClass e) {
  switch (e) {
    case EndsClass::Zero: return "Zero";
    case EndsClass::One: return "One";
    case EndsClass::Two: return "Two";
    case EndsClass::Many: return "Many";
    case EndsClass::Inconclusive: return "Inconclusive";
  }
  return "Inconclusive";
}

EndsEstimate count_ends(const Presentation& p, std::size_t r_inner, std::size_t r_outer, const OracleBudget& budget) {
  if (r_inner < 1 || r_outer <= r_inner) {
    throw Error(ErrorKind::InvalidArgument, "need 1 <= r_inner < r_outer");
  }
  const Ball ball = cayley_ball(p, r_outer, budget);
  EndsEstimate est;
  est.r_outer = r_outer;
  est.complete = ball.complete;
  est.stabilized = ball.stabilized;
  if (ball.stabilized) {
    est.classification = EndsClass::Zero;
    est.note = "finite group of order " + std::to_string(ball.vertices.size());
    return est;
  }
  for (std::size_t i = r_inner; i < r_outer; ++i) {
    UnionFind uf(ball.vertices.size());
    for (const BallEdge& e : ball.edges) {
      if (ball.distance[e.tail - 1] >= i && ball.distance[e.head - 1] >= i) uf.unite(e.tail - 1, e.head - 1);
    }
    std::set<std::size_t> roots;
    for (std::size_t v = 0; v < ball.vertices.size(); ++v) {
      if (ball.distance[v] == r_outer) roots.insert(uf.find(v));
    }
    est.readings.push_back({i, roots.size()});
  }
  if (!ball.complete) {
    est.note = std::to_string(ball.unresolved) + " equality queries unresolved";
    return est;
  }
  if (est.readings.size() < 3) {
    est.note = "fewer than three readings";
    return est;
  }
  const auto last = std::vector<EndsReading>(est.readings.end() - 3, est.readings.end());
  auto all = [&](std::size_t k) {
    return std::all_of(last.begin(), last.end(), [k](const EndsReading& x) { return x.components == k; });
  };
  if (all(1)) {
    est.classification = EndsClass::One;
  } else if (all(2)) {
    est.classification = EndsClass::Two;
  } else if (last[0].components < last[1].components && last[1].components < last[2].components) {
    est.classification = EndsClass::Many;
  } else {
    est.note = "readings did not settle";
  }
  return est;
}

nlohmann::json to_json(const Ball& ball) {
  nlohmann::json vs = nlohmann::json::array(), es = nlohmann::json::array();
  for (std::size_t i = 0; i < ball.vertices.size(); ++i) {
    vs.push_back({{"id", i + 1},
                  {"word", format_word(ball.vertices[i], ball.presentation.alphabet)},
                  {"distance", ball.distance[i]}});
  }
  for (const BallEdge& e : ball.edges) {
    es.push_back({{"id", e.id},
                  {"tail", e.tail},
                  {"head", e.head},
                  {"generator", ball.presentation.alphabet.name(e.generator)}});
  }
  return {{"presentation", format_presentation(ball.presentation)},
          {"radius", ball.radius},
          {"vertices", vs},
          {"edges", es},
          {"complete", ball.complete},
          {"unresolved", ball.unresolved},
          {"stabilized", ball.stabilized}};
}

nlohmann::json to_json(const EndsEstimate& e) {
  nlohmann::json readings = nlohmann::json::array();
  for (const auto& r : e.readings) readings.push_back({{"r_inner", r.r_inner}, {"components", r.components}});
  return {{"classification", to_string(e.classification)},
          {"r_outer", e.r_outer},
          {"readings", readings},
          {"complete", e.complete},
          {"stabilized", e.stabilized},
          {"note", e.note}};
}

nlohmann::json to_json(const ProbeResult& r) {
  return {{"outcome", to_string(r.outcome)},
          {"witness", r.witness},
          {"vertices", r.vertices},
          {"edges", r.edges},
          {"ball_complete", r.ball_complete}};
}

std::string to_dot(const Ball& ball) {
  static const char* const kColors[] = {"red", "blue", "darkgreen", "orange", "purple", "brown", "gray", "cyan"};
  std::ostringstream os;
  os << "digraph ball {\n";
  for (std::size_t i = 0; i < ball.vertices.size(); ++i) {
    os << "  v" << i + 1 << " [label=\"" << format_word(ball.vertices[i], ball.presentation.alphabet) << "\"];\n";
  }
  for (const BallEdge& e : ball.edges) {
    os << "  v" << e.tail << " -> v" << e.head << " [label=\"" << ball.presentation.alphabet.name(e.generator)
       << "\", color=" << kColors[e.generator % 8] << "];\n";
  }
  os << "}\n";
  return os.str();
}

}  // namespace onerel
