#include "onerel/word.hpp"

#include <algorithm>
#include <cctype>
#include <cstdlib>

#include "onerel/error.hpp"

namespace onerel {

Word free_reduce(std::span<const Letter> raw) { return Word(raw); }

Word::Word(std::span<const Letter> raw) {
  letters_.reserve(raw.size());
  for (Letter l : raw) {
    if (!letters_.empty() && letters_.back().cancels(l)) {
      letters_.pop_back();
    } else {
      letters_.push_back(l);
    }
  }
}

Word::Word(std::initializer_list<Letter> raw)
    : Word(std::span<const Letter>(raw.begin(), raw.size())) {}

Word Word::generator(GenId g, int power) {
  Word w;
  const Letter l(g, power >= 0 ? 1 : -1);
  w.letters_.assign(static_cast<std::size_t>(std::abs(power)), l);
  return w;
}

Word Word::inverse() const {
  Word w;
  w.letters_.reserve(letters_.size());
  for (auto it = letters_.rbegin(); it != letters_.rend(); ++it) {
    w.letters_.push_back(it->inverse());
  }
  return w;
}

Word Word::pow(long n) const {
  const Word base = n >= 0 ? *this : inverse();
  Word out;
  for (long i = 0; i < (n >= 0 ? n : -n); ++i) out *= base;
  return out;
}

Word Word::rotated(std::size_t k) const {
  if (letters_.empty()) return *this;
  k %= letters_.size();
  std::vector<Letter> raw(letters_.begin() + static_cast<long>(k), letters_.end());
  raw.insert(raw.end(), letters_.begin(), letters_.begin() + static_cast<long>(k));
  return Word(std::span<const Letter>(raw));
}

Word Word::subword(std::size_t pos, std::size_t len) const {
  Word w;
  w.letters_.assign(letters_.begin() + static_cast<long>(pos),
                    letters_.begin() + static_cast<long>(pos + len));
  return w;
}

Word& Word::operator*=(const Word& rhs) {
  std::size_t i = 0;
  while (i < rhs.letters_.size() && !letters_.empty() &&
         letters_.back().cancels(rhs.letters_[i])) {
    letters_.pop_back();
    ++i;
  }
  letters_.insert(letters_.end(), rhs.letters_.begin() + static_cast<long>(i), rhs.letters_.end());
  return *this;
}

std::strong_ordering Word::operator<=>(const Word& rhs) const {
  if (auto c = letters_.size() <=> rhs.letters_.size(); c != 0) return c;
  for (std::size_t i = 0; i < letters_.size(); ++i) {
    if (auto c = letters_[i].order_key() <=> rhs.letters_[i].order_key(); c != 0) return c;
  }
  return std::strong_ordering::equal;
}

std::size_t WordHash::operator()(const Word& w) const noexcept {
  std::size_t h = 1469598103934665603ull;
  for (Letter l : w.letters()) {
    h ^= static_cast<std::size_t>(static_cast<unsigned>(l.code()));
    h *= 1099511628211ull;
  }
  return h;
}

bool is_cyclically_reduced(const Word& w) {
  return w.size() < 2 || !w.front().cancels(w.back());
}

CyclicReduction cyclic_reduce(const Word& w) {
  const auto letters = w.letters();
  std::size_t lo = 0;
  std::size_t hi = letters.size();
  while (hi - lo >= 2 && letters[lo].cancels(letters[hi - 1])) {
    ++lo;
    --hi;
  }
  CyclicReduction r;
  r.core = w.subword(lo, hi - lo);
  r.conjugator = w.subword(0, lo);
  return r;
}

long exponent_sum(const Word& w, GenId g) {
  long sum = 0;
  for (Letter l : w.letters()) {
    if (l.gen() == g) sum += l.sign();
  }
  return sum;
}

std::size_t occurrences(const Word& w, GenId g) {
  return static_cast<std::size_t>(
      std::count_if(w.letters().begin(), w.letters().end(), [g](Letter l) { return l.gen() == g; }));
}

std::set<GenId> support(const Word& w) {
  std::set<GenId> gens;
  for (Letter l : w.letters()) gens.insert(l.gen());
  return gens;
}

PrimitiveRoot primitive_root(const Word& w) {
  if (w.empty()) throw Error(ErrorKind::EmptyWord, "primitive root of the empty word");
  const auto letters = w.letters();
  const std::size_t n = letters.size();
  for (std::size_t d = 1; d <= n; ++d) {
    if (n % d != 0) continue;
    bool periodic = true;
    for (std::size_t i = d; i < n && periodic; ++i) periodic = letters[i] == letters[i - d];
    if (periodic) return {w.subword(0, d), static_cast<long>(n / d)};
  }
  return {w, 1};
}

Word substitute(const Word& w, const Substitution& images, std::optional<std::size_t> target_rank) {
  Word out;
  for (Letter l : w.letters()) {
    auto it = images.find(l.gen());
    Word image = it == images.end() ? Word::generator(l.gen()) : it->second;
    if (target_rank) {
      for (Letter m : image.letters()) {
        if (m.gen() >= *target_rank) {
          throw Error(ErrorKind::UnknownGenerator,
                      "generator " + std::to_string(m.gen()) + " outside target alphabet");
        }
      }
    }
    out *= l.sign() > 0 ? image : image.inverse();
  }
  return out;
}

bool equal_as_cyclic_words(const Word& a, const Word& b) {
  if (a.size() != b.size()) return false;
  if (a.empty()) return true;
  const auto la = a.letters();
  const auto lb = b.letters();
  const std::size_t n = la.size();
  for (std::size_t k = 0; k < n; ++k) {
    bool same = true;
    for (std::size_t i = 0; i < n && same; ++i) same = la[(i + k) % n] == lb[i];
    if (same) return true;
  }
  return false;
}

Word least_rotation(const Word& w) {
  const auto letters = w.letters();
  const std::size_t n = letters.size();
  std::size_t best = 0;
  for (std::size_t k = 1; k < n; ++k) {
    for (std::size_t i = 0; i < n; ++i) {
      const unsigned x = letters[(k + i) % n].order_key();
      const unsigned y = letters[(best + i) % n].order_key();
      if (x != y) {
        if (x < y) best = k;
        break;
      }
    }
  }
  return w.rotated(best);
}

bool is_valid_generator_name(std::string_view name) {
  if (name.empty()) return false;
  const auto is_head = [](char c) { return std::isalpha(static_cast<unsigned char>(c)) || c == '_'; };
  const auto is_tail = [](char c) { return std::isalnum(static_cast<unsigned char>(c)) || c == '_'; };
  if (!is_head(name.front())) return false;
  std::size_t i = 1;
  while (i < name.size() && is_tail(name[i])) ++i;
  // Optional subscripts: ('@' '-'? digits)*
  while (i < name.size()) {
    if (name[i] != '@') return false;
    ++i;
    if (i < name.size() && name[i] == '-') ++i;
    const std::size_t digits = i;
    while (i < name.size() && std::isdigit(static_cast<unsigned char>(name[i]))) ++i;
    if (i == digits) return false;
  }
  return true;
}

Alphabet::Alphabet(std::vector<std::string> names) {
  for (auto& n : names) add(std::move(n));
}

GenId Alphabet::add(std::string name) {
  if (!is_valid_generator_name(name)) {
    throw Error(ErrorKind::InvalidArgument, "invalid generator name '" + name + "'");
  }
  if (index_.contains(name)) {
    throw Error(ErrorKind::DuplicateGenerator, "generator '" + name + "' declared twice");
  }
  const auto id = static_cast<GenId>(names_.size());
  index_.emplace(name, id);
  names_.push_back(std::move(name));
  return id;
}

std::optional<GenId> Alphabet::find(std::string_view name) const {
  auto it = index_.find(std::string(name));
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

std::string Alphabet::fresh_name(std::string_view stem) const {
  std::string candidate(stem);
  for (int i = 1; index_.contains(candidate); ++i) {
    candidate = std::string(stem) + "_" + std::to_string(i);
  }
  return candidate;
}

std::string format_word(const Word& w, const Alphabet& alphabet) {
  if (w.empty()) return "1";
  std::string out;
  const auto letters = w.letters();
  std::size_t i = 0;
  while (i < letters.size()) {
    std::size_t j = i;
    while (j < letters.size() && letters[j] == letters[i]) ++j;
    if (!out.empty()) out += ' ';
    out += alphabet.name(letters[i].gen());
    const long power = static_cast<long>(j - i) * letters[i].sign();
    if (power != 1) out += "^" + std::to_string(power);
    i = j;
  }
  return out;
}

}  // namespace onerel
