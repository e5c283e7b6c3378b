#include "onerel/presentation.hpp"

#include <cctype>
#include <charconv>
#include <optional>
#include <sstream>

#include "onerel/error.hpp"

namespace onerel {

namespace {

bool is_ident_char(char c) {
  return std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '@';
}

class Parser {
 public:
  explicit Parser(std::string_view text) : text_(text) {}

  Presentation presentation() {
    Presentation p;
    skip_space();
    expect('<');
    skip_space();
    const bool no_generators = peek() == ';' || peek() == '|';
    if (no_generators) ++pos_;
    while (!no_generators) {
      skip_space();
      const std::size_t at = pos_;
      const std::string name = identifier_token();
      if (name.empty()) throw SyntaxError(at, "expected generator name");
      if (p.alphabet.find(name)) {
        throw Error(ErrorKind::DuplicateGenerator, "generator '" + name + "' declared twice");
      }
      if (!is_valid_generator_name(name)) throw SyntaxError(at, "invalid generator name '" + name + "'");
      p.alphabet.add(name);
      skip_space();
      if (peek() == ',') {
        ++pos_;
        continue;
      }
      if (peek() == ';' || peek() == '|') {
        ++pos_;
        break;
      }
      throw SyntaxError(pos_, "expected ',', ';' or '|'");
    }
    skip_space();
    if (peek() != '>') {
      for (;;) {
        p.relators.push_back(word(p.alphabet));
        skip_space();
        if (peek() == ',') {
          ++pos_;
          continue;
        }
        break;
      }
    }
    skip_space();
    expect('>');
    skip_space();
    if (pos_ != text_.size()) throw SyntaxError(pos_, "trailing input");
    return p;
  }

  Word word_only(const Alphabet& alphabet) {
    Word w = word(alphabet);
    skip_space();
    if (pos_ != text_.size()) throw SyntaxError(pos_, "trailing input");
    return w;
  }

 private:
  char peek() const { return pos_ < text_.size() ? text_[pos_] : '\0'; }

  void skip_space() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }

  void expect(char c) {
    if (peek() != c) throw SyntaxError(pos_, std::string("expected '") + c + "'");
    ++pos_;
  }

  // Identifier run, admitting '-' directly after '@' for subscripted names.
  std::string identifier_token() {
    const std::size_t start = pos_;
    if (!(std::isalpha(static_cast<unsigned char>(peek())) || peek() == '_')) return {};
    while (pos_ < text_.size()) {
      const char c = text_[pos_];
      if (is_ident_char(c)) {
        ++pos_;
      } else if (c == '-' && pos_ > start && text_[pos_ - 1] == '@') {
        ++pos_;
      } else {
        break;
      }
    }
    return std::string(text_.substr(start, pos_ - start));
  }

  long exponent() {
    skip_space();
    if (peek() != '^') return 1;
    ++pos_;
    skip_space();
    const std::size_t start = pos_;
    if (peek() == '-' || peek() == '+') ++pos_;
    while (std::isdigit(static_cast<unsigned char>(peek()))) ++pos_;
    long value = 0;
    const char* first = text_.data() + start + ((text_[start] == '+') ? 1 : 0);
    auto [ptr, ec] = std::from_chars(first, text_.data() + pos_, value);
    if (ec != std::errc() || ptr != text_.data() + pos_) throw SyntaxError(start, "expected integer exponent");
    return value;
  }

  Word word(const Alphabet& alphabet) {
    Word w;
    bool any = false;
    for (;;) {
      skip_space();
      const char c = peek();
      if (c == '(') {
        ++pos_;
        Word inner = word(alphabet);
        skip_space();
        expect(')');
        w *= inner.pow(exponent());
      } else if (c == '1') {
        ++pos_;
        (void)exponent();
      } else if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
        const std::size_t at = pos_;
        const std::string run = identifier_token();
        std::vector<GenId> gens = split_run(run, at, alphabet);
        for (std::size_t i = 0; i + 1 < gens.size(); ++i) w *= Word::generator(gens[i]);
        w *= Word::generator(gens.back()).pow(exponent());
      } else {
        break;
      }
      any = true;
    }
    if (!any) throw SyntaxError(pos_, "expected word");
    return w;
  }

  static std::vector<GenId> split_run(const std::string& run, std::size_t at, const Alphabet& alphabet) {
    std::vector<GenId> gens;
    std::size_t i = 0;
    while (i < run.size()) {
      std::optional<GenId> match;
      std::size_t match_len = 0;
      for (std::size_t len = run.size() - i; len > 0; --len) {
        if (auto g = alphabet.find(std::string_view(run).substr(i, len))) {
          match = g;
          match_len = len;
          break;
        }
      }
      if (!match) {
        throw Error(ErrorKind::UnknownGeneratorInRelator,
                    "no declared generator matches '" + run.substr(i) + "' at offset " +
                        std::to_string(at + i));
      }
      gens.push_back(*match);
      i += match_len;
    }
    return gens;
  }

  std::string_view text_;
  std::size_t pos_ = 0;
};

}  // namespace

Presentation parse_presentation(std::string_view text) { return Parser(text).presentation(); }

Word parse_word(std::string_view text, const Alphabet& alphabet) {
  return Parser(text).word_only(alphabet);
}

std::string format_presentation(const Presentation& p) {
  std::ostringstream out;
  out << "<";
  for (std::size_t i = 0; i < p.alphabet.size(); ++i) {
    out << (i ? ", " : " ") << p.alphabet.name(static_cast<GenId>(i));
  }
  out << " ;";
  for (std::size_t i = 0; i < p.relators.size(); ++i) {
    out << (i ? ", " : " ") << format_word(p.relators[i], p.alphabet);
  }
  out << " >";
  return out.str();
}

nlohmann::json to_json(const Presentation& p) {
  nlohmann::json j;
  j["generators"] = p.alphabet.names();
  j["relators"] = nlohmann::json::array();
  for (const Word& r : p.relators) j["relators"].push_back(format_word(r, p.alphabet));
  return j;
}

Presentation presentation_from_json(const nlohmann::json& j) {
  Presentation p;
  for (const auto& name : j.at("generators")) p.alphabet.add(name.get<std::string>());
  for (const auto& r : j.at("relators")) p.relators.push_back(parse_word(r.get<std::string>(), p.alphabet));
  return p;
}

NormalizedRelator normalize_relator(const Presentation& p) {
  if (!p.one_relator()) {
    throw Error(ErrorKind::NotOneRelator,
                "expected exactly one relator, found " + std::to_string(p.relators.size()));
  }
  const Word& relator = p.relators.front();
  if (relator.empty()) throw Error(ErrorKind::TrivialRelator, "relator reduces to the empty word");
  CyclicReduction cr = cyclic_reduce(relator);
  PrimitiveRoot pr = primitive_root(cr.core);
  return {cr.core, pr.root, pr.power, cr.conjugator};
}

IntMatrix exponent_matrix(const std::vector<Word>& words, std::size_t rank) {
  IntMatrix m(words.size(), std::vector<BigInt>(rank, 0));
  for (std::size_t i = 0; i < words.size(); ++i) {
    for (Letter l : words[i].letters()) m[i][l.gen()] += l.sign();
  }
  return m;
}

AbelianInvariants invariants_of(const IntMatrix& relations, std::size_t rank) {
  const SmithForm snf = smith_normal_form(relations, rank);
  AbelianInvariants inv;
  inv.free_rank = rank - snf.factors.size();
  for (const BigInt& d : snf.factors) {
    if (d > 1) inv.torsion.push_back(d);
  }
  return inv;
}

AbelianInvariants abelian_invariants(const Presentation& p) {
  return invariants_of(exponent_matrix(p.relators, p.rank()), p.rank());
}

std::string format_invariants(const AbelianInvariants& inv) {
  std::string out;
  for (std::size_t i = 0; i < inv.free_rank; ++i) out += out.empty() ? "Z" : " + Z";
  for (const BigInt& d : inv.torsion) out += (out.empty() ? "Z/" : " + Z/") + d.str();
  return out.empty() ? "0" : out;
}

AbelianMap::AbelianMap(const Presentation& p) : rank_(p.rank()) {
  const SmithForm snf = smith_normal_form(exponent_matrix(p.relators, rank_), rank_);
  transform_ = snf.column_transform;
  for (std::size_t j = 0; j < rank_; ++j) {
    const BigInt d = j < snf.factors.size() ? snf.factors[j] : BigInt(0);
    if (d == 1) continue;
    kept_.push_back(j);
    factors_.push_back(d);
  }
  invariants_.free_rank = rank_ - snf.factors.size();
  for (const BigInt& d : snf.factors) {
    if (d > 1) invariants_.torsion.push_back(d);
  }
}

std::vector<BigInt> AbelianMap::image(const Word& w) const {
  std::vector<long> x(rank_, 0);
  for (Letter l : w.letters()) x[l.gen()] += l.sign();
  std::vector<BigInt> out;
  out.reserve(kept_.size());
  for (std::size_t k = 0; k < kept_.size(); ++k) {
    const std::size_t j = kept_[k];
    BigInt c = 0;
    for (std::size_t i = 0; i < rank_; ++i) {
      if (x[i] != 0) c += transform_[i][j] * x[i];
    }
    if (factors_[k] != 0) {
      c %= factors_[k];
      if (c < 0) c += factors_[k];
    }
    out.push_back(std::move(c));
  }
  return out;
}

}  // namespace onerel
