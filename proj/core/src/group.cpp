#include "pathcalc/group.hpp"

#include <algorithm>
#include <cctype>
#include <cstdlib>
#include <map>
#include <set>

#include "pathcalc/term.hpp"

namespace pathcalc {

namespace {

bool is_ident_start(char c) {
  return std::isalpha(static_cast<unsigned char>(c));
}

bool is_ident_char(char c) {
  return std::isalnum(static_cast<unsigned char>(c)) || c == '_';
}

void validate_word(const GroupWord& word,
                   const std::vector<std::string>& generators,
                   const std::string& where) {
  const std::set<std::string> known(generators.begin(), generators.end());
  for (const Letter& letter : word) {
    if (!known.count(letter.generator)) {
      throw UnknownGeneratorError(where + ": unknown generator '" +
                                  letter.generator + "'");
    }
  }
}

}  // namespace

GroupWord parse_word(std::string_view text) {
  GroupWord word;
  int line = 1;
  int column = 1;
  std::size_t at = 0;
  const auto advance = [&](std::size_t count) {
    for (std::size_t i = 0; i < count && at < text.size(); ++i, ++at) {
      if (text[at] == '\n') {
        ++line;
        column = 1;
      } else {
        ++column;
      }
    }
  };
  while (true) {
    while (at < text.size() &&
           std::isspace(static_cast<unsigned char>(text[at]))) {
      advance(1);
    }
    if (at >= text.size()) break;
    if (text[at] == '1') {
      // The identity token stands for no letters at all.
      advance(1);
      if (at < text.size() &&
          !std::isspace(static_cast<unsigned char>(text[at]))) {
        throw ParseError("malformed token after '1'", line, column);
      }
      continue;
    }
    if (!is_ident_start(text[at])) {
      throw ParseError("expected a generator name", line, column);
    }
    std::size_t end = at;
    while (end < text.size() && is_ident_char(text[end])) ++end;
    Letter letter{std::string(text.substr(at, end - at)), +1};
    advance(end - at);
    if (at < text.size() && text[at] == '\'') {
      letter.sign = -1;
      advance(1);
    } else if (at < text.size() && text[at] == '^') {
      if (text.substr(at, 3) != "^-1") {
        throw ParseError("expected '^-1' after '^'", line, column);
      }
      letter.sign = -1;
      advance(3);
    }
    if (at < text.size() && !std::isspace(static_cast<unsigned char>(text[at]))) {
      throw ParseError("unexpected character in word", line, column);
    }
    word.push_back(std::move(letter));
  }
  return word;
}

std::string format_word(const GroupWord& word) {
  if (word.empty()) return "1";
  std::string out;
  for (const Letter& letter : word) {
    if (!out.empty()) out += ' ';
    out += letter.generator;
    if (letter.sign < 0) out += "^-1";
  }
  return out;
}

GroupWord inverse(const GroupWord& word) {
  GroupWord out;
  out.reserve(word.size());
  for (std::size_t i = word.size(); i-- > 0;) {
    out.push_back(Letter{word[i].generator, -word[i].sign});
  }
  return out;
}

GroupWord concat(const GroupWord& u, const GroupWord& v) {
  GroupWord out = u;
  out.insert(out.end(), v.begin(), v.end());
  return out;
}

GroupWord free_reduce(const GroupWord& word) {
  GroupWord out;
  out.reserve(word.size());
  for (const Letter& letter : word) {
    if (!out.empty() && out.back().generator == letter.generator &&
        out.back().sign == -letter.sign) {
      out.pop_back();
    } else {
      out.push_back(letter);
    }
  }
  return out;
}

Presentation parse_presentation(std::string_view text) {
  const auto fail = [&](const std::string& message) {
    throw ParseError(message, 1, 1);
  };
  const std::size_t gens_at = text.find("gens:");
  if (gens_at == std::string_view::npos) fail("expected 'gens:'");
  const std::size_t semi_at = text.find(';', gens_at);
  if (semi_at == std::string_view::npos) fail("expected ';' after generators");
  const std::size_t rels_at = text.find("rels:", semi_at);
  if (rels_at == std::string_view::npos) fail("expected 'rels:'");

  Presentation out;
  {
    std::string_view gens = text.substr(gens_at + 5, semi_at - gens_at - 5);
    std::size_t at = 0;
    while (at < gens.size()) {
      if (std::isspace(static_cast<unsigned char>(gens[at]))) {
        ++at;
        continue;
      }
      if (!is_ident_start(gens[at])) fail("malformed generator name");
      std::size_t end = at;
      while (end < gens.size() && is_ident_char(gens[end])) ++end;
      out.generators.emplace_back(gens.substr(at, end - at));
      at = end;
    }
    std::set<std::string> seen;
    for (const std::string& g : out.generators) {
      if (!seen.insert(g).second) fail("duplicate generator '" + g + "'");
    }
  }
  {
    std::string_view rels = text.substr(rels_at + 5);
    std::size_t begin = 0;
    bool any = rels.find_first_not_of(" \t\r\n") != std::string_view::npos;
    while (any) {
      std::size_t comma = rels.find(',', begin);
      std::string_view part = rels.substr(
          begin, comma == std::string_view::npos ? rels.size() - begin
                                                 : comma - begin);
      out.relators.push_back(parse_word(part));
      if (comma == std::string_view::npos) break;
      begin = comma + 1;
    }
  }
  for (const GroupWord& relator : out.relators) {
    validate_word(relator, out.generators, "parse_presentation");
  }
  return out;
}

std::string format_presentation(const Presentation& presentation) {
  std::string out = "gens:";
  for (const std::string& g : presentation.generators) out += " " + g;
  out += " ; rels:";
  for (std::size_t i = 0; i < presentation.relators.size(); ++i) {
    out += i == 0 ? " " : " , ";
    out += format_word(presentation.relators[i]);
  }
  return out;
}

namespace {

// Diagonal of the Smith normal form, computed in place with exact integer
// row/column operations, pivoting on the smallest nonzero magnitude.
std::vector<long long> smith_diagonal(std::vector<std::vector<long long>> m) {
  const int rows = static_cast<int>(m.size());
  const int cols = rows == 0 ? 0 : static_cast<int>(m[0].size());
  std::vector<long long> diagonal;
  int t = 0;
  while (t < rows && t < cols) {
    int pivot_i = -1;
    int pivot_j = -1;
    for (int i = t; i < rows; ++i) {
      for (int j = t; j < cols; ++j) {
        if (m[i][j] != 0 && (pivot_i < 0 || std::llabs(m[i][j]) <
                                                std::llabs(m[pivot_i][pivot_j]))) {
          pivot_i = i;
          pivot_j = j;
        }
      }
    }
    if (pivot_i < 0) break;
    std::swap(m[t], m[pivot_i]);
    for (int i = 0; i < rows; ++i) std::swap(m[i][t], m[i][pivot_j]);

    bool dirty = true;
    while (dirty) {
      dirty = false;
      for (int i = t + 1; i < rows; ++i) {
        if (m[i][t] == 0) continue;
        const long long q = m[i][t] / m[t][t];
        for (int j = t; j < cols; ++j) m[i][j] -= q * m[t][j];
        if (m[i][t] != 0) {
          std::swap(m[t], m[i]);
          dirty = true;
        }
      }
      for (int j = t + 1; j < cols; ++j) {
        if (m[t][j] == 0) continue;
        const long long q = m[t][j] / m[t][t];
        for (int i = t; i < rows; ++i) m[i][j] -= q * m[i][t];
        if (m[t][j] != 0) {
          for (int i = 0; i < rows; ++i) std::swap(m[i][t], m[i][j]);
          dirty = true;
        }
      }
    }

    // The pivot must divide the rest of the submatrix before it is final.
    bool folded = false;
    for (int i = t + 1; i < rows && !folded; ++i) {
      for (int j = t + 1; j < cols && !folded; ++j) {
        if (m[i][j] % m[t][t] != 0) {
          for (int jj = t; jj < cols; ++jj) m[t][jj] += m[i][jj];
          folded = true;
        }
      }
    }
    if (folded) continue;
    diagonal.push_back(std::llabs(m[t][t]));
    ++t;
  }
  return diagonal;
}

}  // namespace

AbelianInvariants abelianize(const Presentation& presentation) {
  std::map<std::string, int> column;
  for (const std::string& g : presentation.generators) {
    column.emplace(g, static_cast<int>(column.size()));
  }
  std::vector<std::vector<long long>> matrix(
      presentation.relators.size(),
      std::vector<long long>(presentation.generators.size(), 0));
  for (std::size_t r = 0; r < presentation.relators.size(); ++r) {
    for (const Letter& letter : presentation.relators[r]) {
      matrix[r][column.at(letter.generator)] += letter.sign;
    }
  }
  AbelianInvariants out;
  const std::vector<long long> diagonal = smith_diagonal(std::move(matrix));
  out.free_rank = static_cast<int>(presentation.generators.size()) -
                  static_cast<int>(diagonal.size());
  for (const long long d : diagonal) {
    if (d >= 2) out.torsion.push_back(d);
  }
  return out;
}

KleinElement klein_multiply(const KleinElement& x, const KleinElement& y) {
  const long long flipped = (y.m % 2 != 0) ? -x.n : x.n;
  return KleinElement{x.m + y.m, flipped + y.n};
}

KleinElement klein_oracle_eval(const GroupWord& word) {
  validate_word(word, {"a", "b"}, "klein_oracle_eval");
  KleinElement acc;
  for (const Letter& letter : word) {
    const KleinElement image = letter.generator == "a"
                                   ? KleinElement{letter.sign, 0}
                                   : KleinElement{0, letter.sign};
    acc = klein_multiply(acc, image);
  }
  return acc;
}

namespace {

// Shared engine for the two-generator normal forms: repeatedly freely
// reduces and exchanges adjacent (left, right) pairs until every `left`
// letter precedes every `right` letter. The exchange callback returns the
// replacement pair. Terminates because each exchange moves a `right` letter
// leftwards past a `left` one and reduction only shortens the word.
template <typename Exchange>
GroupWord reorder(GroupWord word, const std::string& left,
                  const std::string& right, Exchange exchange) {
  word = free_reduce(std::move(word));
  while (true) {
    bool changed = false;
    for (std::size_t i = 0; i + 1 < word.size(); ++i) {
      if (word[i].generator == right && word[i + 1].generator == left) {
        const auto [first, second] = exchange(word[i], word[i + 1]);
        word[i] = first;
        word[i + 1] = second;
        word = free_reduce(std::move(word));
        changed = true;
        break;
      }
    }
    if (!changed) return word;
  }
}

long long signed_sum(const GroupWord& word, const std::string& generator) {
  long long total = 0;
  for (const Letter& letter : word) {
    if (letter.generator == generator) total += letter.sign;
  }
  return total;
}

TorusElement commuting_normal_form(const GroupWord& word, const std::string& a,
                                   const std::string& b) {
  validate_word(word, {a, b}, "commuting normal form");
  const GroupWord sorted =
      reorder(word, b, a, [](const Letter& x, const Letter& y) {
        return std::pair<Letter, Letter>{y, x};
      });
  return TorusElement{signed_sum(sorted, b), signed_sum(sorted, a)};
}

}  // namespace

TorusElement torus_normal_form(const GroupWord& word) {
  return commuting_normal_form(word, "a", "b");
}

KleinElement klein_normal_form(const GroupWord& word) {
  validate_word(word, {"a", "b"}, "klein_normal_form");
  // b a -> a b^-1 and companions: moving an a (of either sign) left through
  // a b flips the b.
  const GroupWord sorted =
      reorder(word, "a", "b", [](const Letter& x, const Letter& y) {
        return std::pair<Letter, Letter>{y, Letter{x.generator, -x.sign}};
      });
  return KleinElement{signed_sum(sorted, "a"), signed_sum(sorted, "b")};
}

namespace {

GroupWord commutator(const std::string& a, const std::string& b) {
  return GroupWord{Letter{b, +1}, Letter{a, +1}, Letter{b, -1}, Letter{a, -1}};
}

GroupWord genus_relator(const std::vector<std::string>& generators) {
  GroupWord relator;
  for (std::size_t i = 0; i + 1 < generators.size(); i += 2) {
    relator = concat(relator, commutator(generators[i], generators[i + 1]));
  }
  return relator;
}

GroupWord cyclic_rotation(const GroupWord& word, std::size_t offset) {
  GroupWord out;
  out.reserve(word.size());
  for (std::size_t i = 0; i < word.size(); ++i) {
    out.push_back(word[(i + offset) % word.size()]);
  }
  return out;
}

// Position of the contiguous subword, or npos.
std::size_t find_subword(const GroupWord& word, const GroupWord& part) {
  if (part.size() > word.size()) return std::string::npos;
  for (std::size_t at = 0; at + part.size() <= word.size(); ++at) {
    bool match = true;
    for (std::size_t i = 0; i < part.size(); ++i) {
      if (!(word[at + i] == part[i])) {
        match = false;
        break;
      }
    }
    if (match) return at;
  }
  return std::string::npos;
}

}  // namespace

GroupWord dehn_reduce(const GroupWord& word,
                      const Presentation& presentation) {
  const std::size_t pairs = presentation.generators.size() / 2;
  if (presentation.generators.size() % 2 != 0 || pairs < 2 ||
      presentation.relators.size() != 1 ||
      !(presentation.relators[0] == genus_relator(presentation.generators))) {
    throw UnsupportedPresentationError(
        "dehn_reduce: expected the single commutator-product relator of an "
        "orientable genus >= 2 surface");
  }
  validate_word(word, presentation.generators, "dehn_reduce");

  const GroupWord& relator = presentation.relators[0];
  std::vector<GroupWord> rotations;
  for (std::size_t offset = 0; offset < relator.size(); ++offset) {
    rotations.push_back(cyclic_rotation(relator, offset));
    rotations.push_back(cyclic_rotation(inverse(relator), offset));
  }

  GroupWord w = word;
  while (true) {
    w = free_reduce(w);
    while (w.size() >= 2 && w.front().generator == w.back().generator &&
           w.front().sign == -w.back().sign) {
      w.erase(w.begin());
      w.pop_back();
      w = free_reduce(w);
    }
    // More than half of some rotation present: replace it by the inverse of
    // the remainder. Longest pieces first keeps the shrink maximal.
    bool replaced = false;
    for (std::size_t piece = relator.size() - 1;
         piece > relator.size() / 2 && !replaced; --piece) {
      for (const GroupWord& rotation : rotations) {
        const GroupWord head(rotation.begin(),
                             rotation.begin() + static_cast<long>(piece));
        const std::size_t at = find_subword(w, head);
        if (at == std::string::npos) continue;
        const GroupWord tail(rotation.begin() + static_cast<long>(piece),
                             rotation.end());
        GroupWord next(w.begin(), w.begin() + static_cast<long>(at));
        next = concat(next, inverse(tail));
        next.insert(next.end(), w.begin() + static_cast<long>(at + piece),
                    w.end());
        w = std::move(next);
        replaced = true;
        break;
      }
    }
    if (!replaced) return w;
  }
}

Presentation vankampen_pushout(
    const Presentation& p_u, const Presentation& p_v,
    const std::vector<std::pair<GroupWord, GroupWord>>& amalgam) {
  for (const auto& [in_u, in_v] : amalgam) {
    validate_word(in_u, p_u.generators, "vankampen_pushout (left image)");
    validate_word(in_v, p_v.generators, "vankampen_pushout (right image)");
  }

  // Disjoint generator names: colliding names on the V side get "_v".
  std::set<std::string> taken(p_u.generators.begin(), p_u.generators.end());
  std::map<std::string, std::string> rename;
  std::vector<std::string> v_generators;
  for (const std::string& g : p_v.generators) {
    std::string name = g;
    while (taken.count(name)) name += "_v";
    taken.insert(name);
    rename.emplace(g, name);
    v_generators.push_back(std::move(name));
  }
  const auto renamed = [&](const GroupWord& word) {
    GroupWord out = word;
    for (Letter& letter : out) letter.generator = rename.at(letter.generator);
    return out;
  };

  Presentation out;
  out.generators = p_u.generators;
  out.generators.insert(out.generators.end(), v_generators.begin(),
                        v_generators.end());
  out.relators = p_u.relators;
  for (const GroupWord& relator : p_v.relators) {
    out.relators.push_back(renamed(relator));
  }
  for (const auto& [in_u, in_v] : amalgam) {
    out.relators.push_back(concat(in_u, inverse(renamed(in_v))));
  }
  out.basepoint = p_u.basepoint;
  return out;
}

Surface Surface::circle() { return Surface(Kind::Circle, 0); }
Surface Surface::torus() { return Surface(Kind::Torus, 0); }
Surface Surface::klein() { return Surface(Kind::Klein, 0); }

Surface Surface::genus(int n) {
  if (n < 1) throw std::invalid_argument("Surface::genus: need n >= 1");
  return Surface(Kind::Genus, n);
}

Surface Surface::parse(std::string_view text) {
  if (text == "circle") return circle();
  if (text == "torus") return torus();
  if (text == "klein") return klein();
  if (text.substr(0, 6) == "genus-") {
    int n = 0;
    for (const char c : text.substr(6)) {
      if (!std::isdigit(static_cast<unsigned char>(c))) n = -1;
      if (n < 0) break;
      n = n * 10 + (c - '0');
    }
    if (n >= 1) return genus(n);
  }
  throw std::invalid_argument("unknown surface '" + std::string(text) +
                              "' (expected circle, torus, klein or genus-N)");
}

std::string Surface::str() const {
  switch (kind_) {
    case Kind::Circle:
      return "circle";
    case Kind::Torus:
      return "torus";
    case Kind::Klein:
      return "klein";
    case Kind::Genus:
      return "genus-" + std::to_string(n_);
  }
  return "";
}

int Surface::genus_n() const {
  if (kind_ != Kind::Genus) {
    throw std::logic_error("Surface::genus_n: not a genus surface");
  }
  return n_;
}

Presentation surface_presentation(const Surface& surface) {
  Presentation out;
  if (surface.is_circle()) {
    out.generators = {"xi"};
    out.basepoint = "x1";
    return out;
  }
  if (surface.is_torus()) {
    out.generators = {"a", "b"};
    out.relators = {commutator("a", "b")};
    out.basepoint = "x0";
    return out;
  }
  if (surface.is_klein()) {
    out.generators = {"a", "b"};
    out.relators = {GroupWord{Letter{"b", +1}, Letter{"a", +1}, Letter{"b", +1},
                              Letter{"a", -1}}};
    out.basepoint = "x0";
    return out;
  }
  for (int i = 1; i <= surface.genus_n(); ++i) {
    out.generators.push_back("a" + std::to_string(i));
    out.generators.push_back("b" + std::to_string(i));
  }
  out.relators = {genus_relator(out.generators)};
  out.basepoint = "x0";
  return out;
}

Presentation polygon_presentation(const GroupWord& boundary) {
  if (boundary.empty()) {
    throw std::invalid_argument("polygon_presentation: empty boundary");
  }
  std::set<std::string> names;
  for (const Letter& letter : boundary) names.insert(letter.generator);
  Presentation out;
  out.generators.assign(names.begin(), names.end());
  out.relators = {boundary};
  out.basepoint = "x0";
  return out;
}

GroupWord surface_normal_form(const GroupWord& word, const Surface& surface) {
  if (surface.is_circle()) {
    validate_word(word, {"xi"}, "surface_normal_form");
    return free_reduce(word);
  }
  if (surface.is_torus()) {
    const TorusElement e = torus_normal_form(word);
    GroupWord out;
    for (long long i = 0; i < std::llabs(e.n); ++i) {
      out.push_back(Letter{"b", e.n > 0 ? +1 : -1});
    }
    for (long long i = 0; i < std::llabs(e.m); ++i) {
      out.push_back(Letter{"a", e.m > 0 ? +1 : -1});
    }
    return out;
  }
  if (surface.is_klein()) {
    const KleinElement e = klein_normal_form(word);
    GroupWord out;
    for (long long i = 0; i < std::llabs(e.m); ++i) {
      out.push_back(Letter{"a", e.m > 0 ? +1 : -1});
    }
    for (long long i = 0; i < std::llabs(e.n); ++i) {
      out.push_back(Letter{"b", e.n > 0 ? +1 : -1});
    }
    return out;
  }
  const Presentation presentation = surface_presentation(surface);
  if (surface.genus_n() == 1) {
    const TorusElement e =
        commuting_normal_form(word, presentation.generators[0],
                              presentation.generators[1]);
    GroupWord out;
    for (long long i = 0; i < std::llabs(e.n); ++i) {
      out.push_back(Letter{presentation.generators[1], e.n > 0 ? +1 : -1});
    }
    for (long long i = 0; i < std::llabs(e.m); ++i) {
      out.push_back(Letter{presentation.generators[0], e.m > 0 ? +1 : -1});
    }
    return out;
  }
  return dehn_reduce(word, presentation);
}

bool words_equal(const GroupWord& u, const GroupWord& v,
                 const Surface& surface) {
  return surface_normal_form(concat(u, inverse(v)), surface).empty();
}

}  // namespace pathcalc
