#include "pathcalc/term.hpp"

#include <algorithm>
#include <array>
#include <cctype>
#include <optional>
#include <sstream>
#include <utility>

namespace pathcalc {

struct PathTerm::Node {
  TermKind kind;
  std::string name;  // atom name or rho tag
  bool inverted = false;
  std::vector<PathTerm> children;
};

namespace {

struct CtorInfo {
  std::string_view name;
  TermKind kind;
  std::size_t arity;
};

constexpr std::array<CtorInfo, 14> kCtors{{
    {"sigma", TermKind::Sigma, 1},
    {"tau", TermKind::Tau, 2},
    {"subL", TermKind::SubL, 2},
    {"subR", TermKind::SubR, 2},
    {"xi", TermKind::Xi, 1},
    {"xi1", TermKind::Xi1, 1},
    {"xi2", TermKind::Xi2, 1},
    {"xiand", TermKind::XiAnd, 2},
    {"mu", TermKind::Mu, 1},
    {"mu1", TermKind::Mu1, 1},
    {"mu2", TermKind::Mu2, 1},
    {"mu2x", TermKind::Mu2x, 2},
    {"mu3", TermKind::Mu3, 3},
    {"nu", TermKind::Nu, 1},
}};

const CtorInfo* find_ctor(std::string_view name) {
  for (const auto& info : kCtors) {
    if (info.name == name) return &info;
  }
  return nullptr;
}

const CtorInfo* find_ctor(TermKind kind) {
  for (const auto& info : kCtors) {
    if (info.kind == kind) return &info;
  }
  return nullptr;
}

bool is_ident_start(char c) { return std::isalpha(static_cast<unsigned char>(c)); }
bool is_ident_char(char c) {
  return std::isalnum(static_cast<unsigned char>(c)) || c == '_';
}

bool is_valid_ident(std::string_view text) {
  if (text.empty() || !is_ident_start(text.front())) return false;
  return std::all_of(text.begin(), text.end(), is_ident_char);
}

void check_atom_name(const std::string& name) {
  if (!is_valid_ident(name)) {
    throw std::invalid_argument("invalid atom name '" + name + "'");
  }
  if (name == "rho" || name.rfind("rho_", 0) == 0) {
    throw std::invalid_argument("atom name '" + name +
                                "' collides with the rho literal");
  }
  if (find_ctor(name) != nullptr) {
    throw std::invalid_argument("atom name '" + name +
                                "' is a reserved constructor name");
  }
}

void check_rho_tag(const std::string& tag) {
  if (tag.empty()) return;
  if (!std::all_of(tag.begin(), tag.end(), is_ident_char)) {
    throw std::invalid_argument("invalid rho tag '" + tag + "'");
  }
}

}  // namespace

PathTerm PathTerm::atom(std::string name, bool inverted) {
  check_atom_name(name);
  auto node = std::make_shared<Node>();
  node->kind = TermKind::Atom;
  node->name = std::move(name);
  node->inverted = inverted;
  return PathTerm(std::move(node));
}

PathTerm PathTerm::rho(std::string tag) {
  check_rho_tag(tag);
  auto node = std::make_shared<Node>();
  node->kind = TermKind::Rho;
  node->name = std::move(tag);
  return PathTerm(std::move(node));
}

PathTerm PathTerm::make(TermKind kind, std::vector<PathTerm> children) {
  const CtorInfo* info = find_ctor(kind);
  if (info == nullptr) {
    throw std::invalid_argument("make() requires a constructor kind");
  }
  if (children.size() != info->arity) {
    std::ostringstream os;
    os << info->name << " expects " << info->arity << " children, got "
       << children.size();
    throw std::invalid_argument(os.str());
  }
  auto node = std::make_shared<Node>();
  node->kind = kind;
  node->children = std::move(children);
  return PathTerm(std::move(node));
}

PathTerm PathTerm::sigma(PathTerm body) {
  return make(TermKind::Sigma, {std::move(body)});
}
PathTerm PathTerm::tau(PathTerm first, PathTerm second) {
  return make(TermKind::Tau, {std::move(first), std::move(second)});
}
PathTerm PathTerm::subL(PathTerm first, PathTerm second) {
  return make(TermKind::SubL, {std::move(first), std::move(second)});
}
PathTerm PathTerm::subR(PathTerm first, PathTerm second) {
  return make(TermKind::SubR, {std::move(first), std::move(second)});
}
PathTerm PathTerm::xi(PathTerm body) { return make(TermKind::Xi, {std::move(body)}); }
PathTerm PathTerm::xi1(PathTerm body) { return make(TermKind::Xi1, {std::move(body)}); }
PathTerm PathTerm::xi2(PathTerm body) { return make(TermKind::Xi2, {std::move(body)}); }
PathTerm PathTerm::xiand(PathTerm first, PathTerm second) {
  return make(TermKind::XiAnd, {std::move(first), std::move(second)});
}
PathTerm PathTerm::mu(PathTerm body) { return make(TermKind::Mu, {std::move(body)}); }
PathTerm PathTerm::mu1(PathTerm body) { return make(TermKind::Mu1, {std::move(body)}); }
PathTerm PathTerm::mu2(PathTerm body) { return make(TermKind::Mu2, {std::move(body)}); }
PathTerm PathTerm::mu2x(PathTerm first, PathTerm second) {
  return make(TermKind::Mu2x, {std::move(first), std::move(second)});
}
PathTerm PathTerm::mu3(PathTerm first, PathTerm second, PathTerm third) {
  return make(TermKind::Mu3, {std::move(first), std::move(second), std::move(third)});
}
PathTerm PathTerm::nu(PathTerm body) { return make(TermKind::Nu, {std::move(body)}); }

TermKind PathTerm::kind() const { return node_->kind; }
const std::string& PathTerm::name() const { return node_->name; }
bool PathTerm::inverted() const { return node_->inverted; }
const std::vector<PathTerm>& PathTerm::children() const { return node_->children; }

std::size_t PathTerm::size() const {
  std::size_t total = 1;
  for (const auto& child : children()) total += child.size();
  return total;
}

std::size_t PathTerm::depth() const {
  std::size_t deepest = 0;
  for (const auto& child : children()) deepest = std::max(deepest, child.depth());
  return deepest + 1;
}

bool operator==(const PathTerm& a, const PathTerm& b) {
  if (a.node_ == b.node_) return true;
  if (a.kind() != b.kind()) return false;
  if (a.kind() == TermKind::Atom &&
      (a.name() != b.name() || a.inverted() != b.inverted())) {
    return false;
  }
  // Rho display tags are intentionally ignored.
  if (a.arity() != b.arity()) return false;
  for (std::size_t i = 0; i < a.arity(); ++i) {
    if (!(a.children()[i] == b.children()[i])) return false;
  }
  return true;
}

bool PathTerm::identical(const PathTerm& other) const {
  if (node_ == other.node_) return true;
  if (kind() != other.kind() || name() != other.name() ||
      inverted() != other.inverted() || arity() != other.arity()) {
    return false;
  }
  for (std::size_t i = 0; i < arity(); ++i) {
    if (!children()[i].identical(other.children()[i])) return false;
  }
  return true;
}

ParseError::ParseError(const std::string& message, int line, int column)
    : std::runtime_error(message + " (line " + std::to_string(line) +
                         ", column " + std::to_string(column) + ")"),
      line_(line),
      column_(column) {}

Position Position::parse(std::string_view text) {
  Position result;
  if (text.empty()) return result;
  std::size_t i = 0;
  while (true) {
    if (i >= text.size() || !std::isdigit(static_cast<unsigned char>(text[i]))) {
      throw ParseError("expected child index in position", 1,
                       static_cast<int>(i) + 1);
    }
    int value = 0;
    while (i < text.size() && std::isdigit(static_cast<unsigned char>(text[i]))) {
      value = value * 10 + (text[i] - '0');
      ++i;
    }
    result.indices_.push_back(value);
    if (i == text.size()) break;
    if (text[i] != '.') {
      throw ParseError("expected '.' between position indices", 1,
                       static_cast<int>(i) + 1);
    }
    ++i;
  }
  return result;
}

Position Position::child(int index) const {
  Position result = *this;
  result.indices_.push_back(index);
  return result;
}

Position Position::parent() const {
  if (is_root()) {
    throw std::out_of_range("the root position has no parent");
  }
  Position result = *this;
  result.indices_.pop_back();
  return result;
}

std::string Position::str() const {
  std::string out;
  for (std::size_t i = 0; i < indices_.size(); ++i) {
    if (i > 0) out.push_back('.');
    out += std::to_string(indices_[i]);
  }
  return out;
}

namespace {

class TermParser {
 public:
  explicit TermParser(std::string_view input) : input_(input) {}

  PathTerm parse() {
    PathTerm term = parse_term();
    skip_ws();
    if (!at_end()) {
      fail("unexpected trailing input");
    }
    return term;
  }

 private:
  [[noreturn]] void fail(const std::string& message) const {
    throw ParseError(message, line_, column_);
  }

  bool at_end() const { return offset_ >= input_.size(); }
  char peek() const { return input_[offset_]; }

  void advance() {
    if (input_[offset_] == '\n') {
      ++line_;
      column_ = 1;
    } else {
      ++column_;
    }
    ++offset_;
  }

  void skip_ws() {
    while (!at_end() && std::isspace(static_cast<unsigned char>(peek()))) {
      advance();
    }
  }

  void expect(char c, const std::string& context) {
    skip_ws();
    if (at_end() || peek() != c) {
      fail("expected '" + std::string(1, c) + "' " + context);
    }
    advance();
  }

  std::string read_ident() {
    skip_ws();
    if (at_end() || !is_ident_start(peek())) {
      fail("expected a term");
    }
    std::string ident;
    while (!at_end() && is_ident_char(peek())) {
      ident.push_back(peek());
      advance();
    }
    return ident;
  }

  PathTerm parse_term() {
    skip_ws();
    int start_line = line_;
    int start_column = column_;
    std::string ident = read_ident();

    if (const CtorInfo* info = find_ctor(ident)) {
      skip_ws();
      if (at_end() || peek() != '(') {
        throw ParseError("expected '(' after constructor '" + ident + "'",
                         line_, column_);
      }
      advance();
      std::vector<PathTerm> children;
      children.push_back(parse_term());
      skip_ws();
      while (!at_end() && peek() == ',') {
        advance();
        children.push_back(parse_term());
        skip_ws();
      }
      expect(')', "to close '" + ident + "'");
      if (children.size() != info->arity) {
        std::ostringstream os;
        os << ident << " expects " << info->arity << " argument"
           << (info->arity == 1 ? "" : "s") << ", got " << children.size();
        throw ParseError(os.str(), start_line, start_column);
      }
      return PathTerm::make(info->kind, std::move(children));
    }

    if (ident == "rho") return PathTerm::rho();
    if (ident.rfind("rho_", 0) == 0) {
      std::string tag = ident.substr(4);
      if (tag.empty()) {
        throw ParseError("empty rho tag", start_line, start_column);
      }
      return PathTerm::rho(std::move(tag));
    }

    bool inverted = false;
    if (!at_end() && peek() == '\'') {
      advance();
      inverted = true;
    }
    return PathTerm::atom(std::move(ident), inverted);
  }

  std::string_view input_;
  std::size_t offset_ = 0;
  int line_ = 1;
  int column_ = 1;
};

void format_into(const PathTerm& term, std::string& out) {
  switch (term.kind()) {
    case TermKind::Atom:
      out += term.name();
      if (term.inverted()) out.push_back('\'');
      return;
    case TermKind::Rho:
      out += "rho";
      if (!term.name().empty()) {
        out.push_back('_');
        out += term.name();
      }
      return;
    default:
      break;
  }
  const CtorInfo* info = find_ctor(term.kind());
  out += info->name;
  out.push_back('(');
  for (std::size_t i = 0; i < term.arity(); ++i) {
    if (i > 0) out.push_back(',');
    format_into(term.children()[i], out);
  }
  out.push_back(')');
}

void collect_positions(const PathTerm& term, Position& current,
                       std::vector<Position>& out) {
  out.push_back(current);
  for (std::size_t i = 0; i < term.arity(); ++i) {
    current = current.child(static_cast<int>(i));
    collect_positions(term.children()[i], current, out);
    current = current.parent();
  }
}

}  // namespace

PathTerm parse_path_term(std::string_view input) {
  return TermParser(input).parse();
}

std::string format_path_term(const PathTerm& term) {
  std::string out;
  format_into(term, out);
  return out;
}

std::vector<Position> positions(const PathTerm& term) {
  std::vector<Position> out;
  Position current;
  collect_positions(term, current, out);
  return out;
}

PathTerm subterm_at(const PathTerm& term, const Position& position) {
  PathTerm current = term;
  for (std::size_t level = 0; level < position.indices().size(); ++level) {
    int index = position.indices()[level];
    if (index < 0 || static_cast<std::size_t>(index) >= current.arity()) {
      throw std::out_of_range("position '" + position.str() +
                              "' does not address a subterm");
    }
    current = current.children()[static_cast<std::size_t>(index)];
  }
  return current;
}

namespace {

PathTerm replace_rec(const PathTerm& term, const std::vector<int>& indices,
                     std::size_t level, const Position& position,
                     const PathTerm& replacement) {
  if (level == indices.size()) return replacement;
  int index = indices[level];
  if (index < 0 || static_cast<std::size_t>(index) >= term.arity()) {
    throw std::out_of_range("position '" + position.str() +
                            "' does not address a subterm");
  }
  std::vector<PathTerm> children = term.children();
  children[static_cast<std::size_t>(index)] =
      replace_rec(children[static_cast<std::size_t>(index)], indices, level + 1,
                  position, replacement);
  return PathTerm::make(term.kind(), std::move(children));
}

}  // namespace

PathTerm replace_at(const PathTerm& term, const Position& position,
                    const PathTerm& replacement) {
  return replace_rec(term, position.indices(), 0, position, replacement);
}

}  // namespace pathcalc
