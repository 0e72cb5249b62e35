#pragma once

#include <compare>
#include <cstddef>
#include <memory>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace pathcalc {

// Node shapes of a computational-path term. Atoms are named path variables;
// rho/sigma/tau are reflexivity, symmetry and transitivity; subL/subR are the
// left and right substitution operators. The xi and mu families collect the
// congruence constructors, which come in several arities: xiand is the binary
// xi, mu2x the binary mu and mu3 the ternary mu.
enum class TermKind {
  Atom,
  Rho,
  Sigma,
  Tau,
  SubL,
  SubR,
  Xi,
  Xi1,
  Xi2,
  XiAnd,
  Mu,
  Mu1,
  Mu2,
  Mu2x,
  Mu3,
  Nu,
};

// A path from the root of a term to one of its subterms, as a sequence of
// child indices. The root is the empty sequence and prints as the empty
// string; "0.1" addresses the second child of the first child. The default
// ordering is lexicographic, which coincides with pre-order traversal order.
class Position {
 public:
  Position() = default;
  explicit Position(std::vector<int> indices) : indices_(std::move(indices)) {}

  // Parses "0.1"-style dotted indices; the empty string is the root.
  static Position parse(std::string_view text);

  const std::vector<int>& indices() const { return indices_; }
  bool is_root() const { return indices_.empty(); }
  std::size_t depth() const { return indices_.size(); }

  Position child(int index) const;
  Position parent() const;

  std::string str() const;

  friend auto operator<=>(const Position&, const Position&) = default;

 private:
  std::vector<int> indices_;
};

// Immutable path term with value semantics; copies share structure. Two terms
// compare equal when they have the same shape up to rho display tags: a
// tagged rho such as rho_x0 and the plain rho denote the same path, the tag
// only records which endpoint the reflexivity was formed at. Use identical()
// when tags matter (e.g. printing round-trips).
class PathTerm {
 public:
  static PathTerm atom(std::string name, bool inverted = false);
  static PathTerm rho(std::string tag = "");
  static PathTerm sigma(PathTerm body);
  static PathTerm tau(PathTerm first, PathTerm second);
  static PathTerm subL(PathTerm first, PathTerm second);
  static PathTerm subR(PathTerm first, PathTerm second);
  static PathTerm xi(PathTerm body);
  static PathTerm xi1(PathTerm body);
  static PathTerm xi2(PathTerm body);
  static PathTerm xiand(PathTerm first, PathTerm second);
  static PathTerm mu(PathTerm body);
  static PathTerm mu1(PathTerm body);
  static PathTerm mu2(PathTerm body);
  static PathTerm mu2x(PathTerm first, PathTerm second);
  static PathTerm mu3(PathTerm first, PathTerm second, PathTerm third);
  static PathTerm nu(PathTerm body);

  // Builds a node of the given kind from already-built children; arity must
  // match the kind. Atoms and rho cannot be built this way.
  static PathTerm make(TermKind kind, std::vector<PathTerm> children);

  TermKind kind() const;
  // Atom name, or rho display tag (empty for the plain rho).
  const std::string& name() const;
  bool inverted() const;
  const std::vector<PathTerm>& children() const;
  std::size_t arity() const { return children().size(); }

  bool is_atom() const { return kind() == TermKind::Atom; }
  bool is_rho() const { return kind() == TermKind::Rho; }

  // Number of nodes in the term.
  std::size_t size() const;
  // Length of the longest root-to-leaf chain; a leaf has depth 1.
  std::size_t depth() const;

  // Structural equality, ignoring rho display tags.
  friend bool operator==(const PathTerm& a, const PathTerm& b);
  friend bool operator!=(const PathTerm& a, const PathTerm& b) { return !(a == b); }

  // Structural equality including rho display tags.
  bool identical(const PathTerm& other) const;

 private:
  struct Node;
  explicit PathTerm(std::shared_ptr<const Node> node) : node_(std::move(node)) {}
  std::shared_ptr<const Node> node_;
};

// Raised by parse_path_term and Position::parse on malformed input. Line and
// column are 1-based and point at the offending character.
class ParseError : public std::runtime_error {
 public:
  ParseError(const std::string& message, int line, int column);
  int line() const { return line_; }
  int column() const { return column_; }

 private:
  int line_;
  int column_;
};

// Parses the canonical term syntax:
//   term ::= ident "'"? | "rho" | "rho_"tag | ctor "(" term {"," term} ")"
// where ctor is one of sigma tau subL subR xi xi1 xi2 xiand mu mu1 mu2 mu2x
// mu3 nu, and ident is [a-zA-Z][a-zA-Z0-9_]* and not a reserved name. A
// trailing apostrophe marks an inverted atom (used by the group layer).
PathTerm parse_path_term(std::string_view input);

// Canonical rendering: constructor names as above, no whitespace, children
// separated by commas, e.g. "tau(rho_x0,r)". parse_path_term is a left
// inverse of this function.
std::string format_path_term(const PathTerm& term);

// All positions of t in pre-order (equivalently: sorted lexicographically).
std::vector<Position> positions(const PathTerm& term);

// Subterm of t at p; throws std::out_of_range if p does not address a node.
PathTerm subterm_at(const PathTerm& term, const Position& position);

// Replaces the subterm of t at p with the given term; throws
// std::out_of_range if p does not address a node.
PathTerm replace_at(const PathTerm& term, const Position& position,
                    const PathTerm& replacement);

}  // namespace pathcalc
