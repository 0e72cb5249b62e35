#pragma once

#include <memory>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "pathcalc/term.hpp"

namespace pathcalc {

enum class LambdaKind {
  Variable,
  Abstraction,
  Application,
};

// Immutable untyped λ-term with value semantics; copies share structure.
// Equality compares up to α-equivalence (renaming of bound variables), which
// is the notion of identity the step relation works with; use identical()
// when the surface spelling of binders matters (e.g. printer round-trips).
class LambdaTerm {
 public:
  static LambdaTerm variable(std::string name);
  static LambdaTerm abstraction(std::string bound, LambdaTerm body);
  static LambdaTerm application(LambdaTerm function, LambdaTerm argument);

  LambdaKind kind() const;
  bool is_variable() const { return kind() == LambdaKind::Variable; }
  bool is_abstraction() const { return kind() == LambdaKind::Abstraction; }
  bool is_application() const { return kind() == LambdaKind::Application; }

  // Variable name, or the bound name of an abstraction.
  const std::string& name() const;
  // Body of an abstraction; throws std::logic_error on other kinds.
  const LambdaTerm& body() const;
  // Function / argument of an application; throw std::logic_error otherwise.
  const LambdaTerm& function() const;
  const LambdaTerm& argument() const;

  // Number of nodes in the term.
  std::size_t size() const;

  // α-equivalence.
  friend bool operator==(const LambdaTerm& a, const LambdaTerm& b);
  friend bool operator!=(const LambdaTerm& a, const LambdaTerm& b) {
    return !(a == b);
  }

  // Structural equality including bound-variable names.
  bool identical(const LambdaTerm& other) const;

 private:
  struct Node;
  explicit LambdaTerm(std::shared_ptr<const Node> node)
      : node_(std::move(node)) {}
  std::shared_ptr<const Node> node_;
};

// Free variables of the term.
std::set<std::string> free_variables(const LambdaTerm& term);

// Capture-avoiding substitution term[replacement/name]: bound variables are
// renamed (y, y1, y2, ...) whenever they would capture a free variable of
// the replacement.
LambdaTerm substitute(const LambdaTerm& term, const std::string& name,
                      const LambdaTerm& replacement);

// Canonical α-invariant key: bound variables are replaced by de-Bruijn-style
// back-references, free variables keep their names. Two terms are
// α-equivalent exactly when their keys coincide, so the key can serve as a
// map index for term graphs.
std::string alpha_key(const LambdaTerm& term);

// Contraction axioms of βη-reduction. Beta rewrites (λx.M)N to M[N/x]; Eta
// rewrites λx.(M x) to M when x is not free in M (the pattern is matched
// syntactically on the stored binder, which is α-invariant).
enum class StepAxiom {
  Beta,
  Eta,
};

// One hop of the descent from the root of a term to a redex: into the
// function side of an application (congruence ν), into the argument side
// (congruence μ), or under a binder (congruence ξ).
enum class StepContext {
  Function,
  Argument,
  Body,
};

// A single contraction at some position of `before`, producing `after`. The
// context records the descent from the root, outermost hop first; label()
// renders it as a path-term atom ("beta" or "eta") wrapped in the matching
// congruence constructors, e.g. nu(xi(mu(eta))) for an η-step inside the
// argument of an application that sits under a binder on the function side.
struct LabelledStep {
  StepAxiom axiom;
  std::vector<StepContext> context;
  LambdaTerm before;
  LambdaTerm after;

  PathTerm label() const;
};

// All single-step contractions of the term: η-contractions first, then
// β-contractions, each group in pre-order position. Substitution in β-steps
// is capture-avoiding. The order is deterministic and is the successor order
// used by the path searches below; putting the strictly size-decreasing
// η-steps first reproduces the usual hand derivations.
std::vector<LabelledStep> one_step_reductions(const LambdaTerm& term);

// One leg of a route between two terms: a contraction taken forwards
// (before → after) or backwards (after → before). Backward legs appear when
// a route has to climb from a common reduct up to the target.
struct RouteStep {
  LabelledStep step;
  bool reversed = false;
};

// Composes route legs into a path term: each leg contributes its label,
// wrapped in sigma when the leg is reversed, and the legs are joined with
// tau, left-nested in route order. An empty route composes to rho().
PathTerm compose_route(const std::vector<RouteStep>& route);

// Searches for a chain of at most max_steps contractions and reversed
// contractions connecting m to n modulo α. The search is breadth-first from
// both endpoints over α-canonical keys, so it finds valley routes: forward
// legs from m down to a common reduct, then reversed legs up to n. Returns
// the route (empty when m and n are already α-equivalent), or nothing when
// the endpoints are not connected within the bound. The search effort is
// capped, so pathological fan-outs fail finitely; throws
// std::invalid_argument when max_steps < 1.
std::optional<std::vector<RouteStep>> find_route(const LambdaTerm& m,
                                                 const LambdaTerm& n,
                                                 int max_steps = 12);

// compose_route of find_route: the connecting path term, rho() when m and n
// are α-equivalent, a single (possibly sigma-wrapped) label for one-step
// routes, and nothing when no route exists within the bound.
std::optional<PathTerm> find_path(const LambdaTerm& m, const LambdaTerm& n,
                                  int max_steps = 12);

// All contraction-only routes from m to n of length at most max_steps, as
// composed path terms in depth-first successor order. Routes stop at the
// first visit of n and never revisit a term already on the chain. Useful for
// enumerating the distinct derivations of one reduction; the number of
// returned routes is capped.
std::vector<PathTerm> find_paths(const LambdaTerm& m, const LambdaTerm& n,
                                 int max_steps = 12);

// Strips the congruence wrappers xi/nu/mu from a composed route label,
// keeping rho, sigma, tau and the axiom atoms: the skeleton of a route,
// e.g. tau(tau(eta,beta),beta).
PathTerm label_skeleton(const PathTerm& path);

// Parses λ-syntax: "\x. body" (a literal "λ" is also accepted), application
// by juxtaposition (left-associative), parentheses, identifiers
// [a-zA-Z][a-zA-Z0-9_]*. An abstraction body extends as far right as
// possible. Throws ParseError with a 1-based location on malformed input.
LambdaTerm parse_lambda(std::string_view input);

// Renders the term in the syntax accepted by parse_lambda, parenthesizing
// abstractions on the function side and non-atomic arguments:
// "\x.(\y.y x) (\w.z w)". parse_lambda(format_lambda(t)) is identical to t.
std::string format_lambda(const LambdaTerm& term);

}  // namespace pathcalc
