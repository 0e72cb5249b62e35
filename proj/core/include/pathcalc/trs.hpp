#pragma once

#include <cstddef>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "pathcalc/term.hpp"

namespace pathcalc {

// Structural rules rewrite a fixed left-hand-side shape; contextual rules
// (3-12, 38, 39) mention a one-hole context C[.] shared between two
// arguments and are matched by context alignment (see align below).
enum class RuleKind { Structural, Contextual };

enum class StepDirection { Forward, Reversed };

enum class Strategy { LeftmostInnermost, LeftmostOutermost };

struct TrsOptions {
  // Rule 39 (tst) is printed in the catalogue with result u, which is not
  // endpoint-coherent; by default the engine mirrors rule 38 and keeps the
  // continuation v. Set strict_rule39 to reproduce the printed behaviour.
  bool strict_rule39 = false;
  // By default the context C[.] of rules 3-12, 38 and 39 ranges over chains
  // of the unary congruence operators (sigma, xi, nu, mu): C[rho] is then a
  // reflexivity path and the cancellations are sound. Set arbitrary_contexts
  // to let C be any one-hole context; that reading admits instances such as
  // tau(tau(a,rho),tau(a,b)) > tau(a,b) which equate paths with different
  // endpoints, and it loses confluence.
  bool arbitrary_contexts = false;
};

struct RewriteRule {
  int number;        // 1-based catalogue index
  std::string name;  // the catalogue label (sr, ss, tr, ...)
  RuleKind kind;
  std::string lhs;   // pattern descriptor; for structural rules, parseable
  std::string rhs;   //   with atoms acting as pattern variables
};

// The 39 rules in catalogue order.
const std::vector<RewriteRule>& rule_catalogue();

// Catalogue entry by label, or nullptr if the name is not a rule.
const RewriteRule* find_rule(std::string_view name);

struct Redex {
  std::string rule;
  Position position;
  // Pattern-variable bindings of the match; for contextual rules these are
  // the hole contents and passengers named as in the catalogue entry.
  std::map<std::string, PathTerm> bindings;
};

// All forward-direction redexes of the term, ordered by position
// (lexicographic, i.e. pre-order) and catalogue order within a position.
// Empty iff the term is a normal form.
std::vector<Redex> find_redexes(const PathTerm& term,
                                const TrsOptions& options = {});

// Raised by contract_once when the rule does not match at the position in
// the requested direction.
class NoMatchError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Applies one rule at one position. Forward rewrites an instance of the
// left-hand side; Reversed rewrites an instance of the right-hand side back
// to the left. Reversal is deterministic where the right-hand side keeps
// every pattern variable (plus the empty-context conventions for trr, tlr,
// slr, srr); rules that erase subterms need a witness: the full replacement
// subterm, validated by re-applying the rule forward. Throws NoMatchError on
// mismatch, std::out_of_range on an invalid position and
// std::invalid_argument on an unknown rule name.
PathTerm contract_once(const PathTerm& term, std::string_view rule,
                       const Position& position, StepDirection direction,
                       const std::optional<PathTerm>& witness = std::nullopt,
                       const TrsOptions& options = {});

struct RewriteStep {
  std::string rule;
  Position position;
  StepDirection direction = StepDirection::Forward;
  PathTerm before;
  PathTerm after;
};

struct RewriteTrace {
  PathTerm initial;
  PathTerm result;
  std::vector<RewriteStep> steps;
};

struct NormalizeOutcome {
  PathTerm term;
  RewriteTrace trace;
};

// Raised when normalization does not reach a normal form within the fuel
// bound; carries the last term reached. With a terminating catalogue this
// signals a transcription bug, never silent divergence.
class FuelExhaustedError : public std::runtime_error {
 public:
  FuelExhaustedError(PathTerm last, std::size_t fuel);
  const PathTerm& last_term() const { return last_; }

 private:
  PathTerm last_;
};

// Default fuel bound: 10 * size(term)^2 contractions.
std::size_t default_fuel(const PathTerm& term);

// Rewrites to a normal form under the chosen strategy. Leftmost-innermost
// fires the first redex in post-order, leftmost-outermost the first in
// pre-order; both consult the catalogue in order at each node.
NormalizeOutcome normalize(const PathTerm& term,
                           Strategy strategy = Strategy::LeftmostInnermost,
                           std::optional<std::size_t> fuel = std::nullopt,
                           const TrsOptions& options = {});

struct RwEqualOutcome {
  bool equal = false;
  // On success: the forward trace s => nf followed by the reversed trace
  // nf => t, chaining from s to t.
  RewriteTrace trace;
};

// Decides rw-equality by normalizing both sides (sound and complete given
// the catalogue's termination and confluence).
RwEqualOutcome rw_equal(const PathTerm& s, const PathTerm& t,
                        Strategy strategy = Strategy::LeftmostInnermost,
                        std::optional<std::size_t> fuel = std::nullopt,
                        const TrsOptions& options = {});

// One line per step: "<fwd|rev> <rule> @ <position> : <term-after>".
std::string format_step(const RewriteStep& step);
std::string format_trace(const RewriteTrace& trace);

// Appendix-A subterm substitution. substitute_atom(c, y, u) replaces every
// occurrence of the atom named y in c by u.
PathTerm substitute_atom(const PathTerm& context, std::string_view name,
                         const PathTerm& value);

struct SubstConclusion {
  PathTerm path;      // subL(r,s) / subR(r,s)
  PathTerm endpoint;  // the substituted context
};

// From x =_r C[y] and y =_s u conclude x =_{subL(r,s)} C[u]; endpoint is C[u].
SubstConclusion apply_subst_left(const PathTerm& r, const PathTerm& s,
                                 const PathTerm& context, std::string_view var,
                                 const PathTerm& u);

// From x =_r w and C[w] =_s u conclude C[x] =_{subR(r,s)} u; endpoint is C[x].
SubstConclusion apply_subst_right(const PathTerm& r, const PathTerm& s,
                                  const PathTerm& context, std::string_view var,
                                  const PathTerm& x);

}  // namespace pathcalc
