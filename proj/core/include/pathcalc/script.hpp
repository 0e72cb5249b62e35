#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "pathcalc/term.hpp"
#include "pathcalc/trs.hpp"

namespace pathcalc {

// A named directed equation lhs = rhs over path terms. Scripts may declare
// axioms for facts that are not rewrite rules (commutation of specific
// atoms, say) and then apply them like rules: forward replaces an exact
// occurrence of lhs by rhs, reversed replaces rhs by lhs.
struct ScriptAxiom {
  std::string name;
  PathTerm lhs;
  PathTerm rhs;
};

// One step of a derivation: apply the named rewrite rule or declared axiom
// at the given position, forward or reversed. A reversed rule application
// that erases no information is deterministic; when the rule forgets part of
// the term (tr erases its passenger, tt has no inverse pattern at an
// arbitrary node, ...) the step carries a witness — the exact subterm the
// reversed step introduces — and the verifier checks that contracting the
// witness forward reproduces the subterm being replaced. Axiom steps never
// take a witness: both sides of an equation are explicit.
struct ScriptStep {
  StepDirection direction = StepDirection::Forward;
  std::string name;
  Position position;
  std::optional<PathTerm> witness;
};

// A replayable derivation: start and target terms, the axioms in scope, and
// the ordered list of steps claimed to connect them.
struct ProofScript {
  std::vector<ScriptAxiom> axioms;
  PathTerm start;
  PathTerm target;
  std::vector<ScriptStep> steps;
};

// One successfully replayed step, with the whole term before and after.
struct VerifiedStep {
  ScriptStep step;
  PathTerm before;
  PathTerm after;
};

// Outcome of replaying a script. Rejection is a verdict, not an error:
// rejected_step holds the index of the offending step, or steps.size() when
// every step replayed but the final term differs from the target. steps
// records the prefix that replayed successfully; final_term is the last
// term reached (the target itself when accepted).
struct VerificationReport {
  bool accepted = false;
  std::optional<std::size_t> rejected_step;
  std::string reason;
  std::vector<VerifiedStep> steps;
  PathTerm final_term;
};

// Parses the line-oriented script format:
//
//   # comment lines and blank lines are skipped
//   axiom <name>: <term> = <term>     (zero or more, before start)
//   start: <term>
//   target: <term>
//   steps:
//   <fwd|rev> <name> @ <position>
//   <fwd|rev> <name> @ <position> ! <witness-term>
//
// The position is in dotted-child syntax ("0.1"); an empty position denotes
// the root. Throws ParseError (with a 1-based line) on malformed lines,
// duplicate axiom names, axiom names that shadow one of the 39 rewrite
// rules, missing or repeated start/target/steps, steps naming neither a
// rule nor a declared axiom, and unparsable terms.
ProofScript parse_script(std::string_view text);

// Renders the script in the syntax accepted by parse_script.
// parse_script(format_script(s)) reproduces s.
std::string format_script(const ProofScript& script);

// Replays the script step by step. Rule steps go through the rewrite
// engine; axiom steps require the subterm at the position to equal the
// source side of the equation exactly, and replace it by the other side.
// Accepted iff every step replays and the final term structurally equals
// the target. Never throws on bad steps — failure is reported in the
// verdict.
VerificationReport verify_script(const ProofScript& script,
                                 const TrsOptions& options = {});

// The inverse derivation: start and target swapped, steps reversed in order
// with each direction flipped. Rule steps that become reversed receive the
// subterm they must reintroduce as a witness, so the result verifies even
// for erasing rules. Requires the input to verify; throws
// std::invalid_argument otherwise.
ProofScript reverse_script(const ProofScript& script,
                           const TrsOptions& options = {});

// A bundled derivation in script text form, ready for parse_script.
struct BundledScript {
  std::string name;
  std::string text;
};

// The derivations shipped with the library: the loop-space group laws on
// computational paths (homomorphism, unit, inverse and associativity
// chains, base-point transport both ways and both composites), the torus
// commutator collapse, and the word-reduction cases behind the surface
// solvers, each instantiated at concrete exponents.
const std::vector<BundledScript>& bundled_scripts();

// Parses and verifies every bundled script, in bundle order. All reports
// come back accepted; this is the one-call reproduction of the derivation
// chains the rest of the library is built on.
std::vector<std::pair<std::string, VerificationReport>> bundled_paper_suite();

}  // namespace pathcalc
