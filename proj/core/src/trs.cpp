#include "pathcalc/trs.hpp"

#include <algorithm>
#include <array>
#include <set>
#include <sstream>
#include <utility>

namespace pathcalc {
namespace {

using Bindings = std::map<std::string, PathTerm>;

struct RuleDef {
  int number;
  const char* name;
  RuleKind kind;
  const char* lhs;
  const char* rhs;
};

// Catalogue order and labels follow the published rule list one-to-one.
// Structural lhs/rhs strings double as parseable patterns in which atoms are
// pattern variables and "rho" matches any (tagged or plain) rho.
constexpr std::array<RuleDef, 39> kRuleDefs{{
    {1, "sr", RuleKind::Structural, "sigma(rho)", "rho"},
    {2, "ss", RuleKind::Structural, "sigma(sigma(r))", "r"},
    {3, "tr", RuleKind::Contextual, "tau(C[r],C[sigma(r)])", "C[rho]"},
    {4, "tsr", RuleKind::Contextual, "tau(C[sigma(r)],C[r])", "C[rho]"},
    {5, "trr", RuleKind::Contextual, "tau(C[r],C[rho])", "C[r]"},
    {6, "tlr", RuleKind::Contextual, "tau(C[rho],C[r])", "C[r]"},
    {7, "slr", RuleKind::Contextual, "subL(C[r],C[rho])", "C[r]"},
    {8, "srr", RuleKind::Contextual, "subR(C[rho],C[r])", "C[r]"},
    {9, "sls", RuleKind::Contextual, "subL(subL(s,C[r]),C[sigma(r)])", "s"},
    {10, "slss", RuleKind::Contextual, "subL(subL(s,C[sigma(r)]),C[r])", "s"},
    {11, "srs", RuleKind::Contextual, "subR(C[s],subR(C[sigma(s)],r))", "r"},
    {12, "srrr", RuleKind::Contextual, "subR(C[sigma(s)],subR(C[s],r))", "r"},
    {13, "mx2l1", RuleKind::Structural, "mu1(xi1(r))", "r"},
    {14, "mx2l2", RuleKind::Structural, "mu1(xiand(r,s))", "r"},
    {15, "mx2r1", RuleKind::Structural, "mu2(xiand(r,s))", "s"},
    {16, "mx2r2", RuleKind::Structural, "mu2(xi2(s))", "s"},
    {17, "mx3l", RuleKind::Structural, "mu3(xi1(r),s,u)", "s"},
    {18, "mx3r", RuleKind::Structural, "mu3(xi2(r),s,u)", "u"},
    {19, "mxl", RuleKind::Structural, "nu(xi(r))", "r"},
    {20, "mxr", RuleKind::Structural, "mu2x(xi2(r),s)", "s"},
    {21, "mx", RuleKind::Structural, "xiand(mu1(r),mu2(r))", "r"},
    {22, "mxx", RuleKind::Structural, "mu3(t,xi1(r),xi2(s))", "t"},
    {23, "xmr", RuleKind::Structural, "xi(nu(r))", "r"},
    {24, "mx1r", RuleKind::Structural, "mu2x(s,xi2(r))", "s"},
    {25, "stss", RuleKind::Structural, "sigma(tau(r,s))", "tau(sigma(s),sigma(r))"},
    {26, "ssbl", RuleKind::Structural, "sigma(subL(r,s))", "subR(sigma(s),sigma(r))"},
    {27, "ssbr", RuleKind::Structural, "sigma(subR(r,s))", "subL(sigma(s),sigma(r))"},
    {28, "sx", RuleKind::Structural, "sigma(xi(r))", "xi(sigma(r))"},
    {29, "sxss", RuleKind::Structural, "sigma(xiand(s,r))", "xiand(sigma(s),sigma(r))"},
    {30, "sm", RuleKind::Structural, "sigma(mu(r))", "mu(sigma(r))"},
    {31, "smss", RuleKind::Structural, "sigma(mu2x(s,r))", "mu2x(sigma(s),sigma(r))"},
    {32, "smsss", RuleKind::Structural, "sigma(mu3(r,u,v))", "mu3(sigma(r),sigma(u),sigma(v))"},
    {33, "tsbll", RuleKind::Structural, "tau(r,subL(rho,s))", "subL(r,s)"},
    {34, "tsbrl", RuleKind::Structural, "tau(r,subR(s,rho))", "subL(r,s)"},
    {35, "tsblr", RuleKind::Structural, "tau(subL(r,s),t)", "tau(r,subR(s,t))"},
    {36, "tsbrr", RuleKind::Structural, "tau(subR(s,t),u)", "subR(s,tau(t,u))"},
    {37, "tt", RuleKind::Structural, "tau(tau(t,r),s)", "tau(t,tau(r,s))"},
    {38, "tts", RuleKind::Contextual, "tau(C[u],tau(C[sigma(u)],v))", "v"},
    {39, "tst", RuleKind::Contextual, "tau(C[sigma(u)],tau(C[u],v))", "u"},
}};

struct StructuralRule {
  PathTerm lhs;
  PathTerm rhs;
  bool reversible;  // every lhs variable also occurs in rhs
};

void collect_vars(const PathTerm& pattern, std::set<std::string>& out) {
  if (pattern.is_atom()) {
    out.insert(pattern.name());
    return;
  }
  for (const PathTerm& child : pattern.children()) collect_vars(child, out);
}

const std::map<int, StructuralRule>& structural_rules() {
  static const std::map<int, StructuralRule> rules = [] {
    std::map<int, StructuralRule> out;
    for (const RuleDef& def : kRuleDefs) {
      if (def.kind != RuleKind::Structural) continue;
      PathTerm lhs = parse_path_term(def.lhs);
      PathTerm rhs = parse_path_term(def.rhs);
      std::set<std::string> lhs_vars;
      std::set<std::string> rhs_vars;
      collect_vars(lhs, lhs_vars);
      collect_vars(rhs, rhs_vars);
      bool reversible = std::includes(rhs_vars.begin(), rhs_vars.end(),
                                      lhs_vars.begin(), lhs_vars.end());
      out.emplace(def.number,
                  StructuralRule{std::move(lhs), std::move(rhs), reversible});
    }
    return out;
  }();
  return rules;
}

bool match_pattern(const PathTerm& pattern, const PathTerm& subject,
                   Bindings& bindings) {
  switch (pattern.kind()) {
    case TermKind::Atom: {
      auto [it, inserted] = bindings.emplace(pattern.name(), subject);
      return inserted || it->second == subject;
    }
    case TermKind::Rho:
      return subject.is_rho();
    default:
      break;
  }
  if (subject.kind() != pattern.kind()) return false;
  for (std::size_t i = 0; i < pattern.arity(); ++i) {
    if (!match_pattern(pattern.children()[i], subject.children()[i], bindings)) {
      return false;
    }
  }
  return true;
}

PathTerm instantiate(const PathTerm& pattern, const Bindings& bindings) {
  switch (pattern.kind()) {
    case TermKind::Atom:
      return bindings.at(pattern.name());
    case TermKind::Rho:
      return PathTerm::rho();
    default:
      break;
  }
  std::vector<PathTerm> children;
  children.reserve(pattern.arity());
  for (const PathTerm& child : pattern.children()) {
    children.push_back(instantiate(child, bindings));
  }
  return PathTerm::make(pattern.kind(), std::move(children));
}

// The unary congruence operators admissible in a context spine.
bool is_wrapper(TermKind kind) {
  return kind == TermKind::Sigma || kind == TermKind::Xi ||
         kind == TermKind::Nu || kind == TermKind::Mu;
}

// Finds the smallest position p (lexicographically) such that a and b agree
// everywhere outside p and pred(a|p, b|p) holds. By default the path from
// the root to p must pass only through unary congruence operators (C is a
// wrapper chain); with `arbitrary` any one-hole context is allowed. When
// a != b the candidates are exactly the positions on the divergence chain:
// descend while exactly one child differs.
template <typename Pred>
std::optional<Position> align_contexts(const PathTerm& a, const PathTerm& b,
                                       Pred&& pred, bool arbitrary) {
  if (a == b) {
    if (arbitrary) {
      for (const Position& p : positions(a)) {
        PathTerm hole = subterm_at(a, p);
        if (pred(hole, subterm_at(b, p))) return p;
      }
      return std::nullopt;
    }
    std::vector<int> spine;
    const PathTerm* node = &a;
    while (true) {
      if (pred(*node, *node)) return Position(spine);
      if (!is_wrapper(node->kind())) return std::nullopt;
      spine.push_back(0);
      node = &node->children()[0];
    }
  }
  std::vector<int> chain;
  const PathTerm* x = &a;
  const PathTerm* y = &b;
  while (true) {
    if (pred(*x, *y)) return Position(chain);
    if (!arbitrary && !is_wrapper(x->kind())) return std::nullopt;
    if (x->kind() != y->kind() || x->arity() != y->arity()) return std::nullopt;
    int diff = -1;
    bool multiple = false;
    for (std::size_t i = 0; i < x->arity(); ++i) {
      if (!(x->children()[i] == y->children()[i])) {
        if (diff >= 0) {
          multiple = true;
          break;
        }
        diff = static_cast<int>(i);
      }
    }
    if (diff < 0 || multiple) return std::nullopt;
    chain.push_back(diff);
    x = &x->children()[static_cast<std::size_t>(diff)];
    y = &y->children()[static_cast<std::size_t>(diff)];
  }
}

bool is_sigma_of(const PathTerm& t, const PathTerm& base) {
  return t.kind() == TermKind::Sigma && t.children()[0] == base;
}

struct Match {
  PathTerm result;
  Bindings bindings;
};

// Forward application of one rule at the root of `node`.
std::optional<Match> apply_forward(const RewriteRule& rule, const PathTerm& node,
                                   const TrsOptions& options) {
  if (rule.kind == RuleKind::Structural) {
    const StructuralRule& pat = structural_rules().at(rule.number);
    Bindings bindings;
    if (!match_pattern(pat.lhs, node, bindings)) return std::nullopt;
    return Match{instantiate(pat.rhs, bindings), std::move(bindings)};
  }

  auto hole_is_sigma_of_other = [](const PathTerm& x, const PathTerm& y) {
    return is_sigma_of(y, x);
  };
  auto other_is_sigma_of_hole = [](const PathTerm& x, const PathTerm& y) {
    return is_sigma_of(x, y);
  };
  auto second_is_rho = [](const PathTerm&, const PathTerm& y) { return y.is_rho(); };
  auto first_is_rho = [](const PathTerm& x, const PathTerm&) { return x.is_rho(); };

  switch (rule.number) {
    case 3: {  // tr: tau(C[r],C[sigma(r)]) > C[rho]
      if (node.kind() != TermKind::Tau) return std::nullopt;
      const PathTerm& u = node.children()[0];
      const PathTerm& v = node.children()[1];
      auto p = align_contexts(u, v, hole_is_sigma_of_other, options.arbitrary_contexts);
      if (!p) return std::nullopt;
      Match m{replace_at(u, *p, PathTerm::rho()), {}};
      m.bindings.emplace("r", subterm_at(u, *p));
      return m;
    }
    case 4: {  // tsr: tau(C[sigma(r)],C[r]) > C[rho]
      if (node.kind() != TermKind::Tau) return std::nullopt;
      const PathTerm& u = node.children()[0];
      const PathTerm& v = node.children()[1];
      auto p = align_contexts(u, v, other_is_sigma_of_hole, options.arbitrary_contexts);
      if (!p) return std::nullopt;
      Match m{replace_at(u, *p, PathTerm::rho()), {}};
      m.bindings.emplace("r", subterm_at(v, *p));
      return m;
    }
    case 5:    // trr: tau(C[r],C[rho]) > C[r]
    case 7: {  // slr: subL(C[r],C[rho]) > C[r]
      TermKind want = rule.number == 5 ? TermKind::Tau : TermKind::SubL;
      if (node.kind() != want) return std::nullopt;
      const PathTerm& u = node.children()[0];
      const PathTerm& v = node.children()[1];
      auto p = align_contexts(u, v, second_is_rho, options.arbitrary_contexts);
      if (!p) return std::nullopt;
      Match m{u, {}};
      m.bindings.emplace("r", subterm_at(u, *p));
      return m;
    }
    case 6:    // tlr: tau(C[rho],C[r]) > C[r]
    case 8: {  // srr: subR(C[rho],C[r]) > C[r]
      TermKind want = rule.number == 6 ? TermKind::Tau : TermKind::SubR;
      if (node.kind() != want) return std::nullopt;
      const PathTerm& u = node.children()[0];
      const PathTerm& v = node.children()[1];
      auto p = align_contexts(u, v, first_is_rho, options.arbitrary_contexts);
      if (!p) return std::nullopt;
      Match m{v, {}};
      m.bindings.emplace("r", subterm_at(v, *p));
      return m;
    }
    case 9:     // sls:  subL(subL(s,C[r]),C[sigma(r)]) > s
    case 10: {  // slss: subL(subL(s,C[sigma(r)]),C[r]) > s
      if (node.kind() != TermKind::SubL) return std::nullopt;
      const PathTerm& inner = node.children()[0];
      if (inner.kind() != TermKind::SubL) return std::nullopt;
      const PathTerm& s = inner.children()[0];
      const PathTerm& c = inner.children()[1];
      const PathTerm& w = node.children()[1];
      auto p = rule.number == 9 ? align_contexts(c, w, hole_is_sigma_of_other, options.arbitrary_contexts)
                                : align_contexts(c, w, other_is_sigma_of_hole, options.arbitrary_contexts);
      if (!p) return std::nullopt;
      Match m{s, {}};
      m.bindings.emplace("s", s);
      m.bindings.emplace("r", rule.number == 9 ? subterm_at(c, *p) : subterm_at(w, *p));
      return m;
    }
    case 11:    // srs:  subR(C[s],subR(C[sigma(s)],r)) > r
    case 12: {  // srrr: subR(C[sigma(s)],subR(C[s],r)) > r
      if (node.kind() != TermKind::SubR) return std::nullopt;
      const PathTerm& x = node.children()[0];
      const PathTerm& inner = node.children()[1];
      if (inner.kind() != TermKind::SubR) return std::nullopt;
      const PathTerm& w = inner.children()[0];
      const PathTerm& r = inner.children()[1];
      auto p = rule.number == 11 ? align_contexts(x, w, hole_is_sigma_of_other, options.arbitrary_contexts)
                                 : align_contexts(x, w, other_is_sigma_of_hole, options.arbitrary_contexts);
      if (!p) return std::nullopt;
      Match m{r, {}};
      m.bindings.emplace("s", rule.number == 11 ? subterm_at(x, *p) : subterm_at(w, *p));
      m.bindings.emplace("r", r);
      return m;
    }
    case 38:    // tts: tau(C[u],tau(C[sigma(u)],v)) > v
    case 39: {  // tst: tau(C[sigma(u)],tau(C[u],v)) > v (u in strict mode)
      if (node.kind() != TermKind::Tau) return std::nullopt;
      const PathTerm& x = node.children()[0];
      const PathTerm& inner = node.children()[1];
      if (inner.kind() != TermKind::Tau) return std::nullopt;
      const PathTerm& w = inner.children()[0];
      const PathTerm& v = inner.children()[1];
      auto p = rule.number == 38 ? align_contexts(x, w, hole_is_sigma_of_other, options.arbitrary_contexts)
                                 : align_contexts(x, w, other_is_sigma_of_hole, options.arbitrary_contexts);
      if (!p) return std::nullopt;
      PathTerm hole = rule.number == 38 ? subterm_at(x, *p) : subterm_at(w, *p);
      PathTerm result = (rule.number == 39 && options.strict_rule39) ? hole : v;
      Match m{std::move(result), {}};
      m.bindings.emplace("u", std::move(hole));
      m.bindings.emplace("v", v);
      return m;
    }
    default:
      return std::nullopt;
  }
}

// Deterministic reverse application at the root of `node`, where possible.
std::optional<PathTerm> reverse_deterministic(const RewriteRule& rule,
                                              const PathTerm& node) {
  if (rule.kind == RuleKind::Structural) {
    const StructuralRule& pat = structural_rules().at(rule.number);
    if (!pat.reversible) return std::nullopt;
    Bindings bindings;
    if (!match_pattern(pat.rhs, node, bindings)) return std::nullopt;
    return instantiate(pat.lhs, bindings);
  }
  // Empty-context conventions for the rho-elimination rules; the other
  // contextual rules erase a whole passenger and need a witness.
  switch (rule.number) {
    case 5:  // trr
      return PathTerm::tau(node, PathTerm::rho());
    case 6:  // tlr
      return PathTerm::tau(PathTerm::rho(), node);
    case 7:  // slr
      return PathTerm::subL(node, PathTerm::rho());
    case 8:  // srr
      return PathTerm::subR(PathTerm::rho(), node);
    default:
      return std::nullopt;
  }
}

void postorder_positions(const PathTerm& term, Position& current,
                         std::vector<Position>& out) {
  for (std::size_t i = 0; i < term.arity(); ++i) {
    current = current.child(static_cast<int>(i));
    postorder_positions(term.children()[i], current, out);
    current = current.parent();
  }
  out.push_back(current);
}

}  // namespace

const std::vector<RewriteRule>& rule_catalogue() {
  static const std::vector<RewriteRule> catalogue = [] {
    std::vector<RewriteRule> out;
    out.reserve(kRuleDefs.size());
    for (const RuleDef& def : kRuleDefs) {
      out.push_back(RewriteRule{def.number, def.name, def.kind, def.lhs, def.rhs});
    }
    return out;
  }();
  return catalogue;
}

const RewriteRule* find_rule(std::string_view name) {
  for (const RewriteRule& rule : rule_catalogue()) {
    if (rule.name == name) return &rule;
  }
  return nullptr;
}

std::vector<Redex> find_redexes(const PathTerm& term, const TrsOptions& options) {
  std::vector<Redex> out;
  for (const Position& p : positions(term)) {
    PathTerm sub = subterm_at(term, p);
    for (const RewriteRule& rule : rule_catalogue()) {
      if (auto m = apply_forward(rule, sub, options)) {
        out.push_back(Redex{rule.name, p, std::move(m->bindings)});
      }
    }
  }
  return out;
}

PathTerm contract_once(const PathTerm& term, std::string_view rule_name,
                       const Position& position, StepDirection direction,
                       const std::optional<PathTerm>& witness,
                       const TrsOptions& options) {
  const RewriteRule* rule = find_rule(rule_name);
  if (rule == nullptr) {
    throw std::invalid_argument("unknown rule '" + std::string(rule_name) + "'");
  }
  PathTerm sub = subterm_at(term, position);

  if (direction == StepDirection::Forward) {
    auto m = apply_forward(*rule, sub, options);
    if (!m) {
      throw NoMatchError("rule '" + rule->name + "' does not match at position '" +
                         position.str() + "'");
    }
    return replace_at(term, position, m->result);
  }

  if (witness) {
    auto forward = apply_forward(*rule, *witness, options);
    if (!forward || !(forward->result == sub)) {
      throw NoMatchError("witness for reversed '" + rule->name +
                         "' does not contract back to the subterm at position '" +
                         position.str() + "'");
    }
    return replace_at(term, position, *witness);
  }
  auto reversed = reverse_deterministic(*rule, sub);
  if (!reversed) {
    throw NoMatchError("rule '" + rule->name +
                       "' cannot be reversed deterministically at position '" +
                       position.str() + "'; supply a witness");
  }
  return replace_at(term, position, *reversed);
}

FuelExhaustedError::FuelExhaustedError(PathTerm last, std::size_t fuel)
    : std::runtime_error("normalization exhausted its fuel of " +
                         std::to_string(fuel) + " contractions; last term: " +
                         format_path_term(last)),
      last_(std::move(last)) {}

std::size_t default_fuel(const PathTerm& term) {
  std::size_t n = term.size();
  return 10 * n * n;
}

namespace {

struct FiredRedex {
  const RewriteRule* rule;
  Position position;
  PathTerm result;  // new subterm at position
};

std::optional<FiredRedex> first_redex(const PathTerm& term, Strategy strategy,
                                      const TrsOptions& options) {
  std::vector<Position> order;
  if (strategy == Strategy::LeftmostInnermost) {
    Position current;
    postorder_positions(term, current, order);
  } else {
    order = positions(term);
  }
  for (const Position& p : order) {
    PathTerm sub = subterm_at(term, p);
    for (const RewriteRule& rule : rule_catalogue()) {
      if (auto m = apply_forward(rule, sub, options)) {
        return FiredRedex{&rule, p, std::move(m->result)};
      }
    }
  }
  return std::nullopt;
}

}  // namespace

NormalizeOutcome normalize(const PathTerm& term, Strategy strategy,
                           std::optional<std::size_t> fuel,
                           const TrsOptions& options) {
  const std::size_t budget = fuel.value_or(default_fuel(term));
  RewriteTrace trace{term, term, {}};
  PathTerm current = term;
  std::size_t spent = 0;
  while (auto redex = first_redex(current, strategy, options)) {
    if (spent == budget) throw FuelExhaustedError(current, budget);
    PathTerm after = replace_at(current, redex->position, redex->result);
    trace.steps.push_back(RewriteStep{redex->rule->name, redex->position,
                                      StepDirection::Forward, current, after});
    current = after;
    ++spent;
  }
  trace.result = current;
  return NormalizeOutcome{std::move(current), std::move(trace)};
}

RwEqualOutcome rw_equal(const PathTerm& s, const PathTerm& t, Strategy strategy,
                        std::optional<std::size_t> fuel, const TrsOptions& options) {
  NormalizeOutcome left = normalize(s, strategy, fuel, options);
  NormalizeOutcome right = normalize(t, strategy, fuel, options);
  RwEqualOutcome out{left.term == right.term, RewriteTrace{s, t, {}}};
  if (!out.equal) return out;
  out.trace.steps = left.trace.steps;
  for (auto it = right.trace.steps.rbegin(); it != right.trace.steps.rend(); ++it) {
    out.trace.steps.push_back(RewriteStep{it->rule, it->position,
                                          StepDirection::Reversed, it->after,
                                          it->before});
  }
  return out;
}

std::string format_step(const RewriteStep& step) {
  std::string line = step.direction == StepDirection::Forward ? "fwd" : "rev";
  line += " ";
  line += step.rule;
  line += " @ ";
  line += step.position.str();
  line += " : ";
  line += format_path_term(step.after);
  return line;
}

std::string format_trace(const RewriteTrace& trace) {
  std::string out;
  for (const RewriteStep& step : trace.steps) {
    out += format_step(step);
    out += "\n";
  }
  return out;
}

PathTerm substitute_atom(const PathTerm& context, std::string_view name,
                         const PathTerm& value) {
  if (context.is_atom() && !context.inverted() && context.name() == name) {
    return value;
  }
  if (context.arity() == 0) return context;
  std::vector<PathTerm> children;
  children.reserve(context.arity());
  for (const PathTerm& child : context.children()) {
    children.push_back(substitute_atom(child, name, value));
  }
  return PathTerm::make(context.kind(), std::move(children));
}

SubstConclusion apply_subst_left(const PathTerm& r, const PathTerm& s,
                                 const PathTerm& context, std::string_view var,
                                 const PathTerm& u) {
  return SubstConclusion{PathTerm::subL(r, s), substitute_atom(context, var, u)};
}

SubstConclusion apply_subst_right(const PathTerm& r, const PathTerm& s,
                                  const PathTerm& context, std::string_view var,
                                  const PathTerm& x) {
  return SubstConclusion{PathTerm::subR(r, s), substitute_atom(context, var, x)};
}

}  // namespace pathcalc
