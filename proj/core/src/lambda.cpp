#include "pathcalc/lambda.hpp"

#include <algorithm>
#include <cctype>
#include <functional>
#include <map>
#include <stdexcept>
#include <utility>

namespace pathcalc {

struct LambdaTerm::Node {
  LambdaKind kind;
  std::string name;                  // variable name or binder; empty for applications
  std::vector<LambdaTerm> children;  // abstraction: [body]; application: [function, argument]
};

LambdaTerm LambdaTerm::variable(std::string name) {
  return LambdaTerm(std::make_shared<const Node>(
      Node{LambdaKind::Variable, std::move(name), {}}));
}

LambdaTerm LambdaTerm::abstraction(std::string bound, LambdaTerm body) {
  return LambdaTerm(std::make_shared<const Node>(
      Node{LambdaKind::Abstraction, std::move(bound), {std::move(body)}}));
}

LambdaTerm LambdaTerm::application(LambdaTerm function, LambdaTerm argument) {
  return LambdaTerm(std::make_shared<const Node>(Node{
      LambdaKind::Application, "", {std::move(function), std::move(argument)}}));
}

LambdaKind LambdaTerm::kind() const { return node_->kind; }

const std::string& LambdaTerm::name() const {
  if (node_->kind == LambdaKind::Application) {
    throw std::logic_error("LambdaTerm::name: applications are unnamed");
  }
  return node_->name;
}

const LambdaTerm& LambdaTerm::body() const {
  if (node_->kind != LambdaKind::Abstraction) {
    throw std::logic_error("LambdaTerm::body: not an abstraction");
  }
  return node_->children[0];
}

const LambdaTerm& LambdaTerm::function() const {
  if (node_->kind != LambdaKind::Application) {
    throw std::logic_error("LambdaTerm::function: not an application");
  }
  return node_->children[0];
}

const LambdaTerm& LambdaTerm::argument() const {
  if (node_->kind != LambdaKind::Application) {
    throw std::logic_error("LambdaTerm::argument: not an application");
  }
  return node_->children[1];
}

std::size_t LambdaTerm::size() const {
  std::size_t total = 1;
  for (const LambdaTerm& child : node_->children) total += child.size();
  return total;
}

namespace {

// Looks the name up in a binder stack; returns the de-Bruijn distance to the
// innermost matching binder, or -1 when the name is free.
int binder_distance(const std::vector<std::string>& env,
                    const std::string& name) {
  for (std::size_t i = env.size(); i-- > 0;) {
    if (env[i] == name) return static_cast<int>(env.size() - 1 - i);
  }
  return -1;
}

bool alpha_equal(const LambdaTerm& a, const LambdaTerm& b,
                 std::vector<std::string>& env_a,
                 std::vector<std::string>& env_b) {
  if (a.kind() != b.kind()) return false;
  switch (a.kind()) {
    case LambdaKind::Variable: {
      const int da = binder_distance(env_a, a.name());
      const int db = binder_distance(env_b, b.name());
      if (da != db) return false;
      return da >= 0 || a.name() == b.name();
    }
    case LambdaKind::Abstraction: {
      env_a.push_back(a.name());
      env_b.push_back(b.name());
      const bool same = alpha_equal(a.body(), b.body(), env_a, env_b);
      env_a.pop_back();
      env_b.pop_back();
      return same;
    }
    case LambdaKind::Application:
      return alpha_equal(a.function(), b.function(), env_a, env_b) &&
             alpha_equal(a.argument(), b.argument(), env_a, env_b);
  }
  return false;
}

}  // namespace

bool operator==(const LambdaTerm& a, const LambdaTerm& b) {
  std::vector<std::string> env_a;
  std::vector<std::string> env_b;
  return alpha_equal(a, b, env_a, env_b);
}

bool LambdaTerm::identical(const LambdaTerm& other) const {
  if (node_ == other.node_) return true;
  if (node_->kind != other.node_->kind || node_->name != other.node_->name) {
    return false;
  }
  for (std::size_t i = 0; i < node_->children.size(); ++i) {
    if (!node_->children[i].identical(other.node_->children[i])) return false;
  }
  return true;
}

namespace {

void collect_free(const LambdaTerm& term, std::vector<std::string>& env,
                  std::set<std::string>& out) {
  switch (term.kind()) {
    case LambdaKind::Variable:
      if (binder_distance(env, term.name()) < 0) out.insert(term.name());
      return;
    case LambdaKind::Abstraction:
      env.push_back(term.name());
      collect_free(term.body(), env, out);
      env.pop_back();
      return;
    case LambdaKind::Application:
      collect_free(term.function(), env, out);
      collect_free(term.argument(), env, out);
      return;
  }
}

// A name similar to `base` that avoids the given set: the trailing digits of
// base are replaced by the first counter that is fresh.
std::string fresh_name(const std::string& base,
                       const std::set<std::string>& avoid) {
  std::string stem = base;
  while (!stem.empty() && std::isdigit(static_cast<unsigned char>(stem.back()))) {
    stem.pop_back();
  }
  if (stem.empty()) stem = "v";
  for (int i = 1;; ++i) {
    std::string candidate = stem + std::to_string(i);
    if (!avoid.count(candidate)) return candidate;
  }
}

}  // namespace

std::set<std::string> free_variables(const LambdaTerm& term) {
  std::set<std::string> out;
  std::vector<std::string> env;
  collect_free(term, env, out);
  return out;
}

LambdaTerm substitute(const LambdaTerm& term, const std::string& name,
                      const LambdaTerm& replacement) {
  switch (term.kind()) {
    case LambdaKind::Variable:
      return term.name() == name ? replacement : term;
    case LambdaKind::Application:
      return LambdaTerm::application(
          substitute(term.function(), name, replacement),
          substitute(term.argument(), name, replacement));
    case LambdaKind::Abstraction: {
      if (term.name() == name) return term;
      const std::set<std::string> body_free = free_variables(term.body());
      if (!body_free.count(name)) return term;
      std::string binder = term.name();
      LambdaTerm body = term.body();
      const std::set<std::string> repl_free = free_variables(replacement);
      if (repl_free.count(binder)) {
        std::set<std::string> avoid = repl_free;
        avoid.insert(body_free.begin(), body_free.end());
        avoid.insert(name);
        std::string renamed = fresh_name(binder, avoid);
        body = substitute(body, binder, LambdaTerm::variable(renamed));
        binder = std::move(renamed);
      }
      return LambdaTerm::abstraction(std::move(binder),
                                     substitute(body, name, replacement));
    }
  }
  throw std::logic_error("substitute: unreachable");
}

namespace {

void key_walk(const LambdaTerm& term, std::vector<std::string>& env,
              std::string& out) {
  switch (term.kind()) {
    case LambdaKind::Variable: {
      const int distance = binder_distance(env, term.name());
      if (distance >= 0) {
        out += '#';
        out += std::to_string(distance);
      } else {
        out += term.name();
      }
      return;
    }
    case LambdaKind::Abstraction:
      out += "\\.";
      env.push_back(term.name());
      key_walk(term.body(), env, out);
      env.pop_back();
      return;
    case LambdaKind::Application:
      out += '(';
      key_walk(term.function(), env, out);
      out += ' ';
      key_walk(term.argument(), env, out);
      out += ')';
      return;
  }
}

}  // namespace

std::string alpha_key(const LambdaTerm& term) {
  std::string out;
  std::vector<std::string> env;
  key_walk(term, env, out);
  return out;
}

PathTerm LabelledStep::label() const {
  PathTerm label = PathTerm::atom(axiom == StepAxiom::Beta ? "beta" : "eta");
  for (auto hop = context.rbegin(); hop != context.rend(); ++hop) {
    switch (*hop) {
      case StepContext::Function:
        label = PathTerm::nu(std::move(label));
        break;
      case StepContext::Argument:
        label = PathTerm::mu(std::move(label));
        break;
      case StepContext::Body:
        label = PathTerm::xi(std::move(label));
        break;
    }
  }
  return label;
}

namespace {

using Plug = std::function<LambdaTerm(const LambdaTerm&)>;

// Pre-order walk emitting every redex of one axiom. `plug` grafts a
// replacement for the current subterm back into the whole term.
void collect_steps(StepAxiom axiom, const LambdaTerm& whole,
                   const LambdaTerm& sub, std::vector<StepContext>& context,
                   const Plug& plug, std::vector<LabelledStep>& out) {
  if (axiom == StepAxiom::Beta && sub.is_application() &&
      sub.function().is_abstraction()) {
    LambdaTerm contractum = substitute(sub.function().body(),
                                       sub.function().name(), sub.argument());
    out.push_back(LabelledStep{axiom, context, whole, plug(contractum)});
  }
  if (axiom == StepAxiom::Eta && sub.is_abstraction() &&
      sub.body().is_application() && sub.body().argument().is_variable() &&
      sub.body().argument().name() == sub.name() &&
      !free_variables(sub.body().function()).count(sub.name())) {
    out.push_back(LabelledStep{axiom, context, whole, plug(sub.body().function())});
  }
  switch (sub.kind()) {
    case LambdaKind::Variable:
      return;
    case LambdaKind::Abstraction: {
      context.push_back(StepContext::Body);
      Plug inner = [&](const LambdaTerm& r) {
        return plug(LambdaTerm::abstraction(sub.name(), r));
      };
      collect_steps(axiom, whole, sub.body(), context, inner, out);
      context.pop_back();
      return;
    }
    case LambdaKind::Application: {
      context.push_back(StepContext::Function);
      Plug left = [&](const LambdaTerm& r) {
        return plug(LambdaTerm::application(r, sub.argument()));
      };
      collect_steps(axiom, whole, sub.function(), context, left, out);
      context.pop_back();
      context.push_back(StepContext::Argument);
      Plug right = [&](const LambdaTerm& r) {
        return plug(LambdaTerm::application(sub.function(), r));
      };
      collect_steps(axiom, whole, sub.argument(), context, right, out);
      context.pop_back();
      return;
    }
  }
}

}  // namespace

std::vector<LabelledStep> one_step_reductions(const LambdaTerm& term) {
  std::vector<LabelledStep> out;
  std::vector<StepContext> context;
  const Plug identity = [](const LambdaTerm& r) { return r; };
  collect_steps(StepAxiom::Eta, term, term, context, identity, out);
  collect_steps(StepAxiom::Beta, term, term, context, identity, out);
  return out;
}

PathTerm compose_route(const std::vector<RouteStep>& route) {
  if (route.empty()) return PathTerm::rho();
  std::optional<PathTerm> acc;
  for (const RouteStep& leg : route) {
    PathTerm label = leg.step.label();
    if (leg.reversed) label = PathTerm::sigma(std::move(label));
    if (acc) {
      acc = PathTerm::tau(std::move(*acc), std::move(label));
    } else {
      acc = std::move(label);
    }
  }
  return *acc;
}

namespace {

// Keeps the route searches finite on terms whose reduction graphs fan out or
// grow without bound.
constexpr std::size_t kSearchNodeCap = 20000;
constexpr std::size_t kMaxEnumeratedRoutes = 256;

struct SearchNode {
  LambdaTerm term;
  int parent;  // index into the side's node list; -1 at the endpoint
  std::optional<LabelledStep> step;  // contraction from parent to this node
  int depth;
};

struct SearchSide {
  std::vector<SearchNode> nodes;
  std::map<std::string, int> index;  // alpha_key -> node
  std::vector<int> frontier;
  int depth = 0;

  explicit SearchSide(const LambdaTerm& endpoint) {
    nodes.push_back(SearchNode{endpoint, -1, std::nullopt, 0});
    index.emplace(alpha_key(endpoint), 0);
    frontier.push_back(0);
  }

  void expand() {
    std::vector<int> next;
    for (const int at : frontier) {
      const LambdaTerm current = nodes[at].term;
      for (LabelledStep& step : one_step_reductions(current)) {
        std::string key = alpha_key(step.after);
        if (index.count(key)) continue;
        const int id = static_cast<int>(nodes.size());
        nodes.push_back(
            SearchNode{step.after, at, std::move(step), depth + 1});
        index.emplace(std::move(key), id);
        next.push_back(id);
      }
    }
    frontier = std::move(next);
    ++depth;
  }

  // Chain of node indices from the endpoint down to `at`.
  std::vector<int> chain(int at) const {
    std::vector<int> ids;
    for (int i = at; i >= 0; i = nodes[i].parent) ids.push_back(i);
    std::reverse(ids.begin(), ids.end());
    return ids;
  }
};

}  // namespace

std::optional<std::vector<RouteStep>> find_route(const LambdaTerm& m,
                                                 const LambdaTerm& n,
                                                 int max_steps) {
  if (max_steps < 1) {
    throw std::invalid_argument("find_route: max_steps must be at least 1");
  }
  if (m == n) return std::vector<RouteStep>{};

  SearchSide from(m);
  SearchSide to(n);
  for (int round = 1; round <= max_steps; ++round) {
    bool grew = false;
    if (from.depth < max_steps && !from.frontier.empty()) {
      from.expand();
      grew = true;
    }
    if (to.depth < max_steps && !to.frontier.empty()) {
      to.expand();
      grew = true;
    }
    if (!grew) break;
    if (from.nodes.size() + to.nodes.size() > kSearchNodeCap) return std::nullopt;

    // Meeting point: minimal total length, then smallest key — a choice that
    // is stable under swapping the endpoints, so reverse queries mirror
    // forward ones leg for leg.
    std::optional<std::pair<int, int>> meet;  // node ids (from-side, to-side)
    int best_total = max_steps + 1;
    std::string best_key;
    for (const auto& [key, from_id] : from.index) {
      const auto hit = to.index.find(key);
      if (hit == to.index.end()) continue;
      const int total = from.nodes[from_id].depth + to.nodes[hit->second].depth;
      if (total > max_steps) continue;
      if (!meet || total < best_total ||
          (total == best_total && key < best_key)) {
        meet = {from_id, hit->second};
        best_total = total;
        best_key = key;
      }
    }
    if (meet) {
      std::vector<RouteStep> route;
      for (const int id : from.chain(meet->first)) {
        if (from.nodes[id].step) route.push_back({*from.nodes[id].step, false});
      }
      std::vector<int> climb = to.chain(meet->second);
      for (std::size_t i = climb.size(); i-- > 0;) {
        if (to.nodes[climb[i]].step) {
          route.push_back({*to.nodes[climb[i]].step, true});
        }
      }
      return route;
    }
  }
  return std::nullopt;
}

std::optional<PathTerm> find_path(const LambdaTerm& m, const LambdaTerm& n,
                                  int max_steps) {
  const auto route = find_route(m, n, max_steps);
  if (!route) return std::nullopt;
  return compose_route(*route);
}

namespace {

void enumerate_routes(const LambdaTerm& current, const std::string& goal_key,
                      int remaining, std::vector<RouteStep>& chain,
                      std::set<std::string>& on_chain,
                      std::vector<PathTerm>& out) {
  if (remaining == 0 || out.size() >= kMaxEnumeratedRoutes) return;
  for (LabelledStep& step : one_step_reductions(current)) {
    std::string key = alpha_key(step.after);
    if (key == goal_key) {
      chain.push_back({step, false});
      out.push_back(compose_route(chain));
      chain.pop_back();
      if (out.size() >= kMaxEnumeratedRoutes) return;
      continue;
    }
    if (!on_chain.insert(key).second) continue;
    const LambdaTerm next = step.after;
    chain.push_back({std::move(step), false});
    enumerate_routes(next, goal_key, remaining - 1, chain, on_chain, out);
    chain.pop_back();
    on_chain.erase(key);
  }
}

}  // namespace

std::vector<PathTerm> find_paths(const LambdaTerm& m, const LambdaTerm& n,
                                 int max_steps) {
  if (max_steps < 1) {
    throw std::invalid_argument("find_paths: max_steps must be at least 1");
  }
  std::vector<PathTerm> out;
  if (m == n) {
    out.push_back(PathTerm::rho());
    return out;
  }
  std::vector<RouteStep> chain;
  std::set<std::string> on_chain{alpha_key(m)};
  enumerate_routes(m, alpha_key(n), max_steps, chain, on_chain, out);
  return out;
}

PathTerm label_skeleton(const PathTerm& path) {
  switch (path.kind()) {
    case TermKind::Xi:
    case TermKind::Nu:
    case TermKind::Mu:
      return label_skeleton(path.children()[0]);
    case TermKind::Atom:
    case TermKind::Rho:
      return path;
    default: {
      std::vector<PathTerm> children;
      children.reserve(path.arity());
      for (const PathTerm& child : path.children()) {
        children.push_back(label_skeleton(child));
      }
      return PathTerm::make(path.kind(), std::move(children));
    }
  }
}

namespace {

// Tokenizer and recursive-descent parser for the λ surface syntax.
struct LambdaParser {
  std::string_view text;
  std::size_t at = 0;
  int line = 1;
  int column = 1;

  [[noreturn]] void fail(const std::string& message) const {
    throw ParseError(message, line, column);
  }

  void advance(std::size_t bytes) {
    for (std::size_t i = 0; i < bytes && at < text.size(); ++i, ++at) {
      if (text[at] == '\n') {
        ++line;
        column = 1;
      } else {
        ++column;
      }
    }
  }

  void skip_space() {
    while (at < text.size() &&
           std::isspace(static_cast<unsigned char>(text[at]))) {
      advance(1);
    }
  }

  bool at_end() {
    skip_space();
    return at >= text.size();
  }

  bool peek_is(char c) {
    skip_space();
    return at < text.size() && text[at] == c;
  }

  // '\' or the two-byte UTF-8 encoding of 'λ'.
  bool peek_lambda() {
    skip_space();
    if (at < text.size() && text[at] == '\\') return true;
    return at + 1 < text.size() && static_cast<unsigned char>(text[at]) == 0xCE &&
           static_cast<unsigned char>(text[at + 1]) == 0xBB;
  }

  void consume_lambda() {
    advance(text[at] == '\\' ? 1 : 2);
  }

  bool peek_ident() {
    skip_space();
    return at < text.size() &&
           std::isalpha(static_cast<unsigned char>(text[at]));
  }

  std::string ident() {
    skip_space();
    if (!peek_ident()) fail("expected an identifier");
    std::size_t end = at;
    while (end < text.size() &&
           (std::isalnum(static_cast<unsigned char>(text[end])) ||
            text[end] == '_')) {
      ++end;
    }
    std::string name(text.substr(at, end - at));
    advance(end - at);
    return name;
  }

  void expect(char c, const std::string& what) {
    skip_space();
    if (at >= text.size() || text[at] != c) fail("expected " + what);
    advance(1);
  }

  LambdaTerm parse_abstraction() {
    consume_lambda();
    std::string bound = ident();
    expect('.', "'.' after the bound variable");
    return LambdaTerm::abstraction(std::move(bound), parse_term());
  }

  LambdaTerm parse_atom() {
    if (peek_is('(')) {
      advance(1);
      LambdaTerm inner = parse_term();
      expect(')', "')'");
      return inner;
    }
    return LambdaTerm::variable(ident());
  }

  LambdaTerm parse_term() {
    if (peek_lambda()) return parse_abstraction();
    skip_space();
    if (at >= text.size() || !(peek_ident() || peek_is('('))) {
      fail("expected a term");
    }
    LambdaTerm term = parse_atom();
    while (true) {
      if (peek_lambda()) {
        // A trailing abstraction extends as far right as possible.
        term = LambdaTerm::application(std::move(term), parse_abstraction());
        break;
      }
      if (peek_ident() || peek_is('(')) {
        term = LambdaTerm::application(std::move(term), parse_atom());
        continue;
      }
      break;
    }
    return term;
  }
};

}  // namespace

LambdaTerm parse_lambda(std::string_view input) {
  LambdaParser parser{input};
  LambdaTerm term = parser.parse_term();
  if (!parser.at_end()) parser.fail("unexpected trailing input");
  return term;
}

std::string format_lambda(const LambdaTerm& term) {
  switch (term.kind()) {
    case LambdaKind::Variable:
      return term.name();
    case LambdaKind::Abstraction:
      return "\\" + term.name() + "." + format_lambda(term.body());
    case LambdaKind::Application: {
      std::string left = term.function().is_abstraction()
                             ? "(" + format_lambda(term.function()) + ")"
                             : format_lambda(term.function());
      std::string right = term.argument().is_variable()
                              ? format_lambda(term.argument())
                              : "(" + format_lambda(term.argument()) + ")";
      return left + " " + right;
    }
  }
  throw std::logic_error("format_lambda: unreachable");
}

}  // namespace pathcalc
