#include "pathcalc/script.hpp"

#include <cctype>
#include <cstddef>
#include <sstream>
#include <stdexcept>
#include <string>
#include <utility>

namespace pathcalc {

namespace {

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) {
    s.remove_prefix(1);
  }
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) {
    s.remove_suffix(1);
  }
  return s;
}

bool is_identifier(std::string_view s) {
  if (s.empty() || !std::isalpha(static_cast<unsigned char>(s.front()))) {
    return false;
  }
  for (char c : s) {
    if (!std::isalnum(static_cast<unsigned char>(c)) && c != '_') return false;
  }
  return true;
}

// Column (1-based) of a view inside the line it was sliced from.
int column_of(std::string_view line, std::string_view piece) {
  return static_cast<int>(piece.data() - line.data()) + 1;
}

// ParseError::what() appends its own location; strip it so errors from
// nested term parses can be re-anchored at the enclosing script line.
std::string strip_location(const ParseError& err) {
  std::string message = err.what();
  if (auto at = message.rfind(" (line "); at != std::string::npos) {
    message.erase(at);
  }
  return message;
}

PathTerm parse_embedded_term(std::string_view text, int line, int column) {
  try {
    return parse_path_term(text);
  } catch (const ParseError& err) {
    throw ParseError(strip_location(err), line, column + err.column() - 1);
  }
}

Position parse_embedded_position(std::string_view text, int line, int column) {
  try {
    return Position::parse(text);
  } catch (const ParseError& err) {
    throw ParseError(strip_location(err), line, column + err.column() - 1);
  }
}

const ScriptAxiom* find_axiom(const std::vector<ScriptAxiom>& axioms,
                              std::string_view name) {
  for (const ScriptAxiom& axiom : axioms) {
    if (axiom.name == name) return &axiom;
  }
  return nullptr;
}

// Consumes the next whitespace-delimited token; '@' also ends a token so
// "tt@0.1" tokenizes the same as "tt @ 0.1".
std::string_view take_token(std::string_view& rest) {
  rest = trim(rest);
  std::size_t end = 0;
  while (end < rest.size() && rest[end] != '@' &&
         !std::isspace(static_cast<unsigned char>(rest[end]))) {
    ++end;
  }
  std::string_view token = rest.substr(0, end);
  rest.remove_prefix(end);
  return token;
}

ScriptStep parse_step_line(std::string_view line, int line_no,
                           const std::vector<ScriptAxiom>& axioms) {
  std::string_view body = line;
  std::optional<PathTerm> witness;
  if (auto bang = body.find('!'); bang != std::string_view::npos) {
    std::string_view witness_text = trim(body.substr(bang + 1));
    if (witness_text.empty()) {
      throw ParseError("expected witness term after '!'", line_no,
                       static_cast<int>(bang) + 2);
    }
    witness = parse_embedded_term(witness_text, line_no,
                                  column_of(line, witness_text));
    body = body.substr(0, bang);
  }

  std::string_view direction_token = take_token(body);
  StepDirection direction = StepDirection::Forward;
  if (direction_token == "rev") {
    direction = StepDirection::Reversed;
  } else if (direction_token != "fwd") {
    throw ParseError("expected step direction 'fwd' or 'rev'", line_no,
                     column_of(line, direction_token));
  }

  std::string_view name = take_token(body);
  if (!is_identifier(name)) {
    throw ParseError("expected rule or axiom name", line_no,
                     column_of(line, name));
  }
  if (find_axiom(axioms, name) == nullptr && find_rule(name) == nullptr) {
    throw ParseError("step names neither a rewrite rule nor a declared axiom: '" +
                         std::string(name) + "'",
                     line_no, column_of(line, name));
  }

  body = trim(body);
  if (body.empty() || body.front() != '@') {
    throw ParseError("expected '@' before the step position", line_no,
                     body.empty() ? static_cast<int>(line.size()) + 1
                                  : column_of(line, body));
  }
  body.remove_prefix(1);
  std::string_view position_text = trim(body);
  Position position =
      position_text.empty()
          ? Position{}
          : parse_embedded_position(position_text, line_no,
                                    column_of(line, position_text));

  if (witness && find_axiom(axioms, name) != nullptr) {
    throw ParseError("axiom steps do not take a witness", line_no,
                     column_of(line, name));
  }
  return ScriptStep{direction, std::string(name), position, std::move(witness)};
}

}  // namespace

ProofScript parse_script(std::string_view text) {
  std::vector<ScriptAxiom> axioms;
  std::optional<PathTerm> start;
  std::optional<PathTerm> target;
  std::vector<ScriptStep> steps;
  bool in_steps = false;

  int line_no = 0;
  std::size_t offset = 0;
  while (offset <= text.size()) {
    std::size_t newline = text.find('\n', offset);
    std::string_view line =
        text.substr(offset, newline == std::string_view::npos
                                ? std::string_view::npos
                                : newline - offset);
    offset = newline == std::string_view::npos ? text.size() + 1 : newline + 1;
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);

    std::string_view body = trim(line);
    if (body.empty() || body.front() == '#') continue;

    if (in_steps) {
      steps.push_back(parse_step_line(line, line_no, axioms));
      continue;
    }

    if (body.substr(0, 6) == "axiom " || body == "axiom") {
      if (start) {
        throw ParseError("axioms must be declared before the start term",
                         line_no, column_of(line, body));
      }
      std::string_view rest = body.substr(5);
      auto colon = rest.find(':');
      if (colon == std::string_view::npos) {
        throw ParseError("expected ':' after the axiom name", line_no,
                         static_cast<int>(line.size()) + 1);
      }
      std::string_view name = trim(rest.substr(0, colon));
      if (!is_identifier(name)) {
        throw ParseError("expected axiom name before ':'", line_no,
                         column_of(line, rest));
      }
      if (find_axiom(axioms, name) != nullptr) {
        throw ParseError("duplicate axiom name '" + std::string(name) + "'",
                         line_no, column_of(line, name));
      }
      if (find_rule(name) != nullptr) {
        throw ParseError("axiom name '" + std::string(name) +
                             "' shadows a rewrite rule",
                         line_no, column_of(line, name));
      }
      std::string_view equation = rest.substr(colon + 1);
      auto equals = equation.find('=');
      if (equals == std::string_view::npos) {
        throw ParseError("expected '=' between the axiom's sides", line_no,
                         static_cast<int>(line.size()) + 1);
      }
      std::string_view lhs_text = trim(equation.substr(0, equals));
      std::string_view rhs_text = trim(equation.substr(equals + 1));
      if (lhs_text.empty() || rhs_text.empty()) {
        throw ParseError("axiom sides must be nonempty terms", line_no,
                         column_of(line, equation));
      }
      PathTerm lhs =
          parse_embedded_term(lhs_text, line_no, column_of(line, lhs_text));
      PathTerm rhs =
          parse_embedded_term(rhs_text, line_no, column_of(line, rhs_text));
      axioms.push_back(
          ScriptAxiom{std::string(name), std::move(lhs), std::move(rhs)});
      continue;
    }

    if (body.substr(0, 6) == "start:") {
      if (start) {
        throw ParseError("duplicate start term", line_no, column_of(line, body));
      }
      std::string_view term_text = trim(body.substr(6));
      start = parse_embedded_term(term_text, line_no, column_of(line, term_text));
      continue;
    }

    if (body.substr(0, 7) == "target:") {
      if (target) {
        throw ParseError("duplicate target term", line_no,
                         column_of(line, body));
      }
      std::string_view term_text = trim(body.substr(7));
      target =
          parse_embedded_term(term_text, line_no, column_of(line, term_text));
      continue;
    }

    if (body == "steps:") {
      if (!start) {
        throw ParseError("steps section before the start term", line_no,
                         column_of(line, body));
      }
      if (!target) {
        throw ParseError("steps section before the target term", line_no,
                         column_of(line, body));
      }
      in_steps = true;
      continue;
    }

    throw ParseError("unrecognized script line", line_no, column_of(line, body));
  }

  if (!start) throw ParseError("script is missing its start term", line_no, 1);
  if (!target) {
    throw ParseError("script is missing its target term", line_no, 1);
  }
  if (!in_steps) {
    throw ParseError("script is missing its steps section", line_no, 1);
  }
  return ProofScript{std::move(axioms), std::move(*start), std::move(*target),
                     std::move(steps)};
}

std::string format_script(const ProofScript& script) {
  std::ostringstream out;
  for (const ScriptAxiom& axiom : script.axioms) {
    out << "axiom " << axiom.name << ": " << format_path_term(axiom.lhs)
        << " = " << format_path_term(axiom.rhs) << '\n';
  }
  out << "start: " << format_path_term(script.start) << '\n';
  out << "target: " << format_path_term(script.target) << '\n';
  out << "steps:\n";
  for (const ScriptStep& step : script.steps) {
    out << (step.direction == StepDirection::Forward ? "fwd" : "rev") << ' '
        << step.name << " @";
    if (!step.position.is_root()) out << ' ' << step.position.str();
    if (step.witness) out << " ! " << format_path_term(*step.witness);
    out << '\n';
  }
  return out.str();
}

VerificationReport verify_script(const ProofScript& script,
                                 const TrsOptions& options) {
  VerificationReport report{false, std::nullopt, "", {}, script.start};
  PathTerm current = script.start;

  auto reject = [&](std::size_t index, std::string reason) {
    report.rejected_step = index;
    report.reason = std::move(reason);
    report.final_term = current;
    return report;
  };

  for (std::size_t i = 0; i < script.steps.size(); ++i) {
    const ScriptStep& step = script.steps[i];
    // Axioms take precedence over rules; parse_script rejects shadowing, so
    // the two namespaces only overlap in hand-built scripts.
    const ScriptAxiom* axiom = find_axiom(script.axioms, step.name);
    std::optional<PathTerm> next;
    if (axiom != nullptr) {
      if (step.witness) {
        return reject(i, "axiom steps do not take a witness");
      }
      const bool forward = step.direction == StepDirection::Forward;
      const PathTerm& from = forward ? axiom->lhs : axiom->rhs;
      const PathTerm& to = forward ? axiom->rhs : axiom->lhs;
      try {
        if (!(subterm_at(current, step.position) == from)) {
          return reject(i, "axiom '" + step.name +
                               "' does not match at position '" +
                               step.position.str() + "'");
        }
        next = replace_at(current, step.position, to);
      } catch (const std::out_of_range&) {
        return reject(i, "position '" + step.position.str() +
                             "' is outside the term");
      }
    } else if (find_rule(step.name) != nullptr) {
      try {
        next = contract_once(current, step.name, step.position, step.direction,
                             step.witness, options);
      } catch (const NoMatchError& err) {
        return reject(i, err.what());
      } catch (const std::out_of_range&) {
        return reject(i, "position '" + step.position.str() +
                             "' is outside the term");
      }
    } else {
      return reject(i, "step names neither a rewrite rule nor a declared axiom: '" +
                           step.name + "'");
    }
    report.steps.push_back(VerifiedStep{step, current, *next});
    current = std::move(*next);
    report.final_term = current;
  }

  if (!(current == script.target)) {
    return reject(script.steps.size(),
                  "final term '" + format_path_term(current) +
                      "' does not match the target '" +
                      format_path_term(script.target) + "'");
  }
  report.accepted = true;
  return report;
}

ProofScript reverse_script(const ProofScript& script,
                           const TrsOptions& options) {
  VerificationReport report = verify_script(script, options);
  if (!report.accepted) {
    throw std::invalid_argument("reverse_script requires an accepted script: " +
                                report.reason);
  }
  ProofScript reversed{script.axioms, script.target, script.start, {}};
  reversed.steps.reserve(script.steps.size());
  for (std::size_t i = report.steps.size(); i-- > 0;) {
    const VerifiedStep& done = report.steps[i];
    ScriptStep flipped{done.step.direction == StepDirection::Forward
                           ? StepDirection::Reversed
                           : StepDirection::Forward,
                       done.step.name, done.step.position, std::nullopt};
    // A rule step flipped to reversed must reintroduce exactly what the
    // forward step consumed; the before-term of the original step is the
    // witness for that. Axiom steps carry both sides already.
    if (flipped.direction == StepDirection::Reversed &&
        find_axiom(script.axioms, flipped.name) == nullptr) {
      flipped.witness = subterm_at(done.before, flipped.position);
    }
    reversed.steps.push_back(std::move(flipped));
  }
  return reversed;
}

}  // namespace pathcalc
