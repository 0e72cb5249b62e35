#include "cli/run_command.hpp"

#include <algorithm>
#include <cstddef>
#include <fstream>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "CLI11.hpp"
#include "pathcalc/group.hpp"
#include "pathcalc/lambda.hpp"
#include "pathcalc/script.hpp"
#include "pathcalc/term.hpp"
#include "pathcalc/trs.hpp"

namespace pathcalc::cli {
namespace {

// Hands stdin lines to positional arguments that were omitted from argv.
// The text is pulled from the source on the first take(), so commands whose
// arguments are all present never read stdin at all.
class StdinFeed {
 public:
  explicit StdinFeed(std::function<std::string()> source)
      : source_(std::move(source)) {}

  std::string take(const std::string& what) {
    if (source_) {
      split_lines(source_());
      source_ = nullptr;
    }
    while (next_ < lines_.size()) {
      std::string line = lines_[next_++];
      if (!line.empty()) return line;
    }
    throw CLI::ValidationError(what +
                               " missing: pass it as an argument or on stdin");
  }

 private:
  void split_lines(std::string_view text) {
    std::size_t begin = 0;
    while (begin < text.size()) {
      std::size_t end = text.find('\n', begin);
      if (end == std::string_view::npos) end = text.size();
      std::string_view line = text.substr(begin, end - begin);
      if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
      lines_.emplace_back(line);
      begin = end + 1;
    }
  }

  std::function<std::string()> source_;
  std::vector<std::string> lines_;
  std::size_t next_ = 0;
};

std::string format_invariants(const AbelianInvariants& invariants) {
  std::vector<std::string> parts;
  if (invariants.free_rank == 1) {
    parts.push_back("Z");
  } else if (invariants.free_rank > 1) {
    parts.push_back("Z^" + std::to_string(invariants.free_rank));
  }
  for (long long order : invariants.torsion) {
    parts.push_back("Z/" + std::to_string(order));
  }
  if (parts.empty()) return "0";
  std::string joined = parts.front();
  for (std::size_t i = 1; i < parts.size(); ++i) joined += " x " + parts[i];
  return joined;
}

std::vector<std::pair<GroupWord, GroupWord>> parse_amalgam(
    std::string_view text) {
  std::vector<std::pair<GroupWord, GroupWord>> pairs;
  std::size_t begin = 0;
  while (begin <= text.size()) {
    std::size_t end = text.find(',', begin);
    if (end == std::string_view::npos) end = text.size();
    std::string_view piece = text.substr(begin, end - begin);
    std::size_t eq = piece.find('=');
    if (eq == std::string_view::npos) {
      throw CLI::ValidationError(
          "amalgam: expected comma-separated \"u = v\" pairs");
    }
    GroupWord u = parse_word(piece.substr(0, eq));
    GroupWord v = parse_word(piece.substr(eq + 1));
    pairs.emplace_back(std::move(u), std::move(v));
    if (end == text.size()) break;
    begin = end + 1;
  }
  return pairs;
}

}  // namespace

CommandOutcome run_command(const std::vector<std::string>& argv,
                           std::string_view stdin_text) {
  return run_command(argv, [text = std::string(stdin_text)] { return text; });
}

CommandOutcome run_command(const std::vector<std::string>& argv,
                           std::function<std::string()> read_stdin) {
  StdinFeed feed(std::move(read_stdin));
  std::ostringstream out;

  CLI::App app{
      "Computational-path calculus: rewrite engine, lambda paths, proof "
      "scripts and surface fundamental groups",
      "pathcalc"};
  app.require_subcommand(1);

  std::string term_text;
  std::string left_text;
  std::string right_text;
  std::string strategy_name = "innermost";
  long long fuel = -1;
  bool strict39 = false;
  bool trace = false;

  auto add_trs_flags = [&](CLI::App* cmd) {
    cmd->add_option("--strategy", strategy_name,
                    "redex selection order: innermost or outermost")
        ->check(CLI::IsMember({"innermost", "outermost"}));
    cmd->add_option("--fuel", fuel, "maximum number of contractions")
        ->check(CLI::NonNegativeNumber);
    cmd->add_flag("--strict-rule39", strict39,
                  "replay the catalogue's printed right-hand side for rule "
                  "39 instead of the endpoint-coherent continuation");
  };
  auto add_trace_flag = [&](CLI::App* cmd) {
    cmd->add_flag("--trace", trace, "print one line per step before the result");
  };

  CLI::App* path_cmd =
      app.add_subcommand("path", "normalize and compare path terms");
  path_cmd->require_subcommand(1);
  CLI::App* path_normalize = path_cmd->add_subcommand(
      "normalize", "rewrite a path term to its normal form");
  path_normalize->add_option("term", term_text,
                             "path term (read from stdin when omitted)");
  add_trs_flags(path_normalize);
  add_trace_flag(path_normalize);
  CLI::App* path_eq =
      path_cmd->add_subcommand("eq", "decide rw-equality of two path terms");
  path_eq->add_option("left", left_text,
                      "first path term (stdin when omitted)");
  path_eq->add_option("right", right_text,
                      "second path term (stdin when omitted)");
  add_trs_flags(path_eq);
  add_trace_flag(path_eq);
  CLI::App* path_trace = path_cmd->add_subcommand(
      "trace", "print every rewrite step down to the normal form");
  path_trace->add_option("term", term_text,
                         "path term (read from stdin when omitted)");
  add_trs_flags(path_trace);

  CLI::App* lambda_cmd = app.add_subcommand(
      "lambda", "beta-eta reduction and connecting computational paths");
  lambda_cmd->require_subcommand(1);
  CLI::App* lambda_reduce = lambda_cmd->add_subcommand(
      "reduce", "reduce a lambda term to beta-eta normal form");
  lambda_reduce->add_option("term", term_text,
                            "lambda term (read from stdin when omitted)");
  lambda_reduce
      ->add_option("--fuel", fuel, "maximum number of reduction steps")
      ->check(CLI::PositiveNumber);
  add_trace_flag(lambda_reduce);
  CLI::App* lambda_path = lambda_cmd->add_subcommand(
      "path", "find a computational path between two lambda terms");
  lambda_path->add_option("from", left_text,
                          "source lambda term (stdin when omitted)");
  lambda_path->add_option("to", right_text,
                          "target lambda term (stdin when omitted)");
  lambda_path->add_option("--fuel", fuel, "maximum route length")
      ->check(CLI::PositiveNumber);
  add_trace_flag(lambda_path);

  CLI::App* script_cmd =
      app.add_subcommand("script", "verify rewrite-chain proof scripts");
  script_cmd->require_subcommand(1);
  CLI::App* script_verify = script_cmd->add_subcommand(
      "verify", "replay a proof script and report the verdict");
  std::string script_file;
  script_verify->add_option("file", script_file, "proof script file")
      ->required()
      ->check(CLI::ExistingFile);
  script_verify->add_flag(
      "--strict-rule39", strict39,
      "replay the catalogue's printed right-hand side for rule 39");
  add_trace_flag(script_verify);

  CLI::App* group_cmd =
      app.add_subcommand("group", "surface fundamental-group computations");
  group_cmd->require_subcommand(1);
  std::string surface_name;
  CLI::App* group_reduce = group_cmd->add_subcommand(
      "reduce", "canonical representative of a word in the surface group");
  group_reduce->add_option("word", term_text,
                           "group word (read from stdin when omitted)");
  group_reduce
      ->add_option("--surface", surface_name,
                   "circle, torus, klein or genus-N")
      ->required();
  CLI::App* group_equal = group_cmd->add_subcommand(
      "equal", "decide whether two words agree in the surface group");
  group_equal->add_option("left", left_text,
                          "first group word (stdin when omitted)");
  group_equal->add_option("right", right_text,
                          "second group word (stdin when omitted)");
  group_equal
      ->add_option("--surface", surface_name,
                   "circle, torus, klein or genus-N")
      ->required();
  CLI::App* group_abelianize = group_cmd->add_subcommand(
      "abelianize", "invariant factors of the abelianized group");
  group_abelianize->add_option(
      "presentation", term_text,
      "presentation \"gens: a b ; rels: w1 , w2\" (stdin when omitted)");
  group_abelianize->add_option("--surface", surface_name,
                               "abelianize a surface presentation instead");
  CLI::App* group_pushout = group_cmd->add_subcommand(
      "pushout", "amalgamated presentation of a union of two pieces");
  group_pushout->add_option("piece-u", left_text,
                            "presentation of the first piece");
  group_pushout->add_option("piece-v", right_text,
                            "presentation of the second piece");
  std::string amalgam_text;
  group_pushout->add_option(
      "amalgam", amalgam_text,
      "comma-separated pairs \"u = v\" giving the images of each "
      "intersection generator in the two pieces (omit for a free product)");
  CLI::App* group_presentation = group_cmd->add_subcommand(
      "presentation", "standard presentation of a surface or glued polygon");
  group_presentation->add_option("--surface", surface_name,
                                 "circle, torus, klein or genus-N");
  std::string polygon_text;
  group_presentation->add_option("--polygon", polygon_text,
                                 "boundary word of a glued polygon");

  CLI::App* suite_cmd =
      app.add_subcommand("suite", "bundled reproduction suites");
  suite_cmd->require_subcommand(1);
  CLI::App* suite_paper = suite_cmd->add_subcommand(
      "paper", "verify every bundled derivation script");

  auto value_or_stdin = [&](const std::string& given, const char* what) {
    return given.empty() ? feed.take(what) : given;
  };
  auto chosen_strategy = [&] {
    return strategy_name == "outermost" ? Strategy::LeftmostOutermost
                                        : Strategy::LeftmostInnermost;
  };
  auto chosen_fuel = [&]() -> std::optional<std::size_t> {
    if (fuel < 0) return std::nullopt;
    return static_cast<std::size_t>(fuel);
  };
  auto trs_options = [&] {
    TrsOptions options;
    options.strict_rule39 = strict39;
    return options;
  };

  try {
    std::vector<std::string> args(argv.rbegin(), argv.rend());
    app.parse(std::move(args));

    if (*path_normalize || *path_trace) {
      PathTerm term =
          parse_path_term(value_or_stdin(term_text, "path term"));
      NormalizeOutcome outcome =
          normalize(term, chosen_strategy(), chosen_fuel(), trs_options());
      if (trace || *path_trace) out << format_trace(outcome.trace);
      out << format_path_term(outcome.term) << "\n";
      return {0, out.str()};
    }
    if (*path_eq) {
      PathTerm left = parse_path_term(value_or_stdin(left_text, "left term"));
      PathTerm right =
          parse_path_term(value_or_stdin(right_text, "right term"));
      RwEqualOutcome outcome = rw_equal(left, right, chosen_strategy(),
                                        chosen_fuel(), trs_options());
      if (!outcome.equal) {
        out << "not equal\n";
        return {1, out.str()};
      }
      if (trace) out << format_trace(outcome.trace);
      out << "equal\n";
      return {0, out.str()};
    }

    if (*lambda_reduce) {
      LambdaTerm term =
          parse_lambda(value_or_stdin(term_text, "lambda term"));
      const long long limit = fuel < 0 ? 10000 : fuel;
      for (long long used = 0;; ++used) {
        std::vector<LabelledStep> steps = one_step_reductions(term);
        if (steps.empty()) break;
        if (used == limit) {
          out << "no beta-eta normal form within " << limit << " steps\n";
          return {1, out.str()};
        }
        const LabelledStep& step = steps.front();
        if (trace) {
          out << "fwd " << format_path_term(step.label()) << " : "
              << format_lambda(step.after) << "\n";
        }
        term = step.after;
      }
      out << format_lambda(term) << "\n";
      return {0, out.str()};
    }
    if (*lambda_path) {
      LambdaTerm from =
          parse_lambda(value_or_stdin(left_text, "source term"));
      LambdaTerm to = parse_lambda(value_or_stdin(right_text, "target term"));
      const int limit = fuel < 0 ? 12 : static_cast<int>(fuel);
      std::optional<std::vector<RouteStep>> route =
          find_route(from, to, limit);
      if (!route) {
        out << "no path within " << limit << " steps\n";
        return {1, out.str()};
      }
      if (trace) {
        for (const RouteStep& leg : *route) {
          out << (leg.reversed ? "rev " : "fwd ")
              << format_path_term(leg.step.label()) << " : "
              << format_lambda(leg.reversed ? leg.step.before
                                            : leg.step.after)
              << "\n";
        }
      }
      out << format_path_term(compose_route(*route)) << "\n";
      return {0, out.str()};
    }

    if (*script_verify) {
      std::ifstream in(script_file);
      if (!in) {
        throw CLI::ValidationError("cannot read " + script_file);
      }
      std::ostringstream buffer;
      buffer << in.rdbuf();
      ProofScript script = parse_script(buffer.str());
      VerificationReport report = verify_script(script, trs_options());
      if (trace) {
        for (const VerifiedStep& done : report.steps) {
          out << format_step(RewriteStep{done.step.name, done.step.position,
                                         done.step.direction, done.before,
                                         done.after})
              << "\n";
        }
      }
      if (report.accepted) {
        out << "accepted\n";
        return {0, out.str()};
      }
      out << "rejected at step " << *report.rejected_step << ": "
          << report.reason << "\n";
      return {1, out.str()};
    }

    if (*group_reduce) {
      Surface surface = Surface::parse(surface_name);
      GroupWord word = parse_word(value_or_stdin(term_text, "group word"));
      out << format_word(surface_normal_form(word, surface)) << "\n";
      return {0, out.str()};
    }
    if (*group_equal) {
      Surface surface = Surface::parse(surface_name);
      GroupWord left = parse_word(value_or_stdin(left_text, "left word"));
      GroupWord right = parse_word(value_or_stdin(right_text, "right word"));
      if (words_equal(left, right, surface)) {
        out << "equal\n";
        return {0, out.str()};
      }
      out << "not equal\n";
      return {1, out.str()};
    }
    if (*group_abelianize) {
      Presentation presentation =
          surface_name.empty()
              ? parse_presentation(value_or_stdin(term_text, "presentation"))
              : surface_presentation(Surface::parse(surface_name));
      out << format_invariants(abelianize(presentation)) << "\n";
      return {0, out.str()};
    }
    if (*group_pushout) {
      Presentation piece_u =
          parse_presentation(value_or_stdin(left_text, "first presentation"));
      Presentation piece_v = parse_presentation(
          value_or_stdin(right_text, "second presentation"));
      std::vector<std::pair<GroupWord, GroupWord>> amalgam;
      if (!amalgam_text.empty()) amalgam = parse_amalgam(amalgam_text);
      out << format_presentation(
                 vankampen_pushout(piece_u, piece_v, amalgam))
          << "\n";
      return {0, out.str()};
    }
    if (*group_presentation) {
      if (surface_name.empty() == polygon_text.empty()) {
        throw CLI::ValidationError(
            "pass exactly one of --surface and --polygon");
      }
      Presentation presentation =
          surface_name.empty()
              ? polygon_presentation(parse_word(polygon_text))
              : surface_presentation(Surface::parse(surface_name));
      out << format_presentation(presentation) << "\n";
      return {0, out.str()};
    }

    if (*suite_paper) {
      std::vector<std::pair<std::string, VerificationReport>> suite =
          bundled_paper_suite();
      std::sort(suite.begin(), suite.end(), [](const auto& a, const auto& b) {
        return a.first < b.first;
      });
      std::size_t accepted = 0;
      for (const auto& [name, report] : suite) {
        if (report.accepted) {
          ++accepted;
          out << name << ": accepted\n";
        } else {
          out << name << ": rejected at step " << *report.rejected_step
              << "\n";
        }
      }
      out << accepted << "/" << suite.size() << " accepted\n";
      return {accepted == suite.size() ? 0 : 1, out.str()};
    }

    throw CLI::ValidationError("no subcommand selected");
  } catch (const ParseError& err) {
    return {2, out.str() + "parse error: " + err.what() + "\n"};
  } catch (const FuelExhaustedError& err) {
    return {1, out.str() + err.what() + "\n"};
  } catch (const UnknownGeneratorError& err) {
    return {2, out.str() + "error: " + err.what() + "\n"};
  } catch (const UnsupportedPresentationError& err) {
    return {2, out.str() + "error: " + err.what() + "\n"};
  } catch (const CLI::ParseError& err) {
    CLI::App* focus = &app;
    while (true) {
      std::vector<CLI::App*> parsed = focus->get_subcommands();
      if (parsed.empty()) break;
      focus = parsed.front();
    }
    if (err.get_exit_code() == 0) {
      return {0, focus->help()};
    }
    return {2, std::string(err.what()) + "\n\n" + focus->help()};
  } catch (const std::invalid_argument& err) {
    return {2, out.str() + "error: " + err.what() + "\n"};
  }
}

}  // namespace pathcalc::cli
