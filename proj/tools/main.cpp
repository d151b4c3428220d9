// refclass command-line front end: query, explain, check.
//
// Exit codes: 0 success, 1 parse error, 2 KB inconsistency (conflicting
// stats, subset cycle, or extensional violations under `check`), 3 bad
// query, 4 candidate guard exceeded. Identical inputs produce
// byte-identical output.
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "refclass/engine.hpp"
#include "refclass/oracle.hpp"
#include "refclass/parser.hpp"
#include "refclass/trace.hpp"

namespace {

constexpr int kExitParse = 1;
constexpr int kExitInconsistent = 2;
constexpr int kExitBadQuery = 3;
constexpr int kExitCandidateLimit = 4;

std::optional<std::string> read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) return std::nullopt;
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return std::move(buffer).str();
}

// Loads and parses the KB, or returns the exit code. Syntax errors win
// over inconsistencies: exit 2 is reserved for a well-formed KB that
// contradicts itself.
int load_kb(const std::string& path, refclass::KnowledgeBase& kb) {
  auto text = read_file(path);
  if (!text) {
    std::cerr << path << ": cannot read file\n";
    return kExitParse;
  }
  refclass::ParseResult result = refclass::parse_kb(*text);
  if (!result.ok()) {
    bool all_inconsistency = true;
    for (const refclass::ParseError& error : result.errors) {
      std::cerr << path << ": " << error.str() << "\n";
      if (!error.inconsistency) all_inconsistency = false;
    }
    return all_inconsistency ? kExitInconsistent : kExitParse;
  }
  kb = std::move(result.kb);
  return 0;
}

int parse_query_or_exit(const refclass::KnowledgeBase& kb,
                        const std::string& text, refclass::Sentence& out) {
  refclass::QueryResult result = refclass::parse_query(text, kb);
  if (!result.ok()) {
    for (const refclass::ParseError& error : result.errors) {
      std::cerr << "query: " << error.str() << "\n";
    }
    return kExitBadQuery;
  }
  out = *result.sentence;
  return 0;
}

refclass::EvaluateOptions options_from_env() {
  refclass::EvaluateOptions options;
  if (const char* env = std::getenv("REFCLASS_MAX_CANDIDATES")) {
    char* end = nullptr;
    unsigned long long value = std::strtoull(env, &end, 10);
    if (end != env && *end == '\0' && value > 0) {
      options.max_candidates = value;
    } else {
      std::cerr << "warning: ignoring invalid REFCLASS_MAX_CANDIDATES '"
                << env << "'\n";
    }
  }
  return options;
}

int evaluate_or_exit(const refclass::KnowledgeBase& kb,
                     const refclass::Sentence& query,
                     refclass::Verdict& out) {
  try {
    out = refclass::evaluate(kb, query, options_from_env());
  } catch (const refclass::KbInconsistencyError& error) {
    std::cerr << "inconsistent KB: " << error.what() << "\n";
    return kExitInconsistent;
  } catch (const refclass::CandidateLimitError& error) {
    std::cerr << error.what()
              << " (raise REFCLASS_MAX_CANDIDATES to override)\n";
    return kExitCandidateLimit;
  }
  return 0;
}

// "4/5 (0.8)" exact, "41/55 (≈0.74545)" rounded; interval endpoints get
// one annotation each. Decimals are annotations only — the rational text
// before them is the verdict.
std::string decimal_suffix(const refclass::Interval& interval) {
  auto render = [](const refclass::Rational& r) {
    refclass::Rational::Decimal d = r.decimal();
    return (d.exact ? std::string() : std::string("≈")) + d.digits;
  };
  if (interval.is_point()) return " (" + render(interval.lo()) + ")";
  return " (" + render(interval.lo()) + ", " + render(interval.hi()) + ")";
}

int cmd_query(const std::string& kb_path, const std::string& query_text,
              const std::string& trace_path, bool decimal) {
  refclass::KnowledgeBase kb;
  if (int code = load_kb(kb_path, kb)) return code;
  refclass::Sentence query;
  if (int code = parse_query_or_exit(kb, query_text, query)) return code;
  refclass::Verdict verdict;
  if (int code = evaluate_or_exit(kb, query, verdict)) return code;

  if (!trace_path.empty()) {
    std::ofstream out(trace_path, std::ios::binary);
    if (!out) {
      std::cerr << trace_path << ": cannot write trace\n";
      return kExitParse;
    }
    out << refclass::trace_json(verdict);
  }
  std::cout << verdict.interval.str()
            << (decimal ? decimal_suffix(verdict.interval) : "") << "\n";
  return 0;
}

int cmd_explain(const std::string& kb_path, const std::string& query_text) {
  refclass::KnowledgeBase kb;
  if (int code = load_kb(kb_path, kb)) return code;
  refclass::Sentence query;
  if (int code = parse_query_or_exit(kb, query_text, query)) return code;
  refclass::Verdict verdict;
  if (int code = evaluate_or_exit(kb, query, verdict)) return code;
  std::cout << refclass::render_explanation(verdict);
  return 0;
}

int cmd_check(const std::string& kb_path) {
  refclass::KnowledgeBase kb;
  if (int code = load_kb(kb_path, kb)) return code;
  if (kb.extensions().empty()) {
    std::cout << "warning: no extensional classes; nothing to check\n";
    return 0;
  }
  refclass::oracle::ConsistencyReport report =
      refclass::oracle::check_extensional(kb);
  for (const refclass::oracle::Violation& violation : report.violations) {
    std::cout << violation.str() << "\n";
  }
  std::cout << "extensional check: " << report.checked << " facts checked, "
            << report.violations.size() << " violations\n";
  return report.ok() ? 0 : kExitInconsistent;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"refclass — reference-class reasoning over statistical "
               "knowledge bases"};
  app.require_subcommand(1);

  std::string kb_path, query_text, trace_path;
  bool decimal = false;

  CLI::App* query = app.add_subcommand(
      "query", "evaluate a sentence and print the verdict interval");
  query->add_option("kb", kb_path, "KB file (.rkb)")->required();
  query->add_option("sentence", query_text, "sentence, e.g. \"tweety in Flier\"")
      ->required();
  query->add_option("--trace", trace_path,
                    "write the JSON trace document to this path");
  query->add_flag("--decimal", decimal, "append a decimal approximation");

  CLI::App* explain = app.add_subcommand(
      "explain", "show candidates, defeats, labels, and the verdict");
  explain->add_option("kb", kb_path, "KB file (.rkb)")->required();
  explain
      ->add_option("sentence", query_text, "sentence, e.g. \"tweety in Flier\"")
      ->required();

  CLI::App* check = app.add_subcommand(
      "check", "check stats and subsets against extensional enumerations");
  check->add_option("kb", kb_path, "KB file (.rkb)")->required();

  CLI11_PARSE(app, argc, argv);

  if (query->parsed()) return cmd_query(kb_path, query_text, trace_path, decimal);
  if (explain->parsed()) return cmd_explain(kb_path, query_text);
  return cmd_check(kb_path);
}
