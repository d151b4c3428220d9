#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "refclass/kb.hpp"

namespace refclass {

// Positions are 1-based; line 0 marks a whole-document condition that has
// no better anchor. `inconsistency` separates malformed input (unknown
// directive, undeclared id, bad rational) from a well-formed but
// self-contradicting KB (conflicting stats, subset cycle); the CLI maps
// the two to different exit codes.
struct ParseError {
  int line = 0;
  int column = 0;
  std::string message;
  std::string token;
  bool inconsistency = false;

  std::string str() const;  // "line 3:8: unknown directive 'clas'"
};

// Parsing is total: any input yields a KB or a nonempty error list. The
// KB is meaningful only when ok().
struct ParseResult {
  KnowledgeBase kb;
  std::vector<ParseError> errors;
  bool ok() const { return errors.empty(); }
};

// Line-oriented directive format, one fact per line. Declarations may
// appear in any order; resolution is two-pass. See docs/kb-format.md for
// the grammar.
ParseResult parse_kb(std::string_view text);

struct QueryResult {
  std::optional<Sentence> sentence;
  std::vector<ParseError> errors;
  bool ok() const { return sentence.has_value(); }
};

// Parses an atomic sentence "subject in Class" (subject may be a pair
// "<a,b>") and resolves it against the KB's declarations.
QueryResult parse_query(std::string_view text, const KnowledgeBase& kb);

// Canonical text form: sections in a fixed order, each sorted, rationals
// always exact (never decimal). parse_kb(serialize_kb(kb)) == kb, and the
// output is byte-stable for equal KBs.
std::string serialize_kb(const KnowledgeBase& kb);

}  // namespace refclass
