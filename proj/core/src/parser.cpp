#include "refclass/parser.hpp"

#include <algorithm>
#include <cctype>
#include <map>
#include <sstream>

namespace refclass {

namespace {

bool is_id_char(char c) {
  return std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '#' ||
         c == '-';
}

bool is_valid_id(std::string_view s) {
  return !s.empty() && std::all_of(s.begin(), s.end(), is_id_char);
}

bool is_atom_char(char c) {
  return !std::isspace(static_cast<unsigned char>(c)) && c != '"' &&
         c != '<' && c != '>' && c != '[' && c != ']' && c != '{' &&
         c != '}' && c != '=' && c != ',';
}

struct Token {
  enum class Kind { atom, pair, str, punct };
  Kind kind;
  std::string text;  // pair/str: inner text without delimiters
  int column;        // 1-based
};

// Tokenizes one line; returns false (with an error) on unterminated
// quotes or pairs. A line whose first non-blank character is '#' is a
// comment: '#' is an ordinary identifier character everywhere else, so
// "#18"-style names stay legal.
bool tokenize_line(std::string_view line, int line_no,
                   std::vector<Token>& tokens,
                   std::vector<ParseError>& errors) {
  std::size_t i = 0;
  while (i < line.size() &&
         std::isspace(static_cast<unsigned char>(line[i]))) {
    ++i;
  }
  if (i < line.size() && line[i] == '#') return true;

  while (i < line.size()) {
    char c = line[i];
    if (std::isspace(static_cast<unsigned char>(c))) {
      ++i;
      continue;
    }
    int col = static_cast<int>(i) + 1;
    if (c == '"') {
      auto end = line.find('"', i + 1);
      if (end == std::string_view::npos) {
        errors.push_back({line_no, col, "unterminated quoted sentence",
                          std::string(line.substr(i))});
        return false;
      }
      tokens.push_back({Token::Kind::str,
                        std::string(line.substr(i + 1, end - i - 1)), col});
      i = end + 1;
    } else if (c == '<') {
      auto end = line.find('>', i + 1);
      if (end == std::string_view::npos) {
        errors.push_back({line_no, col, "unterminated pair term",
                          std::string(line.substr(i))});
        return false;
      }
      tokens.push_back({Token::Kind::pair,
                        std::string(line.substr(i + 1, end - i - 1)), col});
      i = end + 1;
    } else if (c == '[' || c == ']' || c == '{' || c == '}' || c == '=' ||
               c == ',') {
      tokens.push_back({Token::Kind::punct, std::string(1, c), col});
      ++i;
    } else {
      std::size_t start = i;
      while (i < line.size() && is_atom_char(line[i])) ++i;
      if (i == start) {
        errors.push_back(
            {line_no, col, "unexpected character", std::string(1, c)});
        return false;
      }
      tokens.push_back(
          {Token::Kind::atom, std::string(line.substr(start, i - start)), col});
    }
  }
  return true;
}

// Splits "a,b" (spaces allowed) from a pair token into component names.
bool split_pair(const Token& tok, int line_no, std::string& first,
                std::string& second, std::vector<ParseError>& errors) {
  auto trim = [](std::string s) {
    auto b = s.find_first_not_of(" \t");
    auto e = s.find_last_not_of(" \t");
    if (b == std::string::npos) return std::string();
    return s.substr(b, e - b + 1);
  };
  auto comma = tok.text.find(',');
  if (comma == std::string::npos) {
    errors.push_back({line_no, tok.column, "pair term needs two components",
                      "<" + tok.text + ">"});
    return false;
  }
  first = trim(tok.text.substr(0, comma));
  second = trim(tok.text.substr(comma + 1));
  if (!is_valid_id(first) || !is_valid_id(second) ||
      second.find(',') != std::string::npos) {
    errors.push_back({line_no, tok.column, "malformed pair term",
                      "<" + tok.text + ">"});
    return false;
  }
  return true;
}

struct Line {
  int number;
  std::vector<Token> tokens;
};

class Parser {
 public:
  explicit Parser(std::string_view text) { split_lines(text); }

  ParseResult run() {
    // Pass 1: declarations, so facts may reference ids declared later.
    for (const Line& line : lines_) declare(line);
    // Pass 2: facts against the declaration tables.
    for (const Line& line : lines_) facts(line);
    // Pass 3: whole-KB conditions, anchored to recorded lines.
    check_cycles();
    return {std::move(kb_), std::move(errors_)};
  }

 private:
  void split_lines(std::string_view text) {
    int number = 0;
    std::size_t pos = 0;
    while (pos <= text.size()) {
      auto nl = text.find('\n', pos);
      std::string_view raw = nl == std::string_view::npos
                                 ? text.substr(pos)
                                 : text.substr(pos, nl - pos);
      ++number;
      std::vector<Token> tokens;
      if (tokenize_line(raw, number, tokens, errors_) && !tokens.empty()) {
        lines_.push_back({number, std::move(tokens)});
      }
      if (nl == std::string_view::npos) break;
      pos = nl + 1;
    }
  }

  void error(int line, const Token& tok, std::string message,
             bool inconsistency = false) {
    errors_.push_back(
        {line, tok.column, std::move(message), tok.text, inconsistency});
  }

  void error_eol(const Line& line, std::string message) {
    int col = line.tokens.empty()
                  ? 1
                  : line.tokens.back().column +
                        static_cast<int>(line.tokens.back().text.size());
    errors_.push_back({line.number, col, std::move(message), ""});
  }

  bool take_atom(const Line& line, std::size_t& idx, std::string& out,
                 const char* what) {
    if (idx >= line.tokens.size()) {
      error_eol(line, std::string("expected ") + what);
      return false;
    }
    const Token& tok = line.tokens[idx];
    if (tok.kind != Token::Kind::atom) {
      error(line.number, tok, std::string("expected ") + what);
      return false;
    }
    ++idx;
    out = tok.text;
    return true;
  }

  bool take_id(const Line& line, std::size_t& idx, std::string& out,
               const char* what) {
    std::size_t at = idx;
    if (!take_atom(line, idx, out, what)) return false;
    if (!is_valid_id(out)) {
      error(line.number, line.tokens[at],
            std::string("invalid identifier for ") + what);
      return false;
    }
    return true;
  }

  bool take_punct(const Line& line, std::size_t& idx, char c) {
    if (idx >= line.tokens.size()) {
      error_eol(line, std::string("expected '") + c + "'");
      return false;
    }
    const Token& tok = line.tokens[idx];
    if (tok.kind != Token::Kind::punct || tok.text[0] != c) {
      error(line.number, tok, std::string("expected '") + c + "'");
      return false;
    }
    ++idx;
    return true;
  }

  bool take_keyword(const Line& line, std::size_t& idx, const char* word) {
    if (idx >= line.tokens.size()) {
      error_eol(line, std::string("expected '") + word + "'");
      return false;
    }
    const Token& tok = line.tokens[idx];
    if (tok.kind != Token::Kind::atom || tok.text != word) {
      error(line.number, tok, std::string("expected '") + word + "'");
      return false;
    }
    ++idx;
    return true;
  }

  // Subject position: a simple term atom or a pair token.
  bool take_term(const Line& line, std::size_t& idx, Term& out) {
    if (idx >= line.tokens.size()) {
      error_eol(line, "expected term");
      return false;
    }
    const Token& tok = line.tokens[idx];
    if (tok.kind == Token::Kind::pair) {
      std::string first, second;
      if (!split_pair(tok, line.number, first, second, errors_)) return false;
      ++idx;
      out = PairTerm{TermId{first}, TermId{second}};
      return true;
    }
    if (tok.kind == Token::Kind::atom && is_valid_id(tok.text)) {
      ++idx;
      out = TermId{tok.text};
      return true;
    }
    error(line.number, tok, "expected term");
    return false;
  }

  void expect_end(const Line& line, std::size_t idx) {
    if (idx < line.tokens.size()) {
      error(line.number, line.tokens[idx], "trailing tokens after directive");
    }
  }

  void declare(const Line& line) {
    const std::string& directive = line.tokens[0].text;
    std::size_t idx = 1;
    if (directive == "class") {
      std::string id;
      if (!take_id(line, idx, id, "class name")) return;
      expect_end(line, idx);
      if (!kb_.classes().contains(ClassId{id})) {
        kb_.add_class(ClassId{id});
      } else {
        error(line.number, line.tokens[1],
              "duplicate declaration of class '" + id + "'");
      }
    } else if (directive == "term") {
      std::string id;
      if (!take_id(line, idx, id, "term name")) return;
      expect_end(line, idx);
      if (!kb_.terms().contains(TermId{id})) {
        kb_.add_term(TermId{id});
      } else {
        error(line.number, line.tokens[1],
              "duplicate declaration of term '" + id + "'");
      }
    } else if (directive == "pair") {
      std::string first, second;
      if (!take_id(line, idx, first, "pair component")) return;
      if (!take_id(line, idx, second, "pair component")) return;
      expect_end(line, idx);
      PairTerm pair{TermId{first}, TermId{second}};
      if (!kb_.pairs().contains(pair)) {
        kb_.add_pair(pair);
        pair_lines_[pair] = line.number;
      } else {
        error(line.number, line.tokens[1],
              "duplicate declaration of pair '" + term_str(Term(pair)) + "'");
      }
    }
  }

  bool check_class_ref(const Line& line, std::size_t token_idx,
                       const std::string& id) {
    if (kb_.has_class(ClassId{id})) return true;
    error(line.number, line.tokens[token_idx], "undeclared class '" + id + "'");
    return false;
  }

  bool check_term_ref(const Line& line, int column, const Term& t) {
    if (kb_.has_term(t)) return true;
    errors_.push_back({line.number, column,
                       "undeclared term '" + term_str(t) + "'", term_str(t)});
    return false;
  }

  bool parse_rational(const Line& line, std::size_t& idx, Rational& out) {
    std::string text;
    std::size_t at = idx;
    if (!take_atom(line, idx, text, "rational")) return false;
    auto parsed = Rational::parse(text);
    if (!parsed) {
      error(line.number, line.tokens[at], "malformed rational");
      return false;
    }
    out = *parsed;
    return true;
  }

  // "S" inside an equiv directive or a raw query: "subject in Class".
  std::optional<Sentence> parse_sentence_text(std::string_view text,
                                              int line_no, int base_column) {
    std::vector<Token> tokens;
    std::vector<ParseError> local;
    if (!tokenize_line(text, line_no, tokens, local) || tokens.size() != 3 ||
        tokens[1].kind != Token::Kind::atom || tokens[1].text != "in") {
      errors_.push_back({line_no, base_column,
                         "expected atomic sentence \"subject in Class\"",
                         std::string(text)});
      return std::nullopt;
    }
    Term subject;
    const Token& subj_tok = tokens[0];
    if (subj_tok.kind == Token::Kind::pair) {
      std::string first, second;
      if (!split_pair(subj_tok, line_no, first, second, errors_)) {
        return std::nullopt;
      }
      subject = PairTerm{TermId{first}, TermId{second}};
    } else if (subj_tok.kind == Token::Kind::atom &&
               is_valid_id(subj_tok.text)) {
      subject = TermId{subj_tok.text};
    } else {
      errors_.push_back({line_no, base_column + subj_tok.column - 1,
                         "expected subject term", subj_tok.text});
      return std::nullopt;
    }
    const Token& cls_tok = tokens[2];
    if (cls_tok.kind != Token::Kind::atom || !is_valid_id(cls_tok.text)) {
      errors_.push_back({line_no, base_column + cls_tok.column - 1,
                         "expected class name", cls_tok.text});
      return std::nullopt;
    }
    return Sentence{subject, ClassId{cls_tok.text}};
  }

  bool check_sentence_refs(const Line& line, int column, const Sentence& s) {
    bool ok = check_term_ref(line, column, s.subject);
    if (!kb_.has_class(s.cls)) {
      errors_.push_back({line.number, column,
                         "undeclared class '" + s.cls.value + "'",
                         s.cls.value});
      ok = false;
    }
    return ok;
  }

  void facts(const Line& line) {
    const Token& head = line.tokens[0];
    const std::string& directive = head.text;
    std::size_t idx = 1;

    if (directive == "class" || directive == "term") {
      return;  // handled in pass 1
    }
    if (directive == "pair") {
      // Components must be declared terms; the pair itself was declared
      // in pass 1.
      std::string first, second;
      if (!take_id(line, idx, first, "pair component")) return;
      if (!take_id(line, idx, second, "pair component")) return;
      check_term_ref(line, line.tokens[1].column, TermId{first});
      check_term_ref(line, line.tokens[2].column, TermId{second});
      return;
    }
    if (directive == "member") {
      Term subject;
      std::size_t subj_at = idx;
      if (!take_term(line, idx, subject)) return;
      std::string cls;
      std::size_t cls_at = idx;
      if (!take_id(line, idx, cls, "class name")) return;
      expect_end(line, idx);
      bool ok = check_term_ref(line, line.tokens[subj_at].column, subject);
      ok &= check_class_ref(line, cls_at, cls);
      if (!ok) return;
      if (kb_.product_of(ClassId{cls}) && !is_pair(subject)) {
        error(line.number, line.tokens[subj_at],
              "member of product class '" + cls + "' must be a pair term");
        return;
      }
      kb_.add_member(subject, ClassId{cls});
    } else if (directive == "subset") {
      std::string sub, super;
      std::size_t sub_at = idx;
      if (!take_id(line, idx, sub, "class name")) return;
      std::size_t super_at = idx;
      if (!take_id(line, idx, super, "class name")) return;
      expect_end(line, idx);
      bool ok = check_class_ref(line, sub_at, sub);
      ok &= check_class_ref(line, super_at, super);
      if (!ok) return;
      kb_.add_subset(ClassId{sub}, ClassId{super});
      subset_lines_.try_emplace({ClassId{sub}, ClassId{super}}, line.number);
    } else if (directive == "product") {
      std::string product, left, right;
      std::size_t product_at = idx;
      if (!take_id(line, idx, product, "class name")) return;
      if (!take_punct(line, idx, '=')) return;
      std::size_t left_at = idx;
      if (!take_id(line, idx, left, "class name")) return;
      if (!take_keyword(line, idx, "x")) return;
      std::size_t right_at = idx;
      if (!take_id(line, idx, right, "class name")) return;
      expect_end(line, idx);
      bool ok = check_class_ref(line, product_at, product);
      ok &= check_class_ref(line, left_at, left);
      ok &= check_class_ref(line, right_at, right);
      if (!ok) return;
      auto existing = kb_.product_of(ClassId{product});
      ProductFact fact{ClassId{product}, ClassId{left}, ClassId{right}};
      if (existing && !(*existing == fact)) {
        error(line.number, line.tokens[product_at],
              "class '" + product + "' is already the product of '" +
                  existing->left.value + " x " + existing->right.value + "'");
        return;
      }
      kb_.add_product(fact.product, fact.left, fact.right);
    } else if (directive == "sample") {
      std::string sample, population;
      std::size_t sample_at = idx;
      if (!take_id(line, idx, sample, "term name")) return;
      std::size_t pop_at = idx;
      if (!take_id(line, idx, population, "class name")) return;
      expect_end(line, idx);
      bool ok = check_term_ref(line, line.tokens[sample_at].column,
                               TermId{sample});
      ok &= check_class_ref(line, pop_at, population);
      if (!ok) return;
      kb_.add_sample(TermId{sample}, ClassId{population});
    } else if (directive == "subsample") {
      std::string sub, super;
      std::size_t sub_at = idx;
      if (!take_id(line, idx, sub, "term name")) return;
      std::size_t super_at = idx;
      if (!take_id(line, idx, super, "term name")) return;
      expect_end(line, idx);
      bool ok = check_term_ref(line, line.tokens[sub_at].column, TermId{sub});
      ok &= check_term_ref(line, line.tokens[super_at].column, TermId{super});
      if (!ok) return;
      kb_.add_subsample(TermId{sub}, TermId{super});
    } else if (directive == "equiv") {
      if (idx + 2 > line.tokens.size() ||
          line.tokens[idx].kind != Token::Kind::str ||
          line.tokens[idx + 1].kind != Token::Kind::str) {
        error(line.number, head, "equiv needs two quoted sentences");
        return;
      }
      const Token& lhs_tok = line.tokens[idx];
      const Token& rhs_tok = line.tokens[idx + 1];
      idx += 2;
      expect_end(line, idx);
      auto lhs = parse_sentence_text(lhs_tok.text, line.number,
                                     lhs_tok.column + 1);
      auto rhs = parse_sentence_text(rhs_tok.text, line.number,
                                     rhs_tok.column + 1);
      if (!lhs || !rhs) return;
      bool ok = check_sentence_refs(line, lhs_tok.column, *lhs);
      ok &= check_sentence_refs(line, rhs_tok.column, *rhs);
      if (!ok) return;
      kb_.add_equiv(*lhs, *rhs);
    } else if (directive == "stat") {
      std::string target, reference;
      std::size_t target_at = idx;
      if (!take_id(line, idx, target, "class name")) return;
      std::size_t ref_at = idx;
      if (!take_id(line, idx, reference, "class name")) return;
      bool ok = check_class_ref(line, target_at, target);
      ok &= check_class_ref(line, ref_at, reference);

      std::optional<Interval> interval;
      if (idx < line.tokens.size() &&
          line.tokens[idx].kind == Token::Kind::punct &&
          line.tokens[idx].text == "=") {
        ++idx;
        Rational p;
        if (!parse_rational(line, idx, p)) return;
        expect_end(line, idx);
        try {
          interval = Interval::point(p);
        } catch (const std::invalid_argument& e) {
          error(line.number, head, e.what());
          return;
        }
      } else if (idx < line.tokens.size() &&
                 line.tokens[idx].kind == Token::Kind::atom &&
                 line.tokens[idx].text == "in") {
        ++idx;
        if (!take_punct(line, idx, '[')) return;
        Rational lo, hi;
        if (!parse_rational(line, idx, lo)) return;
        if (!take_punct(line, idx, ',')) return;
        if (!parse_rational(line, idx, hi)) return;
        if (!take_punct(line, idx, ']')) return;
        expect_end(line, idx);
        try {
          interval = Interval(lo, hi);
        } catch (const std::invalid_argument& e) {
          error(line.number, head, e.what());
          return;
        }
      } else {
        error_eol(line, "expected '= p' or 'in [lo, hi]'");
        return;
      }
      if (!ok) return;
      if (!kb_.add_stat(ClassId{target}, ClassId{reference}, *interval)) {
        error(line.number, head,
              "conflicting statistic for (" + target + ", " + reference + ")",
              /*inconsistency=*/true);
      }
    } else if (directive == "extensional") {
      std::string cls;
      std::size_t cls_at = idx;
      if (!take_id(line, idx, cls, "class name")) return;
      if (!take_punct(line, idx, '{')) return;
      bool ok = check_class_ref(line, cls_at, cls);
      while (idx < line.tokens.size() &&
             !(line.tokens[idx].kind == Token::Kind::punct &&
               line.tokens[idx].text == "}")) {
        Term member;
        std::size_t member_at = idx;
        if (!take_term(line, idx, member)) return;
        if (!check_term_ref(line, line.tokens[member_at].column, member)) {
          ok = false;
          continue;
        }
        if (!ok) continue;
        auto it = kb_.extensions().find(ClassId{cls});
        if (it != kb_.extensions().end() && it->second.contains(member)) {
          error(line.number, line.tokens[member_at],
                "duplicate extension member '" + term_str(member) + "'");
          continue;
        }
        kb_.add_extension_member(ClassId{cls}, member);
      }
      if (!take_punct(line, idx, '}')) return;
      expect_end(line, idx);
    } else {
      error(line.number, head, "unknown directive '" + directive + "'");
    }
  }

  void check_cycles() {
    for (const KbIssue& issue : validate(kb_)) {
      if (issue.kind != KbIssue::Kind::subset_cycle) continue;
      // Anchor the report to some declared subset fact on the cycle.
      int line = 0;
      for (const auto& [fact, fact_line] : subset_lines_) {
        if (issue.message.find(" " + fact.first.value) != std::string::npos) {
          line = fact_line;
          break;
        }
      }
      errors_.push_back({line, 1, issue.message, "", true});
    }
  }

  KnowledgeBase kb_;
  std::vector<ParseError> errors_;
  std::vector<Line> lines_;
  std::map<PairTerm, int> pair_lines_;
  std::map<std::pair<ClassId, ClassId>, int> subset_lines_;
};

}  // namespace

std::string ParseError::str() const {
  std::ostringstream out;
  out << "line " << line << ":" << column << ": " << message;
  // Messages that name their culprit already quote it; don't echo it twice.
  if (!token.empty() &&
      message.find("'" + token + "'") == std::string::npos) {
    out << " '" << token << "'";
  }
  return out.str();
}

ParseResult parse_kb(std::string_view text) { return Parser(text).run(); }

QueryResult parse_query(std::string_view text, const KnowledgeBase& kb) {
  QueryResult result;
  std::vector<Token> tokens;
  if (!tokenize_line(text, 1, tokens, result.errors)) {
    return result;
  }
  if (tokens.size() != 3 || tokens[1].kind != Token::Kind::atom ||
      tokens[1].text != "in") {
    result.errors.push_back({1, 1,
                             "expected atomic sentence \"subject in Class\"",
                             std::string(text)});
    return result;
  }
  Term subject;
  if (tokens[0].kind == Token::Kind::pair) {
    std::string first, second;
    if (!split_pair(tokens[0], 1, first, second, result.errors)) return result;
    subject = PairTerm{TermId{first}, TermId{second}};
  } else if (tokens[0].kind == Token::Kind::atom &&
             is_valid_id(tokens[0].text)) {
    subject = TermId{tokens[0].text};
  } else {
    result.errors.push_back(
        {1, tokens[0].column, "expected subject term", tokens[0].text});
    return result;
  }
  if (tokens[2].kind != Token::Kind::atom || !is_valid_id(tokens[2].text)) {
    result.errors.push_back(
        {1, tokens[2].column, "expected class name", tokens[2].text});
    return result;
  }
  Sentence sentence{subject, ClassId{tokens[2].text}};
  if (!kb.has_term(sentence.subject)) {
    result.errors.push_back({1, tokens[0].column,
                             "undeclared term '" + term_str(sentence.subject) +
                                 "'",
                             term_str(sentence.subject)});
  }
  if (!kb.has_class(sentence.cls)) {
    result.errors.push_back({1, tokens[2].column,
                             "undeclared class '" + sentence.cls.value + "'",
                             sentence.cls.value});
  }
  if (result.errors.empty()) result.sentence = sentence;
  return result;
}

std::string serialize_kb(const KnowledgeBase& kb) {
  std::ostringstream out;
  for (const ClassId& c : kb.classes()) out << "class " << c.value << "\n";
  for (const TermId& t : kb.terms()) out << "term " << t.value << "\n";
  for (const PairTerm& p : kb.pairs()) {
    out << "pair " << p.first.value << " " << p.second.value << "\n";
  }
  for (const MembershipFact& f : kb.memberships()) {
    out << directive_str(f) << "\n";
  }
  for (const SubsetFact& f : kb.subsets()) out << directive_str(f) << "\n";
  for (const ProductFact& f : kb.products()) out << directive_str(f) << "\n";
  for (const SampleFact& f : kb.samples()) out << directive_str(f) << "\n";
  for (const SubsampleFact& f : kb.subsamples()) {
    out << directive_str(f) << "\n";
  }
  for (const EquivFact& f : kb.equivs()) out << directive_str(f) << "\n";
  for (const StatStatement& s : kb.stats()) out << directive_str(s) << "\n";
  for (const auto& [cls, members] : kb.extensions()) {
    out << "extensional " << cls.value << " {";
    for (const Term& m : members) out << " " << term_str(m);
    out << " }\n";
  }
  return out.str();
}

}  // namespace refclass
