#include "refclass/oracle.hpp"

#include <gtest/gtest.h>

#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "refclass/engine.hpp"
#include "refclass/kb.hpp"
#include "refclass/parser.hpp"

using namespace refclass;

namespace {

KnowledgeBase load_corpus(const std::string& name) {
  std::ifstream in(std::string(REFCLASS_CORPUS_DIR) + "/" + name);
  EXPECT_TRUE(in.good()) << "cannot open corpus " << name;
  std::ostringstream text;
  text << in.rdbuf();
  ParseResult result = parse_kb(text.str());
  EXPECT_TRUE(result.ok());
  for (const ParseError& e : result.errors) ADD_FAILURE() << e.str();
  return result.kb;
}

Interval pt(std::int64_t n, std::int64_t d) {
  return Interval::point(Rational(n, d));
}

}  // namespace

TEST(ExtensionalCheck, CleanCorpusHasNoViolations) {
  oracle::ConsistencyReport report =
      oracle::check_extensional(load_corpus("compound_urns.rkb"));
  EXPECT_TRUE(report.ok());
  EXPECT_EQ(report.checked, 21);  // 10 subset facts + 11 stats with extensions
  report = oracle::check_extensional(load_corpus("urn_a.rkb"));
  EXPECT_TRUE(report.ok());
  EXPECT_EQ(report.checked, 1);
}

TEST(ExtensionalCheck, SkipsClassesWithoutExtensions) {
  oracle::ConsistencyReport report =
      oracle::check_extensional(load_corpus("nixon.rkb"));
  EXPECT_TRUE(report.ok());
  EXPECT_EQ(report.checked, 0);
}

TEST(ExtensionalCheck, ReportsWrongFrequency) {
  KnowledgeBase kb;
  kb.add_class(ClassId{"Black"});
  kb.add_class(ClassId{"UrnA"});
  for (const char* t : {"b1", "b2", "b3", "b4"}) kb.add_term(TermId{t});
  kb.add_stat(ClassId{"Black"}, ClassId{"UrnA"}, pt(4, 5));
  for (const char* t : {"b1", "b2", "b3", "b4"})
    kb.add_extension_member(ClassId{"UrnA"}, Term(TermId{t}));
  kb.add_extension_member(ClassId{"Black"}, Term(TermId{"b1"}));
  kb.add_extension_member(ClassId{"Black"}, Term(TermId{"b2"}));

  oracle::ConsistencyReport report = oracle::check_extensional(kb);
  ASSERT_EQ(report.violations.size(), 1u);
  EXPECT_EQ(report.violations[0].fact, "stat Black UrnA = 4/5");
  EXPECT_EQ(report.violations[0].actual, "2/4 = 1/2");
  EXPECT_EQ(report.violations[0].str(),
            "stat Black UrnA = 4/5: expected frequency in 4/5, got 2/4 = 1/2");
}

TEST(ExtensionalCheck, AcceptsFrequencyInsideInterval) {
  KnowledgeBase kb;
  kb.add_class(ClassId{"T"});
  kb.add_class(ClassId{"R"});
  for (const char* t : {"a", "b", "c", "d"}) kb.add_term(TermId{t});
  kb.add_stat(ClassId{"T"}, ClassId{"R"}, Interval(Rational(1, 4), Rational(3, 4)));
  for (const char* t : {"a", "b", "c", "d"})
    kb.add_extension_member(ClassId{"R"}, Term(TermId{t}));
  kb.add_extension_member(ClassId{"T"}, Term(TermId{"a"}));
  kb.add_extension_member(ClassId{"T"}, Term(TermId{"b"}));
  EXPECT_TRUE(oracle::check_extensional(kb).ok());  // 2/4 within [1/4, 3/4]
}

TEST(ExtensionalCheck, ReportsSubsetViolation) {
  KnowledgeBase kb;
  kb.add_class(ClassId{"A"});
  kb.add_class(ClassId{"B"});
  kb.add_term(TermId{"x"});
  kb.add_term(TermId{"y"});
  kb.add_subset(ClassId{"A"}, ClassId{"B"});
  kb.add_extension_member(ClassId{"A"}, Term(TermId{"x"}));
  kb.add_extension_member(ClassId{"B"}, Term(TermId{"y"}));
  oracle::ConsistencyReport report = oracle::check_extensional(kb);
  ASSERT_EQ(report.violations.size(), 1u);
  EXPECT_EQ(report.violations[0].fact, "subset A B");
  EXPECT_NE(report.violations[0].actual.find("x missing from B"),
            std::string::npos);
}

TEST(NaiveEvaluate, MatchesKnownVerdicts) {
  KnowledgeBase nixon = load_corpus("nixon.rkb");
  Verdict v = oracle::naive_evaluate(
      nixon, Sentence{Term(TermId{"nixon"}), ClassId{"Pacifist"}});
  EXPECT_EQ(v.interval, Interval(Rational(1, 5), Rational(9, 10)));
  EXPECT_EQ(v.candidates.size(), 2u);

  KnowledgeBase urn = load_corpus("urn_a.rkb");
  EXPECT_EQ(oracle::naive_evaluate(
                urn, Sentence{Term(TermId{"b18"}), ClassId{"Black"}})
                .interval,
            pt(4, 5));

  KnowledgeBase ignorance = load_corpus("ignorance.rkb");
  EXPECT_EQ(oracle::naive_evaluate(
                ignorance, Sentence{Term(TermId{"x"}), ClassId{"Thing"}})
                .interval,
            Interval::ignorance());
}

TEST(NaiveEvaluate, GuardRejectsOversizedKb) {
  KnowledgeBase wide;
  for (int i = 0; i < 65; ++i)
    wide.add_class(ClassId{"C" + std::to_string(i)});
  wide.add_term(TermId{"t"});
  EXPECT_THROW(oracle::naive_evaluate(
                   wide, Sentence{Term(TermId{"t"}), ClassId{"C0"}}),
               oracle::OracleLimitError);

  KnowledgeBase many_terms;
  many_terms.add_class(ClassId{"C"});
  for (int i = 0; i < 65; ++i)
    many_terms.add_term(TermId{"t" + std::to_string(i)});
  EXPECT_THROW(oracle::naive_evaluate(
                   many_terms, Sentence{Term(TermId{"t0"}), ClassId{"C"}}),
               oracle::OracleLimitError);
}

TEST(NaiveEvaluate, RejectsInconsistentKb) {
  KnowledgeBase kb;
  kb.add_class(ClassId{"A"});
  kb.add_class(ClassId{"R"});
  kb.add_term(TermId{"t"});
  kb.add_stat(ClassId{"A"}, ClassId{"R"}, pt(1, 2));
  kb.add_stat(ClassId{"A"}, ClassId{"R"}, pt(2, 3));
  EXPECT_THROW(
      oracle::naive_evaluate(kb, Sentence{Term(TermId{"t"}), ClassId{"A"}}),
      KbInconsistencyError);
}

TEST(QueryableSentences, EnumeratesTermsAndPairsTimesClasses) {
  KnowledgeBase kb = load_corpus("compound_urns.rkb");
  std::vector<Sentence> sentences = oracle::queryable_sentences(kb);
  std::size_t subjects = kb.terms().size() + kb.pairs().size();
  EXPECT_EQ(sentences.size(), subjects * kb.classes().size());
  EXPECT_TRUE(std::is_sorted(sentences.begin(), sentences.end()));
}

TEST(RandomKb, DeterministicPerSeed) {
  for (std::uint64_t seed : {0ull, 1ull, 42ull, 999ull}) {
    EXPECT_EQ(oracle::random_kb(seed), oracle::random_kb(seed)) << seed;
  }
  // Different seeds almost surely differ; spot-check a couple.
  EXPECT_NE(serialize_kb(oracle::random_kb(1)), serialize_kb(oracle::random_kb(2)));
}

TEST(RandomKb, RespectsBounds) {
  oracle::RandomKbBounds zero{0, 0, 0};
  EXPECT_EQ(oracle::random_kb(7, zero), KnowledgeBase{});

  oracle::RandomKbBounds bounds;
  for (std::uint64_t seed = 0; seed < 50; ++seed) {
    KnowledgeBase kb = oracle::random_kb(seed, bounds);
    EXPECT_LE(kb.classes().size(),
              static_cast<std::size_t>(bounds.max_classes));
    EXPECT_LE(kb.terms().size(), static_cast<std::size_t>(bounds.max_terms));
    EXPECT_LE(kb.stats().size(), static_cast<std::size_t>(bounds.max_stats));
  }
}

TEST(RandomKb, GeneratedKbsAreWellFormedAndConsistent) {
  for (std::uint64_t seed = 0; seed < 200; ++seed) {
    SCOPED_TRACE(seed);
    KnowledgeBase kb = oracle::random_kb(seed);
    EXPECT_TRUE(validate(kb).empty());
    EXPECT_NO_THROW(require_consistent(kb));
    // Round-trips through the text format.
    ParseResult reparsed = parse_kb(serialize_kb(kb));
    ASSERT_TRUE(reparsed.ok());
    EXPECT_EQ(reparsed.kb, kb);
  }
}

TEST(CrossCheck, EngineMatchesOracleOnCorpora) {
  struct Case {
    const char* corpus;
    Sentence query;
  };
  const Case cases[] = {
      {"urn_a.rkb", {Term(TermId{"b18"}), ClassId{"Black"}}},
      {"nixon.rkb", {Term(TermId{"nixon"}), ClassId{"Pacifist"}}},
      {"tweety_penguin.rkb", {Term(TermId{"tweety"}), ClassId{"Flier"}}},
      {"coin.rkb", {Term(TermId{"die1"}), ClassId{"Odd"}}},
      {"supersample.rkb", {Term(TermId{"s1"}), ClassId{"MajoritySupport"}}},
      {"strength_nested.rkb", {Term(TermId{"d1"}), ClassId{"Pass"}}},
      {"strength_equal.rkb", {Term(TermId{"d1"}), ClassId{"Pass"}}},
  };
  for (const Case& c : cases) {
    SCOPED_TRACE(c.corpus);
    KnowledgeBase kb = load_corpus(c.corpus);
    Verdict engine = evaluate(kb, c.query);
    Verdict naive = oracle::naive_evaluate(kb, c.query);
    EXPECT_EQ(engine.interval, naive.interval);
    EXPECT_EQ(engine.candidates, naive.candidates);
    EXPECT_EQ(engine.edges, naive.edges);
    EXPECT_EQ(engine.labels, naive.labels);
    EXPECT_EQ(engine.survivors, naive.survivors);
  }
}

TEST(CrossCheck, EngineMatchesOracleOnRandomKbs) {
  // Two independent implementations, every queryable sentence, many seeds.
  int evaluated = 0;
  for (std::uint64_t seed = 0; seed < 300; ++seed) {
    KnowledgeBase kb = oracle::random_kb(seed);
    for (const Sentence& query : oracle::queryable_sentences(kb)) {
      Verdict engine = evaluate(kb, query);
      Verdict naive = oracle::naive_evaluate(kb, query);
      ASSERT_EQ(engine.interval, naive.interval)
          << "seed " << seed << " query " << query.str() << "\n"
          << serialize_kb(kb);
      ASSERT_EQ(engine.candidates, naive.candidates)
          << "seed " << seed << " query " << query.str();
      ASSERT_EQ(engine.edges, naive.edges)
          << "seed " << seed << " query " << query.str();
      ASSERT_EQ(engine.survivors, naive.survivors)
          << "seed " << seed << " query " << query.str();
      ++evaluated;
    }
  }
  EXPECT_GT(evaluated, 10000);  // the fuzz actually exercised something
}
