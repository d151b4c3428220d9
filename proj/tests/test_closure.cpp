#include "refclass/closure.hpp"

#include <gtest/gtest.h>

#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "refclass/kb.hpp"
#include "refclass/oracle.hpp"
#include "refclass/parser.hpp"

using namespace refclass;

namespace {

KnowledgeBase parse_ok(std::string_view text) {
  ParseResult result = parse_kb(text);
  EXPECT_TRUE(result.ok());
  for (const ParseError& e : result.errors) ADD_FAILURE() << e.str();
  return result.kb;
}

KnowledgeBase load_corpus(const std::string& name) {
  std::ifstream in(std::string(REFCLASS_CORPUS_DIR) + "/" + name);
  EXPECT_TRUE(in.good()) << "cannot open corpus " << name;
  std::ostringstream text;
  text << in.rdbuf();
  return parse_ok(text.str());
}

Sentence sent(const std::string& term, const std::string& cls) {
  return Sentence{Term(TermId{term}), ClassId{cls}};
}

}  // namespace

TEST(Equivalence, SingletonsForUnmentionedSentences) {
  KnowledgeBase kb = parse_ok("class A\nterm t\n");
  EquivalencePartition part = equivalence_classes(kb);
  Sentence s = sent("t", "A");
  EXPECT_EQ(part.representative(s), s);
  EXPECT_EQ(part.class_of(s), std::vector<Sentence>{s});
}

TEST(Equivalence, SymmetricAndTransitiveClosure) {
  KnowledgeBase kb = parse_ok(
      "class A\nclass B\nclass C\n"
      "term x\nterm y\nterm z\n"
      "equiv \"x in A\" \"y in B\"\n"
      "equiv \"y in B\" \"z in C\"\n");
  EquivalencePartition part = equivalence_classes(kb);
  Sentence a = sent("x", "A"), b = sent("y", "B"), c = sent("z", "C");
  EXPECT_EQ(part.representative(a), part.representative(b));
  EXPECT_EQ(part.representative(b), part.representative(c));
  // Representative is the least member; members are sorted and complete.
  std::vector<Sentence> expect = {a, b, c};
  std::sort(expect.begin(), expect.end());
  EXPECT_EQ(part.class_of(b), expect);
  EXPECT_EQ(part.representative(a), expect.front());
  // Chaining from either end reaches the same class.
  EXPECT_EQ(part.class_of(a), part.class_of(c));
}

TEST(Equivalence, CoinCorpusChainsFourSentences) {
  KnowledgeBase kb = load_corpus("coin.rkb");
  EquivalencePartition part = equivalence_classes(kb);
  std::vector<Sentence> cls = part.class_of(sent("toss1", "Heads"));
  EXPECT_EQ(cls.size(), 4u);
  // Every member reports the identical class.
  for (const Sentence& s : cls) {
    EXPECT_EQ(part.class_of(s), cls);
    EXPECT_EQ(part.representative(s), cls.front());
  }
}

TEST(Subsets, ReflexiveAndTransitive) {
  KnowledgeBase kb = parse_ok(
      "class FlyingPenguin\nclass Penguin\nclass Bird\nclass Thing\n"
      "subset FlyingPenguin Penguin\n"
      "subset Penguin Bird\n");
  SubsetClosure closure = subset_closure(kb);
  EXPECT_TRUE(closure.contains(ClassId{"Penguin"}, ClassId{"Penguin"}));
  EXPECT_TRUE(closure.contains(ClassId{"FlyingPenguin"}, ClassId{"Bird"}));
  EXPECT_FALSE(closure.contains(ClassId{"Bird"}, ClassId{"Penguin"}));
  EXPECT_FALSE(closure.contains(ClassId{"Penguin"}, ClassId{"Thing"}));

  std::vector<ClassId> ups = closure.supersets_of(ClassId{"FlyingPenguin"});
  std::vector<ClassId> expect = {ClassId{"Bird"}, ClassId{"FlyingPenguin"},
                                 ClassId{"Penguin"}};
  EXPECT_EQ(ups, expect);
  EXPECT_EQ(closure.supersets_of(ClassId{"Thing"}),
            std::vector<ClassId>{ClassId{"Thing"}});
}

TEST(Subsets, UrnCorpusClosure) {
  KnowledgeBase kb = load_corpus("urn_a.rkb");
  SubsetClosure closure = subset_closure(kb);
  EXPECT_TRUE(closure.contains(ClassId{"UrnA"}, ClassId{"Room"}));
  EXPECT_FALSE(closure.contains(ClassId{"Room"}, ClassId{"UrnA"}));
}

TEST(Subsets, CycleThrows) {
  KnowledgeBase kb;
  kb.add_class(ClassId{"A"});
  kb.add_class(ClassId{"B"});
  kb.add_subset(ClassId{"A"}, ClassId{"B"});
  kb.add_subset(ClassId{"B"}, ClassId{"A"});
  EXPECT_THROW(subset_closure(kb), KbInconsistencyError);

  // Self-loops are not cycles among distinct classes.
  KnowledgeBase self;
  self.add_class(ClassId{"A"});
  self.add_subset(ClassId{"A"}, ClassId{"A"});
  EXPECT_NO_THROW(subset_closure(self));
}

TEST(Subsets, LongerCycleThrows) {
  KnowledgeBase kb;
  for (const char* name : {"A", "B", "C", "D"}) kb.add_class(ClassId{name});
  kb.add_subset(ClassId{"A"}, ClassId{"B"});
  kb.add_subset(ClassId{"B"}, ClassId{"C"});
  kb.add_subset(ClassId{"C"}, ClassId{"D"});
  kb.add_subset(ClassId{"D"}, ClassId{"B"});
  EXPECT_THROW(subset_closure(kb), KbInconsistencyError);
}

TEST(Memberships, PropagateUpward) {
  KnowledgeBase kb = parse_ok(
      "class Penguin\nclass Bird\nclass Fish\n"
      "term tweety\n"
      "subset Penguin Bird\n"
      "member tweety Penguin\n");
  SubsetClosure closure = subset_closure(kb);
  std::set<ClassId> known =
      known_memberships(kb, closure, Term(TermId{"tweety"}));
  std::set<ClassId> expect = {ClassId{"Penguin"}, ClassId{"Bird"}};
  EXPECT_EQ(known, expect);
}

TEST(Memberships, PairSubjects) {
  KnowledgeBase kb = parse_ok(
      "class Draws\nclass UB\n"
      "term u\nterm b\npair u b\n"
      "subset Draws UB\n"
      "member <u,b> Draws\n");
  SubsetClosure closure = subset_closure(kb);
  Term pair = Term(PairTerm{TermId{"u"}, TermId{"b"}});
  std::set<ClassId> known = known_memberships(kb, closure, pair);
  std::set<ClassId> expect = {ClassId{"Draws"}, ClassId{"UB"}};
  EXPECT_EQ(known, expect);
  // The components are not members of anything here.
  EXPECT_TRUE(known_memberships(kb, closure, Term(TermId{"u"})).empty());
}

TEST(Subsets, MonotoneUnderNewFacts) {
  KnowledgeBase kb = parse_ok(
      "class A\nclass B\nclass C\n"
      "subset A B\n");
  SubsetClosure before = subset_closure(kb);
  kb.add_subset(ClassId{"B"}, ClassId{"C"});
  SubsetClosure after = subset_closure(kb);
  for (const auto& pr : before.pairs) EXPECT_TRUE(after.pairs.contains(pr));
  EXPECT_TRUE(after.contains(ClassId{"A"}, ClassId{"C"}));
}

TEST(Subsets, AgreesWithMatrixOracle) {
  // Cross-check the worklist closure against the independent boolean-matrix
  // implementation on generated KBs.
  for (std::uint64_t seed = 0; seed < 100; ++seed) {
    SCOPED_TRACE(seed);
    oracle::RandomKbBounds bounds;
    bounds.max_classes = 32;
    KnowledgeBase kb = oracle::random_kb(seed, bounds);
    SubsetClosure closure = subset_closure(kb);
    EXPECT_EQ(closure.pairs, oracle::subset_closure_pairs(kb));
  }
}

TEST(Closures, ComputeClosuresBundlesBoth) {
  KnowledgeBase kb = load_corpus("coin.rkb");
  Closures closures = compute_closures(kb);
  EXPECT_EQ(closures.equivalence.class_of(sent("toss1", "Heads")).size(), 4u);
  EXPECT_TRUE(closures.subsets.contains(ClassId{"Heads"}, ClassId{"Heads"}));
}
