#include <benchmark/benchmark.h>

#include <fstream>
#include <sstream>
#include <string>

#include "refclass/closure.hpp"
#include "refclass/engine.hpp"
#include "refclass/kb.hpp"
#include "refclass/oracle.hpp"
#include "refclass/parser.hpp"

using namespace refclass;

namespace {

std::string read_corpus(const std::string& name) {
  std::ifstream in(std::string(REFCLASS_CORPUS_DIR) + "/" + name);
  std::ostringstream text;
  text << in.rdbuf();
  return text.str();
}

const std::string& compound_text() {
  static const std::string text = read_corpus("compound_urns.rkb");
  return text;
}

const KnowledgeBase& compound_kb() {
  static const KnowledgeBase kb = parse_kb(compound_text()).kb;
  return kb;
}

}  // namespace

static void BM_ParseCompoundCorpus(benchmark::State& state) {
  const std::string& text = compound_text();
  for (auto _ : state) {
    ParseResult result = parse_kb(text);
    benchmark::DoNotOptimize(result.kb);
  }
  state.SetBytesProcessed(static_cast<std::int64_t>(state.iterations()) *
                          static_cast<std::int64_t>(text.size()));
}
BENCHMARK(BM_ParseCompoundCorpus);

static void BM_SerializeCompoundCorpus(benchmark::State& state) {
  const KnowledgeBase& kb = compound_kb();
  for (auto _ : state) {
    std::string text = serialize_kb(kb);
    benchmark::DoNotOptimize(text);
  }
}
BENCHMARK(BM_SerializeCompoundCorpus);

static void BM_ComputeClosures(benchmark::State& state) {
  const KnowledgeBase& kb = compound_kb();
  for (auto _ : state) {
    Closures closures = compute_closures(kb);
    benchmark::DoNotOptimize(closures);
  }
}
BENCHMARK(BM_ComputeClosures);

static void BM_EvaluateCompoundQuery(benchmark::State& state) {
  const KnowledgeBase& kb = compound_kb();
  Sentence query{Term(TermId{"b18"}), ClassId{"Black"}};
  for (auto _ : state) {
    Verdict v = evaluate(kb, query);
    benchmark::DoNotOptimize(v);
  }
}
BENCHMARK(BM_EvaluateCompoundQuery);

static void BM_EvaluateRandomKbAllQueries(benchmark::State& state) {
  // One mid-sized generated KB, every queryable sentence per iteration.
  KnowledgeBase kb = oracle::random_kb(17);
  std::vector<Sentence> queries = oracle::queryable_sentences(kb);
  for (auto _ : state) {
    for (const Sentence& query : queries) {
      Verdict v = evaluate(kb, query);
      benchmark::DoNotOptimize(v);
    }
  }
  state.SetItemsProcessed(static_cast<std::int64_t>(state.iterations()) *
                          static_cast<std::int64_t>(queries.size()));
}
BENCHMARK(BM_EvaluateRandomKbAllQueries);

static void BM_OracleNaiveEvaluate(benchmark::State& state) {
  // The brute-force reference on the same generated KB, for comparison
  // against BM_EvaluateRandomKbAllQueries.
  KnowledgeBase kb = oracle::random_kb(17);
  std::vector<Sentence> queries = oracle::queryable_sentences(kb);
  for (auto _ : state) {
    for (const Sentence& query : queries) {
      Verdict v = oracle::naive_evaluate(kb, query);
      benchmark::DoNotOptimize(v);
    }
  }
  state.SetItemsProcessed(static_cast<std::int64_t>(state.iterations()) *
                          static_cast<std::int64_t>(queries.size()));
}
BENCHMARK(BM_OracleNaiveEvaluate);

static void BM_RandomKbGeneration(benchmark::State& state) {
  std::uint64_t seed = 0;
  for (auto _ : state) {
    KnowledgeBase kb = oracle::random_kb(seed++);
    benchmark::DoNotOptimize(kb);
  }
}
BENCHMARK(BM_RandomKbGeneration);

BENCHMARK_MAIN();
