#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include "refclass/closure.hpp"
#include "refclass/kb.hpp"
#include "refclass/verdict.hpp"

namespace refclass {

// A query is the queried sentence together with its resolved equivalence
// class: statistical knowledge bears on the whole class, so any spelling
// of an equivalent sentence must get the same interval.
struct Query {
  Sentence sentence;
  std::vector<Sentence> equivalence_class;
};

Query make_query(const Closures& closures, const Sentence& sentence);

// One candidate per (subject, target, reference) triple such that
// "subject in target" is in the query's equivalence class, reference is a
// known membership of subject, and the KB has a statistic for target over
// reference. Sorted by (reference, target, subject).
std::vector<Candidate> generate_candidates(const KnowledgeBase& kb,
                                           const Closures& closures,
                                           const Query& query);

// Attack found by one relevance principle, ready to be placed into a
// DefeatEdge by defeat_graph().
struct Attack {
  Principle principle;
  std::vector<Witness> witnesses;
};

// A differing statistic on a known proper subclass of the victim's
// reference class silences the victim.
std::optional<Attack> subset_defeats(const Candidate& attacker,
                                     const Candidate& victim,
                                     const Closures& closures);

// The attacker's reference class sits inside a declared product class
// whose statistic for the attacker's target equals the victim's interval:
// the product space "matches the competitor", so the competitor's
// statistic is absorbed and the finer class wins. The attacker's subject
// must be a pair term.
std::optional<Attack> bayes_defeats(const Candidate& attacker,
                                    const Candidate& victim,
                                    const KnowledgeBase& kb,
                                    const Closures& closures);

// Of two sample-grounded statistics, the one from the larger sample
// silences the one from a contained subsample.
std::optional<Attack> supersample_defeats(const Candidate& attacker,
                                          const Candidate& victim,
                                          const KnowledgeBase& kb);

// A strictly narrower interval silences a strictly wider one; the
// grounded fixpoint makes sure the attack only counts while the narrower
// candidate itself stands.
std::optional<Attack> strength_defeats(const Candidate& attacker,
                                       const Candidate& victim);

struct DefeatGraph {
  std::vector<Candidate> candidates;
  std::vector<DefeatEdge> edges;
};

// All edges from all four rules over all ordered pairs; one edge per
// (attacker, victim, principle), sorted by (attacker, victim, principle).
DefeatGraph defeat_graph(const std::vector<Candidate>& candidates,
                         const KnowledgeBase& kb, const Closures& closures);

// Grounded labeling: IN when every attacker is OUT, OUT when some
// attacker is IN, iterated to fixpoint; the rest stay UNDECIDED.
// Survivors are the candidates not labeled OUT.
struct GroundedResult {
  std::vector<Label> labels;
  std::vector<std::size_t> survivors;
  std::size_t iterations = 0;
};

GroundedResult surviving(const DefeatGraph& graph);

class CandidateLimitError : public std::runtime_error {
 public:
  explicit CandidateLimitError(std::string message)
      : std::runtime_error(std::move(message)) {}
};

struct EvaluateOptions {
  // Guard against pathological KBs; CLI overrides from REFCLASS_MAX_CANDIDATES.
  std::size_t max_candidates = 10000;
};

// Full pipeline: closures, candidates, defeat graph, grounded fixpoint,
// cover of the survivors' intervals ([0,1] when no candidate exists).
// Throws KbInconsistencyError on conflicting stats or subset cycles and
// CandidateLimitError past options.max_candidates.
Verdict evaluate(const KnowledgeBase& kb, const Sentence& query,
                 const EvaluateOptions& options = {});

}  // namespace refclass
