#pragma once

#include <cstdint>
#include <set>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "refclass/kb.hpp"
#include "refclass/verdict.hpp"

// Independent brute-force reference implementation. Deliberately shares
// only the core-model types with the engine — no closure or defeat code —
// so that agreement between evaluate() and naive_evaluate() is evidence,
// not tautology. Everything here is written for smallness and obviousness,
// not speed.
namespace refclass::oracle {

struct Violation {
  std::string fact;      // directive text of the offending fact
  std::string expected;  // what the fact claims
  std::string actual;    // what the enumerated extensions say
  std::string str() const;
};

// Result of checking declared facts against extensional enumerations.
// A fact is checkable only when every class it mentions carries an
// extension; unchecked facts are not violations.
struct ConsistencyReport {
  std::vector<Violation> violations;
  int checked = 0;  // number of facts that were checkable
  bool ok() const { return violations.empty(); }
};

// For each stat %(A,B) whose classes are both enumerated: |A ∩ ext(B)| /
// |ext(B)| must lie in the declared interval (membership in A is taken
// extensionally). For each subset fact with both sides enumerated:
// inclusion must hold. An empty reference extension is reported as a
// violation, not skipped silently.
ConsistencyReport check_extensional(const KnowledgeBase& kb);

class OracleLimitError : public std::runtime_error {
 public:
  explicit OracleLimitError(std::string message)
      : std::runtime_error(std::move(message)) {}
};

// Re-derives the verdict from scratch: equivalence class by path search
// over the declared biconditionals, subset closure by boolean-matrix
// repeated squaring, candidates by literal triple enumeration, edges by
// re-reading each principle, labels by naive simultaneous iteration.
// Guard: at most 64 classes and 64 terms (including pairs); beyond that
// throws OracleLimitError. Throws KbInconsistencyError like the engine.
Verdict naive_evaluate(const KnowledgeBase& kb, const Sentence& query);

// Every sentence the KB can say anything about: each declared term (and
// pair) crossed with each declared class.
std::vector<Sentence> queryable_sentences(const KnowledgeBase& kb);

// The reflexive-transitive subset closure as explicit pairs, computed by
// the matrix method. Same size guard as naive_evaluate. Exposed so the
// closure tests can cross-check the engine's BFS against it.
std::set<std::pair<ClassId, ClassId>> subset_closure_pairs(
    const KnowledgeBase& kb);

struct RandomKbBounds {
  int max_classes = 10;
  int max_terms = 10;
  int max_stats = 6;
};

// Deterministic pseudo-random KB, valid by construction: subset edges
// only from lower to higher class index (acyclic), stats skip pairs that
// already carry one, memberships avoid putting simple terms into the
// product class. The generator is a plain linear congruential sequence,
//   state := state * 6364136223846793005 + 1442695040888963407
// (Knuth's MMIX constants), taking the high 32 bits per draw, so corpora
// are reproducible from the seed in any language.
KnowledgeBase random_kb(std::uint64_t seed, const RandomKbBounds& bounds = {});

}  // namespace refclass::oracle
