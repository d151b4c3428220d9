#pragma once

#include <cstddef>
#include <string>
#include <variant>
#include <vector>

#include "refclass/kb.hpp"

namespace refclass {

enum class CandidateKind { plain, product_based, sample_based };

std::string kind_str(CandidateKind kind);

// One potential reference-class inference: the KB holds (possibly by
// derivation through known subsets) that `subject` is in `reference`, a
// statistic for `target` over `reference`, and the sentence
// "subject in target" lies in the queried equivalence class.
struct Candidate {
  Term subject;
  ClassId target;
  ClassId reference;
  Interval interval;
  CandidateKind kind = CandidateKind::plain;

  auto operator<=>(const Candidate&) const = default;
  std::string str() const;  // "b18 in Black via UrnA = 4/5"
};

enum class Principle { subset, bayes, supersample, strength };

// Machine id: "subset", "bayes", "supersample", "strength".
std::string principle_id(Principle p);
// Display name: "Subset Principle", "Bayesian Principle", ...
std::string principle_name(Principle p);

// A witness is a fact (declared, or derivable like a transitive subset
// pair) whose presence the defeat rule depended on. Replaying the recorded
// witnesses against the KB re-derives the edge.
using Witness =
    std::variant<SubsetFact, ProductFact, StatStatement, SubsampleFact>;

std::string witness_str(const Witness& w);

struct DefeatEdge {
  std::size_t attacker;  // index into the verdict's candidate list
  std::size_t victim;
  Principle principle;
  std::vector<Witness> witnesses;

  bool operator==(const DefeatEdge&) const = default;
};

enum class Label { in, out, undecided };

std::string label_str(Label l);

// Final interval plus the full trace that produced it. The interval is
// the cover of the survivors' intervals, or [0,1] when no candidate
// exists at all.
struct Verdict {
  Sentence query;
  std::vector<Sentence> equivalence_class;
  std::vector<Candidate> candidates;
  std::vector<DefeatEdge> edges;
  std::vector<Label> labels;          // parallel to candidates
  std::vector<std::size_t> survivors; // indices with label != out
  Interval interval;
};

}  // namespace refclass
