#pragma once

#include <map>
#include <set>
#include <vector>

#include "refclass/kb.hpp"

namespace refclass {

// Sentence partition induced by the declared biconditionals, closed under
// symmetry and transitivity. Sentences never mentioned in an equiv fact
// are their own singleton class.
class EquivalencePartition {
 public:
  // Canonical representative: the least sentence of the class.
  Sentence representative(const Sentence& s) const;

  // Every known sentence of s's class, sorted, always including s itself.
  std::vector<Sentence> class_of(const Sentence& s) const;

  // Internal: populated by equivalence_classes().
  std::map<Sentence, Sentence> rep;
  std::map<Sentence, std::vector<Sentence>> members;
};

// Reflexive-transitive closure of the declared subset facts over all
// declared classes.
class SubsetClosure {
 public:
  bool contains(const ClassId& sub, const ClassId& super) const;

  // All classes C with (c, C) in the closure, including c itself.
  std::vector<ClassId> supersets_of(const ClassId& c) const;

  std::set<std::pair<ClassId, ClassId>> pairs;
};

EquivalencePartition equivalence_classes(const KnowledgeBase& kb);

// Throws KbInconsistencyError on a cycle among distinct classes.
SubsetClosure subset_closure(const KnowledgeBase& kb);

// Classes the KB knows t to belong to: declared memberships propagated
// upward through the subset closure.
std::set<ClassId> known_memberships(const KnowledgeBase& kb,
                                    const SubsetClosure& closure,
                                    const Term& t);

struct Closures {
  EquivalencePartition equivalence;
  SubsetClosure subsets;
};

Closures compute_closures(const KnowledgeBase& kb);

}  // namespace refclass
