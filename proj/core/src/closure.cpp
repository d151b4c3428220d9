#include "refclass/closure.hpp"

#include <algorithm>
#include <deque>

namespace refclass {

Sentence EquivalencePartition::representative(const Sentence& s) const {
  auto it = rep.find(s);
  return it == rep.end() ? s : it->second;
}

std::vector<Sentence> EquivalencePartition::class_of(const Sentence& s) const {
  auto it = members.find(representative(s));
  if (it == members.end()) return {s};
  return it->second;
}

bool SubsetClosure::contains(const ClassId& sub, const ClassId& super) const {
  if (sub == super) return true;
  return pairs.contains({sub, super});
}

std::vector<ClassId> SubsetClosure::supersets_of(const ClassId& c) const {
  std::vector<ClassId> out{c};
  auto it = pairs.lower_bound({c, ClassId{}});
  for (; it != pairs.end() && it->first == c; ++it) {
    if (it->second != c) out.push_back(it->second);
  }
  std::sort(out.begin(), out.end());
  return out;
}

EquivalencePartition equivalence_classes(const KnowledgeBase& kb) {
  // Union-find over the sentences mentioned in equiv facts.
  std::map<Sentence, Sentence> parent;
  auto find = [&](Sentence s) {
    while (true) {
      auto it = parent.find(s);
      if (it == parent.end() || it->second == s) return s;
      s = it->second;
    }
  };
  for (const EquivFact& f : kb.equivs()) {
    parent.try_emplace(f.lhs, f.lhs);
    parent.try_emplace(f.rhs, f.rhs);
    Sentence a = find(f.lhs);
    Sentence b = find(f.rhs);
    if (!(a == b)) parent[b] = a;
  }

  EquivalencePartition partition;
  std::map<Sentence, std::vector<Sentence>> groups;
  for (const auto& [s, _] : parent) {
    groups[find(s)].push_back(s);
  }
  for (auto& [_, group] : groups) {
    std::sort(group.begin(), group.end());
    const Sentence& least = group.front();
    for (const Sentence& s : group) partition.rep[s] = least;
    partition.members[least] = group;
  }
  return partition;
}

SubsetClosure subset_closure(const KnowledgeBase& kb) {
  std::map<ClassId, std::vector<ClassId>> adj;
  for (const SubsetFact& f : kb.subsets()) {
    if (f.sub != f.super) adj[f.sub].push_back(f.super);
  }

  SubsetClosure closure;
  for (const ClassId& c : kb.classes()) {
    closure.pairs.insert({c, c});
  }

  // BFS from each class; a path back to the start is a cycle.
  for (const ClassId& start : kb.classes()) {
    std::set<ClassId> seen;
    std::deque<ClassId> queue{start};
    while (!queue.empty()) {
      ClassId c = queue.front();
      queue.pop_front();
      auto it = adj.find(c);
      if (it == adj.end()) continue;
      for (const ClassId& next : it->second) {
        if (next == start) {
          throw KbInconsistencyError("subset cycle through class '" +
                                     start.value + "'");
        }
        if (seen.insert(next).second) {
          closure.pairs.insert({start, next});
          queue.push_back(next);
        }
      }
    }
  }
  return closure;
}

std::set<ClassId> known_memberships(const KnowledgeBase& kb,
                                    const SubsetClosure& closure,
                                    const Term& t) {
  std::set<ClassId> out;
  for (const MembershipFact& f : kb.memberships()) {
    if (!(f.subject == t)) continue;
    for (const ClassId& super : closure.supersets_of(f.cls)) {
      out.insert(super);
    }
  }
  return out;
}

Closures compute_closures(const KnowledgeBase& kb) {
  return {equivalence_classes(kb), subset_closure(kb)};
}

}  // namespace refclass
