#include "refclass/kb.hpp"

#include <algorithm>

namespace refclass {

std::string term_str(const Term& t) {
  if (const auto* simple = std::get_if<TermId>(&t)) {
    return simple->value;
  }
  const auto& pair = std::get<PairTerm>(t);
  return "<" + pair.first.value + "," + pair.second.value + ">";
}

bool is_pair(const Term& t) { return std::holds_alternative<PairTerm>(t); }

std::string Sentence::str() const {
  return term_str(subject) + " in " + cls.value;
}

std::string directive_str(const MembershipFact& f) {
  return "member " + term_str(f.subject) + " " + f.cls.value;
}

std::string directive_str(const SubsetFact& f) {
  return "subset " + f.sub.value + " " + f.super.value;
}

std::string directive_str(const ProductFact& f) {
  return "product " + f.product.value + " = " + f.left.value + " x " +
         f.right.value;
}

std::string directive_str(const SampleFact& f) {
  return "sample " + f.sample.value + " " + f.population.value;
}

std::string directive_str(const SubsampleFact& f) {
  return "subsample " + f.sub.value + " " + f.super.value;
}

std::string directive_str(const EquivFact& f) {
  return "equiv \"" + f.lhs.str() + "\" \"" + f.rhs.str() + "\"";
}

std::string directive_str(const StatStatement& s) {
  if (s.interval.is_point()) {
    return "stat " + s.target.value + " " + s.reference.value + " = " +
           s.interval.lo().str();
  }
  return "stat " + s.target.value + " " + s.reference.value + " in [" +
         s.interval.lo().str() + ", " + s.interval.hi().str() + "]";
}

void KnowledgeBase::add_member(Term subject, ClassId cls) {
  memberships_.insert({std::move(subject), std::move(cls)});
}

void KnowledgeBase::add_subset(ClassId sub, ClassId super) {
  subsets_.insert({std::move(sub), std::move(super)});
}

void KnowledgeBase::add_product(ClassId product, ClassId left, ClassId right) {
  products_.insert({std::move(product), std::move(left), std::move(right)});
}

void KnowledgeBase::add_sample(TermId sample, ClassId population) {
  samples_.insert({std::move(sample), std::move(population)});
}

void KnowledgeBase::add_subsample(TermId sub, TermId super) {
  subsamples_.insert({std::move(sub), std::move(super)});
}

void KnowledgeBase::add_equiv(Sentence lhs, Sentence rhs) {
  if (rhs < lhs) std::swap(lhs, rhs);
  equivs_.insert({std::move(lhs), std::move(rhs)});
}

bool KnowledgeBase::add_stat(ClassId target, ClassId reference,
                             Interval interval) {
  bool conflict = false;
  auto existing = stat(target, reference);
  if (existing && *existing != interval) conflict = true;
  stats_.insert({std::move(target), std::move(reference), interval});
  return !conflict;
}

void KnowledgeBase::add_extension_member(const ClassId& cls, Term member) {
  extensions_[cls].insert(std::move(member));
}

bool KnowledgeBase::has_term(const Term& t) const {
  if (const auto* simple = std::get_if<TermId>(&t)) {
    return terms_.contains(*simple);
  }
  return pairs_.contains(std::get<PairTerm>(t));
}

bool KnowledgeBase::is_sample_term(const Term& t) const {
  const auto* simple = std::get_if<TermId>(&t);
  if (!simple) return false;
  return std::any_of(samples_.begin(), samples_.end(),
                     [&](const SampleFact& f) { return f.sample == *simple; });
}

std::optional<Interval> KnowledgeBase::stat(const ClassId& target,
                                            const ClassId& reference) const {
  auto it = stats_.lower_bound(
      {target, reference, Interval::point(Rational(0))});
  if (it != stats_.end() && it->target == target &&
      it->reference == reference) {
    return it->interval;
  }
  return std::nullopt;
}

std::optional<ProductFact> KnowledgeBase::product_of(const ClassId& c) const {
  for (const ProductFact& f : products_) {
    if (f.product == c) return f;
  }
  return std::nullopt;
}

namespace {

void check_class(const KnowledgeBase& kb, const ClassId& c,
                 const std::string& where, std::vector<KbIssue>& issues) {
  if (!kb.has_class(c)) {
    issues.push_back({KbIssue::Kind::undeclared_class,
                      "undeclared class '" + c.value + "' in " + where});
  }
}

void check_term(const KnowledgeBase& kb, const Term& t,
                const std::string& where, std::vector<KbIssue>& issues) {
  if (!kb.has_term(t)) {
    issues.push_back({KbIssue::Kind::undeclared_term,
                      "undeclared term '" + term_str(t) + "' in " + where});
  }
}

// Cycle among distinct classes; self-loops are just reflexivity.
std::optional<std::vector<ClassId>> find_subset_cycle(const KnowledgeBase& kb) {
  std::map<ClassId, std::vector<ClassId>> adj;
  for (const SubsetFact& f : kb.subsets()) {
    if (f.sub != f.super) adj[f.sub].push_back(f.super);
  }
  std::map<ClassId, int> state;  // 0 unvisited, 1 on stack, 2 done
  std::vector<ClassId> stack;
  std::vector<ClassId> cycle;

  auto dfs = [&](auto&& self, const ClassId& c) -> bool {
    state[c] = 1;
    stack.push_back(c);
    for (const ClassId& next : adj[c]) {
      int s = state.count(next) ? state[next] : 0;
      if (s == 1) {
        auto start = std::find(stack.begin(), stack.end(), next);
        cycle.assign(start, stack.end());
        return true;
      }
      if (s == 0 && self(self, next)) return true;
    }
    stack.pop_back();
    state[c] = 2;
    return false;
  };

  for (const auto& [c, _] : adj) {
    if ((state.count(c) ? state[c] : 0) == 0 && dfs(dfs, c)) {
      return cycle;
    }
  }
  return std::nullopt;
}

}  // namespace

std::vector<KbIssue> validate(const KnowledgeBase& kb) {
  std::vector<KbIssue> issues;

  for (const PairTerm& p : kb.pairs()) {
    std::string where = "pair declaration '" + term_str(Term(p)) + "'";
    check_term(kb, Term(p.first), where, issues);
    check_term(kb, Term(p.second), where, issues);
  }
  for (const MembershipFact& f : kb.memberships()) {
    check_term(kb, f.subject, "'" + directive_str(f) + "'", issues);
    check_class(kb, f.cls, "'" + directive_str(f) + "'", issues);
    if (kb.product_of(f.cls) && !is_pair(f.subject)) {
      issues.push_back({KbIssue::Kind::bad_product_member,
                        "member '" + term_str(f.subject) +
                            "' of product class '" + f.cls.value +
                            "' is not a pair term"});
    }
  }
  for (const SubsetFact& f : kb.subsets()) {
    check_class(kb, f.sub, "'" + directive_str(f) + "'", issues);
    check_class(kb, f.super, "'" + directive_str(f) + "'", issues);
  }
  std::map<ClassId, const ProductFact*> product_index;
  for (const ProductFact& f : kb.products()) {
    check_class(kb, f.product, "'" + directive_str(f) + "'", issues);
    check_class(kb, f.left, "'" + directive_str(f) + "'", issues);
    check_class(kb, f.right, "'" + directive_str(f) + "'", issues);
    auto [it, inserted] = product_index.emplace(f.product, &f);
    if (!inserted) {
      issues.push_back({KbIssue::Kind::product_conflict,
                        "class '" + f.product.value +
                            "' is the product of two different pairs"});
    }
  }
  for (const SampleFact& f : kb.samples()) {
    check_term(kb, Term(f.sample), "'" + directive_str(f) + "'", issues);
    check_class(kb, f.population, "'" + directive_str(f) + "'", issues);
  }
  for (const SubsampleFact& f : kb.subsamples()) {
    check_term(kb, Term(f.sub), "'" + directive_str(f) + "'", issues);
    check_term(kb, Term(f.super), "'" + directive_str(f) + "'", issues);
  }
  for (const EquivFact& f : kb.equivs()) {
    check_term(kb, f.lhs.subject, "'" + directive_str(f) + "'", issues);
    check_class(kb, f.lhs.cls, "'" + directive_str(f) + "'", issues);
    check_term(kb, f.rhs.subject, "'" + directive_str(f) + "'", issues);
    check_class(kb, f.rhs.cls, "'" + directive_str(f) + "'", issues);
  }
  for (const StatStatement& s : kb.stats()) {
    check_class(kb, s.target, "'" + directive_str(s) + "'", issues);
    check_class(kb, s.reference, "'" + directive_str(s) + "'", issues);
  }
  for (const auto& [cls, members] : kb.extensions()) {
    check_class(kb, cls, "extension of '" + cls.value + "'", issues);
    for (const Term& m : members) {
      if (!kb.has_term(m)) {
        issues.push_back({KbIssue::Kind::bad_extension,
                          "extension of '" + cls.value +
                              "' lists undeclared term '" + term_str(m) +
                              "'"});
      }
    }
  }

  // Unequal stats on one (target, reference) pair.
  const StatStatement* prev = nullptr;
  for (const StatStatement& s : kb.stats()) {
    if (prev && prev->target == s.target && prev->reference == s.reference) {
      issues.push_back({KbIssue::Kind::stat_conflict,
                        "conflicting statistics for (" + s.target.value +
                            ", " + s.reference.value + "): " +
                            prev->interval.str() + " vs " +
                            s.interval.str()});
    }
    prev = &s;
  }

  if (auto cycle = find_subset_cycle(kb)) {
    std::string msg = "subset cycle:";
    for (const ClassId& c : *cycle) msg += " " + c.value;
    issues.push_back({KbIssue::Kind::subset_cycle, msg});
  }

  return issues;
}

void require_consistent(const KnowledgeBase& kb) {
  for (const KbIssue& issue : validate(kb)) {
    if (issue.is_inconsistency()) {
      throw KbInconsistencyError(issue.message);
    }
  }
}

}  // namespace refclass
