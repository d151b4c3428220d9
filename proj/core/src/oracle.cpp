#include "refclass/oracle.hpp"

#include <algorithm>
#include <cassert>
#include <map>
#include <optional>

#include "refclass/interval.hpp"

namespace refclass::oracle {

std::string Violation::str() const {
  return fact + ": expected " + expected + ", got " + actual;
}

ConsistencyReport check_extensional(const KnowledgeBase& kb) {
  ConsistencyReport report;
  const auto& extensions = kb.extensions();

  for (const SubsetFact& fact : kb.subsets()) {
    auto sub = extensions.find(fact.sub);
    auto super = extensions.find(fact.super);
    if (sub == extensions.end() || super == extensions.end()) continue;
    ++report.checked;
    for (const Term& member : sub->second) {
      if (!super->second.contains(member)) {
        report.violations.push_back(
            {directive_str(fact),
             "every member of " + fact.sub.value + " also in " +
                 fact.super.value,
             term_str(member) + " missing from " + fact.super.value});
        break;
      }
    }
  }

  for (const StatStatement& stat : kb.stats()) {
    auto target = extensions.find(stat.target);
    auto reference = extensions.find(stat.reference);
    if (target == extensions.end() || reference == extensions.end()) continue;
    ++report.checked;
    if (reference->second.empty()) {
      report.violations.push_back(
          {directive_str(stat),
           "nonempty extension for " + stat.reference.value,
           "0 members, frequency undefined"});
      continue;
    }
    std::int64_t hits = 0;
    for (const Term& member : reference->second) {
      if (target->second.contains(member)) ++hits;
    }
    Rational frequency(hits,
                       static_cast<std::int64_t>(reference->second.size()));
    if (!stat.interval.contains(frequency)) {
      report.violations.push_back(
          {directive_str(stat), "frequency in " + stat.interval.str(),
           std::to_string(hits) + "/" +
               std::to_string(reference->second.size()) + " = " +
               frequency.str()});
    }
  }
  return report;
}

namespace {

constexpr std::size_t kMaxSide = 64;

void check_guard(const KnowledgeBase& kb) {
  if (kb.classes().size() > kMaxSide) {
    throw OracleLimitError("oracle guard: " +
                           std::to_string(kb.classes().size()) +
                           " classes exceed " + std::to_string(kMaxSide));
  }
  std::size_t terms = kb.terms().size() + kb.pairs().size();
  if (terms > kMaxSide) {
    throw OracleLimitError("oracle guard: " + std::to_string(terms) +
                           " terms exceed " + std::to_string(kMaxSide));
  }
}

// Independent inconsistency detection: the stats set is ordered by
// (target, reference, interval), so conflicting statements are adjacent.
void check_stats(const KnowledgeBase& kb) {
  const StatStatement* previous = nullptr;
  for (const StatStatement& stat : kb.stats()) {
    if (previous && previous->target == stat.target &&
        previous->reference == stat.reference &&
        previous->interval != stat.interval) {
      throw KbInconsistencyError(
          "conflicting statistics for (" + stat.target.value + ", " +
          stat.reference.value + "): " + previous->interval.str() + " vs " +
          stat.interval.str());
    }
    previous = &stat;
  }
}

struct ClassIndex {
  std::vector<ClassId> classes;
  std::map<ClassId, std::size_t> index;
};

ClassIndex index_classes(const KnowledgeBase& kb) {
  ClassIndex out;
  for (const ClassId& c : kb.classes()) {
    out.index.emplace(c, out.classes.size());
    out.classes.push_back(c);
  }
  return out;
}

// Reflexive-transitive closure by repeated squaring of the boolean
// adjacency matrix; rows are 64-bit sets, so squaring is OR of rows.
std::vector<std::uint64_t> closure_rows(const KnowledgeBase& kb,
                                        const ClassIndex& classes) {
  std::size_t n = classes.classes.size();
  std::vector<std::uint64_t> rows(n, 0);
  for (std::size_t i = 0; i < n; ++i) rows[i] = std::uint64_t{1} << i;
  for (const SubsetFact& fact : kb.subsets()) {
    rows[classes.index.at(fact.sub)] |= std::uint64_t{1}
                                        << classes.index.at(fact.super);
  }
  while (true) {
    std::vector<std::uint64_t> squared(n, 0);
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = 0; j < n; ++j) {
        if (rows[i] >> j & 1) squared[i] |= rows[j];
      }
    }
    if (squared == rows) return rows;
    rows = std::move(squared);
  }
}

// A cycle among distinct classes exists iff some declared edge's head
// reaches back to its tail.
void check_cycles(const KnowledgeBase& kb, const ClassIndex& classes,
                  const std::vector<std::uint64_t>& rows) {
  for (const SubsetFact& fact : kb.subsets()) {
    if (fact.sub == fact.super) continue;
    std::size_t sub = classes.index.at(fact.sub);
    std::size_t super = classes.index.at(fact.super);
    if (rows[super] >> sub & 1) {
      throw KbInconsistencyError("subset cycle through '" + fact.sub.value +
                                 "' and '" + fact.super.value + "'");
    }
  }
}

std::vector<Sentence> equivalence_class_of(const KnowledgeBase& kb,
                                           const Sentence& start) {
  std::set<Sentence> visited{start};
  std::vector<Sentence> frontier{start};
  while (!frontier.empty()) {
    Sentence current = std::move(frontier.back());
    frontier.pop_back();
    for (const EquivFact& fact : kb.equivs()) {
      std::optional<Sentence> other;
      if (fact.lhs == current) other = fact.rhs;
      if (fact.rhs == current) other = fact.lhs;
      if (other && visited.insert(*other).second) {
        frontier.push_back(std::move(*other));
      }
    }
  }
  return {visited.begin(), visited.end()};
}

std::optional<Interval> find_stat(const KnowledgeBase& kb,
                                  const ClassId& target,
                                  const ClassId& reference) {
  for (const StatStatement& stat : kb.stats()) {
    if (stat.target == target && stat.reference == reference) {
      return stat.interval;
    }
  }
  return std::nullopt;
}

bool reaches(const ClassIndex& classes, const std::vector<std::uint64_t>& rows,
             const ClassId& sub, const ClassId& super) {
  return rows[classes.index.at(sub)] >> classes.index.at(super) & 1;
}

bool is_sample_subject(const KnowledgeBase& kb, const Term& subject) {
  const auto* term = std::get_if<TermId>(&subject);
  if (!term) return false;
  for (const SampleFact& fact : kb.samples()) {
    if (fact.sample == *term) return true;
  }
  return false;
}

}  // namespace

std::set<std::pair<ClassId, ClassId>> subset_closure_pairs(
    const KnowledgeBase& kb) {
  check_guard(kb);
  ClassIndex classes = index_classes(kb);
  std::vector<std::uint64_t> rows = closure_rows(kb, classes);
  std::set<std::pair<ClassId, ClassId>> pairs;
  for (std::size_t i = 0; i < classes.classes.size(); ++i) {
    for (std::size_t j = 0; j < classes.classes.size(); ++j) {
      if (rows[i] >> j & 1) {
        pairs.emplace(classes.classes[i], classes.classes[j]);
      }
    }
  }
  return pairs;
}

Verdict naive_evaluate(const KnowledgeBase& kb, const Sentence& query) {
  check_guard(kb);
  check_stats(kb);
  ClassIndex classes = index_classes(kb);
  std::vector<std::uint64_t> rows = closure_rows(kb, classes);
  check_cycles(kb, classes, rows);

  Verdict verdict;
  verdict.query = query;
  verdict.equivalence_class = equivalence_class_of(kb, query);

  // Candidates by literal triple enumeration over the whole KB.
  for (const Sentence& sentence : verdict.equivalence_class) {
    for (const ClassId& reference : kb.classes()) {
      bool member = false;
      for (const MembershipFact& fact : kb.memberships()) {
        if (fact.subject == sentence.subject &&
            reaches(classes, rows, fact.cls, reference)) {
          member = true;
          break;
        }
      }
      if (!member) continue;
      auto interval = find_stat(kb, sentence.cls, reference);
      if (!interval) continue;

      CandidateKind kind = CandidateKind::plain;
      for (const ProductFact& product : kb.products()) {
        if (reaches(classes, rows, reference, product.product)) {
          kind = CandidateKind::product_based;
          break;
        }
      }
      if (kind == CandidateKind::plain &&
          is_sample_subject(kb, sentence.subject)) {
        kind = CandidateKind::sample_based;
      }
      verdict.candidates.push_back(
          {sentence.subject, sentence.cls, reference, *interval, kind});
    }
  }
  std::sort(verdict.candidates.begin(), verdict.candidates.end(),
            [](const Candidate& a, const Candidate& b) {
              return std::tie(a.reference, a.target, a.subject) <
                     std::tie(b.reference, b.target, b.subject);
            });
  verdict.candidates.erase(
      std::unique(verdict.candidates.begin(), verdict.candidates.end()),
      verdict.candidates.end());

  // Edges: each principle re-read literally over every ordered pair.
  std::size_t n = verdict.candidates.size();
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      if (i == j) continue;
      const Candidate& x = verdict.candidates[i];
      const Candidate& y = verdict.candidates[j];

      if (differs(x.interval, y.interval) && x.reference != y.reference &&
          reaches(classes, rows, x.reference, y.reference)) {
        verdict.edges.push_back({i, j, Principle::subset,
                                 {SubsetFact{x.reference, y.reference}}});
      }

      if (differs(x.interval, y.interval) && is_pair(x.subject)) {
        for (const ProductFact& product : kb.products()) {
          if (!reaches(classes, rows, x.reference, product.product)) continue;
          auto match = find_stat(kb, x.target, product.product);
          if (!match || *match != y.interval) continue;
          verdict.edges.push_back(
              {i, j, Principle::bayes,
               {product, SubsetFact{x.reference, product.product},
                StatStatement{x.target, product.product, *match}}});
          break;
        }
      }

      if (x.kind == CandidateKind::sample_based &&
          y.kind == CandidateKind::sample_based &&
          differs(x.interval, y.interval)) {
        const auto* x_term = std::get_if<TermId>(&x.subject);
        const auto* y_term = std::get_if<TermId>(&y.subject);
        if (x_term && y_term &&
            kb.subsamples().contains(SubsampleFact{*y_term, *x_term})) {
          verdict.edges.push_back({i, j, Principle::supersample,
                                   {SubsampleFact{*y_term, *x_term}}});
        }
      }

      if (stronger(x.interval, y.interval)) {
        verdict.edges.push_back({i, j, Principle::strength, {}});
      }
    }
  }
  std::sort(verdict.edges.begin(), verdict.edges.end(),
            [](const DefeatEdge& a, const DefeatEdge& b) {
              return std::tie(a.attacker, a.victim, a.principle) <
                     std::tie(b.attacker, b.victim, b.principle);
            });

  // Naive grounded iteration: recompute both sets from the previous round
  // until nothing moves. IN requires every attacker OUT; OUT requires
  // some attacker IN.
  std::vector<std::vector<std::size_t>> attackers(n);
  for (const DefeatEdge& edge : verdict.edges) {
    attackers[edge.victim].push_back(edge.attacker);
  }
  std::vector<char> in_set(n, 0), out_set(n, 0);
  bool changed = true;
  while (changed) {
    changed = false;
    std::vector<char> next_in = in_set;
    std::vector<char> next_out = out_set;
    for (std::size_t i = 0; i < n; ++i) {
      if (!in_set[i] &&
          std::all_of(attackers[i].begin(), attackers[i].end(),
                      [&](std::size_t a) { return out_set[a]; })) {
        next_in[i] = 1;
        changed = true;
      }
      if (!out_set[i] &&
          std::any_of(attackers[i].begin(), attackers[i].end(),
                      [&](std::size_t a) { return in_set[a]; })) {
        next_out[i] = 1;
        changed = true;
      }
    }
    in_set = std::move(next_in);
    out_set = std::move(next_out);
  }
  verdict.labels.resize(n);
  for (std::size_t i = 0; i < n; ++i) {
    assert(!(in_set[i] && out_set[i]));
    verdict.labels[i] = in_set[i]    ? Label::in
                        : out_set[i] ? Label::out
                                     : Label::undecided;
    if (!out_set[i]) verdict.survivors.push_back(i);
  }

  if (verdict.survivors.empty()) {
    verdict.interval = Interval::ignorance();
  } else {
    Rational lo = verdict.candidates[verdict.survivors.front()].interval.lo();
    Rational hi = verdict.candidates[verdict.survivors.front()].interval.hi();
    for (std::size_t i : verdict.survivors) {
      lo = refclass::min(lo, verdict.candidates[i].interval.lo());
      hi = refclass::max(hi, verdict.candidates[i].interval.hi());
    }
    verdict.interval = Interval(lo, hi);
  }
  return verdict;
}

std::vector<Sentence> queryable_sentences(const KnowledgeBase& kb) {
  std::vector<Sentence> out;
  for (const ClassId& cls : kb.classes()) {
    for (const TermId& term : kb.terms()) out.push_back({Term{term}, cls});
    for (const PairTerm& pair : kb.pairs()) out.push_back({Term{pair}, cls});
  }
  std::sort(out.begin(), out.end());
  return out;
}

namespace {

// Fixed linear congruential sequence (Knuth's MMIX multiplier); the high
// 32 bits of the state are the draw. Documented in oracle.hpp so the
// corpus is reproducible outside this codebase.
class Lcg {
 public:
  explicit Lcg(std::uint64_t seed) : state_(seed) {}

  std::uint32_t below(std::uint32_t n) {
    state_ = state_ * 6364136223846793005ull + 1442695040888963407ull;
    return static_cast<std::uint32_t>(state_ >> 32) % n;
  }

  bool chance(std::uint32_t num, std::uint32_t den) {
    return below(den) < num;
  }

 private:
  std::uint64_t state_;
};

}  // namespace

KnowledgeBase random_kb(std::uint64_t seed, const RandomKbBounds& bounds) {
  KnowledgeBase kb;
  if (bounds.max_classes <= 0 || bounds.max_terms <= 0) return kb;
  Lcg rng(seed);

  std::uint32_t n_classes =
      1 + rng.below(static_cast<std::uint32_t>(bounds.max_classes));
  std::uint32_t n_terms =
      1 + rng.below(static_cast<std::uint32_t>(bounds.max_terms));
  std::vector<ClassId> classes;
  std::vector<TermId> terms;
  for (std::uint32_t i = 0; i < n_classes; ++i) {
    classes.push_back(ClassId{"C" + std::to_string(i + 1)});
    kb.add_class(classes.back());
  }
  for (std::uint32_t i = 0; i < n_terms; ++i) {
    terms.push_back(TermId{"t" + std::to_string(i + 1)});
    kb.add_term(terms.back());
  }

  // One optional product fact; the product class takes the highest index
  // of the three so the subset DAG below can feed into it.
  std::optional<std::uint32_t> product_index;
  if (n_classes >= 3 && rng.chance(1, 2)) {
    std::uint32_t product = 2 + rng.below(n_classes - 2);
    std::uint32_t left = rng.below(product);
    std::uint32_t right = rng.below(product);
    kb.add_product(classes[product], classes[left], classes[right]);
    product_index = product;
  }

  // Subset edges only from lower to higher index: acyclic by construction.
  for (std::uint32_t i = 0; i < n_classes; ++i) {
    for (std::uint32_t j = i + 1; j < n_classes; ++j) {
      if (rng.chance(1, 4)) kb.add_subset(classes[i], classes[j]);
    }
  }

  // Simple-term memberships; the product class only admits pairs.
  for (const TermId& term : terms) {
    std::uint32_t count = rng.below(3);
    for (std::uint32_t k = 0; k < count; ++k) {
      std::uint32_t cls = rng.below(n_classes);
      if (product_index && cls == *product_index) continue;
      kb.add_member(Term{term}, classes[cls]);
    }
  }

  // Pair terms live in the product class, sometimes elsewhere too.
  std::vector<PairTerm> pairs;
  if (product_index) {
    std::uint32_t count = 1 + rng.below(2);
    for (std::uint32_t k = 0; k < count; ++k) {
      PairTerm pair{terms[rng.below(n_terms)], terms[rng.below(n_terms)]};
      if (kb.pairs().contains(pair)) continue;
      kb.add_pair(pair);
      pairs.push_back(pair);
      kb.add_member(Term{pair}, classes[*product_index]);
      if (rng.chance(1, 2)) {
        std::uint32_t cls = rng.below(n_classes);
        if (!product_index || cls != *product_index) {
          kb.add_member(Term{pair}, classes[cls]);
        }
      }
    }
  }

  std::uint32_t n_samples = rng.below(3);
  for (std::uint32_t k = 0; k < n_samples; ++k) {
    kb.add_sample(terms[rng.below(n_terms)], classes[rng.below(n_classes)]);
  }
  if (n_terms >= 2 && rng.chance(1, 2)) {
    std::uint32_t sub = rng.below(n_terms);
    std::uint32_t super = rng.below(n_terms);
    if (sub != super) kb.add_subsample(terms[sub], terms[super]);
  }

  // Equivalences over random sentences, pair subjects included so the
  // product-space path gets exercised.
  std::vector<Term> subjects;
  for (const TermId& term : terms) subjects.push_back(Term{term});
  for (const PairTerm& pair : pairs) subjects.push_back(Term{pair});
  std::uint32_t n_equivs = rng.below(3);
  for (std::uint32_t k = 0; k < n_equivs; ++k) {
    Sentence lhs{subjects[rng.below(subjects.size())],
                 classes[rng.below(n_classes)]};
    Sentence rhs{subjects[rng.below(subjects.size())],
                 classes[rng.below(n_classes)]};
    if (!(lhs == rhs)) kb.add_equiv(lhs, rhs);
  }

  // Stats with denominators <= 20; a pair that already carries one is
  // skipped to keep the KB consistent by construction.
  std::uint32_t n_stats =
      rng.below(static_cast<std::uint32_t>(bounds.max_stats) + 1);
  for (std::uint32_t k = 0; k < n_stats; ++k) {
    ClassId target = classes[rng.below(n_classes)];
    ClassId reference = classes[rng.below(n_classes)];
    if (kb.stat(target, reference)) continue;
    std::int64_t den = 1 + rng.below(20);
    std::int64_t lo = rng.below(static_cast<std::uint32_t>(den) + 1);
    std::int64_t hi =
        rng.chance(1, 2)
            ? lo
            : lo + rng.below(static_cast<std::uint32_t>(den - lo) + 1);
    kb.add_stat(target, reference,
                Interval(Rational(lo, den), Rational(hi, den)));
  }
  return kb;
}

}  // namespace refclass::oracle
