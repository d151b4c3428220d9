#include "refclass/engine.hpp"

#include <algorithm>

namespace refclass {

Query make_query(const Closures& closures, const Sentence& sentence) {
  return {sentence, closures.equivalence.class_of(sentence)};
}

namespace {

CandidateKind classify(const KnowledgeBase& kb, const Closures& closures,
                       const Term& subject, const ClassId& reference) {
  for (const ProductFact& p : kb.products()) {
    if (closures.subsets.contains(reference, p.product)) {
      return CandidateKind::product_based;
    }
  }
  if (kb.is_sample_term(subject)) return CandidateKind::sample_based;
  return CandidateKind::plain;
}

}  // namespace

std::vector<Candidate> generate_candidates(const KnowledgeBase& kb,
                                           const Closures& closures,
                                           const Query& query) {
  std::vector<Candidate> out;
  for (const Sentence& sentence : query.equivalence_class) {
    for (const ClassId& reference :
         known_memberships(kb, closures.subsets, sentence.subject)) {
      auto interval = kb.stat(sentence.cls, reference);
      if (!interval) continue;
      out.push_back({sentence.subject, sentence.cls, reference, *interval,
                     classify(kb, closures, sentence.subject, reference)});
    }
  }
  std::sort(out.begin(), out.end(), [](const Candidate& a, const Candidate& b) {
    return std::tie(a.reference, a.target, a.subject) <
           std::tie(b.reference, b.target, b.subject);
  });
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

std::optional<Attack> subset_defeats(const Candidate& attacker,
                                     const Candidate& victim,
                                     const Closures& closures) {
  if (!differs(attacker.interval, victim.interval)) return std::nullopt;
  if (attacker.reference == victim.reference) return std::nullopt;
  if (!closures.subsets.contains(attacker.reference, victim.reference)) {
    return std::nullopt;
  }
  return Attack{Principle::subset,
                {SubsetFact{attacker.reference, victim.reference}}};
}

std::optional<Attack> bayes_defeats(const Candidate& attacker,
                                    const Candidate& victim,
                                    const KnowledgeBase& kb,
                                    const Closures& closures) {
  if (!differs(attacker.interval, victim.interval)) return std::nullopt;
  if (!is_pair(attacker.subject)) return std::nullopt;
  for (const ProductFact& product : kb.products()) {
    if (!closures.subsets.contains(attacker.reference, product.product)) {
      continue;
    }
    auto product_stat = kb.stat(attacker.target, product.product);
    if (!product_stat || *product_stat != victim.interval) continue;
    return Attack{
        Principle::bayes,
        {product, SubsetFact{attacker.reference, product.product},
         StatStatement{attacker.target, product.product, *product_stat}}};
  }
  return std::nullopt;
}

std::optional<Attack> supersample_defeats(const Candidate& attacker,
                                          const Candidate& victim,
                                          const KnowledgeBase& kb) {
  if (attacker.kind != CandidateKind::sample_based ||
      victim.kind != CandidateKind::sample_based) {
    return std::nullopt;
  }
  if (!differs(attacker.interval, victim.interval)) return std::nullopt;
  const auto* attacker_term = std::get_if<TermId>(&attacker.subject);
  const auto* victim_term = std::get_if<TermId>(&victim.subject);
  if (!attacker_term || !victim_term) return std::nullopt;
  SubsampleFact needed{*victim_term, *attacker_term};
  if (!kb.subsamples().contains(needed)) return std::nullopt;
  return Attack{Principle::supersample, {needed}};
}

std::optional<Attack> strength_defeats(const Candidate& attacker,
                                       const Candidate& victim) {
  if (!stronger(attacker.interval, victim.interval)) return std::nullopt;
  return Attack{Principle::strength, {}};
}

DefeatGraph defeat_graph(const std::vector<Candidate>& candidates,
                         const KnowledgeBase& kb, const Closures& closures) {
  DefeatGraph graph;
  graph.candidates = candidates;
  for (std::size_t i = 0; i < candidates.size(); ++i) {
    for (std::size_t j = 0; j < candidates.size(); ++j) {
      if (i == j) continue;
      const Candidate& x = candidates[i];
      const Candidate& y = candidates[j];
      std::optional<Attack> attacks[] = {
          subset_defeats(x, y, closures),
          bayes_defeats(x, y, kb, closures),
          supersample_defeats(x, y, kb),
          strength_defeats(x, y),
      };
      for (auto& attack : attacks) {
        if (attack) {
          graph.edges.push_back(
              {i, j, attack->principle, std::move(attack->witnesses)});
        }
      }
    }
  }
  std::sort(graph.edges.begin(), graph.edges.end(),
            [](const DefeatEdge& a, const DefeatEdge& b) {
              return std::tie(a.attacker, a.victim, a.principle) <
                     std::tie(b.attacker, b.victim, b.principle);
            });
  return graph;
}

GroundedResult surviving(const DefeatGraph& graph) {
  std::size_t n = graph.candidates.size();
  std::vector<std::vector<std::size_t>> attackers(n);
  for (const DefeatEdge& e : graph.edges) {
    attackers[e.victim].push_back(e.attacker);
  }

  GroundedResult result;
  result.labels.assign(n, Label::undecided);
  bool changed = true;
  while (changed) {
    changed = false;
    for (std::size_t i = 0; i < n; ++i) {
      if (result.labels[i] != Label::undecided) continue;
      bool all_out = std::all_of(
          attackers[i].begin(), attackers[i].end(),
          [&](std::size_t a) { return result.labels[a] == Label::out; });
      if (all_out) {
        result.labels[i] = Label::in;
        changed = true;
      }
    }
    for (std::size_t i = 0; i < n; ++i) {
      if (result.labels[i] != Label::undecided) continue;
      bool attacked_by_in = std::any_of(
          attackers[i].begin(), attackers[i].end(),
          [&](std::size_t a) { return result.labels[a] == Label::in; });
      if (attacked_by_in) {
        result.labels[i] = Label::out;
        changed = true;
      }
    }
    if (changed) ++result.iterations;
  }
  for (std::size_t i = 0; i < n; ++i) {
    if (result.labels[i] != Label::out) result.survivors.push_back(i);
  }
  return result;
}

Verdict evaluate(const KnowledgeBase& kb, const Sentence& query,
                 const EvaluateOptions& options) {
  require_consistent(kb);
  Closures closures = compute_closures(kb);

  Verdict verdict;
  verdict.query = query;
  Query q = make_query(closures, query);
  verdict.equivalence_class = q.equivalence_class;

  std::vector<Candidate> candidates = generate_candidates(kb, closures, q);
  if (candidates.size() > options.max_candidates) {
    throw CandidateLimitError(
        "candidate count " + std::to_string(candidates.size()) +
        " exceeds limit " + std::to_string(options.max_candidates));
  }

  DefeatGraph graph = defeat_graph(candidates, kb, closures);
  GroundedResult grounded = surviving(graph);

  verdict.candidates = std::move(graph.candidates);
  verdict.edges = std::move(graph.edges);
  verdict.labels = std::move(grounded.labels);
  verdict.survivors = std::move(grounded.survivors);

  if (verdict.survivors.empty()) {
    verdict.interval = Interval::ignorance();
  } else {
    std::vector<Interval> intervals;
    intervals.reserve(verdict.survivors.size());
    for (std::size_t i : verdict.survivors) {
      intervals.push_back(verdict.candidates[i].interval);
    }
    verdict.interval = cover(intervals);
  }
  return verdict;
}

}  // namespace refclass
