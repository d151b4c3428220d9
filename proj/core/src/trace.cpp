#include "refclass/trace.hpp"

#include <nlohmann/json.hpp>
#include <sstream>

namespace refclass {

namespace {

nlohmann::ordered_json interval_json(const Interval& interval) {
  return {{"lo", interval.lo().str()}, {"hi", interval.hi().str()}};
}

}  // namespace

std::string trace_json(const Verdict& verdict) {
  nlohmann::ordered_json doc;
  doc["schema"] = kTraceSchemaVersion;
  doc["query"] = verdict.query.str();

  auto& equivalence = doc["equivalence_class"] =
      nlohmann::ordered_json::array();
  for (const Sentence& s : verdict.equivalence_class) {
    equivalence.push_back(s.str());
  }

  auto& candidates = doc["candidates"] = nlohmann::ordered_json::array();
  for (const Candidate& c : verdict.candidates) {
    candidates.push_back({{"subject", term_str(c.subject)},
                          {"target", c.target.value},
                          {"reference", c.reference.value},
                          {"interval", interval_json(c.interval)},
                          {"kind", kind_str(c.kind)}});
  }

  auto& edges = doc["edges"] = nlohmann::ordered_json::array();
  for (const DefeatEdge& e : verdict.edges) {
    auto witnesses = nlohmann::ordered_json::array();
    for (const Witness& w : e.witnesses) witnesses.push_back(witness_str(w));
    edges.push_back({{"attacker", e.attacker},
                     {"victim", e.victim},
                     {"principle", principle_id(e.principle)},
                     {"witnesses", witnesses}});
  }

  auto& labels = doc["labels"] = nlohmann::ordered_json::array();
  for (Label l : verdict.labels) labels.push_back(label_str(l));
  doc["survivors"] = verdict.survivors;
  doc["interval"] = interval_json(verdict.interval);
  return doc.dump(2) + "\n";
}

std::string render_explanation(const Verdict& verdict) {
  std::ostringstream out;
  out << "query: " << verdict.query.str() << "\n";

  out << "equivalence class:\n";
  for (const Sentence& s : verdict.equivalence_class) {
    out << "  " << s.str() << "\n";
  }

  if (verdict.candidates.empty()) {
    out << "no candidates; verdict is the ignorance interval\n";
    out << "verdict: " << verdict.interval.str() << "\n";
    return out.str();
  }

  out << "candidates:\n";
  for (std::size_t i = 0; i < verdict.candidates.size(); ++i) {
    const Candidate& c = verdict.candidates[i];
    out << "  [" << i << "] " << c.str() << " (" << kind_str(c.kind) << ")\n";
  }

  if (verdict.edges.empty()) {
    out << "no defeats; verdict is cover of survivors\n";
  } else {
    out << "defeats:\n";
    for (const DefeatEdge& e : verdict.edges) {
      out << "  " << verdict.candidates[e.attacker].reference.value
          << " defeats " << verdict.candidates[e.victim].reference.value
          << " by " << principle_name(e.principle);
      if (e.witnesses.size() == 1) {
        out << " (witness: " << witness_str(e.witnesses.front()) << ")";
      } else if (e.witnesses.size() > 1) {
        out << " (witnesses: ";
        for (std::size_t w = 0; w < e.witnesses.size(); ++w) {
          if (w) out << "; ";
          out << witness_str(e.witnesses[w]);
        }
        out << ")";
      }
      out << "\n";
    }
  }

  out << "labels:\n";
  for (std::size_t i = 0; i < verdict.labels.size(); ++i) {
    out << "  [" << i << "] " << verdict.candidates[i].reference.value << ": "
        << label_str(verdict.labels[i]) << "\n";
  }

  out << "survivors:";
  for (std::size_t i : verdict.survivors) {
    out << " [" << i << "] " << verdict.candidates[i].reference.value;
  }
  out << "\n";
  out << "verdict: " << verdict.interval.str() << "\n";
  return out.str();
}

}  // namespace refclass
