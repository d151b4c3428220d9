#include "refclass/verdict.hpp"

namespace refclass {

std::string kind_str(CandidateKind kind) {
  switch (kind) {
    case CandidateKind::plain: return "plain";
    case CandidateKind::product_based: return "product-based";
    case CandidateKind::sample_based: return "sample-based";
  }
  return "?";
}

std::string Candidate::str() const {
  return term_str(subject) + " in " + target.value + " via " +
         reference.value + " = " + interval.str();
}

std::string principle_id(Principle p) {
  switch (p) {
    case Principle::subset: return "subset";
    case Principle::bayes: return "bayes";
    case Principle::supersample: return "supersample";
    case Principle::strength: return "strength";
  }
  return "?";
}

std::string principle_name(Principle p) {
  switch (p) {
    case Principle::subset: return "Subset Principle";
    case Principle::bayes: return "Bayesian Principle";
    case Principle::supersample: return "Supersample Principle";
    case Principle::strength: return "Strength Rule";
  }
  return "?";
}

std::string witness_str(const Witness& w) {
  return std::visit([](const auto& fact) { return directive_str(fact); }, w);
}

std::string label_str(Label l) {
  switch (l) {
    case Label::in: return "in";
    case Label::out: return "out";
    case Label::undecided: return "undecided";
  }
  return "?";
}

}  // namespace refclass
