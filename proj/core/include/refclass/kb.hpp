#pragma once

#include <compare>
#include <map>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

#include "refclass/interval.hpp"

namespace refclass {

// Symbolic identifiers are opaque strings, unique within a knowledge base.
// Classes and terms live in separate namespaces.
struct ClassId {
  std::string value;
  auto operator<=>(const ClassId&) const = default;
};

struct TermId {
  std::string value;
  auto operator<=>(const TermId&) const = default;
};

// The pair term <a,b>. A pair is itself a term and can be the subject of
// membership facts and sentences; its components must be declared terms.
struct PairTerm {
  TermId first;
  TermId second;
  auto operator<=>(const PairTerm&) const = default;
};

using Term = std::variant<TermId, PairTerm>;

// "name" for simple terms, "<a,b>" for pairs.
std::string term_str(const Term& t);
bool is_pair(const Term& t);

// Atomic sentence: subject is a member of cls. Negated properties are
// modeled as explicitly declared complement classes, so atoms are all
// there is.
struct Sentence {
  Term subject;
  ClassId cls;
  auto operator<=>(const Sentence&) const = default;
  std::string str() const;  // "b18 in Black"
};

struct MembershipFact {
  Term subject;
  ClassId cls;
  auto operator<=>(const MembershipFact&) const = default;
};

struct SubsetFact {
  ClassId sub;
  ClassId super;
  auto operator<=>(const SubsetFact&) const = default;
};

struct ProductFact {
  ClassId product;
  ClassId left;
  ClassId right;
  auto operator<=>(const ProductFact&) const = default;
};

struct SampleFact {
  TermId sample;
  ClassId population;
  auto operator<=>(const SampleFact&) const = default;
};

struct SubsampleFact {
  TermId sub;
  TermId super;
  auto operator<=>(const SubsampleFact&) const = default;
};

// Known biconditional between two sentences, stored with the smaller
// sentence first so the set sees each equivalence once.
struct EquivFact {
  Sentence lhs;
  Sentence rhs;
  auto operator<=>(const EquivFact&) const = default;
};

struct StatStatement {
  ClassId target;
  ClassId reference;
  Interval interval;
  auto operator<=>(const StatStatement&) const = default;
};

// Render a fact in the KB text format's directive syntax ("subset Penguin
// Bird", "stat Black Room = 1/2"). Defeat-edge witnesses reuse these
// renderings so traces stay replayable.
std::string directive_str(const MembershipFact&);
std::string directive_str(const SubsetFact&);
std::string directive_str(const ProductFact&);
std::string directive_str(const SampleFact&);
std::string directive_str(const SubsampleFact&);
std::string directive_str(const EquivFact&);
std::string directive_str(const StatStatement&);

struct KbIssue {
  enum class Kind {
    undeclared_class,
    undeclared_term,
    duplicate_declaration,
    stat_conflict,      // two unequal stats on one (target, reference) pair
    subset_cycle,       // cycle among distinct classes
    product_conflict,   // one class as the product of two different pairs
    bad_product_member, // declared member of a product class is not a pair
    bad_extension,      // extension member undeclared or duplicated
  };
  Kind kind;
  std::string message;

  // Stat conflicts and subset cycles make the KB inconsistent; the other
  // kinds are malformed input.
  bool is_inconsistency() const {
    return kind == Kind::stat_conflict || kind == Kind::subset_cycle;
  }
};

class KbInconsistencyError : public std::runtime_error {
 public:
  explicit KbInconsistencyError(std::string message)
      : std::runtime_error(std::move(message)) {}
};

// Immutable once built: the engine and the oracle only ever read it, so a
// single KnowledgeBase can serve concurrent query evaluations.
class KnowledgeBase {
 public:
  void add_class(ClassId c) { classes_.insert(std::move(c)); }
  void add_term(TermId t) { terms_.insert(std::move(t)); }
  void add_pair(PairTerm p) { pairs_.insert(std::move(p)); }
  void add_member(Term subject, ClassId cls);
  void add_subset(ClassId sub, ClassId super);
  void add_product(ClassId product, ClassId left, ClassId right);
  void add_sample(TermId sample, ClassId population);
  void add_subsample(TermId sub, TermId super);
  void add_equiv(Sentence lhs, Sentence rhs);
  // Returns false if a different interval is already on record for this
  // (target, reference) pair. The conflicting statement is stored anyway,
  // leaving the KB inconsistent; equal restatements are absorbed.
  bool add_stat(ClassId target, ClassId reference, Interval interval);
  void add_extension_member(const ClassId& cls, Term member);

  const std::set<ClassId>& classes() const { return classes_; }
  const std::set<TermId>& terms() const { return terms_; }
  const std::set<PairTerm>& pairs() const { return pairs_; }
  const std::set<MembershipFact>& memberships() const { return memberships_; }
  const std::set<SubsetFact>& subsets() const { return subsets_; }
  const std::set<ProductFact>& products() const { return products_; }
  const std::set<SampleFact>& samples() const { return samples_; }
  const std::set<SubsampleFact>& subsamples() const { return subsamples_; }
  const std::set<EquivFact>& equivs() const { return equivs_; }
  const std::set<StatStatement>& stats() const { return stats_; }
  const std::map<ClassId, std::set<Term>>& extensions() const {
    return extensions_;
  }

  bool has_class(const ClassId& c) const { return classes_.contains(c); }
  bool has_term(const Term& t) const;
  bool is_sample_term(const Term& t) const;
  std::optional<Interval> stat(const ClassId& target,
                               const ClassId& reference) const;
  // The product fact whose product class is `c`, if any.
  std::optional<ProductFact> product_of(const ClassId& c) const;

  bool operator==(const KnowledgeBase&) const = default;

 private:
  std::set<ClassId> classes_;
  std::set<TermId> terms_;
  std::set<PairTerm> pairs_;
  std::set<MembershipFact> memberships_;
  std::set<SubsetFact> subsets_;
  std::set<ProductFact> products_;
  std::set<SampleFact> samples_;
  std::set<SubsampleFact> subsamples_;
  std::set<EquivFact> equivs_;
  std::set<StatStatement> stats_;
  std::map<ClassId, std::set<Term>> extensions_;
};

// Whole-KB validation: reference integrity, stat consistency, subset
// acyclicity, product uniqueness, pair membership in product classes.
// The parser reports the same conditions with line positions; this is the
// check for programmatically built KBs, and evaluate() runs the
// inconsistency subset of it before every query.
std::vector<KbIssue> validate(const KnowledgeBase& kb);

// Throws KbInconsistencyError if the KB has conflicting stats or a subset
// cycle among distinct classes.
void require_consistent(const KnowledgeBase& kb);

}  // namespace refclass
