#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "rhosk/term.hpp"

namespace rhosk {

struct Sort {
  std::string name;
};

struct ConstructorDecl {
  std::string name;
  std::vector<std::string> argument_sorts;
  std::string result_sort;

  std::size_t arity() const { return argument_sorts.size(); }
};

/// An associative-commutative operator with a unit, described by the shape of
/// one binary application. The shape is a pattern over exactly two distinct
/// metavariables, the left and right operands, e.g. `((| x) y)`.
struct AcuGroup {
  Pattern shape;
  Term unit;
  bool associative = true;
  bool commutative = true;
};

/// An equation used left to right as a normalisation rule.
struct OrientedEquation {
  Pattern lhs;
  Pattern rhs;
};

struct CongruenceSpec {
  std::vector<AcuGroup> acu_groups;
  std::vector<OrientedEquation> oriented_equations;
  /// Cap on oriented-equation applications per canonicalisation.
  std::size_t fuel = 10'000;
};

struct RewriteRule {
  std::string name;
  Pattern lhs;
  Pattern rhs;
};

/// A finitely presented theory: sorts, sorted constructors, a structural
/// congruence and named rewrites.
struct Presentation {
  std::vector<Sort> sorts;
  std::vector<ConstructorDecl> constructors;
  CongruenceSpec congruence;
  std::vector<RewriteRule> rules;

  const ConstructorDecl* find_constructor(const std::string& name) const;
  const RewriteRule* find_rule(const std::string& name) const;

  /// Copy of this presentation keeping only the named rules (in their
  /// original order).
  Presentation restricted_to(const std::vector<std::string>& rule_names) const;
};

struct ValidationReport {
  std::vector<std::string> defects;
  bool ok() const { return defects.empty(); }
};

/// Reports duplicate names, unknown sorts and constructors, arity or sort
/// mismatches, rhs metavariables absent from the lhs, non-sort-preserving
/// rules and equations, and unsupported congruence shapes.
ValidationReport validate_presentation(const Presentation& p);

/// Sort of a ground term, or nullopt when it is not sort-correct for `p`.
std::optional<std::string> term_sort(const Presentation& p, const Term& t);

}  // namespace rhosk
