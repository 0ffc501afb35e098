#pragma once

#include <cstddef>
#include <functional>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "rhosk/presentation.hpp"
#include "rhosk/strategy.hpp"
#include "rhosk/term.hpp"

namespace rhosk {

/// Raised when oriented-equation normalisation exceeds its fuel cap, which
/// signals a non-terminating presentation.
class FuelExhausted : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Raised when a redex does not belong to the term it is applied to.
class InvalidRedex : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// One rewrite site. `lift` counts the context markers pulled out of the
/// subterm at `position` (via a distributive oriented equation) before the
/// rule's lhs matched; they are restored around the result.
struct Redex {
  std::string rule;
  Position position;
  Binding binding;
  std::size_t lift = 0;

  friend bool operator==(const Redex&, const Redex&) = default;
};

std::string to_string(const Redex& r);

using Step = BasicStep<Term, Redex>;
using Trace = BasicTrace<Term, Redex>;

/// A presentation compiled for rewriting. All members are const and the
/// object may be shared between threads.
///
/// Terms are kept in canonical form: ACU operators are flattened into
/// multisets (units dropped, elements sorted by the term order) and rebuilt
/// right-nested; oriented equations are applied left to right to a fixpoint.
/// Rules whose lhs is headed by an ACU operator match any sub-multiset of an
/// operator chain, the rest of the chain being carried along unchanged.
class RewriteSystem {
 public:
  explicit RewriteSystem(Presentation presentation);

  const Presentation& presentation() const { return presentation_; }

  Term canonicalize(const Term& t) const;
  bool congruent(const Term& a, const Term& b) const;

  /// First binding under which `pattern` is congruent to the canonical term
  /// `t`, if any.
  std::optional<Binding> match(const Pattern& pattern, const Term& t) const;
  /// Every distinct binding, in deterministic order.
  std::vector<Binding> match_all(const Pattern& pattern, const Term& t) const;

  /// Redexes of the canonical term `t` in (rule order, pre-order position)
  /// order.
  std::vector<Redex> find_redexes(const Term& t) const;
  Term apply(const Term& t, const Redex& r) const;
  /// Redexes paired with their canonical results.
  std::vector<std::pair<Redex, Term>> successors(const Term& t) const;
  /// Distinct canonical one-step successors in first-occurrence order.
  std::vector<Term> step(const Term& t) const;
  bool is_normal(const Term& t) const;

  Trace reduce(const Term& t, Strategy strategy, std::size_t fuel) const;
  /// Shortest trace from `t` to the canonical form of `target`.
  Trace reduce_to(const Term& t, const Term& target, std::size_t fuel,
                  std::size_t budget = kDefaultStateBudget) const;

  /// When `marker` distributes over some constructor through an oriented
  /// equation, returns `u` with `marker(u)` congruent to `t`.
  std::optional<Term> pull_marker(const Term& t, const std::string& marker) const;

  /// Elements of `t` viewed as a multiset under ACU group `group`.
  std::vector<Term> acu_elements(const Term& t, std::size_t group) const;
  /// Index of the ACU group whose operator heads `t`, if any.
  std::optional<std::size_t> acu_group_of(const Term& t) const;

 private:
  struct Group {
    Pattern shape;
    std::string left_var;
    std::string right_var;
    Position left_path;
    Position right_path;
    Term unit;
  };
  struct Distribution {
    std::string marker;
    std::string inner;
    std::size_t inner_arity;
    std::size_t index;
  };
  struct CompiledRule {
    std::size_t rule_index;
    std::optional<std::size_t> acu_top;
    std::vector<Pattern> elements;
  };
  using Continuation = std::function<bool(Binding&)>;

  Term canon_node(const std::string& name, std::vector<Term> children, std::size_t& fuel) const;
  Term canon_rec(const Term& t, std::size_t& fuel) const;
  Term canon_instance(const Pattern& p, const Binding& b, std::size_t& fuel) const;
  Term assemble(std::size_t group, std::vector<Term> elements) const;
  std::optional<std::pair<Term, Term>> split(const Term& t, std::size_t group) const;
  std::optional<std::pair<Pattern, Pattern>> split(const Pattern& p, std::size_t group) const;
  std::optional<std::size_t> acu_group_of(const Pattern& p) const;
  std::vector<Pattern> pattern_elements(const Pattern& p, std::size_t group) const;
  std::optional<Term> pull(const Term& t, const Distribution& d) const;

  bool match_rec(const Pattern& p, const Term& t, Binding& b, const Continuation& k) const;
  bool match_children(const Pattern& p, const Term& t, std::size_t i, Binding& b,
                      const Continuation& k) const;
  bool match_multiset(const std::vector<Pattern>& pats, std::size_t pi,
                      const std::vector<Term>& elems, std::vector<bool>& used, Binding& b,
                      bool extension, std::size_t group, const Continuation& k) const;

  Term rebuild(const Term& t, std::span<const std::size_t> pos, const Term& replacement,
               std::size_t& fuel) const;

  Presentation presentation_;
  std::vector<Group> groups_;
  std::vector<Distribution> distributions_;
  std::vector<CompiledRule> rules_;
};

// Free-function forms over a presentation. Each call compiles the
// presentation; hot loops should hold a RewriteSystem instead.
Term canonicalize(const Presentation& p, const Term& t);
bool congruent(const Presentation& p, const Term& a, const Term& b);
std::optional<Binding> match_pattern(const Presentation& p, const Pattern& pat, const Term& t);
std::vector<Redex> find_redexes(const Presentation& p, const Term& t);
Term apply_redex(const Presentation& p, const Term& t, const Redex& r);
std::vector<Term> step(const Presentation& p, const Term& t);
Trace reduce(const Presentation& p, const Term& t, Strategy strategy, std::size_t fuel);
bool is_normal(const Presentation& p, const Term& t);

}  // namespace rhosk
