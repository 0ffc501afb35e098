#pragma once

#include <compare>
#include <cstddef>
#include <map>
#include <memory>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace rhosk {

/// Name of the binary application constructor shared by the SKI and RHO
/// combinator signatures.
inline constexpr std::string_view kApply = "@";

/// An immutable first-order term. Nodes are shared, so copies are cheap and
/// values may be handed between threads freely.
class Term {
 public:
  Term();  // placeholder leaf with an empty name
  static Term make(std::string_view name, std::vector<Term> children = {});
  static Term apply(Term fn, Term arg);

  const std::string& name() const;
  std::span<const Term> children() const;
  const Term& child(std::size_t i) const { return children()[i]; }
  std::size_t arity() const { return children().size(); }
  bool is_leaf() const { return arity() == 0; }
  bool is_apply() const;

  std::size_t hash() const;
  /// Number of constructor nodes.
  std::size_t size() const;

  bool same_node(const Term& other) const { return node_ == other.node_; }

  friend bool operator==(const Term& a, const Term& b);
  friend std::strong_ordering operator<=>(const Term& a, const Term& b);

  /// Fully parenthesised rendering: leaves by name, `(f a)` for
  /// application, `(name c1 c2 ...)` for any other constructor.
  std::string to_string() const;

 private:
  struct Node;
  explicit Term(std::shared_ptr<const Node> node) : node_(std::move(node)) {}
  std::shared_ptr<const Node> node_;
};

struct TermHash {
  std::size_t operator()(const Term& t) const { return t.hash(); }
};

using Position = std::vector<std::size_t>;

const Term& subterm_at(const Term& t, std::span<const std::size_t> position);
/// Returns `t` with the subterm at `position` replaced.
Term replace_at(const Term& t, std::span<const std::size_t> position, Term replacement);

std::string position_to_string(const Position& position);

/// A term with metavariables. Metavariables may repeat (non-linear patterns).
class Pattern {
 public:
  static Pattern var(std::string name, std::string sort = "T");
  static Pattern node(std::string name, std::vector<Pattern> children = {});
  static Pattern apply(Pattern fn, Pattern arg);
  /// Lifts a ground term into a pattern.
  static Pattern ground(const Term& t);

  bool is_var() const;
  const std::string& name() const;  // metavariable or constructor name
  const std::string& sort() const;  // only meaningful for metavariables
  std::span<const Pattern> children() const;
  const Pattern& child(std::size_t i) const { return children()[i]; }
  std::size_t arity() const { return children().size(); }

  /// Distinct metavariable names in first-occurrence order.
  std::vector<std::string> variables() const;

  std::string to_string() const;

 private:
  struct Node;
  explicit Pattern(std::shared_ptr<const Node> node) : node_(std::move(node)) {}
  std::shared_ptr<const Node> node_;
};

/// Metavariable assignment. Ordered so that iteration is deterministic.
using Binding = std::map<std::string, Term>;

/// Replaces every metavariable of `p` by its binding. Throws
/// std::out_of_range when a metavariable is unbound.
Term instantiate(const Pattern& p, const Binding& binding);

std::string binding_to_string(const Binding& binding);

}  // namespace rhosk
