#pragma once

#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "rhosk/term.hpp"

namespace rhosk {

/// W, N, arrows and sort variables.
class SortExpr {
 public:
  enum class Kind { w, n, arrow, var };

  static SortExpr W();
  static SortExpr N();
  static SortExpr arrow(SortExpr from, SortExpr to);
  static SortExpr var(std::string id);

  Kind kind() const { return node_->kind; }
  const std::string& id() const { return node_->id; }
  const SortExpr& from() const { return node_->parts.at(0); }
  const SortExpr& to() const { return node_->parts.at(1); }

  friend bool operator==(const SortExpr& a, const SortExpr& b);

  /// Arrows print right-associated: `N => (N => W) => W`.
  std::string to_string() const;

 private:
  struct Node {
    Kind kind;
    std::string id;
    std::vector<SortExpr> parts;
  };
  explicit SortExpr(std::shared_ptr<const Node> n) : node_(std::move(n)) {}
  std::shared_ptr<const Node> node_;
};

struct SortScheme {
  std::vector<std::string> quantified;
  SortExpr body;
};

/// The sorting of combinator constants; nullopt for names outside the
/// table. Free name tokens (`$y`) have sort N.
std::optional<SortScheme> constant_scheme(const std::string& name);

/// Principal sort of a combinator term, with sort variables renamed X0,
/// X1, ... in order of appearance; nullopt when the term is unsortable.
std::optional<SortExpr> sort_infer(const Term& c);

}  // namespace rhosk
