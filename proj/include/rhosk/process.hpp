#pragma once

#include <compare>
#include <cstddef>
#include <functional>
#include <memory>
#include <random>
#include <string>
#include <utility>
#include <vector>

#include "rhosk/strategy.hpp"

namespace rhosk {

class Process;

/// A RHO name: a quoted process, or a variable that only occurs bound.
class Name {
 public:
  enum class Kind { var, quote };

  static Name quote(Process p);
  static Name var(std::string id);

  Kind kind() const;
  bool is_var() const { return kind() == Kind::var; }
  bool is_quote() const { return kind() == Kind::quote; }
  const Process& process() const;  // quote only
  const std::string& id() const;   // var only

  std::size_t hash() const;
  friend bool operator==(const Name& a, const Name& b);
  friend std::strong_ordering operator<=>(const Name& a, const Name& b);

 private:
  struct Node;
  explicit Name(std::shared_ptr<const Node> n) : node_(std::move(n)) {}
  std::shared_ptr<const Node> node_;
  friend class Process;
};

class Process {
 public:
  enum class Kind { zero, input, output, par, deref };

  Process();  // 0
  static Process zero() { return {}; }
  static Process input(Name subject, Name binder, Process body);
  static Process output(Name subject, Process body);
  static Process par(Process left, Process right);
  static Process deref(Name name);
  /// Right-nested parallel composition; 0 when empty.
  static Process par_of(const std::vector<Process>& components);

  Kind kind() const;
  const Name& subject() const;  // input, output
  const Name& binder() const;   // input
  const Process& body() const;  // input, output
  const Process& left() const;  // par
  const Process& right() const;  // par
  const Name& name() const;     // deref

  std::size_t hash() const;
  std::size_t size() const;
  friend bool operator==(const Process& a, const Process& b);
  friend std::strong_ordering operator<=>(const Process& a, const Process& b);

  /// Surface syntax, e.g. `for(y <- &0)(*y) | &0!0`.
  std::string to_string() const;

 private:
  struct Node;
  explicit Process(std::shared_ptr<const Node> n) : node_(std::move(n)) {}
  static std::shared_ptr<const Node> make_node(Kind kind, std::vector<Name> names,
                                               std::vector<Process> procs);
  static const std::shared_ptr<const Node>& zero_node();
  std::shared_ptr<const Node> node_;
  friend class Name;
};

std::string to_string(const Name& n);

struct ProcessHash {
  std::size_t operator()(const Process& p) const { return p.hash(); }
};

/// Top-level parallel components, flattened; 0 components are kept.
std::vector<Process> par_components(const Process& p);

/// FN as literally defined: subjects of inputs and outputs, deref names,
/// minus binders. Canonical names, sorted, without duplicates.
std::vector<Name> free_names(const Process& p);
/// Every closed name occurring anywhere in `p`, including inside quotes.
std::vector<Name> closed_names(const Process& p);
bool is_closed(const Process& p);

Name canon_name(const Name& n);
/// Canonical representative of the structural-congruence class of `p`.
Process canon_process(const Process& p);
bool name_equiv(const Name& a, const Name& b);
bool struct_equiv(const Process& a, const Process& b);

/// Called on every application of the input clause of substitution.
struct FreshBinder {
  std::string z;
  const Process* body;  // the body R under the renamed binder
  const Name* new_name;
  const Name* old_name;
};
using FreshObserver = std::function<void(const FreshBinder&)>;

/// P{new/old}: names equivalent to `old` become `new`; the Deref clause
/// yields *new.
Process subst_syntactic(const Process& p, const Name& new_name, const Name& old_name,
                        const FreshObserver& observer = {});
/// As subst_syntactic, except that *x with x equivalent to `old` becomes Q
/// when `new` is &Q.
Process subst_semantic(const Process& p, const Name& new_name, const Name& old_name,
                       const FreshObserver& observer = {});

/// Indices into the canonical top-level components of the input and the
/// output taking part in a communication.
struct CommRedex {
  std::size_t input = 0;
  std::size_t output = 0;
  friend bool operator==(const CommRedex&, const CommRedex&) = default;
};

std::string to_string(const CommRedex& r);

/// Communications available in canon_process(p), paired with their
/// canonical results, in (input, output) order.
std::vector<std::pair<CommRedex, Process>> comm_successors(const Process& p);
/// Applies a communication to the canonical form of `p`. Throws
/// std::invalid_argument when `r` is not a redex there.
Process apply_comm(const Process& p, const CommRedex& r);
/// Distinct canonical one-step reducts.
std::vector<Process> comm_step(const Process& p);

using RhoStep = BasicStep<Process, CommRedex>;
using RhoTrace = BasicTrace<Process, CommRedex>;

RhoTrace rho_reduce(const Process& p, Strategy strategy, std::size_t fuel,
                    std::size_t budget = kDefaultStateBudget);

/// Random closed process with at most `depth` nested prefixes and quotes.
Process random_process(std::mt19937_64& rng, std::size_t depth);
/// Random closed process with at least one communication redex.
Process random_comm_process(std::mt19937_64& rng, std::size_t depth);

}  // namespace rhosk
