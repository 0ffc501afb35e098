#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "rhosk/process.hpp"
#include "rhosk/term.hpp"

namespace rhosk {

/// Canonical names, sorted, without duplicates.
using NameSet = std::vector<Name>;

NameSet make_name_set(const std::vector<Name>& names);
/// Closed names occurring anywhere in the given processes.
NameSet names_occurring(const std::vector<Process>& ps);

/// Immediate barbs: canonical subjects of top-level outputs that are
/// name-equivalent to a member of `names`.
NameSet barbs(const Process& p, const NameSet& names);
/// Barbs of a combinator: top-level ((! x) P) components of its | chain.
/// The channel x is reported as the RHO name it denotes.
NameSet comb_barbs(const Term& c, const NameSet& names);

struct WeakBarbs {
  NameSet names;
  /// Some state at the bound still had successors, or the budget ran out.
  bool truncated = false;
};

WeakBarbs weak_barbs(const Process& p, const NameSet& names, std::size_t bound,
                     std::size_t budget = 100'000);
WeakBarbs comb_weak_barbs(const Term& c, const NameSet& names, std::size_t bound,
                          std::size_t budget = 100'000);

enum class Verdict { bisimilar, distinguished, inconclusive };

std::string to_string(Verdict v);

struct WitnessMove {
  bool left = true;  // which agent moved
  std::string from;
  std::string to;
};

/// For a distinguished pair: a chain of challenges, each answered by the
/// partner staying put (every other reply fails as well), ending in a barb
/// one side shows and the other never reaches.
struct BisimResult {
  Verdict verdict = Verdict::bisimilar;
  std::size_t depth = 0;
  std::vector<WitnessMove> moves;
  std::string barb;
  bool barb_on_left = true;
  std::string reason;

  std::string to_string() const;
};

BisimResult bounded_bisim(const Process& a, const Process& b, const NameSet& names,
                          std::size_t depth, std::size_t budget = 200'000);
BisimResult comb_bounded_bisim(const Term& a, const Term& b, const NameSet& names,
                               std::size_t depth, std::size_t budget = 200'000);

struct FaithfulnessReport {
  BisimResult calc;
  BisimResult comb;

  bool conclusive() const {
    return calc.verdict != Verdict::inconclusive && comb.verdict != Verdict::inconclusive;
  }
  bool agree() const { return conclusive() && calc.verdict == comb.verdict; }
};

/// Compares P, Q in the calculus with ((| C) [P]), ((| C) [Q]) in the
/// combinators.
FaithfulnessReport faithfulness_check(const Process& p, const Process& q, const NameSet& names,
                                      std::size_t depth, std::size_t budget = 200'000);

}  // namespace rhosk
