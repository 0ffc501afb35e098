#pragma once

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <deque>
#include <optional>
#include <random>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

namespace rhosk {

struct Strategy {
  enum class Kind { first, all, random };
  Kind kind = Kind::first;
  std::uint64_t seed = 0;

  static Strategy first() { return {Kind::first, 0}; }
  static Strategy all() { return {Kind::all, 0}; }
  static Strategy random(std::uint64_t seed) { return {Kind::random, seed}; }
};

std::string to_string(Strategy::Kind kind);
std::optional<Strategy::Kind> parse_strategy_kind(const std::string& text);

enum class TraceStatus { normal_form, fuel_exhausted, target_reached };

std::string to_string(TraceStatus status);

template <class State, class Move>
struct BasicStep {
  Move redex;
  State result;
};

/// An initial state and the steps taken from it. Step i's result is the
/// source of step i + 1.
template <class State, class Move>
struct BasicTrace {
  State initial;
  std::vector<BasicStep<State, Move>> steps;
  TraceStatus status = TraceStatus::normal_form;

  const State& final_state() const { return steps.empty() ? initial : steps.back().result; }
};

/// Default cap on distinct states visited by breadth-first strategies.
inline constexpr std::size_t kDefaultStateBudget = 1'000'000;

namespace detail {

// Uniform index in [0, n) that does not depend on the standard library's
// distribution implementation.
inline std::size_t uniform_index(std::mt19937_64& rng, std::size_t n) {
  const std::uint64_t bound = n;
  const std::uint64_t limit = UINT64_MAX - UINT64_MAX % bound;
  std::uint64_t draw;
  do {
    draw = rng();
  } while (draw >= limit);
  return static_cast<std::size_t>(draw % bound);
}

template <class State, class Move, class Hash, class Successors, class Goal>
std::optional<BasicTrace<State, Move>> breadth_first(const State& initial, std::size_t max_depth,
                                                     Successors&& successors, Goal&& goal,
                                                     TraceStatus goal_status,
                                                     std::size_t budget) {
  struct Visit {
    std::size_t parent;
    std::optional<Move> move;
    State state;
    std::size_t depth;
  };
  std::vector<Visit> visits;
  std::unordered_map<State, std::size_t, Hash> seen;
  visits.push_back({0, std::nullopt, initial, 0});
  seen.emplace(initial, 0);
  std::deque<std::size_t> queue{0};
  while (!queue.empty()) {
    std::size_t idx = queue.front();
    queue.pop_front();
    auto next = successors(visits[idx].state);
    if (goal(visits[idx].state, next)) {
      BasicTrace<State, Move> trace{initial, {}, goal_status};
      for (std::size_t i = idx; i != 0; i = visits[i].parent) {
        trace.steps.push_back({*visits[i].move, visits[i].state});
      }
      std::reverse(trace.steps.begin(), trace.steps.end());
      return trace;
    }
    if (visits[idx].depth >= max_depth) continue;
    for (auto& [move, state] : next) {
      if (seen.contains(state)) continue;
      if (visits.size() >= budget) return std::nullopt;
      seen.emplace(state, visits.size());
      visits.push_back({idx, std::move(move), std::move(state), visits[idx].depth + 1});
      queue.push_back(visits.size() - 1);
    }
  }
  return std::nullopt;
}

}  // namespace detail

/// Runs a reduction strategy over any successor function. `successors(s)`
/// returns the (move, state) pairs available from `s` in a fixed order; the
/// `all` strategy returns a shortest trace to a state with no successors.
template <class State, class Move, class Hash, class Successors>
BasicTrace<State, Move> run_strategy(const State& initial, Strategy strategy, std::size_t fuel,
                                     Successors&& successors,
                                     std::size_t budget = kDefaultStateBudget) {
  if (strategy.kind == Strategy::Kind::all) {
    auto found = detail::breadth_first<State, Move, Hash>(
        initial, fuel, successors,
        [](const State&, const auto& next) { return next.empty(); }, TraceStatus::normal_form,
        budget);
    if (found) return *found;
    return {initial, {}, TraceStatus::fuel_exhausted};
  }
  BasicTrace<State, Move> trace{initial, {}, TraceStatus::normal_form};
  std::mt19937_64 rng(strategy.seed);
  State current = initial;
  for (;;) {
    auto next = successors(current);
    if (next.empty()) {
      trace.status = TraceStatus::normal_form;
      return trace;
    }
    if (trace.steps.size() >= fuel) {
      trace.status = TraceStatus::fuel_exhausted;
      return trace;
    }
    std::size_t pick = 0;
    if (strategy.kind == Strategy::Kind::random) pick = detail::uniform_index(rng, next.size());
    current = next[pick].second;
    trace.steps.push_back({std::move(next[pick].first), std::move(next[pick].second)});
  }
}

/// Shortest trace from `initial` to `target` within `fuel` steps, or a
/// fuel_exhausted trace with no steps.
template <class State, class Move, class Hash, class Successors>
BasicTrace<State, Move> search_target(const State& initial, const State& target, std::size_t fuel,
                                      Successors&& successors,
                                      std::size_t budget = kDefaultStateBudget) {
  auto found = detail::breadth_first<State, Move, Hash>(
      initial, fuel, successors,
      [&](const State& s, const auto&) { return s == target; }, TraceStatus::target_reached,
      budget);
  if (found) return *found;
  return {initial, {}, TraceStatus::fuel_exhausted};
}

}  // namespace rhosk
