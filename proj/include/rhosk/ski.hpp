#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <random>
#include <vector>

#include "rhosk/presentation.hpp"
#include "rhosk/rewrite.hpp"
#include "rhosk/term.hpp"

namespace rhosk {

enum class SkiVariant { plain, whnf, gas };

inline constexpr const char* kMarker = "R";

/// plain: σ, κ, ι with no congruence. whnf: R-marked lhs, R kept on the rhs,
/// congruence R(x y) = ((R x) y). gas: as whnf but the rhs drops R.
Presentation ski_presentation(SkiVariant v);
/// Compiled presentation, built once per variant.
const RewriteSystem& ski_system(SkiVariant v);

Term ski_s();
Term ski_k();
Term ski_i();
Term ski_app(Term f, Term a);
Term ski_marker(Term t, std::size_t count = 1);

std::size_t count_markers(const Term& t);

/// Reduces R t under the whnf presentation with the `first` strategy.
Trace whnf_trace(const Term& t, std::size_t fuel);
/// The weak head normal form of `t`, or nullopt when fuel runs out.
std::optional<Term> whnf(const Term& t, std::size_t fuel);

struct GasRun {
  Term final_term;
  std::size_t steps_used = 0;
  TraceStatus status = TraceStatus::normal_form;
  Trace trace;
};

/// Reduces R^n t under the gas presentation with the `first` strategy.
GasRun gas_run(const Term& t, std::size_t n, std::size_t fuel);

struct OracleResult {
  Term term;
  std::size_t steps = 0;
};

/// Weak head normal form by direct head-spine evaluation, without any
/// marker machinery. nullopt when more than `fuel` contractions are needed.
std::optional<OracleResult> whnf_oracle(const Term& t, std::size_t fuel);

/// Random R-free term of at most `max_size` nodes.
Term random_ski_term(std::mt19937_64& rng, std::size_t max_size);
/// Every R-free term with at most `max_size` nodes, smallest first.
std::vector<Term> enumerate_ski_terms(std::size_t max_size);

}  // namespace rhosk
