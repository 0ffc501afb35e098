#include "rhosk/ski.hpp"

#include <algorithm>
#include <string>

namespace rhosk {

namespace {

Pattern pv(const char* name) { return Pattern::var(name); }
Pattern pc(const char* name) { return Pattern::node(name); }
Pattern pa(Pattern f, Pattern a) { return Pattern::apply(std::move(f), std::move(a)); }
Pattern pr(Pattern p) { return Pattern::node(kMarker, {std::move(p)}); }

}  // namespace

Presentation ski_presentation(SkiVariant v) {
  Presentation p;
  p.sorts = {{"T"}};
  p.constructors = {{"S", {}, "T"}, {"K", {}, "T"}, {"I", {}, "T"},
                    {std::string(kApply), {"T", "T"}, "T"}};
  if (v == SkiVariant::plain) {
    p.rules = {
        {"sigma", pa(pa(pa(pc("S"), pv("x")), pv("y")), pv("z")),
         pa(pa(pv("x"), pv("z")), pa(pv("y"), pv("z")))},
        {"kappa", pa(pa(pc("K"), pv("y")), pv("z")), pv("y")},
        {"iota", pa(pc("I"), pv("z")), pv("z")},
    };
    return p;
  }
  p.constructors.push_back({kMarker, {"T"}, "T"});
  p.congruence.oriented_equations = {
      {pr(pa(pv("x"), pv("y"))), pa(pr(pv("x")), pv("y"))},
  };
  const bool keep = v == SkiVariant::whnf;
  auto mark = [&](Pattern q) { return keep ? pr(std::move(q)) : q; };
  p.rules = {
      {"sigma", pa(pa(pa(pr(pc("S")), pv("x")), pv("y")), pv("z")),
       pa(pa(mark(pv("x")), pv("z")), pa(pv("y"), pv("z")))},
      {"kappa", pa(pa(pr(pc("K")), pv("y")), pv("z")), mark(pv("y"))},
      {"iota", pa(pr(pc("I")), pv("z")), mark(pv("z"))},
  };
  return p;
}

const RewriteSystem& ski_system(SkiVariant v) {
  static const RewriteSystem plain(ski_presentation(SkiVariant::plain));
  static const RewriteSystem whnf(ski_presentation(SkiVariant::whnf));
  static const RewriteSystem gas(ski_presentation(SkiVariant::gas));
  switch (v) {
    case SkiVariant::plain: return plain;
    case SkiVariant::whnf: return whnf;
    case SkiVariant::gas: return gas;
  }
  return plain;
}

Term ski_s() { return Term::make("S"); }
Term ski_k() { return Term::make("K"); }
Term ski_i() { return Term::make("I"); }
Term ski_app(Term f, Term a) { return Term::apply(std::move(f), std::move(a)); }

Term ski_marker(Term t, std::size_t count) {
  for (std::size_t i = 0; i < count; ++i) t = Term::make(kMarker, {std::move(t)});
  return t;
}

std::size_t count_markers(const Term& t) {
  std::size_t n = t.name() == kMarker ? 1 : 0;
  for (const auto& c : t.children()) n += count_markers(c);
  return n;
}

Trace whnf_trace(const Term& t, std::size_t fuel) {
  return ski_system(SkiVariant::whnf).reduce(ski_marker(t), Strategy::first(), fuel);
}

std::optional<Term> whnf(const Term& t, std::size_t fuel) {
  Trace trace = whnf_trace(t, fuel);
  if (trace.status != TraceStatus::normal_form) return std::nullopt;
  return ski_system(SkiVariant::whnf).pull_marker(trace.final_state(), kMarker);
}

GasRun gas_run(const Term& t, std::size_t n, std::size_t fuel) {
  Trace trace = ski_system(SkiVariant::gas).reduce(ski_marker(t, n), Strategy::first(), fuel);
  GasRun out{trace.final_state(), trace.steps.size(), trace.status, {}};
  out.trace = std::move(trace);
  return out;
}

std::optional<OracleResult> whnf_oracle(const Term& t, std::size_t fuel) {
  Term current = t;
  std::size_t steps = 0;
  for (;;) {
    std::vector<Term> args;
    Term head = current;
    while (head.is_apply()) {
      args.push_back(head.child(1));
      head = head.child(0);
    }
    std::reverse(args.begin(), args.end());
    std::size_t need = head.name() == "S" ? 3 : head.name() == "K" ? 2 : head.name() == "I" ? 1 : 0;
    if (need == 0 || args.size() < need) return OracleResult{current, steps};
    if (steps == fuel) return std::nullopt;
    ++steps;
    Term reduced;
    if (need == 3) {
      reduced = ski_app(ski_app(args[0], args[2]), ski_app(args[1], args[2]));
    } else {
      reduced = args[0];
    }
    for (std::size_t i = need; i < args.size(); ++i) reduced = ski_app(reduced, args[i]);
    current = reduced;
  }
}

Term random_ski_term(std::mt19937_64& rng, std::size_t max_size) {
  static const char* leaves[] = {"S", "K", "I"};
  if (max_size < 3) return Term::make(leaves[detail::uniform_index(rng, 3)]);
  std::size_t pick = detail::uniform_index(rng, 4);
  if (pick < 3) return Term::make(leaves[pick]);
  std::size_t left = 1 + detail::uniform_index(rng, max_size - 2);
  Term f = random_ski_term(rng, left);
  Term a = random_ski_term(rng, max_size - 1 - left);
  return ski_app(std::move(f), std::move(a));
}

std::vector<Term> enumerate_ski_terms(std::size_t max_size) {
  // by_size[n] holds every term with exactly n nodes.
  std::vector<std::vector<Term>> by_size(max_size + 1);
  if (max_size >= 1) by_size[1] = {ski_s(), ski_k(), ski_i()};
  for (std::size_t n = 3; n <= max_size; n += 2) {
    for (std::size_t l = 1; l + 1 < n; l += 2) {
      for (const auto& f : by_size[l]) {
        for (const auto& a : by_size[n - 1 - l]) by_size[n].push_back(ski_app(f, a));
      }
    }
  }
  std::vector<Term> out;
  for (auto& level : by_size) out.insert(out.end(), level.begin(), level.end());
  return out;
}

}  // namespace rhosk
