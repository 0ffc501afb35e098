// Acceptance checks. Prints one PASS/FAIL line per criterion and exits
// nonzero when any criterion fails.

#include <array>
#include <cstdio>
#include <functional>
#include <iostream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "rhosk/bisim.hpp"
#include "rhosk/comb.hpp"
#include "rhosk/process.hpp"
#include "rhosk/ski.hpp"
#include "rhosk/sorting.hpp"
#include "rhosk/syntax.hpp"
#include "support/oracles.hpp"

using namespace rhosk;

namespace {

struct Outcome {
  bool pass = true;
  std::string detail;
};

std::vector<Process> process_corpus() {
  std::mt19937_64 rng(2024);
  std::vector<Process> out;
  for (int i = 0; i < 300; ++i) out.push_back(random_process(rng, 4));
  return out;
}

// 1
Outcome ski_oracle() {
  const auto& sys = ski_system(SkiVariant::plain);
  auto terms = enumerate_ski_terms(7);
  std::size_t bad = 0;
  for (const auto& t : terms) {
    auto got = sys.step(t);
    std::sort(got.begin(), got.end());
    if (got != oracle::ski_step(t)) ++bad;
  }
  return {bad == 0 && terms.size() == 471,
          std::to_string(terms.size() - bad) + "/" + std::to_string(terms.size()) +
              " terms of size <= 7 match the naive stepper"};
}

struct Sample {
  Term term;
  Term whnf;
  std::size_t steps;
};

std::vector<Sample> whnf_corpus() {
  std::mt19937_64 rng(7);
  std::vector<Sample> out;
  while (out.size() < 500) {
    Term t = random_ski_term(rng, 15);
    if (auto r = oracle::ski_whnf(t, 200)) out.push_back({t, r->term, r->steps});
  }
  return out;
}

// 2
Outcome theorem_whnf(const std::vector<Sample>& corpus) {
  std::size_t ok = 0;
  for (const auto& s : corpus) {
    Trace tr = whnf_trace(s.term, 10'000);
    // R t' is compared modulo the marker congruence.
    Term expected = ski_system(SkiVariant::whnf).canonicalize(ski_marker(s.whnf));
    if (tr.status == TraceStatus::normal_form && tr.final_state() == expected) ++ok;
  }
  return {ok == corpus.size(), std::to_string(ok) + "/" + std::to_string(corpus.size()) +
                                   " convergent terms reach R t' with t' the oracle WHNF"};
}

// 3
Outcome theorem_gas(const std::vector<Sample>& corpus) {
  std::size_t runs = 0, ok = 0;
  for (const auto& s : corpus) {
    const std::size_t m = s.steps;
    for (std::size_t n : {m, m + 1, m + 3}) {
      ++runs;
      GasRun r = gas_run(s.term, n, 10'000);
      bool good = r.status == TraceStatus::normal_form && r.steps_used == m &&
                  r.final_term == ski_system(SkiVariant::gas).canonicalize(ski_marker(s.whnf, n - m));
      const Trace& tr = r.trace;
      good = good && count_markers(tr.initial) == n;
      for (std::size_t i = 0; good && i < tr.steps.size(); ++i) {
        good = count_markers(tr.steps[i].result) + i + 1 == n;
      }
      if (good) ++ok;
    }
  }
  return {ok == runs, std::to_string(ok) + "/" + std::to_string(runs) +
                          " gas runs halt at R^(n-m) t' after m steps with R-count + steps = n"};
}

// 4
Outcome derivations() {
  auto cases = derivation_cases();
  std::size_t ok = 0;
  std::string failed;
  for (const auto& c : cases) {
    auto tr = comb_ski_system().reduce_to(c.start, c.expected, 500);
    if (tr.status == TraceStatus::target_reached) {
      ++ok;
    } else {
      failed += " " + c.name;
    }
  }
  return {ok == 6 && cases.size() == 6,
          std::to_string(ok) + "/6 derivations hold under sigma, kappa, iota" + failed};
}

// Inserts administrative redexes at random positions.
Term decorate(std::mt19937_64& rng, const Term& t, int budget) {
  auto pick = [&](std::size_t n) { return static_cast<std::size_t>(rng() % n); };
  Term out = t;
  if (t.is_apply() && budget > 0) {
    out = Term::apply(decorate(rng, t.child(0), budget - 1), decorate(rng, t.child(1), budget - 1));
  }
  if (budget <= 0 || pick(4) != 0) return out;
  const Term S = Term::make("S"), K = Term::make("K"), I = Term::make("I");
  const Term junk = pick(2) ? parse_comb("(& 0)") : parse_comb("((! (& 0)) 0)");
  switch (pick(4)) {
    case 0: return Term::apply(I, out);
    case 1: return Term::apply(Term::apply(K, out), junk);
    case 2: return Term::apply(Term::apply(Term::apply(S, K), K), out);
    default:
      if (!out.is_apply()) return Term::apply(I, out);
      return Term::apply(
          Term::apply(Term::apply(S, Term::apply(K, out.child(0))), Term::apply(K, out.child(1))),
          junk);
  }
}

// 5
Outcome roundtrip(const std::vector<Process>& corpus) {
  std::size_t alpha = 0, idem = 0;
  for (const auto& p : corpus) {
    Term c = interp(p);
    Process back = backinterp(c);
    if (canon_process(back) == canon_process(p)) ++alpha;
    Term once = interp(back);
    if (interp(backinterp(once)) == once && once == c) ++idem;
  }
  std::mt19937_64 rng(99);
  std::size_t generated = 0, reached = 0, idem_q = 0;
  for (std::size_t i = 0; generated < 100; ++i) {
    Term q = decorate(rng, interp(corpus[i % corpus.size()]), 3);
    if (sort_infer(q) != SortExpr::W()) continue;
    ++generated;
    Term target = interp(backinterp(q));
    if (comb_admin_system().reduce_to(q, target, 500).status == TraceStatus::target_reached) {
      ++reached;
    }
    if (interp(backinterp(target)) == target) ++idem_q;
  }
  std::ostringstream d;
  d << "(i) " << alpha << "/" << corpus.size() << " alpha-equivalent; (ii) " << reached << "/"
    << generated << " reach interp(backinterp(Q)) without xi; (iii) " << idem + idem_q << "/"
    << corpus.size() + generated << " idempotent";
  return {alpha == corpus.size() && reached == generated && idem == corpus.size() &&
              idem_q == generated,
          d.str()};
}

// 6
Outcome sorting(const std::vector<Process>& corpus) {
  const SortExpr W = SortExpr::W();
  const SortExpr NW = SortExpr::arrow(SortExpr::N(), W);
  std::size_t ok = 0, elim_checked = 0, elim_ok = 0;
  for (const auto& p : corpus) {
    if (sort_infer(interp(p)) == W) ++ok;
    for (const auto& c : par_components(canon_process(p))) {
      if (c.kind() != Process::Kind::input) continue;
      // Translate the open body, then eliminate its binder.
      Term body = interp(c.body());
      if (!contains_leaf(body, "$" + c.binder().id())) continue;
      ++elim_checked;
      if (sort_infer(abstract_elim(c.binder().id(), body)) == NW) ++elim_ok;
    }
  }
  // Instantiate every rule and congruence equation over a pool of small
  // closed combinators, keeping instances whose lhs is W-sorted.
  const std::vector<std::string> pool_src = {
      "0", "(& 0)", "(K 0)", "I", "((S (K *)) I)", "((! (& 0)) 0)", "((for (& 0)) (K 0))",
      "(K (& 0))", "(! (& 0))", "(S K)", "K", "((S (K (! (& 0)))) (K 0))"};
  std::vector<Term> pool;
  for (const auto& s : pool_src) pool.push_back(parse_comb(s));
  Presentation pres = comb_presentation();
  std::vector<std::pair<Pattern, Pattern>> sides;
  for (const auto& r : pres.rules) sides.emplace_back(r.lhs, r.rhs);
  auto pv = [](const char* v) { return Pattern::var(v); };
  auto par = [](Pattern a, Pattern b) {
    return Pattern::apply(Pattern::apply(Pattern::node("|"), std::move(a)), std::move(b));
  };
  sides.emplace_back(par(pv("P"), Pattern::node("0")), pv("P"));
  sides.emplace_back(par(pv("P"), pv("Q")), par(pv("Q"), pv("P")));
  sides.emplace_back(par(par(pv("P"), pv("Q")), pv("R")), par(pv("P"), par(pv("Q"), pv("R"))));
  std::size_t instances = 0, preserved = 0, covered = 0;
  for (const auto& [lhs, rhs] : sides) {
    auto vars = lhs.variables();
    std::size_t here = 0;
    std::vector<std::size_t> idx(vars.size(), 0);
    for (;;) {
      Binding b;
      for (std::size_t i = 0; i < vars.size(); ++i) b[vars[i]] = pool[idx[i]];
      if (sort_infer(instantiate(lhs, b)) == W) {
        ++instances;
        ++here;
        if (sort_infer(instantiate(rhs, b)) == W) ++preserved;
      }
      std::size_t k = 0;
      while (k < idx.size() && ++idx[k] == pool.size()) idx[k++] = 0;
      if (k == idx.size()) break;
    }
    if (here > 0) ++covered;
  }
  std::ostringstream d;
  d << ok << "/" << corpus.size() << " interpretations are W; " << elim_ok << "/" << elim_checked
    << " eliminations are N => W; " << preserved << "/" << instances
    << " rule and equation instances keep sort W; " << covered << "/" << sides.size()
    << " rules instantiated";
  return {ok == corpus.size() && elim_ok == elim_checked && preserved == instances &&
              covered == sides.size() && instances > 0,
          d.str()};
}

struct Pair {
  const char* p;
  const char* q;
  Verdict expected;
};

// Bisimilar pairs come from congruence and administrative reduction;
// distinguished pairs differ in a barb.
const std::array<Pair, 20> kFaithfulnessSuite = {{
    {"0", "0 | 0", Verdict::bisimilar},
    {"&0!0", "0 | &0!0", Verdict::bisimilar},
    {"&0!0 | &(&0!0)!0", "&(&0!0)!0 | &0!0", Verdict::bisimilar},
    {"for(y <- &0)(y!0) | &0!0", "&0!0 | for(z <- &0)(z!0)", Verdict::bisimilar},
    {"for(y <- &0)(y!0) | &0!0", "&0!0", Verdict::bisimilar},
    {"for(y <- &0)(&0!0) | &0!0", "&0!0", Verdict::bisimilar},
    {"for(y <- &0)(y!0) | &0!0", "for(y <- &0)(&0!0) | &0!0", Verdict::bisimilar},
    {"*&0", "0", Verdict::bisimilar},
    {"for(y <- &0)(y!0)", "for(z <- &0)(z!0)", Verdict::bisimilar},
    {"for(y <- &(0|0))0 | &0!0", "for(y <- &0)0 | &0!0", Verdict::bisimilar},
    {"&0!(&0!0)", "&0!0", Verdict::bisimilar},
    {"&0!0", "0", Verdict::distinguished},
    {"for(y <- &0)0 | &0!0", "0", Verdict::distinguished},
    {"&0!0", "&(&0!0)!0", Verdict::distinguished},
    {"for(y <- &0)(&(&0!0)!0) | &0!0", "&0!0", Verdict::distinguished},
    {"for(y <- &0)0 | &0!0", "&0!0", Verdict::distinguished},
    {"&(&0!0)!0 | &0!0", "&0!0", Verdict::distinguished},
    {"for(y <- &0)(y!0) | &(&0!0)!0", "&(&0!0)!0 | &0!0", Verdict::distinguished},
    {"*&0", "&0!0", Verdict::distinguished},
    {"for(y <- &0)0 | for(z <- &0)(&(&0!0)!0) | &0!0", "for(z <- &0)(&(&0!0)!0) | &0!0",
     Verdict::distinguished},
}};

// 7
Outcome faithfulness() {
  std::size_t agree = 0, expected = 0;
  std::string bad;
  for (std::size_t i = 0; i < kFaithfulnessSuite.size(); ++i) {
    const auto& pair = kFaithfulnessSuite[i];
    Process p = parse_rho(pair.p), q = parse_rho(pair.q);
    auto r = faithfulness_check(p, q, names_occurring({p, q}), 4);
    if (r.agree()) {
      ++agree;
    } else {
      bad += " #" + std::to_string(i + 1);
    }
    if (r.calc.verdict == pair.expected) ++expected;
  }
  std::ostringstream d;
  d << agree << "/20 pairs agree at depth 4 (" << expected << "/20 match the intended verdict)";
  if (!bad.empty()) d << "; disagreeing:" << bad;
  return {agree == 20, d.str()};
}

std::optional<Process> unwrap(const Term& t) {
  const auto& sys = comb_system();
  Process out = Process::zero();
  bool saw_c = false;
  for (const auto& e : sys.acu_elements(t, 0)) {
    if (e.is_leaf() && e.name() == "C") {
      if (saw_c) return std::nullopt;
      saw_c = true;
      continue;
    }
    try {
      out = Process::par(backinterp(e), out);
    } catch (const std::exception&) {
      return std::nullopt;
    }
  }
  if (!saw_c) return std::nullopt;
  return out;
}

bool matches_along(const RewriteSystem& sys, const Term& start, const Process& target) {
  Trace tr = sys.reduce(start, Strategy::first(), 500);
  auto ok = [&](const Term& t) {
    auto p = unwrap(t);
    return p && struct_equiv(*p, target);
  };
  if (ok(tr.initial)) return true;
  for (const auto& s : tr.steps) {
    if (ok(s.result)) return true;
  }
  return false;
}

// 8
Outcome comm_correspondence() {
  std::mt19937_64 rng(31);
  std::size_t processes = 0, steps = 0, matched = 0;
  const auto& full = comb_system();
  for (; processes < 100; ++processes) {
    Process p = random_comm_process(rng, 3);
    Term start = full.canonicalize(wrap_context(interp(p)));
    std::vector<Term> after_xi;
    for (const auto& [redex, next] : full.successors(start)) {
      if (redex.rule == "xi") after_xi.push_back(next);
    }
    for (const auto& p2 : comm_step(p)) {
      ++steps;
      bool found = false;
      for (const auto& x : after_xi) {
        if (matches_along(comb_ski_system(), x, p2) || matches_along(comb_admin_system(), x, p2)) {
          found = true;
          break;
        }
      }
      if (found) ++matched;
    }
  }
  return {matched == steps && steps >= processes,
          std::to_string(matched) + "/" + std::to_string(steps) + " comm steps of " +
              std::to_string(processes) + " processes matched by one xi plus administrative steps"};
}

std::string run_capture(const std::string& cmd) {
  std::string out;
  FILE* f = popen(cmd.c_str(), "r");
  if (!f) return out;
  std::array<char, 4096> buf;
  std::size_t n;
  while ((n = fread(buf.data(), 1, buf.size(), f)) > 0) out.append(buf.data(), n);
  pclose(f);
  return out;
}

// 9
Outcome determinism(const std::string& cli) {
  const std::vector<std::string> commands = {
      " trace --calculus ski --strategy random --seed 42 --format json "
      "'(((S (K (S I))) K) ((S I) I))' --fuel 30",
      " trace --calculus rho --strategy random --seed 7 --format json "
      "'for(y <- &0)(y!0) | for(z <- &0)0 | &0!0 | &0!(&0!0)'",
      " trace --calculus rho-comb --strategy random --seed 3 --format json "
      "'((| C) ((| ((for (& 0)) ((S (K *)) I))) ((! (& 0)) (* (& 0)))))'",
  };
  std::size_t same = 0;
  for (const auto& c : commands) {
    std::string a = run_capture(cli + c);
    std::string b = run_capture(cli + c);
    if (!a.empty() && a == b && a.find("\"steps\"") != std::string::npos) ++same;
  }
  return {same == commands.size(), std::to_string(same) + "/" + std::to_string(commands.size()) +
                                       " seeded CLI invocations byte-identical across two runs"};
}

}  // namespace

int main(int argc, char** argv) {
  std::string cli = argc > 1 ? argv[1] : "rhosk";
  auto corpus = process_corpus();
  auto samples = whnf_corpus();
  const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria = {
      {"SKI oracle equivalence", ski_oracle},
      {"WHNF theorem", [&] { return theorem_whnf(samples); }},
      {"gas theorem", [&] { return theorem_gas(samples); }},
      {"worked derivations", derivations},
      {"interpretation roundtrip", [&] { return roundtrip(corpus); }},
      {"sorting discipline", [&] { return sorting(corpus); }},
      {"faithfulness instances", faithfulness},
      {"comm correspondence", comm_correspondence},
      {"determinism", [&] { return determinism(cli); }},
  };
  int failures = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    Outcome o;
    try {
      o = criteria[i].second();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    if (!o.pass) ++failures;
    std::cout << "criterion " << i + 1 << " " << (o.pass ? "PASS" : "FAIL") << " "
              << criteria[i].first << ": " << o.detail << std::endl;
  }
  return failures == 0 ? 0 : 1;
}
