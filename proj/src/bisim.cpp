#include "rhosk/bisim.hpp"

#include <algorithm>
#include <deque>
#include <functional>
#include <map>
#include <set>
#include <tuple>

#include "rhosk/comb.hpp"

namespace rhosk {

NameSet make_name_set(const std::vector<Name>& names) {
  std::set<Name> out;
  for (const auto& n : names) out.insert(canon_name(n));
  return {out.begin(), out.end()};
}

NameSet names_occurring(const std::vector<Process>& ps) {
  std::vector<Name> all;
  for (const auto& p : ps) {
    auto c = closed_names(p);
    all.insert(all.end(), c.begin(), c.end());
  }
  return make_name_set(all);
}

namespace {

bool observable(const Name& x, const NameSet& names) {
  return std::any_of(names.begin(), names.end(), [&](const Name& y) { return name_equiv(x, y); });
}

NameSet sorted_unique(std::vector<Name> v) {
  std::sort(v.begin(), v.end());
  v.erase(std::unique(v.begin(), v.end()), v.end());
  return v;
}

bool subset(const NameSet& a, const NameSet& b) {
  return std::includes(b.begin(), b.end(), a.begin(), a.end());
}

}  // namespace

NameSet barbs(const Process& p, const NameSet& names) {
  std::vector<Name> out;
  for (const auto& c : par_components(canon_process(p))) {
    if (c.kind() != Process::Kind::output) continue;
    Name x = canon_name(c.subject());
    if (observable(x, names)) out.push_back(x);
  }
  return sorted_unique(std::move(out));
}

NameSet comb_barbs(const Term& c0, const NameSet& names) {
  const auto& sys = comb_system();
  Term c = sys.canonicalize(c0);
  std::vector<Name> out;
  for (const auto& e : sys.acu_elements(c, 0)) {
    if (!e.is_apply() || !e.child(0).is_apply()) continue;
    const Term& op = e.child(0).child(0);
    if (!(op.is_leaf() && op.name() == "!")) continue;
    try {
      Name x = backinterp_name(e.child(0).child(1));
      if (observable(x, names)) out.push_back(x);
    } catch (const std::exception&) {
      // Not a well-formed channel; no barb.
    }
  }
  return sorted_unique(std::move(out));
}

namespace {

template <class State>
struct Lts {
  std::function<std::vector<State>(const State&)> step;
  std::function<NameSet(const State&)> barbs;
  std::function<std::string(const State&)> show;
};

Lts<Process> calc_lts(const NameSet& names) {
  return {[](const Process& p) { return comm_step(p); },
          [names](const Process& p) { return barbs(p, names); },
          [](const Process& p) { return p.to_string(); }};
}

Lts<Term> comb_lts(const NameSet& names) {
  return {[](const Term& t) { return comb_system().step(t); },
          [names](const Term& t) { return comb_barbs(t, names); },
          [](const Term& t) { return t.to_string(); }};
}

template <class State>
WeakBarbs weak_barbs_of(const Lts<State>& lts, const State& start, std::size_t bound,
                        std::size_t budget) {
  WeakBarbs out;
  std::set<State> seen{start};
  std::deque<std::pair<State, std::size_t>> queue{{start, 0}};
  std::vector<Name> all;
  while (!queue.empty()) {
    auto [s, d] = queue.front();
    queue.pop_front();
    auto b = lts.barbs(s);
    all.insert(all.end(), b.begin(), b.end());
    auto next = lts.step(s);
    if (d == bound) {
      out.truncated = out.truncated || !next.empty();
      continue;
    }
    for (auto& n : next) {
      if (seen.size() >= budget) {
        out.truncated = true;
        break;
      }
      if (seen.insert(n).second) queue.emplace_back(std::move(n), d + 1);
    }
  }
  out.names = sorted_unique(std::move(all));
  return out;
}

struct BudgetExceeded {};

template <class State>
class Checker {
 public:
  Checker(Lts<State> lts, std::size_t budget) : lts_(std::move(lts)), budget_(budget) {}

  const std::vector<State>& succ(const State& s) {
    auto it = succ_.find(s);
    if (it != succ_.end()) return it->second;
    if (succ_.size() >= budget_) throw BudgetExceeded{};
    return succ_.emplace(s, lts_.step(s)).first->second;
  }

  const NameSet& now(const State& s) {
    auto it = now_.find(s);
    if (it != now_.end()) return it->second;
    return now_.emplace(s, lts_.barbs(s)).first->second;
  }

  // Every state reachable from s, s included.
  const std::vector<State>& reach(const State& s) {
    auto it = reach_.find(s);
    if (it != reach_.end()) return it->second;
    std::set<State> seen{s};
    std::vector<State> order{s};
    for (std::size_t i = 0; i < order.size(); ++i) {
      for (const auto& n : succ(order[i])) {
        if (seen.insert(n).second) order.push_back(n);
      }
    }
    return reach_.emplace(s, std::move(order)).first->second;
  }

  const NameSet& weak(const State& s) {
    auto it = weak_.find(s);
    if (it != weak_.end()) return it->second;
    std::vector<Name> all;
    for (const auto& r : reach(s)) {
      const auto& b = now(r);
      all.insert(all.end(), b.begin(), b.end());
    }
    return weak_.emplace(s, sorted_unique(std::move(all))).first->second;
  }

  bool barbs_ok(const State& p, const State& q) {
    return subset(now(p), weak(q)) && subset(now(q), weak(p));
  }

  // A challenge `from -> to` that no weak reply of `partner` answers.
  std::optional<State> unanswered(const State& from, const State& partner, std::size_t k,
                                  bool from_left) {
    for (const auto& next : succ(from)) {
      bool answered = false;
      for (const auto& reply : reach(partner)) {
        if (from_left ? related(next, reply, k) : related(reply, next, k)) {
          answered = true;
          break;
        }
      }
      if (!answered) return next;
    }
    return std::nullopt;
  }

  bool related(const State& p, const State& q, std::size_t k) {
    auto key = std::make_tuple(p, q, k);
    auto it = memo_.find(key);
    if (it != memo_.end()) return it->second;
    bool ok = barbs_ok(p, q);
    if (ok && k > 0) ok = !unanswered(p, q, k - 1, true) && !unanswered(q, p, k - 1, false);
    memo_.emplace(key, ok);
    return ok;
  }

  void explain(State p, State q, std::size_t k, BisimResult& out) {
    for (;;) {
      if (!barbs_ok(p, q)) {
        for (const auto& [a, b, left] : {std::tuple{p, q, true}, std::tuple{q, p, false}}) {
          for (const auto& x : now(a)) {
            const auto& w = weak(b);
            if (!std::binary_search(w.begin(), w.end(), x)) {
              out.barb = to_string(x);
              out.barb_on_left = left;
              out.reason = std::string(left ? "left" : "right") + " shows barb " + out.barb +
                           " that " + (left ? "right" : "left") + " never reaches";
              return;
            }
          }
        }
      }
      if (auto next = unanswered(p, q, k - 1, true)) {
        out.moves.push_back({true, lts_.show(p), lts_.show(*next)});
        p = *next;
      } else if (auto next2 = unanswered(q, p, k - 1, false)) {
        out.moves.push_back({false, lts_.show(q), lts_.show(*next2)});
        q = *next2;
      } else {
        out.reason = "no failing challenge found";
        return;
      }
      --k;
    }
  }

 private:
  Lts<State> lts_;
  std::size_t budget_;
  std::map<State, std::vector<State>> succ_;
  std::map<State, NameSet> now_;
  std::map<State, std::vector<State>> reach_;
  std::map<State, NameSet> weak_;
  std::map<std::tuple<State, State, std::size_t>, bool> memo_;
};

template <class State>
BisimResult decide(Lts<State> lts, const State& a, const State& b, std::size_t depth,
                   std::size_t budget) {
  BisimResult out;
  out.depth = depth;
  Checker<State> checker(std::move(lts), budget);
  try {
    if (checker.related(a, b, depth)) {
      out.verdict = Verdict::bisimilar;
    } else {
      out.verdict = Verdict::distinguished;
      checker.explain(a, b, depth, out);
    }
  } catch (const BudgetExceeded&) {
    out = BisimResult{};
    out.verdict = Verdict::inconclusive;
    out.depth = depth;
    out.reason = "state budget exhausted";
  }
  return out;
}

}  // namespace

WeakBarbs weak_barbs(const Process& p, const NameSet& names, std::size_t bound,
                     std::size_t budget) {
  return weak_barbs_of(calc_lts(names), canon_process(p), bound, budget);
}

WeakBarbs comb_weak_barbs(const Term& c, const NameSet& names, std::size_t bound,
                          std::size_t budget) {
  return weak_barbs_of(comb_lts(names), comb_system().canonicalize(c), bound, budget);
}

std::string to_string(Verdict v) {
  switch (v) {
    case Verdict::bisimilar: return "bisimilar";
    case Verdict::distinguished: return "distinguished";
    case Verdict::inconclusive: return "inconclusive";
  }
  return "?";
}

std::string BisimResult::to_string() const {
  std::string s = rhosk::to_string(verdict) + " (depth " + std::to_string(depth) + ")";
  for (const auto& m : moves) {
    s += "\n  " + std::string(m.left ? "left" : "right") + ": " + m.from + " -> " + m.to;
  }
  if (!reason.empty()) s += "\n  " + reason;
  return s;
}

BisimResult bounded_bisim(const Process& a, const Process& b, const NameSet& names,
                          std::size_t depth, std::size_t budget) {
  return decide(calc_lts(names), canon_process(a), canon_process(b), depth, budget);
}

BisimResult comb_bounded_bisim(const Term& a, const Term& b, const NameSet& names,
                               std::size_t depth, std::size_t budget) {
  const auto& sys = comb_system();
  return decide(comb_lts(names), sys.canonicalize(a), sys.canonicalize(b), depth, budget);
}

FaithfulnessReport faithfulness_check(const Process& p, const Process& q, const NameSet& names,
                                      std::size_t depth, std::size_t budget) {
  FaithfulnessReport r;
  r.calc = bounded_bisim(p, q, names, depth, budget);
  r.comb = comb_bounded_bisim(wrap_context(interp(p)), wrap_context(interp(q)), names, depth,
                              budget);
  return r;
}

}  // namespace rhosk
