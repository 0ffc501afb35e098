#include "rhosk/rewrite.hpp"

#include <algorithm>
#include <set>
#include <sstream>

namespace rhosk {

std::string to_string(Strategy::Kind kind) {
  switch (kind) {
    case Strategy::Kind::first: return "first";
    case Strategy::Kind::all: return "all";
    case Strategy::Kind::random: return "random";
  }
  return "?";
}

std::optional<Strategy::Kind> parse_strategy_kind(const std::string& text) {
  if (text == "first") return Strategy::Kind::first;
  if (text == "all") return Strategy::Kind::all;
  if (text == "random") return Strategy::Kind::random;
  return std::nullopt;
}

std::string to_string(TraceStatus status) {
  switch (status) {
    case TraceStatus::normal_form: return "normal_form";
    case TraceStatus::fuel_exhausted: return "fuel_exhausted";
    case TraceStatus::target_reached: return "target_reached";
  }
  return "?";
}

std::string to_string(const Redex& r) {
  std::ostringstream os;
  os << r.rule << " at " << position_to_string(r.position);
  if (r.lift) os << " lift " << r.lift;
  os << ' ' << binding_to_string(r.binding);
  return os.str();
}

namespace {

bool find_var_path(const Pattern& p, const std::string& var, Position& path) {
  if (p.is_var()) return p.name() == var;
  for (std::size_t i = 0; i < p.arity(); ++i) {
    path.push_back(i);
    if (find_var_path(p.child(i), var, path)) return true;
    path.pop_back();
  }
  return false;
}

bool is_prefix(const Position& prefix, const Position& of) {
  return prefix.size() <= of.size() && std::equal(prefix.begin(), prefix.end(), of.begin());
}

// Syntactic match of a shape with two operand variables.
template <class Tree>
bool split_shape(const Pattern& shape, const Tree& t, const std::string& lv,
                 const std::string& rv, std::optional<Tree>& left, std::optional<Tree>& right) {
  if (shape.is_var()) {
    (shape.name() == lv ? left : right) = t;
    return true;
  }
  if constexpr (std::is_same_v<Tree, Pattern>) {
    if (t.is_var()) return false;
  }
  if (shape.name() != t.name() || shape.arity() != t.arity()) return false;
  for (std::size_t i = 0; i < shape.arity(); ++i) {
    if (!split_shape(shape.child(i), t.child(i), lv, rv, left, right)) return false;
  }
  return true;
}

Term fill_shape(const Pattern& shape, const std::string& lv, const Term& left, const Term& right) {
  if (shape.is_var()) return shape.name() == lv ? left : right;
  std::vector<Term> children;
  children.reserve(shape.arity());
  for (const auto& c : shape.children()) children.push_back(fill_shape(c, lv, left, right));
  return Term::make(shape.name(), std::move(children));
}

bool syntactic_match(const Pattern& p, const Term& t, Binding& b) {
  if (p.is_var()) {
    auto [it, inserted] = b.emplace(p.name(), t);
    return inserted || it->second == t;
  }
  if (p.name() != t.name() || p.arity() != t.arity()) return false;
  for (std::size_t i = 0; i < p.arity(); ++i) {
    if (!syntactic_match(p.child(i), t.child(i), b)) return false;
  }
  return true;
}

bool is_ground_equal(const Pattern& p, const Term& t) {
  if (p.is_var() || p.name() != t.name() || p.arity() != t.arity()) return false;
  for (std::size_t i = 0; i < p.arity(); ++i) {
    if (!is_ground_equal(p.child(i), t.child(i))) return false;
  }
  return true;
}

// Removes `sub` from the sorted multiset `from`; false when not included.
bool multiset_subtract(std::vector<Term>& from, const std::vector<Term>& sub) {
  for (const auto& s : sub) {
    auto it = std::find(from.begin(), from.end(), s);
    if (it == from.end()) return false;
    from.erase(it);
  }
  return true;
}

}  // namespace

RewriteSystem::RewriteSystem(Presentation presentation) : presentation_(std::move(presentation)) {
  for (const auto& g : presentation_.congruence.acu_groups) {
    auto vars = g.shape.variables();
    if (vars.size() != 2) throw std::invalid_argument("ACU shape needs two operand variables");
    Group group{g.shape, vars[0], vars[1], {}, {}, g.unit};
    find_var_path(g.shape, vars[0], group.left_path);
    find_var_path(g.shape, vars[1], group.right_path);
    groups_.push_back(std::move(group));
  }
  // Recognise equations F(G(x1..xn)) -> G(x1..F(xi)..xn): the marker F
  // distributes into argument i of G.
  for (const auto& eq : presentation_.congruence.oriented_equations) {
    const Pattern& l = eq.lhs;
    const Pattern& r = eq.rhs;
    if (l.is_var() || l.arity() != 1 || l.child(0).is_var()) continue;
    const Pattern& inner = l.child(0);
    if (r.is_var() || r.name() != inner.name() || r.arity() != inner.arity()) continue;
    std::optional<std::size_t> index;
    bool ok = true;
    for (std::size_t i = 0; i < inner.arity() && ok; ++i) {
      const Pattern& a = inner.child(i);
      const Pattern& b = r.child(i);
      if (!a.is_var()) {
        ok = false;
      } else if (b.is_var()) {
        ok = b.name() == a.name();
      } else if (b.name() == l.name() && b.arity() == 1 && b.child(0).is_var() &&
                 b.child(0).name() == a.name() && !index) {
        index = i;
      } else {
        ok = false;
      }
    }
    if (ok && index) distributions_.push_back({l.name(), inner.name(), inner.arity(), *index});
  }
  for (std::size_t i = 0; i < presentation_.rules.size(); ++i) {
    const RewriteRule& rule = presentation_.rules[i];
    CompiledRule cr{i, acu_group_of(rule.lhs), {}};
    if (cr.acu_top) cr.elements = pattern_elements(rule.lhs, *cr.acu_top);
    rules_.push_back(std::move(cr));
  }
}

std::optional<std::pair<Term, Term>> RewriteSystem::split(const Term& t, std::size_t group) const {
  const Group& g = groups_[group];
  std::optional<Term> l, r;
  if (!split_shape(g.shape, t, g.left_var, g.right_var, l, r)) return std::nullopt;
  return std::make_pair(*l, *r);
}

std::optional<std::pair<Pattern, Pattern>> RewriteSystem::split(const Pattern& p,
                                                                std::size_t group) const {
  const Group& g = groups_[group];
  std::optional<Pattern> l, r;
  if (!split_shape(g.shape, p, g.left_var, g.right_var, l, r)) return std::nullopt;
  return std::make_pair(*l, *r);
}

std::optional<std::size_t> RewriteSystem::acu_group_of(const Term& t) const {
  for (std::size_t g = 0; g < groups_.size(); ++g) {
    if (split(t, g)) return g;
  }
  return std::nullopt;
}

std::optional<std::size_t> RewriteSystem::acu_group_of(const Pattern& p) const {
  if (p.is_var()) return std::nullopt;
  for (std::size_t g = 0; g < groups_.size(); ++g) {
    if (split(p, g)) return g;
  }
  return std::nullopt;
}

std::vector<Term> RewriteSystem::acu_elements(const Term& t, std::size_t group) const {
  std::vector<Term> out;
  std::function<void(const Term&)> collect = [&](const Term& x) {
    if (auto parts = split(x, group)) {
      collect(parts->first);
      collect(parts->second);
    } else if (!(x == groups_[group].unit)) {
      out.push_back(x);
    }
  };
  collect(t);
  return out;
}

std::vector<Pattern> RewriteSystem::pattern_elements(const Pattern& p, std::size_t group) const {
  std::vector<Pattern> fixed, vars;
  std::function<void(const Pattern&)> collect = [&](const Pattern& x) {
    if (auto parts = split(x, group)) {
      collect(parts->first);
      collect(parts->second);
    } else if (x.is_var()) {
      vars.push_back(x);
    } else if (!is_ground_equal(x, groups_[group].unit)) {
      fixed.push_back(x);
    }
  };
  collect(p);
  fixed.insert(fixed.end(), vars.begin(), vars.end());
  return fixed;
}

Term RewriteSystem::assemble(std::size_t group, std::vector<Term> elements) const {
  const Group& g = groups_[group];
  if (elements.empty()) return g.unit;
  Term acc = elements.back();
  for (std::size_t i = elements.size() - 1; i-- > 0;) {
    acc = fill_shape(g.shape, g.left_var, elements[i], acc);
  }
  return acc;
}

Term RewriteSystem::canon_node(const std::string& name, std::vector<Term> children,
                               std::size_t& fuel) const {
  Term t = Term::make(name, std::move(children));
  if (auto g = acu_group_of(t)) {
    auto elements = acu_elements(t, *g);
    std::sort(elements.begin(), elements.end());
    t = assemble(*g, std::move(elements));
  }
  for (const auto& eq : presentation_.congruence.oriented_equations) {
    Binding b;
    if (!syntactic_match(eq.lhs, t, b)) continue;
    if (fuel == 0) throw FuelExhausted("oriented-equation normalisation exceeded its fuel cap");
    --fuel;
    return canon_instance(eq.rhs, b, fuel);
  }
  return t;
}

Term RewriteSystem::canon_rec(const Term& t, std::size_t& fuel) const {
  std::vector<Term> children;
  children.reserve(t.arity());
  for (const auto& c : t.children()) children.push_back(canon_rec(c, fuel));
  return canon_node(t.name(), std::move(children), fuel);
}

Term RewriteSystem::canon_instance(const Pattern& p, const Binding& b, std::size_t& fuel) const {
  if (p.is_var()) return b.at(p.name());
  std::vector<Term> children;
  children.reserve(p.arity());
  for (const auto& c : p.children()) children.push_back(canon_instance(c, b, fuel));
  return canon_node(p.name(), std::move(children), fuel);
}

Term RewriteSystem::canonicalize(const Term& t) const {
  std::size_t fuel = presentation_.congruence.fuel;
  return canon_rec(t, fuel);
}

bool RewriteSystem::congruent(const Term& a, const Term& b) const {
  return canonicalize(a) == canonicalize(b);
}

std::optional<Term> RewriteSystem::pull(const Term& t, const Distribution& d) const {
  if (t.name() == d.marker && t.arity() == 1) return t.child(0);
  if (t.name() != d.inner || t.arity() != d.inner_arity) return std::nullopt;
  auto inner = pull(t.child(d.index), d);
  if (!inner) return std::nullopt;
  std::vector<Term> children(t.children().begin(), t.children().end());
  children[d.index] = *inner;
  return Term::make(t.name(), std::move(children));
}

std::optional<Term> RewriteSystem::pull_marker(const Term& t, const std::string& marker) const {
  for (const auto& d : distributions_) {
    if (d.marker != marker) continue;
    if (auto u = pull(t, d)) return u;
  }
  return std::nullopt;
}

bool RewriteSystem::match_rec(const Pattern& p, const Term& t, Binding& b,
                              const Continuation& k) const {
  if (p.is_var()) {
    if (auto it = b.find(p.name()); it != b.end()) return it->second == t && k(b);
    b.emplace(p.name(), t);
    bool stop = k(b);
    b.erase(p.name());
    return stop;
  }
  if (auto g = acu_group_of(p)) {
    auto pats = pattern_elements(p, *g);
    auto elems = acu_elements(t, *g);
    std::vector<bool> used(elems.size(), false);
    return match_multiset(pats, 0, elems, used, b, false, *g, k);
  }
  if (p.name() != t.name() || p.arity() != t.arity()) return false;
  return match_children(p, t, 0, b, k);
}

bool RewriteSystem::match_children(const Pattern& p, const Term& t, std::size_t i, Binding& b,
                                   const Continuation& k) const {
  if (i == p.arity()) return k(b);
  return match_rec(p.child(i), t.child(i), b,
                   [&](Binding& inner) { return match_children(p, t, i + 1, inner, k); });
}

bool RewriteSystem::match_multiset(const std::vector<Pattern>& pats, std::size_t pi,
                                   const std::vector<Term>& elems, std::vector<bool>& used,
                                   Binding& b, bool extension, std::size_t group,
                                   const Continuation& k) const {
  if (pi == pats.size()) {
    if (!extension && std::find(used.begin(), used.end(), false) != used.end()) return false;
    return k(b);
  }
  auto next = [&](Binding& inner) {
    return match_multiset(pats, pi + 1, elems, used, inner, extension, group, k);
  };
  const Pattern& q = pats[pi];
  if (!q.is_var()) {
    for (std::size_t j = 0; j < elems.size(); ++j) {
      if (used[j]) continue;
      // Equal elements are interchangeable; try only the first unused one.
      bool duplicate = false;
      for (std::size_t i = j; i-- > 0 && elems[i] == elems[j];) {
        if (!used[i]) duplicate = true;
      }
      if (duplicate) continue;
      used[j] = true;
      bool stop = match_rec(q, elems[j], b, next);
      used[j] = false;
      if (stop) return true;
    }
    return false;
  }
  if (auto it = b.find(q.name()); it != b.end()) {
    std::vector<std::size_t> taken;
    for (const auto& v : acu_elements(it->second, group)) {
      bool found = false;
      for (std::size_t j = 0; j < elems.size(); ++j) {
        if (!used[j] && elems[j] == v) {
          used[j] = true;
          taken.push_back(j);
          found = true;
          break;
        }
      }
      if (!found) {
        for (auto j : taken) used[j] = false;
        return false;
      }
    }
    bool stop = next(b);
    for (auto j : taken) used[j] = false;
    return stop;
  }
  std::vector<std::size_t> free;
  for (std::size_t j = 0; j < elems.size(); ++j) {
    if (!used[j]) free.push_back(j);
  }
  auto bind_subset = [&](const std::vector<std::size_t>& chosen) {
    std::vector<Term> parts;
    for (auto j : chosen) {
      parts.push_back(elems[j]);
      used[j] = true;
    }
    b.emplace(q.name(), assemble(group, parts));
    bool stop = next(b);
    b.erase(q.name());
    for (auto j : chosen) used[j] = false;
    return stop;
  };
  if (pi + 1 == pats.size() && !extension) return bind_subset(free);
  if (free.size() > 20) throw std::length_error("ACU variable matching over too many elements");
  std::set<std::vector<Term>> tried;
  for (std::size_t mask = 0; mask < (std::size_t{1} << free.size()); ++mask) {
    std::vector<std::size_t> chosen;
    std::vector<Term> key;
    for (std::size_t i = 0; i < free.size(); ++i) {
      if (mask & (std::size_t{1} << i)) {
        chosen.push_back(free[i]);
        key.push_back(elems[free[i]]);
      }
    }
    if (!tried.insert(key).second) continue;
    if (bind_subset(chosen)) return true;
  }
  return false;
}

std::vector<Binding> RewriteSystem::match_all(const Pattern& pattern, const Term& t) const {
  std::set<Binding> seen;
  std::vector<Binding> out;
  Binding b;
  match_rec(pattern, t, b, [&](Binding& found) {
    if (seen.insert(found).second) out.push_back(found);
    return false;
  });
  return out;
}

std::optional<Binding> RewriteSystem::match(const Pattern& pattern, const Term& t) const {
  std::optional<Binding> out;
  Binding b;
  match_rec(pattern, t, b, [&](Binding& found) {
    out = found;
    return true;
  });
  return out;
}

namespace {

struct Site {
  Position position;
  const Term* term;
  bool chain_member;  // element or tail of an enclosing operator chain
  std::size_t chain_group;
};

}  // namespace

std::vector<Redex> RewriteSystem::find_redexes(const Term& t) const {
  // Sites in pre-order, tagged with their role inside operator chains so an
  // ACU-headed rule is tried once per chain (at its head).
  std::vector<Site> sites;
  struct Tracking {
    std::size_t group;
    Position rel;
  };
  std::function<void(const Term&, Position&, bool, std::size_t, const std::vector<Tracking>&)>
      walk = [&](const Term& x, Position& pos, bool member, std::size_t mgroup,
                 const std::vector<Tracking>& tracking) {
        sites.push_back({pos, &x, member, mgroup});
        std::vector<Tracking> own = tracking;
        if (auto g = acu_group_of(x)) own.push_back({*g, {}});
        for (std::size_t i = 0; i < x.arity(); ++i) {
          bool child_member = false;
          std::size_t child_group = 0;
          std::vector<Tracking> child_tracking;
          for (const auto& tr : own) {
            Position rel = tr.rel;
            rel.push_back(i);
            const Group& g = groups_[tr.group];
            if (rel == g.left_path || rel == g.right_path) {
              child_member = true;
              child_group = tr.group;
            } else if (is_prefix(rel, g.left_path) || is_prefix(rel, g.right_path)) {
              child_tracking.push_back({tr.group, rel});
            }
          }
          pos.push_back(i);
          walk(x.child(i), pos, child_member, child_group, child_tracking);
          pos.pop_back();
        }
      };
  Position root;
  walk(t, root, false, 0, {});

  std::vector<Redex> out;
  for (const auto& cr : rules_) {
    for (const auto& site : sites) {
      if (cr.acu_top && site.chain_member && site.chain_group == *cr.acu_top) continue;
      Term view = *site.term;
      for (std::size_t lift = 0;; ++lift) {
        std::set<Binding> found;
        Binding b;
        auto record = [&](Binding& m) {
          if (found.insert(m).second) out.push_back({presentation_.rules[cr.rule_index].name, site.position, m, lift});
          return false;
        };
        if (cr.acu_top) {
          auto elems = acu_elements(view, *cr.acu_top);
          std::vector<bool> used(elems.size(), false);
          match_multiset(cr.elements, 0, elems, used, b, true, *cr.acu_top, record);
        } else {
          match_rec(presentation_.rules[cr.rule_index].lhs, view, b, record);
        }
        std::optional<Term> pulled;
        for (const auto& d : distributions_) {
          if ((pulled = pull(view, d))) break;
        }
        if (!pulled) break;
        view = *pulled;
      }
    }
  }
  return out;
}

Term RewriteSystem::rebuild(const Term& t, std::span<const std::size_t> pos,
                            const Term& replacement, std::size_t& fuel) const {
  if (pos.empty()) return replacement;
  std::vector<Term> children(t.children().begin(), t.children().end());
  children[pos.front()] = rebuild(children[pos.front()], pos.subspan(1), replacement, fuel);
  return canon_node(t.name(), std::move(children), fuel);
}

Term RewriteSystem::apply(const Term& t, const Redex& r) const {
  const CompiledRule* cr = nullptr;
  for (const auto& c : rules_) {
    if (presentation_.rules[c.rule_index].name == r.rule) cr = &c;
  }
  if (!cr) throw InvalidRedex("unknown rule " + r.rule);
  Term view;
  try {
    view = subterm_at(t, r.position);
  } catch (const std::out_of_range&) {
    throw InvalidRedex("position " + position_to_string(r.position) + " is outside the term");
  }
  std::vector<std::string> markers;
  for (std::size_t i = 0; i < r.lift; ++i) {
    std::optional<Term> pulled;
    for (const auto& d : distributions_) {
      if ((pulled = pull(view, d))) {
        markers.push_back(d.marker);
        break;
      }
    }
    if (!pulled) throw InvalidRedex("cannot lift a context marker at the redex position");
    view = *pulled;
  }
  std::size_t fuel = presentation_.congruence.fuel;
  Term replacement;
  try {
    Term lhs = canon_instance(presentation_.rules[cr->rule_index].lhs, r.binding, fuel);
    Term rhs = canon_instance(presentation_.rules[cr->rule_index].rhs, r.binding, fuel);
    if (cr->acu_top) {
      std::size_t g = *cr->acu_top;
      auto rest = acu_elements(view, g);
      if (!multiset_subtract(rest, acu_elements(lhs, g))) {
        throw InvalidRedex("rule " + r.rule + " does not match at the redex position");
      }
      if (rest.empty()) {
        replacement = rhs;
      } else {
        Term op = fill_shape(groups_[g].shape, groups_[g].left_var, rhs, assemble(g, rest));
        replacement = canon_node(op.name(), {op.children().begin(), op.children().end()}, fuel);
      }
    } else {
      if (!(lhs == view)) {
        throw InvalidRedex("rule " + r.rule + " does not match at the redex position");
      }
      replacement = rhs;
    }
  } catch (const std::out_of_range&) {
    throw InvalidRedex("binding does not cover the metavariables of rule " + r.rule);
  }
  for (auto it = markers.rbegin(); it != markers.rend(); ++it) {
    replacement = canon_node(*it, {replacement}, fuel);
  }
  return rebuild(t, r.position, replacement, fuel);
}

std::vector<std::pair<Redex, Term>> RewriteSystem::successors(const Term& t) const {
  std::vector<std::pair<Redex, Term>> out;
  for (auto& r : find_redexes(t)) {
    Term result = apply(t, r);
    out.emplace_back(std::move(r), std::move(result));
  }
  return out;
}

std::vector<Term> RewriteSystem::step(const Term& t) const {
  std::vector<Term> out;
  for (auto& [r, result] : successors(t)) {
    if (std::find(out.begin(), out.end(), result) == out.end()) out.push_back(result);
  }
  return out;
}

bool RewriteSystem::is_normal(const Term& t) const { return find_redexes(t).empty(); }

Trace RewriteSystem::reduce(const Term& t, Strategy strategy, std::size_t fuel) const {
  return run_strategy<Term, Redex, TermHash>(canonicalize(t), strategy, fuel,
                                             [this](const Term& s) { return successors(s); });
}

Trace RewriteSystem::reduce_to(const Term& t, const Term& target, std::size_t fuel,
                               std::size_t budget) const {
  return search_target<Term, Redex, TermHash>(
      canonicalize(t), canonicalize(target), fuel,
      [this](const Term& s) { return successors(s); }, budget);
}

Term canonicalize(const Presentation& p, const Term& t) { return RewriteSystem(p).canonicalize(t); }
bool congruent(const Presentation& p, const Term& a, const Term& b) {
  return RewriteSystem(p).congruent(a, b);
}
std::optional<Binding> match_pattern(const Presentation& p, const Pattern& pat, const Term& t) {
  return RewriteSystem(p).match(pat, t);
}
std::vector<Redex> find_redexes(const Presentation& p, const Term& t) {
  return RewriteSystem(p).find_redexes(t);
}
Term apply_redex(const Presentation& p, const Term& t, const Redex& r) {
  return RewriteSystem(p).apply(t, r);
}
std::vector<Term> step(const Presentation& p, const Term& t) { return RewriteSystem(p).step(t); }
Trace reduce(const Presentation& p, const Term& t, Strategy strategy, std::size_t fuel) {
  return RewriteSystem(p).reduce(t, strategy, fuel);
}
bool is_normal(const Presentation& p, const Term& t) { return RewriteSystem(p).is_normal(t); }

}  // namespace rhosk
