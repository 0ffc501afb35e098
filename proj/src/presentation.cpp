#include "rhosk/presentation.hpp"

#include <algorithm>
#include <map>
#include <set>

#include "rhosk/rewrite.hpp"

namespace rhosk {

const ConstructorDecl* Presentation::find_constructor(const std::string& name) const {
  for (const auto& c : constructors) {
    if (c.name == name) return &c;
  }
  return nullptr;
}

const RewriteRule* Presentation::find_rule(const std::string& name) const {
  for (const auto& r : rules) {
    if (r.name == name) return &r;
  }
  return nullptr;
}

Presentation Presentation::restricted_to(const std::vector<std::string>& rule_names) const {
  Presentation out = *this;
  out.rules.clear();
  for (const auto& r : rules) {
    if (std::find(rule_names.begin(), rule_names.end(), r.name) != rule_names.end()) {
      out.rules.push_back(r);
    }
  }
  return out;
}

std::optional<std::string> term_sort(const Presentation& p, const Term& t) {
  const ConstructorDecl* decl = p.find_constructor(t.name());
  if (!decl || decl->arity() != t.arity()) return std::nullopt;
  for (std::size_t i = 0; i < t.arity(); ++i) {
    auto s = term_sort(p, t.child(i));
    if (!s || *s != decl->argument_sorts[i]) return std::nullopt;
  }
  return decl->result_sort;
}

namespace {

class Validator {
 public:
  explicit Validator(const Presentation& p) : p_(p) {
    for (const auto& s : p.sorts) sorts_.insert(s.name);
  }

  // Sort of a pattern; records defects under `where` and returns nullopt when
  // it is ill-formed.
  std::optional<std::string> pattern_sort(const Pattern& pat, const std::string& where,
                                          std::map<std::string, std::string>& var_sorts) {
    if (pat.is_var()) {
      auto [it, inserted] = var_sorts.emplace(pat.name(), pat.sort());
      if (!inserted && it->second != pat.sort()) {
        defect(where + ": metavariable " + pat.name() + " used at two sorts");
        return std::nullopt;
      }
      if (!sorts_.contains(pat.sort())) {
        defect(where + ": metavariable " + pat.name() + " has unknown sort " + pat.sort());
        return std::nullopt;
      }
      return pat.sort();
    }
    const ConstructorDecl* decl = p_.find_constructor(pat.name());
    if (!decl) {
      defect(where + ": unknown constructor " + pat.name());
      return std::nullopt;
    }
    if (decl->arity() != pat.arity()) {
      defect(where + ": arity mismatch for " + pat.name() + " (expected " +
             std::to_string(decl->arity()) + ", got " + std::to_string(pat.arity()) + ")");
      return std::nullopt;
    }
    bool ok = true;
    for (std::size_t i = 0; i < pat.arity(); ++i) {
      auto s = pattern_sort(pat.child(i), where, var_sorts);
      if (!s) {
        ok = false;
      } else if (*s != decl->argument_sorts[i]) {
        defect(where + ": sort mismatch in argument " + std::to_string(i) + " of " + pat.name() +
               " (expected " + decl->argument_sorts[i] + ", got " + *s + ")");
        ok = false;
      }
    }
    if (!ok) return std::nullopt;
    return decl->result_sort;
  }

  void check_pair(const Pattern& lhs, const Pattern& rhs, const std::string& where) {
    std::map<std::string, std::string> vars;
    auto ls = pattern_sort(lhs, where + " lhs", vars);
    auto rs = pattern_sort(rhs, where + " rhs", vars);
    auto lhs_vars = lhs.variables();
    for (const auto& v : rhs.variables()) {
      if (std::find(lhs_vars.begin(), lhs_vars.end(), v) == lhs_vars.end()) {
        defect(where + ": unbound metavariable " + v);
      }
    }
    if (ls && rs && *ls != *rs) {
      defect(where + ": not sort-preserving (" + *ls + " vs " + *rs + ")");
    }
  }

  void defect(std::string text) { report.defects.push_back(std::move(text)); }

  ValidationReport report;

 private:
  const Presentation& p_;
  std::set<std::string> sorts_;
};

Term witness_instance(const Presentation& p, const Pattern& pat) {
  if (pat.is_var()) {
    for (const auto& c : p.constructors) {
      if (c.arity() == 0 && c.result_sort == pat.sort()) return Term::make(c.name);
    }
    return Term::make("#" + pat.sort());
  }
  std::vector<Term> children;
  for (const auto& c : pat.children()) children.push_back(witness_instance(p, c));
  return Term::make(pat.name(), std::move(children));
}

}  // namespace

ValidationReport validate_presentation(const Presentation& p) {
  Validator v(p);
  std::set<std::string> names;
  for (const auto& s : p.sorts) {
    if (!names.insert(s.name).second) v.defect("duplicate sort " + s.name);
  }
  std::set<std::string> sort_names = names;
  names.clear();
  for (const auto& c : p.constructors) {
    if (!names.insert(c.name).second) v.defect("duplicate constructor " + c.name);
    for (const auto& s : c.argument_sorts) {
      if (!sort_names.contains(s)) v.defect("constructor " + c.name + ": unknown sort " + s);
    }
    if (!sort_names.contains(c.result_sort)) {
      v.defect("constructor " + c.name + ": unknown sort " + c.result_sort);
    }
  }
  names.clear();
  for (const auto& r : p.rules) {
    if (!names.insert(r.name).second) v.defect("duplicate rule " + r.name);
    if (r.lhs.is_var()) v.defect("rule " + r.name + ": lhs is a bare metavariable");
    v.check_pair(r.lhs, r.rhs, "rule " + r.name);
  }
  for (std::size_t i = 0; i < p.congruence.acu_groups.size(); ++i) {
    const auto& g = p.congruence.acu_groups[i];
    std::string where = "ACU group " + std::to_string(i);
    if (!g.associative || !g.commutative) {
      v.defect(where + ": only associative-commutative groups are supported");
    }
    auto vars = g.shape.variables();
    if (vars.size() != 2) {
      v.defect(where + ": shape must have exactly two operand metavariables");
      continue;
    }
    std::map<std::string, std::string> var_sorts;
    auto shape_sort = v.pattern_sort(g.shape, where + " shape", var_sorts);
    auto unit_sort = term_sort(p, g.unit);
    if (!unit_sort) v.defect(where + ": unit is not sort-correct");
    if (shape_sort) {
      for (const auto& var : vars) {
        if (var_sorts[var] != *shape_sort) v.defect(where + ": operand sort differs from result");
      }
      if (unit_sort && *unit_sort != *shape_sort) v.defect(where + ": unit sort differs");
    }
  }
  for (std::size_t i = 0; i < p.congruence.oriented_equations.size(); ++i) {
    const auto& eq = p.congruence.oriented_equations[i];
    v.check_pair(eq.lhs, eq.rhs, "equation " + std::to_string(i));
  }
  // Termination at desk scale: normalise a witness instance of each
  // equation's lhs under the fuel cap.
  if (v.report.ok() && !p.congruence.oriented_equations.empty()) {
    try {
      RewriteSystem system(p);
      for (std::size_t i = 0; i < p.congruence.oriented_equations.size(); ++i) {
        const auto& eq = p.congruence.oriented_equations[i];
        try {
          system.canonicalize(witness_instance(p, eq.lhs));
        } catch (const FuelExhausted&) {
          v.defect("equation " + std::to_string(i) + ": normalisation does not terminate");
        }
      }
    } catch (const std::exception& e) {
      v.defect(e.what());
    }
  }
  return v.report;
}

}  // namespace rhosk
