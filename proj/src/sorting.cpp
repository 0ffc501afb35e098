#include "rhosk/sorting.hpp"

#include <map>

namespace rhosk {

SortExpr SortExpr::W() {
  static const SortExpr w(std::make_shared<const Node>(Node{Kind::w, {}, {}}));
  return w;
}

SortExpr SortExpr::N() {
  static const SortExpr n(std::make_shared<const Node>(Node{Kind::n, {}, {}}));
  return n;
}

SortExpr SortExpr::arrow(SortExpr from, SortExpr to) {
  return SortExpr(
      std::make_shared<const Node>(Node{Kind::arrow, {}, {std::move(from), std::move(to)}}));
}

SortExpr SortExpr::var(std::string id) {
  return SortExpr(std::make_shared<const Node>(Node{Kind::var, std::move(id), {}}));
}

bool operator==(const SortExpr& a, const SortExpr& b) {
  if (a.node_ == b.node_) return true;
  if (a.kind() != b.kind()) return false;
  switch (a.kind()) {
    case SortExpr::Kind::var: return a.id() == b.id();
    case SortExpr::Kind::arrow: return a.from() == b.from() && a.to() == b.to();
    default: return true;
  }
}

std::string SortExpr::to_string() const {
  switch (kind()) {
    case Kind::w: return "W";
    case Kind::n: return "N";
    case Kind::var: return id();
    case Kind::arrow: {
      std::string l = from().to_string();
      if (from().kind() == Kind::arrow) l = "(" + l + ")";
      return l + " => " + to().to_string();
    }
  }
  return "?";
}

std::optional<SortScheme> constant_scheme(const std::string& name) {
  using S = SortExpr;
  auto W = S::W();
  auto N = S::N();
  auto X = S::var("X"), Y = S::var("Y"), Z = S::var("Z");
  if (name == "C" || name == "0") return SortScheme{{}, W};
  if (name == "|") return SortScheme{{}, S::arrow(W, S::arrow(W, W))};
  if (name == "for") return SortScheme{{}, S::arrow(N, S::arrow(S::arrow(N, W), W))};
  if (name == "!") return SortScheme{{}, S::arrow(N, S::arrow(W, W))};
  if (name == "&") return SortScheme{{}, S::arrow(W, N)};
  if (name == "*") return SortScheme{{}, S::arrow(N, W)};
  if (name == "S") {
    return SortScheme{{"X", "Y", "Z"},
                      S::arrow(S::arrow(Z, S::arrow(Y, X)),
                               S::arrow(S::arrow(Z, Y), S::arrow(Z, X)))};
  }
  if (name == "K") return SortScheme{{"X", "Y"}, S::arrow(X, S::arrow(Y, X))};
  if (name == "I") return SortScheme{{"X"}, S::arrow(X, X)};
  if (name.size() > 1 && name[0] == '$') return SortScheme{{}, N};
  return std::nullopt;
}

namespace {

class Inference {
 public:
  SortExpr fresh() { return SortExpr::var("_" + std::to_string(next_++)); }

  SortExpr resolve(const SortExpr& s) const {
    if (s.kind() == SortExpr::Kind::var) {
      auto it = bound_.find(s.id());
      return it == bound_.end() ? s : resolve(it->second);
    }
    if (s.kind() == SortExpr::Kind::arrow) return SortExpr::arrow(resolve(s.from()), resolve(s.to()));
    return s;
  }

  bool occurs(const std::string& id, const SortExpr& s) const {
    SortExpr r = resolve(s);
    if (r.kind() == SortExpr::Kind::var) return r.id() == id;
    if (r.kind() == SortExpr::Kind::arrow) return occurs(id, r.from()) || occurs(id, r.to());
    return false;
  }

  bool unify(const SortExpr& a0, const SortExpr& b0) {
    SortExpr a = resolve(a0), b = resolve(b0);
    if (a.kind() == SortExpr::Kind::var) {
      if (b.kind() == SortExpr::Kind::var && b.id() == a.id()) return true;
      if (occurs(a.id(), b)) return false;
      bound_.emplace(a.id(), b);
      return true;
    }
    if (b.kind() == SortExpr::Kind::var) return unify(b, a);
    if (a.kind() != b.kind()) return false;
    if (a.kind() == SortExpr::Kind::arrow) return unify(a.from(), b.from()) && unify(a.to(), b.to());
    return true;
  }

  std::optional<SortExpr> infer(const Term& t) {
    if (t.is_apply()) {
      auto f = infer(t.child(0));
      if (!f) return std::nullopt;
      auto a = infer(t.child(1));
      if (!a) return std::nullopt;
      SortExpr result = fresh();
      if (!unify(*f, SortExpr::arrow(*a, result))) return std::nullopt;
      return result;
    }
    if (!t.is_leaf()) return std::nullopt;
    auto scheme = constant_scheme(t.name());
    if (!scheme) return std::nullopt;
    std::map<std::string, SortExpr> inst;
    for (const auto& q : scheme->quantified) inst.emplace(q, fresh());
    return instantiate(scheme->body, inst);
  }

 private:
  static SortExpr instantiate(const SortExpr& s, const std::map<std::string, SortExpr>& inst) {
    if (s.kind() == SortExpr::Kind::var) {
      auto it = inst.find(s.id());
      return it == inst.end() ? s : it->second;
    }
    if (s.kind() == SortExpr::Kind::arrow) {
      return SortExpr::arrow(instantiate(s.from(), inst), instantiate(s.to(), inst));
    }
    return s;
  }

  std::map<std::string, SortExpr> bound_;
  std::size_t next_ = 0;
};

SortExpr rename_vars(const SortExpr& s, std::map<std::string, std::string>& names) {
  if (s.kind() == SortExpr::Kind::var) {
    auto [it, inserted] = names.emplace(s.id(), "X" + std::to_string(names.size()));
    return SortExpr::var(it->second);
  }
  if (s.kind() == SortExpr::Kind::arrow) {
    SortExpr from = rename_vars(s.from(), names);
    return SortExpr::arrow(from, rename_vars(s.to(), names));
  }
  return s;
}

}  // namespace

std::optional<SortExpr> sort_infer(const Term& c) {
  Inference inf;
  auto s = inf.infer(c);
  if (!s) return std::nullopt;
  std::map<std::string, std::string> names;
  return rename_vars(inf.resolve(*s), names);
}

}  // namespace rhosk
