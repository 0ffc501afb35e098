#include "rhosk/comb.hpp"

#include <algorithm>
#include <functional>
#include <tuple>

#include "rhosk/sorting.hpp"

namespace rhosk {

namespace {

Pattern pv(const char* name) { return Pattern::var(name); }
Pattern pc(const char* name) { return Pattern::node(name); }
Pattern pa(Pattern f, Pattern a) { return Pattern::apply(std::move(f), std::move(a)); }
Pattern ppar(Pattern l, Pattern r) { return pa(pa(pc("|"), std::move(l)), std::move(r)); }

Term leaf(const char* name) { return Term::make(name); }
Term app(Term f, Term a) { return Term::apply(std::move(f), std::move(a)); }
Term app(Term f, Term a, Term b) { return app(app(std::move(f), std::move(a)), std::move(b)); }

}  // namespace

Presentation comb_presentation() {
  Presentation p;
  p.sorts = {{"T"}};
  for (const char* c : {"C", "0", "|", "for", "!", "&", "*", "S", "K", "I"}) {
    p.constructors.push_back({c, {}, "T"});
  }
  p.constructors.push_back({std::string(kApply), {"T", "T"}, "T"});
  p.congruence.acu_groups = {{ppar(pv("x"), pv("y")), leaf("0")}};
  p.rules = {
      {"sigma", pa(pa(pa(pc("S"), pv("P")), pv("Q")), pv("R")),
       pa(pa(pv("P"), pv("R")), pa(pv("Q"), pv("R")))},
      {"kappa", pa(pa(pc("K"), pv("P")), pv("Q")), pv("P")},
      {"iota", pa(pc("I"), pv("P")), pv("P")},
      {"xi",
       ppar(pc("C"), ppar(pa(pa(pc("for"), pa(pc("&"), pv("P"))), pv("Q")),
                          pa(pa(pc("!"), pa(pc("&"), pv("P"))), pv("R")))),
       ppar(pc("C"), pa(pv("Q"), pa(pc("&"), pv("R"))))},
      {"epsilon", ppar(pc("C"), pa(pc("*"), pa(pc("&"), pv("P")))), ppar(pc("C"), pv("P"))},
  };
  return p;
}

const RewriteSystem& comb_system() {
  static const RewriteSystem sys(comb_presentation());
  return sys;
}

const RewriteSystem& comb_admin_system() {
  static const RewriteSystem sys(
      comb_presentation().restricted_to({"sigma", "kappa", "iota", "epsilon"}));
  return sys;
}

const RewriteSystem& comb_ski_system() {
  static const RewriteSystem sys(comb_presentation().restricted_to({"sigma", "kappa", "iota"}));
  return sys;
}

Term name_token(const std::string& id) { return Term::make("$" + id); }

bool is_name_token(const Term& t) {
  return t.is_leaf() && t.name().size() > 1 && t.name()[0] == '$';
}

bool contains_leaf(const Term& t, const std::string& name) {
  if (t.is_leaf()) return t.name() == name;
  for (const auto& c : t.children()) {
    if (contains_leaf(c, name)) return true;
  }
  return false;
}

bool contains_name_tokens(const Term& t) {
  if (is_name_token(t)) return true;
  for (const auto& c : t.children()) {
    if (contains_name_tokens(c)) return true;
  }
  return false;
}

namespace {

Term elim(const std::string& token, const Term& c) {
  if (!contains_leaf(c, token)) return app(leaf("K"), c);
  if (c.is_leaf()) return leaf("I");
  if (!c.is_apply()) throw std::logic_error("abstract_elim: unexpected constructor " + c.name());
  return app(leaf("S"), elim(token, c.child(0)), elim(token, c.child(1)));
}

Term translate(const Process& p);

Term translate_name(const Name& n) {
  if (n.is_var()) return name_token(n.id());
  return app(leaf("&"), translate(n.process()));
}

Term translate(const Process& p) {
  switch (p.kind()) {
    case Process::Kind::zero: return leaf("0");
    case Process::Kind::input:
      return app(leaf("for"), translate_name(p.subject()),
                 elim("$" + p.binder().id(), translate(p.body())));
    case Process::Kind::output:
      return app(leaf("!"), translate_name(p.subject()), translate(p.body()));
    case Process::Kind::par: return app(leaf("|"), translate(p.left()), translate(p.right()));
    case Process::Kind::deref: return app(leaf("*"), translate_name(p.name()));
  }
  return leaf("0");
}

}  // namespace

Term abstract_elim(const std::string& x, const Term& c) { return elim("$" + x, c); }

Term interp(const Process& p) { return comb_system().canonicalize(translate(canon_process(p))); }

Term interp_name(const Name& n) {
  return comb_system().canonicalize(translate_name(canon_name(n)));
}

Process fresh_process(std::size_t i) {
  Process r;
  for (std::size_t k = 0; k < i; ++k) r = Process::output(Name::quote(r), Process::zero());
  return r;
}

namespace {

constexpr const char* kSymbolic = "%v";

class Back {
 public:
  explicit Back(std::size_t fuel) : fuel_(fuel) {}

  Process process(const Term& t0) {
    auto [head, args] = spine(head_normal(t0));
    const std::string& h = head.name();
    if (h == "0" && args.empty()) return Process::zero();
    if (h == "|" && args.size() == 2) return Process::par(process(args[0]), process(args[1]));
    if (h == "!" && args.size() == 2) return Process::output(name(args[0]), process(args[1]));
    if (h == "*" && args.size() == 1) return Process::deref(name(args[0]));
    if (h == "for" && args.size() == 2) {
      Name subject = name(args[0]);
      std::string v = kSymbolic + std::to_string(next_++);
      Process body = process(app(args[1], name_token(v)));
      return Process::input(subject, Name::var(v), body);
    }
    throw BackinterpError("not a process combinator: " + t0.to_string());
  }

  Name name(const Term& t0) {
    auto [head, args] = spine(head_normal(t0));
    if (head.name() == "&" && args.size() == 1) return Name::quote(process(args[0]));
    if (is_name_token(head) && args.empty()) return Name::var(head.name().substr(1));
    throw BackinterpError("not a name combinator: " + t0.to_string());
  }

 private:
  static std::pair<Term, std::vector<Term>> spine(Term t) {
    std::vector<Term> args;
    while (t.is_apply()) {
      args.push_back(t.child(1));
      t = t.child(0);
    }
    std::reverse(args.begin(), args.end());
    return {t, args};
  }

  Term head_normal(Term t) {
    for (;;) {
      auto [head, args] = spine(t);
      std::size_t used;
      Term r;
      if (head.name() == "S" && args.size() >= 3) {
        r = app(app(args[0], args[2]), app(args[1], args[2]));
        used = 3;
      } else if (head.name() == "K" && args.size() >= 2) {
        r = args[0];
        used = 2;
      } else if (head.name() == "I" && !args.empty()) {
        r = args[0];
        used = 1;
      } else {
        return t;
      }
      if (fuel_ == 0) throw FuelExhausted("backinterp: head reduction fuel exhausted");
      --fuel_;
      for (std::size_t i = used; i < args.size(); ++i) r = app(r, args[i]);
      t = r;
    }
  }

  std::size_t fuel_;
  std::size_t next_ = 0;
};

Name replace_var_name(const Name& n, const std::string& id, const Name& by);

Process replace_var(const Process& p, const std::string& id, const Name& by) {
  switch (p.kind()) {
    case Process::Kind::zero: return p;
    case Process::Kind::input:
      return Process::input(replace_var_name(p.subject(), id, by), p.binder(),
                            replace_var(p.body(), id, by));
    case Process::Kind::output:
      return Process::output(replace_var_name(p.subject(), id, by), replace_var(p.body(), id, by));
    case Process::Kind::par:
      return Process::par(replace_var(p.left(), id, by), replace_var(p.right(), id, by));
    case Process::Kind::deref: return Process::deref(replace_var_name(p.name(), id, by));
  }
  return p;
}

Name replace_var_name(const Name& n, const std::string& id, const Name& by) {
  if (n.is_var()) return n.id() == id ? by : n;
  return Name::quote(replace_var(n.process(), id, by));
}

bool is_symbolic(const Name& n) { return n.is_var() && n.id().rfind(kSymbolic, 0) == 0; }

// Replaces symbolic binders by quotes of the fresh family, outermost first.
// A candidate is accepted only if it leaves the canonical form of the whole
// process unchanged, so no name is captured by the new binder or by an
// enclosing one.
class Finalizer {
 public:
  using Wrap = std::function<Process(const Process&)>;
  using WrapName = std::function<Process(const Name&)>;

  explicit Finalizer(const Process& p) : target_(canon_process(p)) {}

  Process run(const Process& p, const Wrap& wrap) {
    switch (p.kind()) {
      case Process::Kind::zero: return p;
      case Process::Kind::par: {
        Process l = run(p.left(), [&](const Process& x) { return wrap(Process::par(x, p.right())); });
        Process r = run(p.right(), [&](const Process& x) { return wrap(Process::par(l, x)); });
        return Process::par(l, r);
      }
      case Process::Kind::deref:
        return Process::deref(
            run_name(p.name(), [&](const Name& x) { return wrap(Process::deref(x)); }));
      case Process::Kind::output: {
        Name s = run_name(p.subject(),
                          [&](const Name& x) { return wrap(Process::output(x, p.body())); });
        Process b = run(p.body(), [&](const Process& x) { return wrap(Process::output(s, x)); });
        return Process::output(s, b);
      }
      case Process::Kind::input: {
        Name s = run_name(p.subject(), [&](const Name& x) {
          return wrap(Process::input(x, p.binder(), p.body()));
        });
        Name binder = p.binder();
        Process body = p.body();
        if (is_symbolic(binder)) {
          std::tie(binder, body) = choose(s, binder.id(), body, wrap);
        }
        Process b =
            run(body, [&](const Process& x) { return wrap(Process::input(s, binder, x)); });
        return Process::input(s, binder, b);
      }
    }
    return p;
  }

 private:
  Name run_name(const Name& n, const WrapName& wrap) {
    if (n.is_var()) return n;
    return Name::quote(run(n.process(), [&](const Process& x) { return wrap(Name::quote(x)); }));
  }

  std::pair<Name, Process> choose(const Name& subject, const std::string& v, const Process& body,
                                  const Wrap& wrap) {
    const auto taken = closed_names(body);
    const std::size_t limit = body.size() + 64;
    for (std::size_t i = 0; i < limit; ++i) {
      Name q = Name::quote(fresh_process(i));
      bool clash = false;
      for (const auto& n : taken) clash = clash || name_equiv(n, q);
      if (clash) continue;
      Process candidate = replace_var(body, v, q);
      if (canon_process(wrap(Process::input(subject, q, candidate))) == target_) {
        return {q, candidate};
      }
    }
    throw std::logic_error("backinterp: no fresh binder found");
  }

  Process target_;
};

}  // namespace

Process backinterp(const Term& c, std::size_t fuel) {
  if (contains_leaf(c, "C")) throw BackinterpError("combinator contains C");
  auto sort = sort_infer(c);
  if (!sort || !(*sort == SortExpr::W())) {
    throw BackinterpError("combinator is not W-sorted: " + c.to_string());
  }
  Back back(fuel);
  Process symbolic = back.process(c);
  Finalizer fin(symbolic);
  return fin.run(symbolic, [](const Process& x) { return x; });
}

Name backinterp_name(const Term& c, std::size_t fuel) {
  if (contains_leaf(c, "C")) throw BackinterpError("combinator contains C");
  auto sort = sort_infer(c);
  if (!sort || !(*sort == SortExpr::N())) {
    throw BackinterpError("combinator is not N-sorted: " + c.to_string());
  }
  Back back(fuel);
  Process symbolic = Process::deref(back.name(c));
  Finalizer fin(symbolic);
  return canon_name(fin.run(symbolic, [](const Process& x) { return x; }).name());
}

Term wrap_context(const Term& c) { return app(leaf("|"), leaf("C"), c); }

std::vector<DerivationCase> derivation_cases() {
  const std::string x = "x";
  const Term tx = name_token(x);
  const Term S = leaf("S"), K = leaf("K"), I = leaf("I");
  const Name nx = Name::var(x), ny = Name::var("y");
  auto lam = [&](const Term& c) { return abstract_elim(x, c); };
  auto ks = [&](const char* c) { return app(K, leaf(c)); };
  auto amp_of = [&](const Term& px) { return app(S, ks("&"), px); };

  // P mentions x; Q mentions both y and x.
  const Process P = Process::output(nx, Process::zero());
  const Process Q = Process::output(ny, Process::deref(nx));
  const Term tP = interp(P);
  const Term tQ = interp(Q);
  const Term tP0 = interp(Process::output(Name::quote(Process::zero()), Process::zero()));
  const Term tQy = abstract_elim("y", tQ);

  std::vector<DerivationCase> out;
  out.push_back({"constant", app(app(K, tP0), tx), tP0});
  out.push_back({"input",
                 app(app(S, app(S, ks("for"), amp_of(lam(tP))), lam(tQy)), tx),
                 app(leaf("for"), app(leaf("&"), tP), tQy)});
  out.push_back({"output", app(app(S, app(S, ks("!"), amp_of(lam(tP))), lam(tQ)), tx),
                 app(leaf("!"), app(leaf("&"), tP), tQ)});
  out.push_back({"par", app(app(S, app(S, ks("|"), lam(tP)), lam(tQ)), tx),
                 app(leaf("|"), tP, tQ)});
  out.push_back({"deref-self", app(app(S, ks("*"), I), tx), app(leaf("*"), tx)});
  out.push_back({"deref", app(app(S, ks("*"), amp_of(lam(tP))), tx),
                 app(leaf("*"), app(leaf("&"), tP))});
  return out;
}

}  // namespace rhosk
