#include "rhosk/process.hpp"

#include <algorithm>
#include <cstdint>
#include <set>
#include <stdexcept>

namespace rhosk {

namespace {

std::size_t mix(std::size_t h, std::size_t v) {
  return h ^ (v + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2));
}

}  // namespace

struct Name::Node {
  Kind kind;
  std::string id;
  std::vector<Process> proc;
  std::size_t hash;
};

struct Process::Node {
  Kind kind;
  std::vector<Name> names;
  std::vector<Process> procs;
  std::size_t hash;
  std::size_t size;
};

// ---- Name ----

Name Name::quote(Process p) {
  std::size_t h = mix(0x51, p.hash());
  return Name(std::make_shared<const Node>(Node{Kind::quote, {}, {std::move(p)}, h}));
}

Name Name::var(std::string id) {
  std::size_t h = mix(0x17, std::hash<std::string>{}(id));
  return Name(std::make_shared<const Node>(Node{Kind::var, std::move(id), {}, h}));
}

Name::Kind Name::kind() const { return node_->kind; }
const Process& Name::process() const { return node_->proc.at(0); }
const std::string& Name::id() const { return node_->id; }
std::size_t Name::hash() const { return node_->hash; }

bool operator==(const Name& a, const Name& b) {
  if (a.node_ == b.node_) return true;
  if (a.hash() != b.hash() || a.kind() != b.kind()) return false;
  return a.is_var() ? a.id() == b.id() : a.process() == b.process();
}

std::strong_ordering operator<=>(const Name& a, const Name& b) {
  if (a.node_ == b.node_) return std::strong_ordering::equal;
  if (auto c = a.kind() <=> b.kind(); c != 0) return c;
  if (a.is_var()) return a.id().compare(b.id()) <=> 0;
  return a.process() <=> b.process();
}

// ---- Process ----

const std::shared_ptr<const Process::Node>& Process::zero_node() {
  static const auto node = std::make_shared<const Process::Node>(
      Process::Node{Process::Kind::zero, {}, {}, 0x2a, 1});
  return node;
}

namespace {

std::size_t name_size(const Name& n) { return n.is_var() ? 1 : 1 + n.process().size(); }

}  // namespace

std::shared_ptr<const Process::Node> Process::make_node(Process::Kind kind, std::vector<Name> names,
                                               std::vector<Process> procs) {
  std::size_t h = static_cast<std::size_t>(kind) + 0x100;
  std::size_t size = 1;
  for (const auto& n : names) {
    h = mix(h, n.hash());
    size += name_size(n);
  }
  for (const auto& p : procs) {
    h = mix(h, p.hash());
    size += p.size();
  }
  return std::make_shared<const Process::Node>(
      Process::Node{kind, std::move(names), std::move(procs), h, size});
}

Process::Process() : node_(zero_node()) {}

Process Process::input(Name subject, Name binder, Process body) {
  return Process(make_node(Kind::input, {std::move(subject), std::move(binder)}, {std::move(body)}));
}

Process Process::output(Name subject, Process body) {
  return Process(make_node(Kind::output, {std::move(subject)}, {std::move(body)}));
}

Process Process::par(Process left, Process right) {
  return Process(make_node(Kind::par, {}, {std::move(left), std::move(right)}));
}

Process Process::deref(Name name) { return Process(make_node(Kind::deref, {std::move(name)}, {})); }

Process Process::par_of(const std::vector<Process>& components) {
  if (components.empty()) return zero();
  Process acc = components.back();
  for (std::size_t i = components.size() - 1; i-- > 0;) acc = par(components[i], acc);
  return acc;
}

Process::Kind Process::kind() const { return node_->kind; }
const Name& Process::subject() const { return node_->names.at(0); }
const Name& Process::binder() const { return node_->names.at(1); }
const Process& Process::body() const { return node_->procs.at(0); }
const Process& Process::left() const { return node_->procs.at(0); }
const Process& Process::right() const { return node_->procs.at(1); }
const Name& Process::name() const { return node_->names.at(0); }
std::size_t Process::hash() const { return node_->hash; }
std::size_t Process::size() const { return node_->size; }

bool operator==(const Process& a, const Process& b) {
  if (a.node_ == b.node_) return true;
  if (a.hash() != b.hash() || a.kind() != b.kind() || a.size() != b.size()) return false;
  return a.node_->names == b.node_->names && a.node_->procs == b.node_->procs;
}

std::strong_ordering operator<=>(const Process& a, const Process& b) {
  if (a.node_ == b.node_) return std::strong_ordering::equal;
  if (auto c = a.kind() <=> b.kind(); c != 0) return c;
  const auto& an = a.node_->names;
  const auto& bn = b.node_->names;
  for (std::size_t i = 0; i < an.size(); ++i) {
    if (auto c = an[i] <=> bn[i]; c != 0) return c;
  }
  const auto& ap = a.node_->procs;
  const auto& bp = b.node_->procs;
  for (std::size_t i = 0; i < ap.size(); ++i) {
    if (auto c = ap[i] <=> bp[i]; c != 0) return c;
  }
  return std::strong_ordering::equal;
}

// ---- printing ----

namespace {

std::string print_body(const Process& p) {
  if (p.kind() == Process::Kind::zero) return "0";
  return "(" + p.to_string() + ")";
}

}  // namespace

std::string to_string(const Name& n) {
  if (n.is_var()) return n.id();
  const Process& p = n.process();
  switch (p.kind()) {
    case Process::Kind::zero: return "&0";
    case Process::Kind::deref: return "&" + p.to_string();
    default: return "&(" + p.to_string() + ")";
  }
}

std::string Process::to_string() const {
  switch (kind()) {
    case Kind::zero: return "0";
    case Kind::deref: return "*" + rhosk::to_string(name());
    case Kind::output: return rhosk::to_string(subject()) + "!" + print_body(body());
    case Kind::input:
      return "for(" + rhosk::to_string(binder()) + " <- " + rhosk::to_string(subject()) + ")" +
             print_body(body());
    case Kind::par: {
      std::string l = left().to_string();
      if (left().kind() == Kind::par) l = "(" + l + ")";
      return l + " | " + right().to_string();
    }
  }
  return "?";
}

std::string to_string(const CommRedex& r) {
  return "comm [" + std::to_string(r.input) + "," + std::to_string(r.output) + "]";
}

std::vector<Process> par_components(const Process& p) {
  std::vector<Process> out;
  std::vector<Process> stack{p};
  while (!stack.empty()) {
    Process q = stack.back();
    stack.pop_back();
    if (q.kind() == Process::Kind::par) {
      stack.push_back(q.right());
      stack.push_back(q.left());
    } else {
      out.push_back(q);
    }
  }
  return out;
}

// ---- canonical forms ----

namespace {

thread_local std::uint64_t temp_counter = 0;

std::size_t height(const Process& p);

std::size_t name_height(const Name& n) { return n.is_var() ? 0 : height(n.process()); }

std::size_t height(const Process& p) {
  switch (p.kind()) {
    case Process::Kind::zero: return 0;
    case Process::Kind::deref: return name_height(p.name());
    case Process::Kind::output: return std::max(name_height(p.subject()), height(p.body()));
    case Process::Kind::par: return std::max(height(p.left()), height(p.right()));
    case Process::Kind::input: return std::max(name_height(p.subject()), 1 + height(p.body()));
  }
  return 0;
}

Process rename_resort(const Process& p, const std::string& from, const Name& to);

Name rename_name(const Name& n, const std::string& from, const Name& to) {
  if (n.is_var()) return n.id() == from ? to : n;
  return Name::quote(rename_resort(n.process(), from, to));
}

// Renames a variable in a canonical process and restores the component
// order of every parallel composition.
Process rename_resort(const Process& p, const std::string& from, const Name& to) {
  switch (p.kind()) {
    case Process::Kind::zero: return p;
    case Process::Kind::deref: return Process::deref(rename_name(p.name(), from, to));
    case Process::Kind::output:
      return Process::output(rename_name(p.subject(), from, to), rename_resort(p.body(), from, to));
    case Process::Kind::input:
      return Process::input(rename_name(p.subject(), from, to), p.binder(),
                            rename_resort(p.body(), from, to));
    case Process::Kind::par: {
      auto comps = par_components(p);
      for (auto& c : comps) c = rename_resort(c, from, to);
      std::sort(comps.begin(), comps.end());
      return Process::par_of(comps);
    }
  }
  return p;
}

Process subst_impl(const Process& p, const Name& nw, const Name& old, bool semantic,
                   const FreshObserver& obs);

}  // namespace

Name canon_name(const Name& n) {
  if (n.is_var()) return n;
  Process c = canon_process(n.process());
  if (c.kind() == Process::Kind::deref) return c.name();
  return Name::quote(std::move(c));
}

Process canon_process(const Process& p) {
  switch (p.kind()) {
    case Process::Kind::zero: return p;
    case Process::Kind::deref: return Process::deref(canon_name(p.name()));
    case Process::Kind::output:
      return Process::output(canon_name(p.subject()), canon_process(p.body()));
    case Process::Kind::par: {
      std::vector<Process> comps;
      for (const auto& raw : par_components(p)) {
        for (auto& c : par_components(canon_process(raw))) {
          if (c.kind() != Process::Kind::zero) comps.push_back(std::move(c));
        }
      }
      std::sort(comps.begin(), comps.end());
      return Process::par_of(comps);
    }
    case Process::Kind::input: {
      Name subject = canon_name(p.subject());
      Name temp = Name::var("%" + std::to_string(temp_counter++));
      Process body = canon_process(subst_impl(p.body(), temp, p.binder(), true, {}));
      Name binder = Name::var("x" + std::to_string(height(body)));
      return Process::input(std::move(subject), binder, rename_resort(body, temp.id(), binder));
    }
  }
  return p;
}

bool name_equiv(const Name& a, const Name& b) { return canon_name(a) == canon_name(b); }
bool struct_equiv(const Process& a, const Process& b) {
  return canon_process(a) == canon_process(b);
}

// ---- free names ----

namespace {

void fn_rec(const Process& p, std::set<Name>& out) {
  switch (p.kind()) {
    case Process::Kind::zero: return;
    case Process::Kind::deref: out.insert(canon_name(p.name())); return;
    case Process::Kind::output:
      out.insert(canon_name(p.subject()));
      fn_rec(p.body(), out);
      return;
    case Process::Kind::par:
      fn_rec(p.left(), out);
      fn_rec(p.right(), out);
      return;
    case Process::Kind::input: {
      std::set<Name> inner;
      fn_rec(p.body(), inner);
      inner.erase(canon_name(p.binder()));
      out.insert(inner.begin(), inner.end());
      out.insert(canon_name(p.subject()));
      return;
    }
  }
}

void free_vars(const Process& p, std::vector<std::string>& bound, std::set<std::string>& out);

void free_vars_name(const Name& n, std::vector<std::string>& bound, std::set<std::string>& out) {
  if (n.is_var()) {
    if (std::find(bound.begin(), bound.end(), n.id()) == bound.end()) out.insert(n.id());
  } else {
    free_vars(n.process(), bound, out);
  }
}

void free_vars(const Process& p, std::vector<std::string>& bound, std::set<std::string>& out) {
  switch (p.kind()) {
    case Process::Kind::zero: return;
    case Process::Kind::deref: free_vars_name(p.name(), bound, out); return;
    case Process::Kind::output:
      free_vars_name(p.subject(), bound, out);
      free_vars(p.body(), bound, out);
      return;
    case Process::Kind::par:
      free_vars(p.left(), bound, out);
      free_vars(p.right(), bound, out);
      return;
    case Process::Kind::input: {
      free_vars_name(p.subject(), bound, out);
      if (p.binder().is_var()) {
        bound.push_back(p.binder().id());
        free_vars(p.body(), bound, out);
        bound.pop_back();
      } else {
        free_vars_name(p.binder(), bound, out);
        free_vars(p.body(), bound, out);
      }
      return;
    }
  }
}

bool name_is_closed(const Name& n) {
  if (n.is_var()) return false;
  return is_closed(n.process());
}

void closed_rec(const Process& p, std::set<Name>& out);

void closed_name_rec(const Name& n, std::set<Name>& out) {
  if (n.is_var()) return;
  if (name_is_closed(n)) out.insert(canon_name(n));
  closed_rec(n.process(), out);
}

void closed_rec(const Process& p, std::set<Name>& out) {
  switch (p.kind()) {
    case Process::Kind::zero: return;
    case Process::Kind::deref: closed_name_rec(p.name(), out); return;
    case Process::Kind::output:
      closed_name_rec(p.subject(), out);
      closed_rec(p.body(), out);
      return;
    case Process::Kind::par:
      closed_rec(p.left(), out);
      closed_rec(p.right(), out);
      return;
    case Process::Kind::input:
      closed_name_rec(p.subject(), out);
      closed_rec(p.body(), out);
      return;
  }
}

}  // namespace

std::vector<Name> free_names(const Process& p) {
  std::set<Name> out;
  fn_rec(p, out);
  return {out.begin(), out.end()};
}

bool is_closed(const Process& p) {
  std::vector<std::string> bound;
  std::set<std::string> out;
  free_vars(p, bound, out);
  return out.empty();
}

std::vector<Name> closed_names(const Process& p) {
  std::set<Name> out;
  closed_rec(p, out);
  return {out.begin(), out.end()};
}

// ---- substitution ----

namespace {

void collect_ids(const Process& p, std::set<std::string>& out);

void collect_ids(const Name& n, std::set<std::string>& out) {
  if (n.is_var()) {
    out.insert(n.id());
  } else {
    collect_ids(n.process(), out);
  }
}

void collect_ids(const Process& p, std::set<std::string>& out) {
  switch (p.kind()) {
    case Process::Kind::zero: return;
    case Process::Kind::deref: collect_ids(p.name(), out); return;
    case Process::Kind::output:
      collect_ids(p.subject(), out);
      collect_ids(p.body(), out);
      return;
    case Process::Kind::par:
      collect_ids(p.left(), out);
      collect_ids(p.right(), out);
      return;
    case Process::Kind::input:
      collect_ids(p.subject(), out);
      collect_ids(p.binder(), out);
      collect_ids(p.body(), out);
      return;
  }
}

struct Subst {
  const Name& nw;
  Name key;  // canonical form of the name being replaced
  bool semantic;
  const FreshObserver& obs;

  Name name(const Name& x) const {
    if (canon_name(x) == key) return nw;
    if (x.is_quote()) return Name::quote(proc(x.process()));
    return x;
  }

  Process proc(const Process& p) const {
    switch (p.kind()) {
      case Process::Kind::zero: return p;
      case Process::Kind::output: return Process::output(name(p.subject()), proc(p.body()));
      case Process::Kind::par: return Process::par(proc(p.left()), proc(p.right()));
      case Process::Kind::deref:
        if (canon_name(p.name()) == key) {
          if (semantic && nw.is_quote()) return nw.process();
          return Process::deref(nw);
        }
        return Process::deref(name(p.name()));
      case Process::Kind::input: {
        std::set<std::string> used;
        collect_ids(p.body(), used);
        collect_ids(nw, used);
        collect_ids(key, used);
        std::string z;
        for (std::size_t k = 0;; ++k) {
          z = "z" + std::to_string(k);
          if (!used.contains(z)) break;
        }
        if (obs) obs({z, &p.body(), &nw, &key});
        Name zn = Name::var(z);
        Subst rename{zn, canon_name(p.binder()), semantic, obs};
        Process body = proc(rename.proc(p.body()));
        return Process::input(name(p.subject()), zn, body);
      }
    }
    return p;
  }
};

Process subst_impl(const Process& p, const Name& nw, const Name& old, bool semantic,
                   const FreshObserver& obs) {
  Subst s{nw, canon_name(old), semantic, obs};
  return s.proc(p);
}

}  // namespace

Process subst_syntactic(const Process& p, const Name& new_name, const Name& old_name,
                        const FreshObserver& observer) {
  return subst_impl(p, new_name, old_name, false, observer);
}

Process subst_semantic(const Process& p, const Name& new_name, const Name& old_name,
                       const FreshObserver& observer) {
  return subst_impl(p, new_name, old_name, true, observer);
}

// ---- reduction ----

std::vector<std::pair<CommRedex, Process>> comm_successors(const Process& p) {
  Process c = canon_process(p);
  auto comps = par_components(c);
  std::vector<std::pair<CommRedex, Process>> out;
  for (std::size_t i = 0; i < comps.size(); ++i) {
    if (comps[i].kind() != Process::Kind::input) continue;
    for (std::size_t j = 0; j < comps.size(); ++j) {
      if (comps[j].kind() != Process::Kind::output) continue;
      if (!(comps[i].subject() == comps[j].subject())) continue;
      std::vector<Process> rest;
      for (std::size_t k = 0; k < comps.size(); ++k) {
        if (k != i && k != j) rest.push_back(comps[k]);
      }
      rest.push_back(subst_syntactic(comps[i].body(), Name::quote(comps[j].body()),
                                     comps[i].binder()));
      out.push_back({{i, j}, canon_process(Process::par_of(rest))});
    }
  }
  return out;
}

Process apply_comm(const Process& p, const CommRedex& r) {
  for (auto& [redex, result] : comm_successors(p)) {
    if (redex == r) return result;
  }
  throw std::invalid_argument("no communication " + to_string(r) + " in " + p.to_string());
}

std::vector<Process> comm_step(const Process& p) {
  std::vector<Process> out;
  for (auto& [r, result] : comm_successors(p)) {
    if (std::find(out.begin(), out.end(), result) == out.end()) out.push_back(result);
  }
  return out;
}

RhoTrace rho_reduce(const Process& p, Strategy strategy, std::size_t fuel, std::size_t budget) {
  return run_strategy<Process, CommRedex, ProcessHash>(
      canon_process(p), strategy, fuel, [](const Process& s) { return comm_successors(s); },
      budget);
}

// ---- generators ----

namespace {

struct Generator {
  std::mt19937_64& rng;
  std::vector<std::string> scope;

  std::size_t pick(std::size_t n) { return detail::uniform_index(rng, n); }

  Name name(std::size_t depth) {
    if (!scope.empty() && pick(2) == 0) return Name::var(scope[pick(scope.size())]);
    return Name::quote(process(depth));
  }

  Process process(std::size_t depth) {
    if (depth == 0) {
      if (!scope.empty() && pick(4) == 0) return Process::deref(Name::var(scope[pick(scope.size())]));
      return Process::zero();
    }
    switch (pick(8)) {
      case 0:
      case 1: return Process::zero();
      case 2:
      case 3: {
        Name subject = name(depth - 1);
        return Process::output(subject, process(depth - 1));
      }
      case 4:
      case 5: {
        Name subject = name(depth - 1);
        std::string y = "y" + std::to_string(scope.size());
        scope.push_back(y);
        Process body = process(depth - 1);
        scope.pop_back();
        return Process::input(subject, Name::var(y), body);
      }
      case 6: {
        Process l = process(depth - 1);
        return Process::par(l, process(depth - 1));
      }
      default: return Process::deref(name(depth - 1));
    }
  }
};

}  // namespace

Process random_process(std::mt19937_64& rng, std::size_t depth) {
  Generator g{rng, {}};
  return g.process(depth);
}

Process random_comm_process(std::mt19937_64& rng, std::size_t depth) {
  Generator g{rng, {}};
  std::size_t inner = depth > 1 ? depth - 1 : 0;
  Process channel = g.process(inner > 0 ? inner - 1 : 0);
  // The output may use a congruent spelling of the channel.
  Process spelled = g.pick(2) == 0 ? channel : Process::par(Process::zero(), channel);
  g.scope.push_back("y0");
  Process body = g.process(inner);
  g.scope.pop_back();
  std::vector<Process> comps{Process::input(Name::quote(channel), Name::var("y0"), body),
                             Process::output(Name::quote(spelled), g.process(inner))};
  if (g.pick(2) == 0) comps.push_back(g.process(inner));
  if (g.pick(2) == 0) std::swap(comps[0], comps[1]);
  return Process::par_of(comps);
}

}  // namespace rhosk
