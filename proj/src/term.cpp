#include "rhosk/term.hpp"

#include <algorithm>
#include <functional>
#include <mutex>
#include <sstream>
#include <stdexcept>
#include <unordered_set>

namespace rhosk {

namespace {

// Constructor names are interned so node equality can short-circuit on
// pointer identity.
const std::string* intern(std::string_view name) {
  static std::mutex mutex;
  static std::unordered_set<std::string> table;
  std::lock_guard lock(mutex);
  return &*table.emplace(name).first;
}

std::size_t mix(std::size_t seed, std::size_t value) {
  return seed ^ (value + 0x9e3779b97f4a7c15ULL + (seed << 6) + (seed >> 2));
}

}  // namespace

struct Term::Node {
  const std::string* name;
  std::vector<Term> children;
  std::size_t hash;
  std::size_t size;
};

Term::Term() : Term(make("")) {}

Term Term::make(std::string_view name, std::vector<Term> children) {
  const std::string* interned = intern(name);
  std::size_t h = std::hash<std::string>{}(*interned);
  std::size_t size = 1;
  for (const auto& c : children) {
    h = mix(h, c.hash());
    size += c.size();
  }
  return Term(std::make_shared<const Node>(Node{interned, std::move(children), h, size}));
}

Term Term::apply(Term fn, Term arg) {
  return make(kApply, {std::move(fn), std::move(arg)});
}

const std::string& Term::name() const { return *node_->name; }
std::span<const Term> Term::children() const { return node_->children; }
bool Term::is_apply() const { return arity() == 2 && name() == kApply; }
std::size_t Term::hash() const { return node_->hash; }
std::size_t Term::size() const { return node_->size; }

bool operator==(const Term& a, const Term& b) {
  if (a.node_ == b.node_) return true;
  if (a.node_->hash != b.node_->hash || a.node_->size != b.node_->size ||
      a.node_->name != b.node_->name || a.arity() != b.arity()) {
    return false;
  }
  for (std::size_t i = 0; i < a.arity(); ++i) {
    if (!(a.child(i) == b.child(i))) return false;
  }
  return true;
}

std::strong_ordering operator<=>(const Term& a, const Term& b) {
  if (a.node_ == b.node_) return std::strong_ordering::equal;
  if (a.node_->name != b.node_->name) {
    int c = a.name().compare(b.name());
    return c < 0 ? std::strong_ordering::less : std::strong_ordering::greater;
  }
  if (auto c = a.arity() <=> b.arity(); c != 0) return c;
  for (std::size_t i = 0; i < a.arity(); ++i) {
    if (auto c = a.child(i) <=> b.child(i); c != 0) return c;
  }
  return std::strong_ordering::equal;
}

namespace {

void render(const Term& t, std::string& out) {
  if (t.is_leaf()) {
    out += t.name();
    return;
  }
  out += '(';
  if (!t.is_apply()) {
    out += t.name();
    out += ' ';
  }
  for (std::size_t i = 0; i < t.arity(); ++i) {
    if (i) out += ' ';
    render(t.child(i), out);
  }
  out += ')';
}

}  // namespace

std::string Term::to_string() const {
  std::string out;
  render(*this, out);
  return out;
}

const Term& subterm_at(const Term& t, std::span<const std::size_t> position) {
  const Term* cur = &t;
  for (std::size_t i : position) {
    if (i >= cur->arity()) throw std::out_of_range("position outside term");
    cur = &cur->child(i);
  }
  return *cur;
}

Term replace_at(const Term& t, std::span<const std::size_t> position, Term replacement) {
  if (position.empty()) return replacement;
  std::size_t i = position.front();
  if (i >= t.arity()) throw std::out_of_range("position outside term");
  std::vector<Term> children(t.children().begin(), t.children().end());
  children[i] = replace_at(children[i], position.subspan(1), std::move(replacement));
  return Term::make(t.name(), std::move(children));
}

std::string position_to_string(const Position& position) {
  std::string out = "[";
  for (std::size_t i = 0; i < position.size(); ++i) {
    if (i) out += ',';
    out += std::to_string(position[i]);
  }
  return out + "]";
}

struct Pattern::Node {
  bool is_var;
  std::string name;
  std::string sort;
  std::vector<Pattern> children;
};

Pattern Pattern::var(std::string name, std::string sort) {
  return Pattern(std::make_shared<const Node>(Node{true, std::move(name), std::move(sort), {}}));
}

Pattern Pattern::node(std::string name, std::vector<Pattern> children) {
  return Pattern(
      std::make_shared<const Node>(Node{false, std::move(name), {}, std::move(children)}));
}

Pattern Pattern::apply(Pattern fn, Pattern arg) {
  return node(std::string(kApply), {std::move(fn), std::move(arg)});
}

Pattern Pattern::ground(const Term& t) {
  std::vector<Pattern> children;
  children.reserve(t.arity());
  for (const auto& c : t.children()) children.push_back(ground(c));
  return node(t.name(), std::move(children));
}

bool Pattern::is_var() const { return node_->is_var; }
const std::string& Pattern::name() const { return node_->name; }
const std::string& Pattern::sort() const { return node_->sort; }
std::span<const Pattern> Pattern::children() const { return node_->children; }

std::vector<std::string> Pattern::variables() const {
  std::vector<std::string> out;
  std::function<void(const Pattern&)> walk = [&](const Pattern& p) {
    if (p.is_var()) {
      if (std::find(out.begin(), out.end(), p.name()) == out.end()) out.push_back(p.name());
      return;
    }
    for (const auto& c : p.children()) walk(c);
  };
  walk(*this);
  return out;
}

std::string Pattern::to_string() const {
  if (is_var()) return "?" + name();
  if (arity() == 0) return name();
  std::string out = "(";
  if (name() != kApply) out += name() + " ";
  for (std::size_t i = 0; i < arity(); ++i) {
    if (i) out += ' ';
    out += child(i).to_string();
  }
  return out + ")";
}

Term instantiate(const Pattern& p, const Binding& binding) {
  if (p.is_var()) return binding.at(p.name());
  std::vector<Term> children;
  children.reserve(p.arity());
  for (const auto& c : p.children()) children.push_back(instantiate(c, binding));
  return Term::make(p.name(), std::move(children));
}

std::string binding_to_string(const Binding& binding) {
  std::ostringstream os;
  os << '{';
  bool first = true;
  for (const auto& [k, v] : binding) {
    if (!first) os << ", ";
    first = false;
    os << k << " -> " << v.to_string();
  }
  os << '}';
  return os.str();
}

}  // namespace rhosk
