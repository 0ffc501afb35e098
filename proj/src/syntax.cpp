#include "rhosk/syntax.hpp"

#include <algorithm>
#include <vector>

#include "cursor.hpp"

namespace rhosk {

SyntaxError::SyntaxError(const std::string& message, std::size_t line, std::size_t column)
    : std::runtime_error(std::to_string(line) + ":" + std::to_string(column) + ": " + message),
      line_(line),
      column_(column) {}

namespace {

using detail::Cursor;

Term parse_ski_term(Cursor& in) {
  char c = in.peek();
  if (c == '(') {
    in.expect("(");
    if (in.accept("R")) {
      if (in.peek() == ')') in.fail("marker R needs an argument");
      Term body = parse_ski_term(in);
      in.expect(")");
      return Term::make("R", {body});
    }
    Term f = parse_ski_term(in);
    Term a = parse_ski_term(in);
    in.expect(")");
    return Term::apply(f, a);
  }
  if (in.accept("S")) return Term::make("S");
  if (in.accept("K")) return Term::make("K");
  if (in.accept("I")) return Term::make("I");
  if (in.starts_with("R")) in.fail("marker R must be written (R t)");
  in.fail("expected S, K, I or '('");
}

const std::vector<std::string_view>& comb_atoms() {
  static const std::vector<std::string_view> atoms = {"for", "C", "0", "|", "!",
                                                      "&",   "*", "S", "K", "I"};
  return atoms;
}

Term parse_comb_term(Cursor& in) {
  if (in.accept("(")) {
    Term f = parse_comb_term(in);
    Term a = parse_comb_term(in);
    in.expect(")");
    return Term::apply(f, a);
  }
  if (in.accept("$")) return Term::make("$" + in.identifier());
  for (auto atom : comb_atoms()) {
    if (in.accept(atom)) return Term::make(atom);
  }
  in.fail("expected a combinator atom or '('");
}

}  // namespace

Term parse_ski(std::string_view text) {
  Cursor in(text);
  Term t = parse_ski_term(in);
  in.expect_end();
  return t;
}

Term parse_comb(std::string_view text) {
  Cursor in(text);
  Term t = parse_comb_term(in);
  in.expect_end();
  return t;
}

std::string print_term(const Term& t) { return t.to_string(); }

namespace {

class RhoParser {
 public:
  explicit RhoParser(std::string_view text) : in_(text) {}

  Process process() {
    Process left = primary();
    if (in_.accept("|")) return Process::par(left, process());
    return left;
  }

  Process primary() {
    char c = in_.peek();
    if (c == '0') {
      in_.expect("0");
      return Process::zero();
    }
    if (c == '(') {
      in_.expect("(");
      Process p = process();
      in_.expect(")");
      return p;
    }
    if (c == '*') {
      in_.expect("*");
      return Process::deref(name());
    }
    if (in_.starts_with("for") && keyword_for()) {
      in_.expect("(");
      Name binder = binder_name();
      in_.expect("<-");
      Name subject = name();
      in_.expect(")");
      bool pushed = binder.is_var();
      if (pushed) scope_.push_back(binder.id());
      Process body = primary();
      if (pushed) scope_.pop_back();
      return Process::input(subject, binder, body);
    }
    if (c == '&' || std::isalpha(static_cast<unsigned char>(c))) {
      Name subject = name();
      in_.expect("!");
      return Process::output(subject, primary());
    }
    in_.fail("expected a process");
  }

  Name name() {
    if (in_.accept("&")) return Name::quote(quoted());
    std::string id = in_.identifier();
    if (std::find(scope_.begin(), scope_.end(), id) == scope_.end()) {
      in_.fail("unbound name '" + id + "'");
    }
    return Name::var(id);
  }

  void end() { in_.expect_end(); }

 private:
  // Consumes "for" when it introduces an input prefix.
  bool keyword_for() {
    Cursor probe = in_;
    probe.expect("for");
    if (probe.peek() != '(') return false;
    in_.expect("for");
    return true;
  }

  Process quoted() {
    char c = in_.peek();
    if (c == '0') {
      in_.expect("0");
      return Process::zero();
    }
    if (c == '*') {
      in_.expect("*");
      return Process::deref(name());
    }
    if (c == '(') {
      in_.expect("(");
      Process p = process();
      in_.expect(")");
      return p;
    }
    in_.fail("expected 0, *name or '(' after '&'");
  }

  Name binder_name() {
    if (in_.accept("&")) {
      auto saved = std::move(scope_);
      scope_.clear();
      Process p = quoted();
      scope_ = std::move(saved);
      return Name::quote(p);
    }
    std::string id = in_.identifier();
    if (id == "for") in_.fail("'for' cannot be a name");
    return Name::var(id);
  }

  Cursor in_;
  std::vector<std::string> scope_;
};

}  // namespace

Process parse_rho(std::string_view text) {
  RhoParser p(text);
  Process out = p.process();
  p.end();
  return out;
}

Name parse_rho_name(std::string_view text) {
  RhoParser p(text);
  Name out = p.name();
  p.end();
  return out;
}

}  // namespace rhosk
