#include "rhosk/cli.hpp"

#include <CLI11.hpp>
#include <json.hpp>
#include <ostream>
#include <sstream>

#include "rhosk/bisim.hpp"
#include "rhosk/comb.hpp"
#include "rhosk/ski.hpp"
#include "rhosk/sorting.hpp"
#include "rhosk/syntax.hpp"

namespace rhosk {

using nlohmann::json;

std::string trace_to_json(const std::string& calculus, const Trace& trace) {
  json steps = json::array();
  for (const auto& s : trace.steps) {
    json step = {{"rule", s.redex.rule}, {"position", s.redex.position},
                 {"result", s.result.to_string()}};
    json binding = json::object();
    for (const auto& [k, v] : s.redex.binding) binding[k] = v.to_string();
    step["binding"] = binding;
    if (s.redex.lift != 0) step["lift"] = s.redex.lift;
    steps.push_back(std::move(step));
  }
  json out = {{"calculus", calculus},
              {"initial", trace.initial.to_string()},
              {"steps", steps},
              {"status", to_string(trace.status)}};
  return out.dump(2);
}

std::string trace_to_json(const RhoTrace& trace) {
  json steps = json::array();
  for (const auto& s : trace.steps) {
    steps.push_back({{"rule", "comm"},
                     {"position", {s.redex.input, s.redex.output}},
                     {"result", s.result.to_string()}});
  }
  json out = {{"calculus", "rho"},
              {"initial", trace.initial.to_string()},
              {"steps", steps},
              {"status", to_string(trace.status)}};
  return out.dump(2);
}

namespace {

struct Options {
  std::string calculus = "ski";
  std::string strategy = "first";
  std::uint64_t seed = 0;
  std::size_t fuel = 1000;
  std::size_t depth = 4;
  std::size_t gas = 0;
  std::string names;
  std::string format = "text";
  std::vector<std::string> inputs;
};

class InputError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

std::string show(const NameSet& names) {
  std::string s = "{";
  for (std::size_t i = 0; i < names.size(); ++i) s += (i ? ", " : "") + to_string(names[i]);
  return s + "}";
}

json names_json(const NameSet& names) {
  json a = json::array();
  for (const auto& n : names) a.push_back(to_string(n));
  return a;
}

NameSet parse_names(const std::string& text) {
  std::vector<Name> out;
  std::stringstream in(text);
  std::string item;
  while (std::getline(in, item, ',')) {
    if (item.find_first_not_of(" \t") == std::string::npos) continue;
    out.push_back(parse_rho_name(item));
  }
  return make_name_set(out);
}

// The process a C-wrapped or bare combinator denotes, if any.
std::optional<Process> comb_as_process(const Term& t) {
  const auto& sys = comb_system();
  std::vector<Term> rest;
  for (const auto& e : sys.acu_elements(sys.canonicalize(t), 0)) {
    if (!(e.is_leaf() && e.name() == "C")) rest.push_back(e);
  }
  try {
    Process p = Process::zero();
    for (const auto& e : rest) p = Process::par(backinterp(e), p);
    return p;
  } catch (const std::exception&) {
    return std::nullopt;
  }
}

class Runner {
 public:
  Runner(const Options& o, std::ostream& out) : o_(o), out_(out) {}

  bool json_out() const { return o_.format == "json"; }

  Strategy strategy() const {
    auto kind = parse_strategy_kind(o_.strategy);
    if (!kind) throw InputError("unknown strategy '" + o_.strategy + "'");
    return {*kind, o_.seed};
  }

  const std::string& input(std::size_t i) const {
    if (o_.inputs.size() <= i) throw InputError("missing input term");
    return o_.inputs[i];
  }

  int reduce(bool full) {
    const std::string& c = o_.calculus;
    if (c == "rho") {
      RhoTrace tr = rho_reduce(parse_rho(input(0)), strategy(), o_.fuel);
      if (json_out()) {
        out_ << trace_to_json(tr) << "\n";
      } else {
        if (full) {
          out_ << tr.initial.to_string() << "\n";
          for (const auto& s : tr.steps) {
            out_ << "  " << to_string(s.redex) << " -> " << s.result.to_string() << "\n";
          }
        }
        out_ << tr.final_state().to_string() << "\n"
             << "steps: " << tr.steps.size() << "\nstatus: " << to_string(tr.status) << "\n";
      }
      return tr.status == TraceStatus::fuel_exhausted ? kExhausted : kOk;
    }
    const RewriteSystem* sys;
    Term t;
    if (c == "ski") {
      sys = &ski_system(SkiVariant::plain);
      t = parse_ski(input(0));
      if (count_markers(t) != 0) throw InputError("plain SKI terms cannot contain R");
    } else if (c == "ski-whnf") {
      sys = &ski_system(SkiVariant::whnf);
      t = parse_ski(input(0));
      if (count_markers(t) == 0) t = ski_marker(t);
    } else if (c == "ski-gas") {
      sys = &ski_system(SkiVariant::gas);
      t = parse_ski(input(0));
      if (gas_set_) {
        t = ski_marker(t, o_.gas);
      } else if (count_markers(t) == 0) {
        throw InputError("ski-gas needs --gas or an R-marked term");
      }
    } else if (c == "rho-comb") {
      sys = &comb_system();
      t = parse_comb(input(0));
    } else {
      throw InputError("unknown calculus '" + c + "'");
    }
    Trace tr = sys->reduce(t, strategy(), o_.fuel);
    if (json_out()) {
      out_ << trace_to_json(c, tr) << "\n";
    } else {
      if (full) {
        out_ << tr.initial.to_string() << "\n";
        for (const auto& s : tr.steps) {
          out_ << "  " << to_string(s.redex) << " -> " << s.result.to_string() << "\n";
        }
      }
      out_ << tr.final_state().to_string() << "\n"
           << "steps: " << tr.steps.size() << "\nstatus: " << to_string(tr.status) << "\n";
    }
    return tr.status == TraceStatus::fuel_exhausted ? kExhausted : kOk;
  }

  int translate() {
    std::string result;
    if (o_.calculus == "rho") {
      result = interp(parse_rho(input(0))).to_string();
    } else if (o_.calculus == "rho-comb") {
      result = backinterp(parse_comb(input(0))).to_string();
    } else {
      throw InputError("translate needs --calculus rho or rho-comb");
    }
    if (json_out()) {
      out_ << json{{"result", result}}.dump(2) << "\n";
    } else {
      out_ << result << "\n";
    }
    return kOk;
  }

  int sort() {
    Term c;
    if (o_.calculus == "rho") {
      c = interp(parse_rho(input(0)));
    } else if (o_.calculus == "rho-comb") {
      c = parse_comb(input(0));
    } else {
      throw InputError("sort needs --calculus rho or rho-comb");
    }
    auto s = sort_infer(c);
    if (json_out()) {
      out_ << json{{"sort", s ? json(s->to_string()) : json(nullptr)}}.dump(2) << "\n";
    } else {
      out_ << (s ? s->to_string() : "not sortable") << "\n";
    }
    return s ? kOk : kViolation;
  }

  NameSet names_for(const std::vector<std::string>& texts) {
    if (!o_.names.empty()) return parse_names(o_.names);
    std::vector<Process> ps;
    for (const auto& t : texts) {
      if (o_.calculus == "rho") {
        ps.push_back(parse_rho(t));
      } else if (auto p = comb_as_process(parse_comb(t))) {
        ps.push_back(*p);
      }
    }
    return names_occurring(ps);
  }

  int barbs_cmd() {
    NameSet names = names_for({input(0)});
    NameSet now;
    WeakBarbs weak;
    if (o_.calculus == "rho") {
      Process p = parse_rho(input(0));
      now = barbs(p, names);
      weak = weak_barbs(p, names, o_.depth);
    } else if (o_.calculus == "rho-comb") {
      Term t = parse_comb(input(0));
      now = comb_barbs(t, names);
      weak = comb_weak_barbs(t, names, o_.depth);
    } else {
      throw InputError("barbs needs --calculus rho or rho-comb");
    }
    if (json_out()) {
      out_ << json{{"names", names_json(names)},
                   {"barbs", names_json(now)},
                   {"weak_barbs", names_json(weak.names)},
                   {"bound", o_.depth},
                   {"truncated", weak.truncated}}
                  .dump(2)
           << "\n";
    } else {
      out_ << "barbs: " << show(now) << "\nweak barbs (bound " << o_.depth
           << "): " << show(weak.names) << (weak.truncated ? " (truncated)" : "") << "\n";
    }
    return kOk;
  }

  json result_json(const BisimResult& r) {
    json moves = json::array();
    for (const auto& m : r.moves) {
      moves.push_back({{"side", m.left ? "left" : "right"}, {"from", m.from}, {"to", m.to}});
    }
    json j = {{"verdict", to_string(r.verdict)}, {"depth", r.depth}, {"moves", moves}};
    if (!r.barb.empty()) {
      j["barb"] = r.barb;
      j["barb_side"] = r.barb_on_left ? "left" : "right";
    }
    if (!r.reason.empty()) j["reason"] = r.reason;
    return j;
  }

  int bisim() {
    NameSet names = names_for({input(0), input(1)});
    BisimResult r;
    if (o_.calculus == "rho") {
      r = bounded_bisim(parse_rho(input(0)), parse_rho(input(1)), names, o_.depth);
    } else if (o_.calculus == "rho-comb") {
      r = comb_bounded_bisim(parse_comb(input(0)), parse_comb(input(1)), names, o_.depth);
    } else {
      throw InputError("bisim needs --calculus rho or rho-comb");
    }
    if (json_out()) {
      json j = result_json(r);
      j["names"] = names_json(names);
      out_ << j.dump(2) << "\n";
    } else {
      out_ << "names: " << show(names) << "\n" << r.to_string() << "\n";
    }
    return r.verdict == Verdict::inconclusive ? kExhausted : kOk;
  }

  int faithfulness() {
    if (o_.calculus != "rho") throw InputError("faithfulness needs --calculus rho");
    Process p = parse_rho(input(0)), q = parse_rho(input(1));
    NameSet names = names_for({input(0), input(1)});
    FaithfulnessReport r = faithfulness_check(p, q, names, o_.depth);
    if (json_out()) {
      out_ << json{{"names", names_json(names)},
                   {"calc", result_json(r.calc)},
                   {"comb", result_json(r.comb)},
                   {"agree", r.agree()}}
                  .dump(2)
           << "\n";
    } else {
      out_ << "names: " << show(names) << "\ncalc: " << r.calc.to_string()
           << "\ncomb: " << r.comb.to_string() << "\n"
           << (r.agree() ? "agree" : "disagree") << "\n";
    }
    if (!r.conclusive()) return kExhausted;
    return r.agree() ? kOk : kViolation;
  }

  int roundtrip() {
    json j = json::object();
    bool ok = true;
    Term q;
    if (o_.calculus == "rho") {
      Process p = parse_rho(input(0));
      q = interp(p);
      bool alpha = canon_process(backinterp(q)) == canon_process(p);
      j["alpha_equivalent"] = alpha;
      ok = ok && alpha;
    } else if (o_.calculus == "rho-comb") {
      q = parse_comb(input(0));
    } else {
      throw InputError("roundtrip needs --calculus rho or rho-comb");
    }
    Term normal = interp(backinterp(q));
    Trace tr = comb_admin_system().reduce_to(q, normal, o_.fuel);
    bool reaches = tr.status == TraceStatus::target_reached;
    bool idempotent = interp(backinterp(normal)) == normal;
    j["interp_backinterp"] = normal.to_string();
    j["reduces_without_xi"] = reaches;
    j["steps"] = tr.steps.size();
    j["idempotent"] = idempotent;
    ok = ok && reaches && idempotent;
    if (json_out()) {
      out_ << j.dump(2) << "\n";
    } else {
      if (j.contains("alpha_equivalent")) {
        out_ << "backinterp(interp(P)) alpha-equivalent to P: "
             << (j["alpha_equivalent"].get<bool>() ? "yes" : "no") << "\n";
      }
      out_ << "interp(backinterp(Q)) = " << normal.to_string() << "\n"
           << "Q reduces to it without xi: " << (reaches ? "yes" : "no") << " ("
           << tr.steps.size() << " steps)\n"
           << "idempotent: " << (idempotent ? "yes" : "no") << "\n";
    }
    return ok ? kOk : kViolation;
  }

  bool gas_set_ = false;

 private:
  const Options& o_;
  std::ostream& out_;
};

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Rewriting toolkit for SKI, RHO and RHO combinators", "rhosk"};
  app.require_subcommand(1);
  Options o;
  CLI::Option* gas_opt = nullptr;

  auto add_common = [&](CLI::App* sub, std::size_t n_inputs) {
    sub->add_option("--calculus", o.calculus, "ski, ski-whnf, ski-gas, rho or rho-comb")
        ->check(CLI::IsMember({"ski", "ski-whnf", "ski-gas", "rho", "rho-comb"}));
    sub->add_option("--strategy", o.strategy, "first, all or random")
        ->check(CLI::IsMember({"first", "all", "random"}));
    sub->add_option("--seed", o.seed, "seed for the random strategy");
    sub->add_option("--fuel", o.fuel, "maximum number of steps");
    sub->add_option("--depth", o.depth, "bisimulation depth or weak barb bound");
    sub->add_option("--names", o.names, "comma separated name literals, e.g. &0,&(&0!0)");
    sub->add_option("--format", o.format, "text or json")->check(CLI::IsMember({"text", "json"}));
    auto* g = sub->add_option("--gas", o.gas, "number of R markers (ski-gas only)");
    if (!gas_opt) gas_opt = g;
    sub->add_option("input", o.inputs, "input term(s)")->expected(static_cast<int>(n_inputs));
    return g;
  };

  struct Sub {
    const char* name;
    const char* help;
    std::size_t inputs;
  };
  const Sub subs[] = {
      {"reduce", "reduce a term and print the final state", 1},
      {"trace", "reduce a term and print every step", 1},
      {"translate", "rho to combinators (interp) or back (backinterp)", 1},
      {"sort", "infer the sort of a combinator", 1},
      {"barbs", "immediate and weak barbs", 1},
      {"bisim", "bounded barbed bisimilarity of two agents", 2},
      {"faithfulness", "compare bisimilarity in the calculus and the combinators", 2},
      {"roundtrip", "check the interpretation roundtrip properties", 1},
  };
  std::vector<std::pair<CLI::App*, CLI::Option*>> created;
  for (const auto& s : subs) {
    CLI::App* sub = app.add_subcommand(s.name, s.help);
    created.emplace_back(sub, add_common(sub, s.inputs));
  }

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e, out, err);
    return code == 0 ? kOk : kInputError;
  }

  Runner runner(o, out);
  try {
    for (const auto& [sub, gas] : created) {
      if (!sub->parsed()) continue;
      runner.gas_set_ = gas->count() > 0;
      if (runner.gas_set_ && o.calculus != "ski-gas") {
        throw InputError("--gas applies to ski-gas only");
      }
      const std::string name = sub->get_name();
      if (name == "reduce") return runner.reduce(false);
      if (name == "trace") return runner.reduce(true);
      if (name == "translate") return runner.translate();
      if (name == "sort") return runner.sort();
      if (name == "barbs") return runner.barbs_cmd();
      if (name == "bisim") return runner.bisim();
      if (name == "faithfulness") return runner.faithfulness();
      if (name == "roundtrip") return runner.roundtrip();
    }
  } catch (const SyntaxError& e) {
    err << "syntax error at " << e.what() << "\n";
    return kInputError;
  } catch (const InputError& e) {
    err << "error: " << e.what() << "\n";
    return kInputError;
  } catch (const BackinterpError& e) {
    err << "error: " << e.what() << "\n";
    return kViolation;
  } catch (const FuelExhausted& e) {
    err << "error: " << e.what() << "\n";
    return kExhausted;
  }
  return kInputError;
}

}  // namespace rhosk
