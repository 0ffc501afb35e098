#include <gtest/gtest.h>

#include <json.hpp>
#include <random>
#include <sstream>

#include "rhosk/cli.hpp"
#include "rhosk/comb.hpp"
#include "rhosk/ski.hpp"
#include "rhosk/syntax.hpp"

using namespace rhosk;
using nlohmann::json;

namespace {

struct Run {
  int code;
  std::string out;
  std::string err;
};

Run run(std::vector<std::string> args) {
  std::ostringstream out, err;
  int code = run_cli(args, out, err);
  return {code, out.str(), err.str()};
}

const RewriteSystem& system_for(const std::string& calculus) {
  if (calculus == "ski") return ski_system(SkiVariant::plain);
  if (calculus == "ski-whnf") return ski_system(SkiVariant::whnf);
  if (calculus == "ski-gas") return ski_system(SkiVariant::gas);
  return comb_system();
}

Term parse_for(const std::string& calculus, const std::string& text) {
  return calculus == "rho-comb" ? parse_comb(text) : parse_ski(text);
}

// Replays each recorded step through the redex API.
void replay(const json& j) {
  const std::string calculus = j["calculus"];
  if (calculus == "rho") {
    Process cur = parse_rho(j["initial"].get<std::string>());
    for (const auto& s : j["steps"]) {
      CommRedex r{s["position"][0].get<std::size_t>(), s["position"][1].get<std::size_t>()};
      cur = apply_comm(cur, r);
      EXPECT_EQ(cur.to_string(), s["result"].get<std::string>());
    }
    return;
  }
  const auto& sys = system_for(calculus);
  Term cur = parse_for(calculus, j["initial"]);
  for (const auto& s : j["steps"]) {
    Redex r;
    r.rule = s["rule"];
    r.position = s["position"].get<Position>();
    for (const auto& [k, v] : s["binding"].items()) r.binding[k] = parse_for(calculus, v);
    r.lift = s.value("lift", std::size_t{0});
    cur = sys.apply(cur, r);
    EXPECT_EQ(cur.to_string(), s["result"].get<std::string>());
  }
}

}  // namespace

TEST(Cli, SpecExamples) {
  auto r = run({"reduce", "--calculus", "ski", "(I K)"});
  EXPECT_EQ(r.code, 0);
  EXPECT_EQ(r.out, "K\nsteps: 1\nstatus: normal_form\n");
  r = run({"translate", "--calculus", "rho", "0"});
  EXPECT_EQ(r.code, 0);
  EXPECT_EQ(r.out, "0\n");
  r = run({"sort", "--calculus", "rho-comb", "(0 0)"});
  EXPECT_EQ(r.code, 3);
  EXPECT_EQ(r.out, "not sortable\n");
}

TEST(Cli, ExitCodes) {
  EXPECT_EQ(run({"reduce", "--calculus", "ski", "(I"}).code, 1);
  EXPECT_EQ(run({"reduce", "--calculus", "lambda", "I"}).code, 1);
  EXPECT_EQ(run({"frobnicate"}).code, 1);
  EXPECT_EQ(run({"reduce", "--calculus", "ski", "--gas", "2", "I"}).code, 1);
  EXPECT_EQ(run({"reduce", "--calculus", "ski-gas", "I"}).code, 1);
  EXPECT_EQ(run({"reduce", "--calculus", "ski", "--fuel", "5", "(((S I) I) ((S I) I))"}).code, 2);
  EXPECT_EQ(run({"translate", "--calculus", "rho-comb", "(& 0)"}).code, 3);
  EXPECT_EQ(run({"faithfulness", "--calculus", "rho", "&0!0", "0"}).code, 0);
  EXPECT_EQ(run({"--help"}).code, 0);
}

TEST(Cli, WhnfAndGas) {
  auto r = run({"reduce", "--calculus", "ski-whnf", "(((S K) K) I)"});
  EXPECT_EQ(r.out, "(R I)\nsteps: 2\nstatus: normal_form\n");
  r = run({"reduce", "--calculus", "ski-gas", "--gas", "1", "(((S K) K) I)"});
  EXPECT_EQ(r.out, "((K I) (K I))\nsteps: 1\nstatus: normal_form\n");
}

TEST(Cli, Translate) {
  auto r = run({"translate", "--calculus", "rho", "for(y <- &0)0"});
  EXPECT_EQ(r.out, "((for (& 0)) (K 0))\n");
  r = run({"translate", "--calculus", "rho-comb", "((for (& 0)) (K 0))"});
  EXPECT_EQ(r.out, "for(&0 <- &0)0\n");
}

TEST(Cli, BisimAndBarbs) {
  auto r = run({"bisim", "--calculus", "rho", "--format", "json", "&0!0", "0"});
  ASSERT_EQ(r.code, 0);
  json j = json::parse(r.out);
  EXPECT_EQ(j["verdict"], "distinguished");
  EXPECT_EQ(j["barb"], "&0");
  r = run({"barbs", "--calculus", "rho", "--names", "&0", "for(y <- &0)(y!0) | &0!0"});
  EXPECT_EQ(r.out, "barbs: {&0}\nweak barbs (bound 4): {&0}\n");
}

TEST(Cli, Roundtrip) {
  auto r = run({"roundtrip", "--calculus", "rho", "for(y <- &0)(*y | y!0) | &0!0"});
  EXPECT_EQ(r.code, 0) << r.out;
  r = run({"roundtrip", "--calculus", "rho-comb", "--format", "json",
           "(I ((K ((for (& 0)) (K 0))) (& 0)))"});
  ASSERT_EQ(r.code, 0) << r.out << r.err;
  json j = json::parse(r.out);
  EXPECT_TRUE(j["reduces_without_xi"].get<bool>());
  EXPECT_EQ(j["interp_backinterp"], "((for (& 0)) (K 0))");
}

TEST(Cli, JsonTracesReplay) {
  const std::vector<std::vector<std::string>> commands = {
      {"trace", "--calculus", "ski", "--format", "json", "(((S K) K) ((S I) I))", "--fuel", "6"},
      {"trace", "--calculus", "ski", "--strategy", "random", "--seed", "5", "--format", "json",
       "(((S (K I)) K) (I I))"},
      {"trace", "--calculus", "ski-whnf", "--format", "json", "(((S K) K) ((K I) S))"},
      {"trace", "--calculus", "ski-gas", "--gas", "3", "--format", "json",
       "(((S K) K) ((K I) S))"},
      {"trace", "--calculus", "rho", "--format", "json",
       "for(y <- &0)(y!0) | for(z <- &0)0 | &0!0 | &0!(&0!0)"},
      {"trace", "--calculus", "rho-comb", "--format", "json",
       "((| C) ((| ((for (& 0)) ((S (K *)) I))) ((! (& 0)) (* (& 0)))))"},
  };
  for (const auto& c : commands) {
    auto r = run(c);
    ASSERT_EQ(r.code, 0) << r.err;
    json j = json::parse(r.out);
    EXPECT_FALSE(j["steps"].empty()) << r.out;
    replay(j);
  }
}

TEST(Cli, Deterministic) {
  std::vector<std::string> c = {"trace",  "--calculus", "rho-comb", "--strategy", "random",
                                "--seed", "11",         "--format", "json",
                                "((| C) ((| ((for (& 0)) ((S (K *)) I))) ((! (& 0)) 0)))"};
  EXPECT_EQ(run(c).out, run(c).out);
}

TEST(PrintParse, RoundTrips) {
  std::mt19937_64 rng(17);
  for (int i = 0; i < 200; ++i) {
    Term t = random_ski_term(rng, 12);
    EXPECT_EQ(parse_ski(print_term(t)), t);
    Term c = interp(random_process(rng, 3));
    EXPECT_EQ(parse_comb(print_term(c)), c);
  }
  Term marked = ski_marker(parse_ski("((S K) I)"), 2);
  EXPECT_EQ(parse_ski(print_term(marked)), marked);
  EXPECT_EQ(print_term(parse_comb(" ( (| C)\n 0 ) ")), "((| C) 0)");
}
