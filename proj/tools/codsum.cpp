// codsum: codegree sums, theorem suites and the prime-product analytics.
// Exit codes: 0 all checks pass, 1 a mathematical check failed, 2 usage or IO error.

#include <CLI11.hpp>
#include <json.hpp>

#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "codsum/analytic.hpp"
#include "codsum/arith.hpp"
#include "codsum/chartab.hpp"
#include "codsum/formulas.hpp"
#include "codsum/groups.hpp"
#include "codsum/verify.hpp"

using nlohmann::json;
using namespace codsum;

namespace {

constexpr int kMathFailure = 1;
constexpr int kUsageError = 2;

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Accepts plain integers and scientific forms such as 1e9 or 2.5e8.
std::uint64_t parse_limit(const std::string& s) {
  if (s.empty()) throw UsageError("empty --limit");
  if (s.find_first_of("eE.") == std::string::npos) {
    std::size_t used = 0;
    const auto v = std::stoull(s, &used);
    if (used != s.size()) throw UsageError("bad --limit: " + s);
    return v;
  }
  std::size_t used = 0;
  const long double v = std::stold(s, &used);
  if (used != s.size() || v < 0 || v != std::floor(v) || v > 1.2e19L) throw UsageError("bad --limit: " + s);
  return static_cast<std::uint64_t>(v);
}

std::string long_str(long double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.18Lg", v);
  return buf;
}

void emit(const json& j) { std::cout << j.dump(2) << '\n'; }

// Oracle value, or null when the group is past the size guard.
template <class Build>
json oracle_or_null(Build build, std::uint64_t order) {
  if (order > groups::size_guard()) return nullptr;
  return verify::oracle_report(build()).sc;
}

json agreement(json j, const std::string& formula, const json& oracle) {
  j["methods"] = {{"formula", formula}, {"oracle", oracle}};
  j["Sc"] = formula;
  j["agree"] = oracle.is_null() || std::to_string(oracle.get<std::uint64_t>()) == formula;
  return j;
}

int cmd_sc(const std::string& target, const std::vector<std::string>& args) {
  if (args.empty()) throw UsageError("sc " + target + ": missing arguments");
  auto ints = [&] {
    std::vector<std::uint64_t> v;
    for (const auto& a : args) v.push_back(parse_limit(a));
    return v;
  };
  json out;
  if (target == "cyclic") {
    const std::uint64_t n = ints().at(0);
    if (n == 0) throw UsageError("n must be positive");
    const auto f = formulas::sc_cyclic(arith::factorize(n)).get_str();
    out = agreement({{"target", "cyclic"}, {"n", n}}, f, oracle_or_null([&] { return groups::build_cyclic(n); }, n));
  } else if (target == "abelian") {
    groups::AbelianGroupSpec spec{ints()};
    spec.validate();
    const auto f = formulas::sc_abelian(spec).get_str();
    out = agreement({{"target", "abelian"}, {"group", spec.name()}, {"order", spec.order()}}, f,
                    oracle_or_null([&] { return groups::build_abelian(spec); }, spec.order()));
  } else if (target == "family") {
    groups::CounterexampleSpec spec{ints()};
    spec.validate();
    const auto f = formulas::sc_counterexample(spec).get_str();
    out = agreement({{"target", "family"}, {"group", spec.name()}, {"order", spec.order()}}, f,
                    oracle_or_null([&] { return groups::build_counterexample(spec); }, spec.order()));
    out["ratio"] = formulas::counterexample_ratio(spec).to_string();
  } else if (target == "group") {
    groups::PermutationGroupSpec spec;
    if (auto lib = groups::pgroup_by_name(args[0])) {
      spec = *lib;
    } else {
      std::ifstream in(args[0]);
      if (!in) throw UsageError("not a corpus name or readable spec file: " + args[0]);
      json j;
      try {
        in >> j;
      } catch (const json::exception& e) {
        throw UsageError(std::string("malformed spec JSON: ") + e.what());
      }
      spec = j.get<groups::PermutationGroupSpec>();
    }
    const auto g = chartab::enumerate(spec);
    const auto rep = chartab::codegree_report(g, chartab::dixon_table(g));
    out = {{"target", "group"}, {"report", rep}, {"Sc", rep.sc}};
    json methods = {{"oracle", rep.sc}};
    bool agree = true;
    if (g.is_abelian()) {
      methods["element_orders"] = chartab::sum_of_element_orders(g);
      agree = chartab::sum_of_element_orders(g) == rep.sc;
    }
    if (g.is_cyclic()) {
      const auto f = formulas::sc_cyclic(arith::factorize(g.order()));
      methods["formula"] = f.get_str();
      agree = agree && f == arith::BigInt(static_cast<unsigned long>(rep.sc));
    }
    out["methods"] = methods;
    out["agree"] = agree;
  } else {
    throw UsageError("sc target must be cyclic, abelian, group or family");
  }
  emit(out);
  return out["agree"].get<bool>() ? 0 : kMathFailure;
}

int cmd_verify(const std::string& suite, const verify::Options& opts, bool as_json) {
  std::vector<std::string> names;
  if (suite == "all") names = verify::suite_names();
  else names = {suite};
  bool pass = true;
  json all = json::array();
  for (const auto& name : names) {
    const auto r = verify::run_suite(name, opts);
    pass = pass && r.pass;
    if (as_json) {
      all.push_back(r);
      continue;
    }
    std::cout << (r.pass ? "PASS " : "FAIL ") << r.suite << ' ' << r.summary.dump() << '\n';
    for (const auto& inst : r.instances)
      if (!inst.value("pass", true)) std::cout << "  witness " << inst.dump() << '\n';
  }
  if (as_json) emit(names.size() == 1 ? all[0] : json{{"pass", pass}, {"suites", all}});
  return pass ? 0 : kMathFailure;
}

json state_json(const analytic::RatioState& s) {
  json j = {{"limit", s.limit_processed}, {"prime_count", s.prime_count},
            {"r_estimate", static_cast<double>(s.r_estimate())}, {"r_estimate_text", long_str(s.r_estimate())},
            {"log_r", long_str(s.log_r.value())}, {"recip_sum", static_cast<double>(s.recip_sum.value())}};
  if (s.limit_processed >= 100) j["gap"] = static_cast<double>(analytic::reciprocal_model_gap(s));
  return j;
}

struct AnalyticArgs {
  std::string limit = "1e6";
  std::string checkpoint;
  bool resume = false;
  unsigned s = 2;
  double target = 21.0;
  unsigned threads = 0;
  std::uint64_t segment_size = analytic::kDefaultSegmentSize;
};

analytic::RatioState run_ratio(const AnalyticArgs& a, bool stream) {
  const std::uint64_t limit = parse_limit(a.limit);
  if (limit > (std::uint64_t{1} << 40)) throw UsageError("--limit must be <= 2^40");
  analytic::RatioState state;
  state.segment_size = a.segment_size;
  if (a.resume) {
    if (a.checkpoint.empty()) throw UsageError("--resume needs --checkpoint");
    state = analytic::load_checkpoint(a.checkpoint);
    if (state.limit_processed > limit) throw UsageError("checkpoint is already past --limit");
  }
  analytic::AccumulateOptions opts;
  opts.threads = a.threads;
  opts.progress = [&](const analytic::RatioState& s) {
    if (!a.checkpoint.empty()) analytic::save_checkpoint(s, a.checkpoint);
    if (stream) std::cout << json{{"progress", state_json(s)}}.dump() << '\n' << std::flush;
  };
  state = analytic::accumulate_ratio(limit, state, opts);
  if (!a.checkpoint.empty()) analytic::save_checkpoint(state, a.checkpoint);
  return state;
}

int cmd_analytic(const std::string& sub, const AnalyticArgs& a) {
  if (sub == "ratio") {
    std::cout << json{{"result", state_json(run_ratio(a, true))}}.dump() << '\n';
  } else if (sub == "recip") {
    const auto s = run_ratio(a, false);
    if (s.limit_processed < 100) throw UsageError("recip needs --limit >= 100");
    emit({{"limit", s.limit_processed}, {"recip_sum", long_str(s.recip_sum.value())},
          {"half_loglog", long_str(0.5L * std::log(std::log(static_cast<long double>(s.limit_processed))))},
          {"gap", long_str(analytic::reciprocal_model_gap(s))}});
  } else if (sub == "extrapolate") {
    const auto s = run_ratio(a, false);
    if (s.limit_processed < 3) throw UsageError("extrapolate needs --limit >= 3");
    const auto ex = analytic::crossing_extrapolation(s, a.target);
    emit({{"limit", s.limit_processed}, {"target", a.target}, {"r_estimate", static_cast<double>(s.r_estimate())},
          {"fitted_constant", long_str(ex.fitted_constant)}, {"log10_bound", long_str(ex.log10_bound)},
          {"degenerate", ex.degenerate}, {"model", "extrapolation under log r = (1/2) log log m + C"}});
  } else if (sub == "zeta") {
    const auto z = analytic::zeta(a.s);
    emit({{"s", a.s}, {"value", long_str(z.value)}});
  } else if (sub == "euler") {
    const auto e = analytic::euler_product_check(a.s, parse_limit(a.limit));
    emit({{"s", a.s}, {"limit", parse_limit(a.limit)}, {"partial", long_str(e.partial)},
          {"target", long_str(e.target)}, {"gap", long_str(e.gap)}});
  } else {
    throw UsageError("analytic subcommand must be ratio, recip, extrapolate, zeta or euler");
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Codegree sums of finite groups: formulas, a character-table oracle, and theorem checks"};
  app.require_subcommand(1);

  std::string sc_target;
  std::vector<std::string> sc_args;
  auto* sc = app.add_subcommand("sc", "Codegree sum by formula and by oracle");
  sc->add_option("target", sc_target, "cyclic | abelian | group | family")->required();
  sc->add_option("args", sc_args, "n; factor list; corpus name or spec file; prime list");

  std::string suite;
  verify::Options vopts;
  bool as_json = false;
  std::uint64_t seed = 0;
  auto* ver = app.add_subcommand("verify", "Run a theorem suite (exit 1 on any failure)");
  ver->add_option("suite", suite, "lemma21 | lemma22 | lemma23 | thm11 | thm12 | thm13 | prop32 | thm4 | analytic | all")
      ->required();
  ver->add_option("--max-order", vopts.max_order, "metacyclic sweep bound on n*m")->capture_default_str();
  ver->add_option("--abelian-max", vopts.abelian_max, "abelian sweep bound on the order")->capture_default_str();
  ver->add_option("--p", vopts.p, "restrict prime-indexed checks to this prime");
  ver->add_option("--max", vopts.max, "submultiplicativity bound on a+b")->capture_default_str();
  ver->add_option("--threads", vopts.threads, "worker threads (0 = all cores)");
  ver->add_option("--seed", seed, "reserved for randomized sweeps");
  ver->add_flag("--json", as_json, "full JSON report");

  std::string sub;
  AnalyticArgs aargs;
  auto* an = app.add_subcommand("analytic", "Euler-product ratio over primes = 2 mod 3, zeta values");
  an->add_option("sub", sub, "ratio | recip | extrapolate | zeta | euler")->required();
  an->add_option("--limit", aargs.limit, "prime bound, 1e9 notation accepted")->capture_default_str();
  an->add_option("--checkpoint", aargs.checkpoint, "checkpoint file written during the run");
  an->add_flag("--resume", aargs.resume, "continue from --checkpoint");
  an->add_option("--s", aargs.s, "zeta / Euler product exponent")->capture_default_str();
  an->add_option("--target", aargs.target, "extrapolation target for r")->capture_default_str();
  an->add_option("--threads", aargs.threads, "sieve threads (0 = all cores)");
  an->add_option("--segment-size", aargs.segment_size, "sieve slots per segment")->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return e.get_exit_code() == 0 ? 0 : kUsageError;
  }

  try {
    if (*sc) return cmd_sc(sc_target, sc_args);
    if (*ver) {
      vopts.analytic_limit = 1'000'000;
      return cmd_verify(suite, vopts, as_json);
    }
    if (*an) return cmd_analytic(sub, aargs);
  } catch (const std::logic_error& e) {
    // invalid_argument and length_error are bad input; other logic errors are oracle bugs
    if (dynamic_cast<const std::invalid_argument*>(&e) || dynamic_cast<const std::length_error*>(&e) ||
        dynamic_cast<const std::out_of_range*>(&e)) {
      std::cerr << "codsum: " << e.what() << '\n';
      return kUsageError;
    }
    std::cerr << "codsum: internal check failed: " << e.what() << '\n';
    return kMathFailure;
  } catch (const std::exception& e) {
    std::cerr << "codsum: " << e.what() << '\n';
    return kUsageError;
  }
  return kUsageError;
}
