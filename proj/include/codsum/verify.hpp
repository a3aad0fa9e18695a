#pragma once

// Theorem-verification harness: named suites over the constructed group
// families, each returning per-instance verdicts plus a summary.

#include <cstdint>
#include <string>
#include <vector>

#include <json.hpp>

#include "codsum/chartab.hpp"
#include "codsum/groups.hpp"

namespace codsum::verify {

struct Options {
  std::uint64_t max_order = 600;     // metacyclic sweep bound on n*m
  std::uint64_t abelian_max = 256;   // abelian sweep bound on the order
  std::uint64_t p = 0;               // restrict prime-indexed checks; 0 = {2, 3, 5}
  unsigned max = 8;                  // submultiplicativity: a + b <= max
  unsigned threads = 0;              // 0 = hardware concurrency
  std::uint64_t analytic_limit = 1'000'000;
};

struct SuiteResult {
  std::string suite;
  bool pass = true;
  nlohmann::json instances = nlohmann::json::array();
  nlohmann::json summary = nlohmann::json::object();
};

void to_json(nlohmann::json& j, const SuiteResult& r);

/// Suite names accepted by run_suite, in the order `all` runs them.
const std::vector<std::string>& suite_names();

/// Throws std::invalid_argument for an unknown suite name.
SuiteResult run_suite(const std::string& name, const Options& options = {});

/// enumerate + dixon_table + codegree_report in one call.
chartab::CodegreeReport oracle_report(const groups::PermutationGroupSpec& spec);

/// Runs oracle_report over specs on a worker pool; results keep input order.
std::vector<chartab::CodegreeReport> oracle_reports(const std::vector<groups::PermutationGroupSpec>& specs,
                                                    unsigned threads = 0);

}  // namespace codsum::verify
