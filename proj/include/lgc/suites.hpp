#pragma once

// Named batches of checks behind `lgc verify`.

#include "lgc/io.hpp"

#include <cstdint>
#include <string>
#include <vector>

namespace lgc {

struct SuiteOptions {
  int geometry_depth = 6;  // barriers B_1..B_depth
  int chain_depth = 2;     // chain checks for every arc of depth 1..chain_depth
  int poincare_trials = 500;
  int sqrt_trials = 1000;
  int polynomial_trials = 200;
  std::uint64_t seed = 20240917;
};

/// cantor, geometry, lemma31, lemma32, lemma33, chain.
const std::vector<std::string>& suite_names();

/// Runs one suite, or all of them for "all". Throws std::invalid_argument
/// for unknown names.
std::vector<VerifyEntry> run_suite(const std::string& name, const SuiteOptions& options = {});

/// Random test fields shared with the test programs.
TestField random_polynomial_field(std::uint64_t seed, int max_degree = 4);

}  // namespace lgc
