// Copyright 2026 The advalloc Authors. All rights reserved.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef ADVALLOC_CLI_HPP_
#define ADVALLOC_CLI_HPP_

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

namespace advalloc {

// Subcommands: train, eval, ne, bench, oracle-check.  Returns the process
// exit code: 0 on success, 2 on usage errors, 1 on other failures.
int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

struct OracleCheckLimits {
  int max_users = 6;
  int max_budgets = 3;
  int max_prices = 3;
  int max_resources = 3;
  int max_value = 8;
};

struct OracleMismatch {
  std::string instance;  // n_users, n_resources, sets, prices, prefix
  long oracle_gap = 0;
  long brute_gap = 0;
};

struct OracleCheckReport {
  long cases = 0;
  long matched = 0;
  std::vector<OracleMismatch> mismatches;
};

// Compares the completion oracle with exhaustive search on random instances.
OracleCheckReport oracle_check(long cases, std::uint64_t seed, const OracleCheckLimits& limits = {});

}  // namespace advalloc

#endif  // ADVALLOC_CLI_HPP_
