// Copyright 2026 The SGPD Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef SGPD_COMMANDS_HPP_
#define SGPD_COMMANDS_HPP_

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "sgpd/blocks.hpp"

namespace sgpd {

// Exit statuses shared by the subcommands.
enum ExitCode : int {
  kExitOk = 0,
  kExitFailure = 1,  // decode failure or INSECURE
  kExitConfig = 2,
  kExitRefused = 3,  // audit budget exceeded
};

struct SweepSpec {
  std::size_t m = 36;
  std::size_t n = 36;
  std::size_t P = 3000;
  std::vector<std::size_t> pcs{0};
  std::uint32_t modulus = 65537;
};

struct TradeoffPoint {
  std::size_t pc = 0;
  std::size_t t = 0, s = 0, d = 0;
  CodeCase code_case = CodeCase::kNonSecure;
  std::uint64_t recovery_threshold = 0;
  // C_L / TD = P_R / (td).
  double cl_over_td = 0.0;
  // s < t rows only.
  std::optional<std::uint64_t> naive;
  bool feasible = false;
  bool frontier = false;
};

// One row per (P_C, s) with s | gcd(m, n), t = m/s, d = n/s, sorted by
// (P_C, t, s, d). Throws ConfigError for m or n of zero or modulus <= P.
std::vector<TradeoffPoint> sweep(const SweepSpec& spec);

void write_sweep_csv(std::ostream& os, const SweepSpec& spec,
                     const std::vector<TradeoffPoint>& points);

struct RunConfig {
  CodeParams params{3, 2, 2, 2};
  std::size_t P = 30;
  std::size_t T = 6, S = 4, D = 4;
  std::uint32_t modulus = 257;
  std::uint64_t seed = 1;
  // Input matrices; generated from the seed when empty.
  std::string a_path;
  std::string b_path;
  std::string out_path;     // decoded C
  std::string report_path;  // defaults to the output stream
  std::string model = "latency";  // fixed | random | latency
  std::vector<std::size_t> responder_ids;  // fixed
  std::size_t responders = 0;              // cap on arrivals, 0 = none
  double shift = 1.0;
  double rate = 1.0;
  double failure_probability = 0.0;
  std::uint64_t model_seed = 1;
  std::string trace_dir;
};

struct AuditConfig {
  CodeParams params{2, 1, 1, 1};
  std::size_t P = 4;
  std::size_t T = 2, S = 1, D = 1;
  std::uint32_t modulus = 5;
  std::uint64_t budget = 10'000'000;
  bool negative_control = false;
  std::string out_path;
};

// The drivers print "# key=value" lines with the resolved configuration,
// then their result. Errors go to `err`; the return value is an ExitCode.
int cmd_sweep(const SweepSpec& spec, const std::string& out_path,
              std::ostream& out, std::ostream& err);
int cmd_run(const RunConfig& config, std::ostream& out, std::ostream& err);
int cmd_audit(const AuditConfig& config, std::ostream& out, std::ostream& err);

}  // namespace sgpd

#endif  // SGPD_COMMANDS_HPP_
