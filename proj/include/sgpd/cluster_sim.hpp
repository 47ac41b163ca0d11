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

#ifndef SGPD_CLUSTER_SIM_HPP_
#define SGPD_CLUSTER_SIM_HPP_

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "sgpd/blocks.hpp"
#include "sgpd/codec.hpp"
#include "sgpd/matrix.hpp"

namespace sgpd {

enum class StragglerKind { kFixedSet, kRandomSubset, kLatency };

const char* to_string(StragglerKind k);

struct StragglerModel {
  StragglerKind kind = StragglerKind::kLatency;
  // kFixedSet: the workers that respond, in completion order.
  std::vector<std::size_t> responders;
  // kRandomSubset: how many workers respond.
  std::size_t responder_count = 0;
  std::uint64_t seed = 0;
  // kLatency: delay = shift + Exp(rate); a worker fails outright with
  // failure_probability.
  double shift = 1.0;
  double rate = 1.0;
  double failure_probability = 0.0;
  // Any kind: only the earliest max_responders completions arrive (0 = all).
  std::size_t max_responders = 0;

  static StragglerModel fixed_set(std::vector<std::size_t> ids);
  static StragglerModel random_subset(std::size_t count, std::uint64_t seed);
  static StragglerModel shifted_exponential(double shift, double rate,
                                            std::uint64_t seed,
                                            double failure_probability = 0.0);
};

// Simulated completion time per worker (index w-1), +inf for failures.
// Fixed and random subsets finish at times 1, 2, ... in response order.
std::vector<double> completion_times(const StragglerModel& model,
                                     std::size_t workers);

struct RunReport {
  CodeParams params;
  CodeCase code_case = CodeCase::kNonSecure;
  std::size_t workers = 0;
  std::size_t recovery_threshold = 0;
  std::size_t survivors = 0;
  std::vector<std::size_t> responder_ids;
  std::vector<std::uint32_t> responder_points;
  // Time of the P_R-th completion; +inf when there were too few survivors.
  double completion_time = 0.0;
  bool success = false;
  std::string failure_cause;
  // Sum of |C_p| over the responders used.
  std::uint64_t communication_load = 0;
  std::uint64_t expected_load = 0;
  std::uint64_t checksum = 0;
  // Decoded product equals the directly computed one.
  bool verified = false;
  std::optional<Matrix> decoded;
};

// Dispatches every share, decodes from the first P_R completions (ordered by
// time, then worker id) and checks the result against A*B computed directly.
RunReport run(const EncodingPlan& plan, const AugmentedPair& pair,
              const StragglerModel& model);

// key=value lines; deterministic for identical inputs.
void write_report(std::ostream& os, const RunReport& report);

struct LatencySummary {
  std::size_t trials = 0;
  // Trials where fewer than P_R workers survived.
  std::size_t failed = 0;
  std::vector<double> samples;
  double mean = 0.0;
  double sd = 0.0;
  double se = 0.0;
};

// P_R-th completion time over `trials` runs, trial k seeded with
// model.seed + k. Only timing is simulated; nothing is decoded.
LatencySummary latency_sweep(const EncodingPlan& plan,
                             const StragglerModel& model, std::size_t trials);

// Writes worker_<id>.share for every share and manifest.txt.
void write_trace(const std::string& dir, const EncodingPlan& plan,
                 const std::vector<CodedShare>& shares,
                 const StragglerModel& model, const RunReport& report,
                 std::uint64_t input_seed);

}  // namespace sgpd

#endif  // SGPD_CLUSTER_SIM_HPP_
