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

#ifndef SGPD_CODEC_HPP_
#define SGPD_CODEC_HPP_

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "sgpd/blocks.hpp"
#include "sgpd/field.hpp"
#include "sgpd/matrix.hpp"

namespace sgpd {

// One block of an encoded matrix and the monomial that carries it.
struct Term {
  std::uint64_t exponent = 0;
  bool key = false;
  // Structurally zero key block; contributes nothing.
  bool zero = false;
  // Data blocks only: A_{outer,inner} on the A side, B_{inner,outer} on B.
  std::size_t outer = 0;
  std::size_t inner = 0;

  bool active() const { return !zero; }
  friend bool operator==(const Term&, const Term&) = default;
};

struct ExponentMap {
  Grid<Term> a;  // over A*
  Grid<Term> b;  // over B*
  // Over active blocks, i.e. after zero masking.
  std::uint64_t max_degree_a = 0;
  std::uint64_t max_degree_b = 0;
  // Ignoring the masks.
  std::uint64_t raw_degree_a = 0;
  std::uint64_t raw_degree_b = 0;

  std::uint64_t recovery_threshold() const {
    return max_degree_a + max_degree_b + 1;
  }
  std::uint64_t unmasked_threshold() const {
    return raw_degree_a + raw_degree_b + 1;
  }
  // Recomputes the four degree fields from the terms.
  void refresh_degrees();
};

// Exponent layout used for encoding. Tall and non-secure follow the
// row-major A / reversed-B pattern. Wide uses a row stride of s + 2*delta
// so that key products stay clear of every extraction exponent.
ExponentMap build_exponent_map(const CodeParams& params);

// Wide layout with row stride s* = s + delta and no guard band. Collides for
// t >= 2 or d >= 2 once keys are present; kept for reporting only.
ExponentMap unguarded_wide_map(const CodeParams& params);

// Output block (i,l) is the coefficient of z^extraction(i,l).
Grid<std::uint64_t> extraction_exponents(const CodeParams& params);
Grid<std::uint64_t> unguarded_wide_extraction(const CodeParams& params);

// Closed forms for the recovery threshold.
std::uint64_t gpd_threshold(std::size_t t, std::size_t s, std::size_t d);
// s < t. Equals gpd_threshold for P_C = 0.
std::uint64_t tall_threshold(const CodeParams& params);
// Tall degree bound as printed alongside the tall construction; reported
// only. Returns nullopt for P_C = 0.
std::optional<std::uint64_t> tall_degree_bound(const CodeParams& params);
// s >= t, general branch: t d s* + s* - 1.
std::uint64_t wide_threshold(const CodeParams& params);
// s >= t, t = d special branch s*(t^2+1) - 3. The "ceiling is strict"
// condition is tested against min{t,d} or against s; nullopt when the
// branch does not apply under that reading.
enum class StrictReading { kMinTD, kS };
std::optional<std::uint64_t> wide_special_threshold(const CodeParams& params,
                                                    StrictReading reading);
// Guarded wide layout without masking: t d (s + 2 delta) + s - 1.
std::uint64_t guarded_wide_threshold(const CodeParams& params);
// Plain GPD applied to A* and B* with t* and d* in place of t and d.
// s < t only.
std::uint64_t naive_secure_threshold(const CodeParams& params);

struct ClosedForms {
  // The closed form the construction is compared against for this case.
  std::uint64_t expected = 0;
  std::optional<std::uint64_t> tall_degree_bound;
  std::optional<std::uint64_t> wide_special_min_td;
  std::optional<std::uint64_t> wide_special_s;
  std::optional<std::uint64_t> naive;
};

struct PlanOptions {
  // Defaults to 1..P.
  std::vector<std::uint32_t> points;
  // Enforce P >= P_R and P_R >= 2 P_C. The secrecy auditor turns this off to
  // look at instances too small to decode.
  bool check_capacity = true;
};

struct EncodingPlan {
  CodeParams params;
  CodeCase code_case = CodeCase::kNonSecure;
  PrimeField field{2};
  std::size_t delta = 0;
  std::size_t t_star = 0;
  std::size_t d_star = 0;
  std::size_t s_star = 0;
  ExponentMap exponents;
  // max_degree_a + max_degree_b + 1 of the construction.
  std::size_t recovery_threshold = 0;
  std::vector<std::uint32_t> points;
  Grid<std::uint64_t> extraction;
  ClosedForms closed_forms;
  std::vector<std::string> warnings;

  std::size_t workers() const { return points.size(); }
};

// Throws ConfigError for zero grid sizes, p <= P, P_C >= P, bad points or,
// with check_capacity, P < P_R (the message carries P_R) and P_R < 2 P_C.
EncodingPlan build_plan(const CodeParams& params, const PrimeField& field,
                        std::size_t workers, const PlanOptions& options = {});

struct Collision {
  std::size_t out_i = 0;
  std::size_t out_l = 0;
  std::uint64_t exponent = 0;
  std::size_t a_row = 0, a_col = 0;
  std::size_t b_row = 0, b_col = 0;
  Term a_term;
  Term b_term;
};

struct ExponentAuditReport {
  // Products landing on an extraction exponent that do not belong there.
  std::vector<Collision> collisions;
  // Exponents repeated inside one side's map.
  std::vector<std::uint64_t> duplicates_a;
  std::vector<std::uint64_t> duplicates_b;
  // Output blocks whose inner sum is incomplete.
  std::vector<std::pair<std::size_t, std::size_t>> incomplete;
  std::uint64_t pairs_checked = 0;

  bool clean() const {
    return collisions.empty() && duplicates_a.empty() &&
           duplicates_b.empty() && incomplete.empty();
  }
};

ExponentAuditReport exponent_audit(const ExponentMap& map,
                                   const Grid<std::uint64_t>& extraction,
                                   std::size_t inner);
ExponentAuditReport exponent_audit(const EncodingPlan& plan);

struct CodedShare {
  std::size_t worker_id = 0;  // 1-based
  std::uint32_t point = 0;
  Matrix a_share;
  Matrix b_share;
};

struct WorkerResult {
  std::size_t worker_id = 0;
  std::uint32_t point = 0;
  Matrix product;
  double completion_time = 0.0;
};

// Throws UsageError when the pair does not match the plan.
std::vector<CodedShare> encode(const EncodingPlan& plan,
                               const AugmentedPair& pair);
CodedShare encode_share(const EncodingPlan& plan, const AugmentedPair& pair,
                        std::size_t worker_id);

WorkerResult worker_compute(const CodedShare& share,
                            double completion_time = 0.0);

// Uses the P_R results with the lowest worker ids. Throws UsageError on
// duplicate points or ids foreign to the plan, NotEnoughResults when fewer
// than P_R remain.
BlockMatrix decode(const EncodingPlan& plan,
                   const std::vector<WorkerResult>& results);

// Every coefficient of the product polynomial, degree 0 .. P_R-1.
std::vector<Matrix> interpolate_all(const EncodingPlan& plan,
                                    const std::vector<WorkerResult>& results);

struct CommunicationLoad {
  std::uint64_t elements = 0;     // P_R * TD / (td)
  std::uint64_t lower_bound = 0;  // TD
  double over_td = 0.0;           // P_R / (td)
};

// Throws ConfigError unless t | T and d | D.
CommunicationLoad communication_load(const EncodingPlan& plan, std::size_t T,
                                     std::size_t D);

// "worker_id point rows_a cols_a rows_b cols_b", then a_share and b_share
// row-major, one matrix row per line.
void write_share(std::ostream& os, const CodedShare& share);
CodedShare read_share(std::istream& is, const PrimeField& field);

}  // namespace sgpd

#endif  // SGPD_CODEC_HPP_
