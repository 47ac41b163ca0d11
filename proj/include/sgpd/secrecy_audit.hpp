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

#ifndef SGPD_SECRECY_AUDIT_HPP_
#define SGPD_SECRECY_AUDIT_HPP_

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "sgpd/blocks.hpp"
#include "sgpd/codec.hpp"

namespace sgpd {

struct AuditInstance {
  CodeParams params;
  std::size_t workers = 1;
  std::uint32_t modulus = 5;
  // Input sizes: A is T x S, B is S x D.
  std::size_t T = 1;
  std::size_t S = 1;
  std::size_t D = 1;
  std::uint64_t budget = 10'000'000;
  // kZeroed audits the same construction with every key forced to zero.
  RandomnessMode mode = RandomnessMode::kUniform;
  // Defaults to 1..P.
  std::vector<std::uint32_t> points;
};

enum class Verdict { kSecure, kInsecure, kRefused };

const char* to_string(Verdict v);

struct AuditDomain {
  std::size_t data_entries = 0;  // TS + SD
  std::size_t key_entries = 0;   // entries of the unmasked key blocks
  // p^data_entries and p^key_entries, saturating at UINT64_MAX.
  std::uint64_t data_assignments = 0;
  std::uint64_t key_assignments = 0;
  // data_assignments * key_assignments, saturating.
  std::uint64_t per_subset = 0;
};

AuditDomain audit_domain(const AuditInstance& instance);

struct SubsetVerdict {
  std::vector<std::size_t> subset;
  Verdict verdict = Verdict::kSecure;
  // FNV-1a over the sorted share-tuple histogram of the first input.
  std::uint64_t fingerprint = 0;
  std::uint64_t support = 0;
  // Every tuple in the support has the same count.
  bool uniform = false;
  // The support is all of F^(tuple length).
  bool full_range = false;
};

struct AuditResult {
  Verdict verdict = Verdict::kSecure;
  AuditDomain domain;
  std::uint64_t required = 0;  // evaluations needed
  std::vector<SubsetVerdict> subsets;
  std::string message;
};

// Exact enumeration: for every (A, B), tabulates the share tuples the subset
// sees over all key assignments and compares the histograms. SECURE iff all
// histograms are identical. Refuses when the work exceeds the budget.
AuditResult audit(const AuditInstance& instance,
                  const std::vector<std::size_t>& subset);

// Every subset of exactly P_C workers. The budget covers the whole call.
AuditResult audit_all_subsets(const AuditInstance& instance);

// All size-k subsets of 1..n in lexicographic order.
std::vector<std::vector<std::size_t>> subsets_of_size(std::size_t n,
                                                      std::size_t k);

// Share entries a worker sees, computed from flat entry lists: A then B
// (row-major inputs) and the active key blocks in grid order, each block
// row-major. Matches encode_share on the equivalent AugmentedPair.
class ShareEvaluator {
 public:
  ShareEvaluator(const EncodingPlan& plan, std::size_t T, std::size_t S,
                 std::size_t D);

  std::size_t data_entries() const { return data_entries_; }
  std::size_t key_entries() const { return key_entries_; }
  std::size_t share_entries() const { return share_entries_; }

  // Appends share_entries() values for `worker_id` to `out`.
  void evaluate(std::size_t worker_id, const std::vector<std::uint32_t>& data,
                const std::vector<std::uint32_t>& keys,
                std::vector<std::uint32_t>& out) const;

 private:
  struct Source {
    bool key;
    std::size_t offset;  // first entry in data or keys
    std::uint64_t exponent;
  };
  void add_side(const EncodingPlan& plan, bool a_side, std::size_t br,
                std::size_t bc, std::size_t full_cols);

  PrimeField field_;
  std::vector<std::uint32_t> points_;
  std::size_t data_entries_ = 0;
  std::size_t key_entries_ = 0;
  std::size_t share_entries_ = 0;
  // Per side: block shape and the blocks feeding the share.
  struct Side {
    std::size_t rows = 0, cols = 0, full_cols = 0;
    std::vector<Source> sources;
    // [worker][source]: z_w^exponent
    std::vector<std::vector<std::uint32_t>> coefficients;
  };
  Side a_, b_;
};

struct KeyRankReport {
  std::size_t subsets_checked = 0;
  // Subsets whose key evaluation matrix on either side lacks full row rank.
  std::vector<std::vector<std::size_t>> deficient;
  bool refused = false;
};

// Algebraic check: for each colluder subset the matrix [z_p^e] over its
// points and the active key exponents must have full row rank on both sides.
KeyRankReport key_rank_check(const EncodingPlan& plan,
                             std::uint64_t budget = 10'000'000);

// Line-oriented verdict report.
void write_verdict(std::ostream& os, const AuditInstance& instance,
                   const AuditResult& result);

}  // namespace sgpd

#endif  // SGPD_SECRECY_AUDIT_HPP_
