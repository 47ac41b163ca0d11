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

#include "sgpd/secrecy_audit.hpp"

#include <algorithm>
#include <iomanip>
#include <limits>
#include <ostream>
#include <sstream>

#include "sgpd/errors.hpp"

namespace sgpd {

namespace {

using u128 = unsigned __int128;

constexpr std::uint64_t kMax = std::numeric_limits<std::uint64_t>::max();

std::uint64_t sat_mul(std::uint64_t a, std::uint64_t b) {
  if (a != 0 && b > kMax / a) return kMax;
  return a * b;
}

std::uint64_t sat_pow(std::uint64_t base, std::size_t e) {
  std::uint64_t r = 1;
  for (std::size_t k = 0; k < e; ++k) r = sat_mul(r, base);
  return r;
}

EncodingPlan audit_plan(const AuditInstance& in) {
  PlanOptions opt;
  opt.points = in.points;
  opt.check_capacity = false;
  return build_plan(in.params, PrimeField(in.modulus), in.workers, opt);
}

// Advances an odometer over [0,p)^n; false after the last assignment.
bool next(std::vector<std::uint32_t>& v, std::uint32_t p) {
  for (auto& x : v) {
    if (++x < p) return true;
    x = 0;
  }
  return false;
}

std::uint64_t fnv(std::uint64_t h, std::uint64_t x) {
  for (int k = 0; k < 8; ++k) {
    h ^= (x >> (8 * k)) & 0xff;
    h *= 0x100000001b3ULL;
  }
  return h;
}

struct Context {
  AuditInstance instance;
  EncodingPlan plan;
  ShareEvaluator eval;
  AuditDomain domain;
};

SubsetVerdict audit_subset(const Context& ctx,
                           const std::vector<std::size_t>& subset) {
  const std::uint32_t p = ctx.instance.modulus;
  const std::size_t tuple_len = subset.size() * ctx.eval.share_entries();
  SubsetVerdict out;
  out.subset = subset;

  std::vector<std::uint32_t> data(ctx.eval.data_entries(), 0);
  const bool zeroed = ctx.instance.mode == RandomnessMode::kZeroed;
  std::vector<std::uint32_t> keys(ctx.eval.key_entries(), 0);
  std::vector<std::uint32_t> shares;
  std::vector<u128> reference, current;
  current.reserve(ctx.domain.key_assignments);

  bool first = true;
  do {
    current.clear();
    std::fill(keys.begin(), keys.end(), 0);
    do {
      shares.clear();
      for (std::size_t w : subset) ctx.eval.evaluate(w, data, keys, shares);
      u128 code = 0;
      for (std::uint32_t x : shares) code = code * p + x;
      current.push_back(code);
    } while (!zeroed && next(keys, p));
    std::sort(current.begin(), current.end());
    if (first) {
      reference.swap(current);
      first = false;
    } else if (current != reference) {
      out.verdict = Verdict::kInsecure;
      break;
    }
  } while (next(data, p));

  std::uint64_t h = 0xcbf29ce484222325ULL;
  std::uint64_t run_len = 0, prev_len = 0;
  bool uniform = true;
  for (std::size_t k = 0; k < reference.size(); ++k) {
    ++run_len;
    if (k + 1 == reference.size() || reference[k + 1] != reference[k]) {
      h = fnv(fnv(fnv(h, static_cast<std::uint64_t>(reference[k] >> 64)),
                  static_cast<std::uint64_t>(reference[k])),
              run_len);
      if (prev_len != 0 && run_len != prev_len) uniform = false;
      prev_len = run_len;
      run_len = 0;
      ++out.support;
    }
  }
  out.fingerprint = h;
  out.uniform = uniform;
  out.full_range = out.support == sat_pow(p, tuple_len);
  return out;
}

Context make_context(const AuditInstance& in) {
  EncodingPlan plan = audit_plan(in);
  ShareEvaluator eval(plan, in.T, in.S, in.D);
  return {in, plan, std::move(eval), audit_domain(in)};
}

void check_tuple_width(const Context& ctx, std::size_t subset_size) {
  const std::size_t len = subset_size * ctx.eval.share_entries();
  u128 r = 1;
  for (std::size_t k = 0; k < len; ++k) {
    r *= ctx.instance.modulus;
    if (r >> 120) {
      throw ConfigError("share tuples of " + std::to_string(len) +
                        " entries are too wide for exact tabulation");
    }
  }
}

AuditResult refuse(const Context& ctx, std::uint64_t required) {
  AuditResult r;
  r.verdict = Verdict::kRefused;
  r.domain = ctx.domain;
  r.required = required;
  r.message = "enumeration needs " + std::to_string(required) +
              " evaluations, budget is " +
              std::to_string(ctx.instance.budget);
  return r;
}

}  // namespace

const char* to_string(Verdict v) {
  switch (v) {
    case Verdict::kSecure:
      return "SECURE";
    case Verdict::kInsecure:
      return "INSECURE";
    case Verdict::kRefused:
      return "REFUSED";
  }
  return "?";
}

ShareEvaluator::ShareEvaluator(const EncodingPlan& plan, std::size_t T,
                               std::size_t S, std::size_t D)
    : field_(plan.field), points_(plan.points) {
  const CodeParams& p = plan.params;
  if (T == 0 || S == 0 || D == 0 || T % p.t || S % p.s || D % p.d) {
    throw ConfigError("T, S, D must be positive multiples of t, s, d");
  }
  data_entries_ = T * S + S * D;
  add_side(plan, true, T / p.t, S / p.s, S);
  add_side(plan, false, S / p.s, D / p.d, D);
  share_entries_ = a_.rows * a_.cols + b_.rows * b_.cols;
  for (Side* side : {&a_, &b_}) {
    for (std::uint32_t z : points_) {
      std::vector<std::uint32_t> row;
      for (const Source& src : side->sources) {
        row.push_back(field_.pow(z, src.exponent));
      }
      side->coefficients.push_back(std::move(row));
    }
  }
}

void ShareEvaluator::add_side(const EncodingPlan& plan, bool a_side,
                              std::size_t br, std::size_t bc,
                              std::size_t full_cols) {
  const Grid<Term>& g = a_side ? plan.exponents.a : plan.exponents.b;
  Side& side = a_side ? a_ : b_;
  side.rows = br;
  side.cols = bc;
  side.full_cols = full_cols;
  const std::size_t b_base = plan.params.t * br * plan.params.s * bc;
  for (std::size_t r = 0; r < g.rows(); ++r) {
    for (std::size_t c = 0; c < g.cols(); ++c) {
      const Term& x = g(r, c);
      if (!x.active()) continue;
      if (x.key) {
        side.sources.push_back({true, key_entries_, x.exponent});
        key_entries_ += br * bc;
      } else if (a_side) {
        side.sources.push_back(
            {false, x.outer * br * full_cols + x.inner * bc, x.exponent});
      } else {
        side.sources.push_back(
            {false, b_base + x.inner * br * full_cols + x.outer * bc,
             x.exponent});
      }
    }
  }
}

void ShareEvaluator::evaluate(std::size_t worker_id,
                              const std::vector<std::uint32_t>& data,
                              const std::vector<std::uint32_t>& keys,
                              std::vector<std::uint32_t>& out) const {
  for (const Side* side : {&a_, &b_}) {
    const auto& coef = side->coefficients.at(worker_id - 1);
    for (std::size_t r = 0; r < side->rows; ++r) {
      for (std::size_t c = 0; c < side->cols; ++c) {
        std::uint32_t acc = 0;
        for (std::size_t n = 0; n < side->sources.size(); ++n) {
          const Source& src = side->sources[n];
          const std::uint32_t v =
              src.key ? keys[src.offset + r * side->cols + c]
                      : data[src.offset + r * side->full_cols + c];
          acc = field_.add(acc, field_.mul(coef[n], v));
        }
        out.push_back(acc);
      }
    }
  }
}

AuditDomain audit_domain(const AuditInstance& in) {
  const EncodingPlan plan = audit_plan(in);
  const ShareEvaluator eval(plan, in.T, in.S, in.D);
  AuditDomain d;
  d.data_entries = eval.data_entries();
  d.key_entries =
      in.mode == RandomnessMode::kZeroed ? 0 : eval.key_entries();
  d.data_assignments = sat_pow(in.modulus, d.data_entries);
  d.key_assignments = sat_pow(in.modulus, d.key_entries);
  d.per_subset = sat_mul(d.data_assignments, d.key_assignments);
  return d;
}

std::vector<std::vector<std::size_t>> subsets_of_size(std::size_t n,
                                                      std::size_t k) {
  std::vector<std::vector<std::size_t>> out;
  if (k > n) return out;
  std::vector<std::size_t> cur(k);
  for (std::size_t i = 0; i < k; ++i) cur[i] = i + 1;
  while (true) {
    out.push_back(cur);
    std::size_t i = k;
    while (i > 0 && cur[i - 1] == n - k + i) --i;
    if (i == 0) break;
    ++cur[i - 1];
    for (std::size_t j = i; j < k; ++j) cur[j] = cur[j - 1] + 1;
  }
  return out;
}

AuditResult audit(const AuditInstance& instance,
                  const std::vector<std::size_t>& subset) {
  const Context ctx = make_context(instance);
  if (subset.size() > instance.params.pc) {
    throw UsageError("subset of " + std::to_string(subset.size()) +
                     " workers exceeds P_C=" +
                     std::to_string(instance.params.pc));
  }
  std::vector<std::size_t> sorted = subset;
  std::sort(sorted.begin(), sorted.end());
  for (std::size_t k = 0; k < sorted.size(); ++k) {
    if (sorted[k] == 0 || sorted[k] > instance.workers ||
        (k && sorted[k] == sorted[k - 1])) {
      throw UsageError("subset must hold distinct worker ids in 1..P");
    }
  }
  const std::uint64_t required = ctx.domain.per_subset;
  if (required > instance.budget) return refuse(ctx, required);
  check_tuple_width(ctx, sorted.size());
  AuditResult r;
  r.domain = ctx.domain;
  r.required = required;
  r.subsets.push_back(audit_subset(ctx, sorted));
  r.verdict = r.subsets.back().verdict;
  return r;
}

AuditResult audit_all_subsets(const AuditInstance& instance) {
  const Context ctx = make_context(instance);
  const auto subsets = subsets_of_size(instance.workers, instance.params.pc);
  const std::uint64_t required = sat_mul(subsets.size(), ctx.domain.per_subset);
  if (required > instance.budget) return refuse(ctx, required);
  check_tuple_width(ctx, instance.params.pc);
  AuditResult r;
  r.domain = ctx.domain;
  r.required = required;
  for (const auto& s : subsets) {
    r.subsets.push_back(audit_subset(ctx, s));
    if (r.subsets.back().verdict == Verdict::kInsecure) {
      r.verdict = Verdict::kInsecure;
    }
  }
  return r;
}

namespace {

std::size_t rank_mod_p(std::vector<std::vector<std::uint32_t>> m,
                       const PrimeField& f) {
  std::size_t rank = 0;
  const std::size_t cols = m.empty() ? 0 : m[0].size();
  for (std::size_t c = 0; c < cols && rank < m.size(); ++c) {
    std::size_t piv = rank;
    while (piv < m.size() && m[piv][c] == 0) ++piv;
    if (piv == m.size()) continue;
    std::swap(m[piv], m[rank]);
    const std::uint32_t inv = f.inv(m[rank][c]);
    for (std::size_t r = 0; r < m.size(); ++r) {
      if (r == rank || m[r][c] == 0) continue;
      const std::uint32_t factor = f.mul(m[r][c], inv);
      for (std::size_t k = c; k < cols; ++k) {
        m[r][k] = f.sub(m[r][k], f.mul(factor, m[rank][k]));
      }
    }
    ++rank;
  }
  return rank;
}

std::vector<std::uint64_t> key_exponents(const Grid<Term>& g) {
  std::vector<std::uint64_t> out;
  for (std::size_t r = 0; r < g.rows(); ++r) {
    for (std::size_t c = 0; c < g.cols(); ++c) {
      if (g(r, c).key && g(r, c).active()) out.push_back(g(r, c).exponent);
    }
  }
  return out;
}

}  // namespace

KeyRankReport key_rank_check(const EncodingPlan& plan, std::uint64_t budget) {
  KeyRankReport rep;
  const std::size_t pc = plan.params.pc;
  const auto subsets = subsets_of_size(plan.workers(), pc);
  if (subsets.size() > budget) {
    rep.refused = true;
    return rep;
  }
  const auto ka = key_exponents(plan.exponents.a);
  const auto kb = key_exponents(plan.exponents.b);
  for (const auto& subset : subsets) {
    ++rep.subsets_checked;
    bool ok = true;
    for (const auto* exps : {&ka, &kb}) {
      std::vector<std::vector<std::uint32_t>> m;
      for (std::size_t w : subset) {
        std::vector<std::uint32_t> row;
        for (std::uint64_t e : *exps) {
          row.push_back(plan.field.pow(plan.points[w - 1], e));
        }
        m.push_back(std::move(row));
      }
      if (rank_mod_p(std::move(m), plan.field) < subset.size()) ok = false;
    }
    if (!ok) rep.deficient.push_back(subset);
  }
  return rep;
}

void write_verdict(std::ostream& os, const AuditInstance& in,
                   const AuditResult& r) {
  const CodeParams& p = in.params;
  os << "instance t=" << p.t << " s=" << p.s << " d=" << p.d
     << " pc=" << p.pc << " P=" << in.workers << " p=" << in.modulus
     << " T=" << in.T << " S=" << in.S << " D=" << in.D << " mode="
     << (in.mode == RandomnessMode::kZeroed ? "zeroed" : "uniform") << '\n';
  os << "domain data_entries=" << r.domain.data_entries
     << " key_entries=" << r.domain.key_entries
     << " data_assignments=" << r.domain.data_assignments
     << " key_assignments=" << r.domain.key_assignments
     << " per_subset=" << r.domain.per_subset << '\n';
  os << "budget=" << in.budget << " required=" << r.required << '\n';
  for (const SubsetVerdict& s : r.subsets) {
    os << "subset=";
    for (std::size_t k = 0; k < s.subset.size(); ++k) {
      os << (k ? "," : "") << s.subset[k];
    }
    std::ostringstream fp;
    fp << std::hex << std::setw(16) << std::setfill('0') << s.fingerprint;
    os << " verdict=" << to_string(s.verdict) << " support=" << s.support
       << " uniform=" << s.uniform << " full_range=" << s.full_range
       << " fingerprint=" << fp.str() << '\n';
  }
  if (!r.message.empty()) os << "message=" << r.message << '\n';
  os << "verdict=" << to_string(r.verdict) << " subsets=" << r.subsets.size()
     << '\n';
}

}  // namespace sgpd
