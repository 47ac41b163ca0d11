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


// Acceptance driver: one criterion per invocation, one PASS/FAIL line each.

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <map>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "oracle.hpp"
#include "sgpd/blocks.hpp"
#include "sgpd/cluster_sim.hpp"
#include "sgpd/codec.hpp"
#include "sgpd/commands.hpp"
#include "sgpd/errors.hpp"
#include "sgpd/matrix.hpp"
#include "sgpd/secrecy_audit.hpp"

namespace {

using namespace sgpd;
namespace fs = std::filesystem;

struct Outcome {
  bool pass = false;
  std::string detail;
};

std::string key(const CodeParams& p) {
  std::ostringstream os;
  os << "(" << p.t << "," << p.s << "," << p.d << "," << p.pc << ")";
  return os.str();
}

// Fisher-Yates on the seeded source.
template <typename T>
void shuffle(std::vector<T>& v, SeededRandomSource& rng) {
  for (std::size_t i = v.size(); i > 1; --i) {
    std::swap(v[i - 1], v[rng.below(i)]);
  }
}

std::vector<WorkerResult> compute_all(const EncodingPlan& plan,
                                      const AugmentedPair& pair) {
  std::vector<WorkerResult> out;
  for (const CodedShare& s : encode(plan, pair)) out.push_back(worker_compute(s));
  return out;
}

Outcome criterion_1() {
  SeededRandomSource rng(2026);
  std::size_t decoded = 0, wrong = 0, tall = 0, wide = 0;
  std::set<std::size_t> pcs;
  std::set<std::uint32_t> moduli;
  std::string first_bad;
  for (std::size_t trial = 0; decoded < 240 && trial < 2000; ++trial) {
    const CodeParams p{1 + rng.below(4), 1 + rng.below(4), 1 + rng.below(4),
                       rng.below(4)};
    const std::uint32_t modulus = trial % 2 ? 65537 : 257;
    const PrimeField f(modulus);
    std::size_t P = 0;
    {
      PlanOptions probe;
      probe.check_capacity = false;
      P = build_plan(p, PrimeField(65537), p.pc + 1, probe).recovery_threshold +
          rng.below(4);
    }
    if (P >= modulus) continue;
    EncodingPlan plan;
    try {
      plan = build_plan(p, f, P);
    } catch (const ConfigError&) {
      continue;
    }
    const std::size_t br = 1 + rng.below(2), bc = 1 + rng.below(2),
                      bd = 1 + rng.below(2);
    const Matrix a = Matrix::random(p.t * br, p.s * bc, f, rng);
    const Matrix b = Matrix::random(p.s * bc, p.d * bd, f, rng);
    const AugmentedPair pair = augment(partition(a, p.t, p.s),
                                       partition(b, p.s, p.d), p.pc, P, rng);
    std::vector<WorkerResult> results = compute_all(plan, pair);
    shuffle(results, rng);
    results.resize(plan.recovery_threshold);
    const bool ok = decode(plan, results).assemble() == multiply(a, b);
    ++decoded;
    if (!ok) {
      ++wrong;
      if (first_bad.empty()) first_bad = key(p);
    }
    if (p.pc > 0 && p.s < p.t) ++tall;
    if (p.pc > 0 && p.s >= p.t) ++wide;
    pcs.insert(p.pc);
    moduli.insert(modulus);
  }
  std::ostringstream os;
  os << "decoded=" << decoded << " mismatches=" << wrong << " tall=" << tall
     << " wide=" << wide << " pc_values=" << pcs.size()
     << " fields=" << moduli.size();
  if (!first_bad.empty()) os << " first_bad=" << first_bad;
  return {decoded >= 200 && wrong == 0 && tall > 0 && wide > 0 &&
              pcs.size() == 4 && moduli.size() == 2,
          os.str()};
}

Outcome criterion_2(const fs::path& report_dir) {
  fs::create_directories(report_dir);
  const fs::path path = report_dir / "threshold_report.csv";
  std::ofstream csv(path);
  csv << "t,s,d,pc,case,construction,closed_form,match,printed_degree_bound,"
         "special_min_td,special_s,unguarded_wide,guarded_wide\n";
  auto opt = [](const std::optional<std::uint64_t>& v) {
    return v ? std::to_string(*v) : std::string();
  };
  std::size_t tall_cases = 0, tall_bad = 0, wide_cases = 0, wide_bad = 0;
  std::size_t bound_diff = 0, special_diff = 0;
  for (std::size_t t = 1; t <= 6; ++t)
    for (std::size_t s = 1; s <= 6; ++s)
      for (std::size_t d = 1; d <= 6; ++d)
        for (std::size_t pc = 0; pc <= 4; ++pc) {
          const CodeParams p{t, s, d, pc};
          const ExponentMap m = build_exponent_map(p);
          std::uint64_t got = 0, want = 0;
          const bool is_tall = s < t;
          if (is_tall) {
            got = oracle::product_length(m, true);
            want = tall_threshold(p);
            ++tall_cases;
            if (got != want) ++tall_bad;
          } else {
            got = oracle::product_length(m, false);
            want = wide_threshold(p);
            ++wide_cases;
            if (got != want) ++wide_bad;
          }
          const auto bound = is_tall ? tall_degree_bound(p) : std::nullopt;
          if (bound && *bound != got) ++bound_diff;
          const auto sp_td = is_tall ? std::nullopt
                                     : wide_special_threshold(p, StrictReading::kMinTD);
          const auto sp_s = is_tall ? std::nullopt
                                    : wide_special_threshold(p, StrictReading::kS);
          if ((sp_td && *sp_td != oracle::product_length(m, true)) ||
              (sp_s && *sp_s != oracle::product_length(m, true)))
            ++special_diff;
          csv << t << ',' << s << ',' << d << ',' << pc << ','
              << (is_tall ? "tall" : "wide") << ',' << got << ',' << want << ','
              << (got == want ? 1 : 0) << ',' << opt(bound) << ','
              << opt(sp_td) << ',' << opt(sp_s) << ','
              << (is_tall ? std::string()
                          : std::to_string(unguarded_wide_map(p).unmasked_threshold()))
              << ','
              << (is_tall ? std::string() : std::to_string(guarded_wide_threshold(p)))
              << '\n';
        }
  std::ostringstream os;
  os << "tall " << (tall_cases - tall_bad) << "/" << tall_cases << " wide "
     << (wide_cases - wide_bad) << "/" << wide_cases
     << " logged: degree_bound_diffs=" << bound_diff
     << " special_branch_diffs=" << special_diff << " report=" << path.string();
  return {tall_bad == 0 && wide_bad == 0, os.str()};
}

Outcome criterion_3() {
  const PrimeField f(257);
  const CodeParams p{3, 2, 2, 2};
  SeededRandomSource rng(3);
  const Matrix a = Matrix::random(6, 4, f, rng);
  const Matrix b = Matrix::random(4, 4, f, rng);
  const EncodingPlan plan = build_plan(p, f, 30);
  const AugmentedPair pair =
      augment(partition(a, 3, 2), partition(b, 2, 2), 2, 30, rng);
  const std::vector<WorkerResult> all = compute_all(plan, pair);
  const Matrix want = multiply(a, b);
  std::size_t same = 0;
  std::optional<Matrix> first;
  for (int k = 0; k < 50; ++k) {
    std::vector<WorkerResult> pick = all;
    shuffle(pick, rng);
    pick.resize(25);
    const Matrix got = decode(plan, pick).assemble();
    if (!first) first = got;
    if (got == *first && got == want) ++same;
  }
  std::size_t refused = 0;
  for (int k = 0; k < 20; ++k) {
    std::vector<WorkerResult> pick = all;
    shuffle(pick, rng);
    pick.resize(24);
    try {
      decode(plan, pick);
    } catch (const NotEnoughResults&) {
      ++refused;
    }
  }
  std::ostringstream os;
  os << "P_R=" << plan.recovery_threshold << " identical=" << same
     << "/50 refused_24=" << refused << "/20";
  return {plan.recovery_threshold == 25 && same == 50 && refused == 20,
          os.str()};
}

std::vector<std::size_t> divisors(std::size_t m) {
  std::vector<std::size_t> out;
  for (std::size_t k = 1; k <= m; ++k)
    if (m % k == 0) out.push_back(k);
  return out;
}

Outcome criterion_4() {
  const PrimeField f(65537);
  std::size_t checked = 0, bad = 0;
  std::string first_bad;
  for (const std::size_t m : {4u, 12u, 36u}) {
    for (const std::size_t t : divisors(m)) {
      for (const std::size_t d : divisors(m)) {
        const CodeParams p{t, 1, d, 0};
        const EncodingPlan plan = build_plan(p, f, t * d);
        const CommunicationLoad cl = communication_load(plan, m, m);
        ++checked;
        if (plan.recovery_threshold != t * d || cl.elements != m * m) {
          ++bad;
          if (first_bad.empty()) first_bad = key(p);
        }
      }
    }
    for (const std::size_t s : divisors(m)) {
      const CodeParams p{1, s, 1, 0};
      const EncodingPlan plan = build_plan(p, f, 2 * s - 1);
      ++checked;
      if (plan.recovery_threshold != 2 * s - 1) {
        ++bad;
        if (first_bad.empty()) first_bad = key(p);
      }
    }
  }
  std::ostringstream os;
  os << "checked=" << checked << " mismatches=" << bad;
  if (!first_bad.empty()) os << " first_bad=" << first_bad;
  return {bad == 0, os.str()};
}

Outcome criterion_5() {
  struct Micro {
    CodeParams p;
    std::size_t P;
    std::uint32_t modulus;
    std::size_t T, S, D;
    bool strict;
  };
  const std::vector<Micro> micro{
      {{2, 1, 1, 1}, 4, 5, 2, 1, 1, false},
      {{3, 2, 1, 1}, 2, 3, 3, 2, 1, true},
      {{2, 1, 1, 2}, 4, 5, 2, 1, 1, false},
      {{2, 1, 2, 2}, 4, 5, 2, 1, 2, false},
      {{1, 1, 1, 1}, 4, 5, 1, 1, 1, false},
      {{1, 2, 1, 2}, 4, 5, 1, 2, 1, false},
      {{2, 2, 2, 1}, 2, 3, 2, 2, 2, true},
      {{2, 2, 1, 1}, 4, 5, 2, 2, 1, true},
  };
  std::ostringstream os;
  bool all_ok = true;
  std::size_t tall = 0, wide = 0, tall_strict = 0, wide_strict = 0;
  for (const Micro& m : micro) {
    AuditInstance in;
    in.params = m.p;
    in.workers = m.P;
    in.modulus = m.modulus;
    in.T = m.T;
    in.S = m.S;
    in.D = m.D;
    const AuditResult secure = audit_all_subsets(in);
    in.mode = RandomnessMode::kZeroed;
    const AuditResult control = audit_all_subsets(in);
    const bool ok = secure.verdict == Verdict::kSecure &&
                    control.verdict == Verdict::kInsecure;
    all_ok = all_ok && ok;
    const bool is_tall = m.p.s < m.p.t;
    if (ok) {
      (is_tall ? tall : wide) += 1;
      if (m.strict) (is_tall ? tall_strict : wide_strict) += 1;
    }
    os << key(m.p) << "p" << m.modulus << "P" << m.P << "="
       << to_string(secure.verdict) << "/" << to_string(control.verdict) << " ";
  }
  os << "tall=" << tall << " wide=" << wide;
  return {all_ok && tall >= 3 && wide >= 3 && tall_strict >= 1 &&
              wide_strict >= 1,
          os.str()};
}

Outcome criterion_6() {
  const PrimeField f(65537);
  PlanOptions opt;
  opt.check_capacity = false;
  std::size_t plans = 0, dirty = 0;
  std::string first_bad;
  for (std::size_t t = 1; t <= 6; ++t)
    for (std::size_t s = 1; s <= 6; ++s)
      for (std::size_t d = 1; d <= 6; ++d)
        for (std::size_t pc = 0; pc <= 4; ++pc) {
          const CodeParams p{t, s, d, pc};
          const EncodingPlan plan = build_plan(p, f, pc + 1, opt);
          ++plans;
          if (!exponent_audit(plan).clean()) {
            ++dirty;
            if (first_bad.empty()) first_bad = key(p);
          }
        }
  // Negative control: B columns advance by t s, dropping the key padding.
  const CodeParams p{3, 2, 2, 2};
  ExponentMap m = build_exponent_map(p);
  for (std::size_t k = 0; k < p.s; ++k)
    for (std::size_t l = 0; l < p.d; ++l)
      m.b(k, l).exponent = p.s - 1 - k + p.t * p.s * l;
  m.refresh_degrees();
  auto ex = extraction_exponents(p);
  for (std::size_t i = 0; i < p.t; ++i)
    for (std::size_t l = 0; l < p.d; ++l)
      ex(i, l) = p.s * i + p.s - 1 + p.t * p.s * l;
  const std::size_t hits = exponent_audit(m, ex, p.s).collisions.size();
  std::ostringstream os;
  os << "clean=" << (plans - dirty) << "/" << plans
     << " control_collisions=" << hits;
  if (!first_bad.empty()) os << " first_bad=" << first_bad;
  return {dirty == 0 && hits >= 1, os.str()};
}

Outcome criterion_7() {
  SweepSpec spec;
  spec.pcs = {0, 11, 29};
  const std::vector<TradeoffPoint> rows = sweep(spec);
  // (a) endpoints of the collusion-free frontier.
  bool has_low = false, has_high = false;
  for (const auto& r : rows) {
    if (r.pc != 0 || !r.frontier) continue;
    if (r.recovery_threshold == 1296 && r.cl_over_td == 1.0) has_low = true;
    if (r.recovery_threshold == 71 && r.cl_over_td == 71.0) has_high = true;
  }
  std::uint64_t min_pr = ~0ull;
  double min_cl = 1e300;
  for (const auto& r : rows) {
    if (r.pc != 0 || !r.feasible) continue;
    min_pr = std::min<std::uint64_t>(min_pr, r.recovery_threshold);
    min_cl = std::min(min_cl, r.cl_over_td);
  }
  const bool a = has_low && has_high && min_pr == 71 && min_cl == 1.0;
  // (b) per grid choice P_R is nondecreasing in P_C, and every higher-P_C
  // frontier point is weakly dominated by some lower-P_C frontier point.
  std::map<std::tuple<std::size_t, std::size_t, std::size_t>,
           std::map<std::size_t, std::uint64_t>>
      by_grid;
  for (const auto& r : rows) by_grid[{r.t, r.s, r.d}][r.pc] = r.recovery_threshold;
  std::size_t regressions = 0;
  for (const auto& [g, curve] : by_grid) {
    std::uint64_t prev = 0;
    for (const auto& [pc, pr] : curve) {
      if (pr < prev) ++regressions;
      prev = pr;
    }
  }
  std::size_t undominated = 0;
  for (const auto& hi : rows) {
    if (!hi.frontier) continue;
    for (const auto& lo_pc : spec.pcs) {
      if (lo_pc >= hi.pc) continue;
      bool covered = false;
      for (const auto& lo : rows) {
        if (lo.pc == lo_pc && lo.frontier &&
            lo.recovery_threshold <= hi.recovery_threshold &&
            lo.cl_over_td <= hi.cl_over_td)
          covered = true;
      }
      if (!covered) ++undominated;
    }
  }
  const bool b = regressions == 0 && undominated == 0;
  // (c) lower bounds everywhere.
  std::size_t below = 0;
  for (const auto& r : rows) {
    if (r.recovery_threshold < 36 || r.cl_over_td < 1.0) ++below;
  }
  const bool c = below == 0;
  std::ostringstream os;
  os << "rows=" << rows.size() << " (a)=" << (a ? "ok" : "fail")
     << " (b)=" << (b ? "ok" : "fail") << " regressions=" << regressions
     << " undominated=" << undominated << " (c)=" << (c ? "ok" : "fail")
     << " below_bound=" << below;
  return {a && b && c, os.str()};
}

Outcome criterion_8() {
  const PrimeField f(257);
  const double shift = 1.0, rate = 2.0;
  const StragglerModel model = StragglerModel::shifted_exponential(shift, rate, 8);
  std::ostringstream os;
  bool ok = true;
  std::vector<double> means;
  std::vector<std::size_t> thresholds;
  for (const CodeParams p : {CodeParams{2, 1, 2, 1}, CodeParams{3, 2, 2, 2}}) {
    const EncodingPlan plan = build_plan(p, f, 30);
    const LatencySummary sum = latency_sweep(plan, model, 1000);
    const double want = oracle::exp_order_statistic_mean(
        plan.recovery_threshold, 30, shift, rate);
    const double z = (sum.mean - want) / sum.se;
    ok = ok && sum.trials == 1000 && sum.failed == 0 && std::fabs(z) <= 3.0;
    means.push_back(sum.mean);
    thresholds.push_back(plan.recovery_threshold);
    os << key(p) << " P_R=" << plan.recovery_threshold << " mean=" << sum.mean
       << " analytic=" << want << " z=" << z << " ";
  }
  const bool monotone = thresholds[0] < thresholds[1] && means[0] < means[1];
  os << "monotone=" << (monotone ? "yes" : "no");
  return {ok && monotone, os.str()};
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"acceptance checks"};
  int criterion = 0;
  std::string report_dir = "acceptance_reports";
  app.add_option("--criterion", criterion, "criterion number, 0 runs all")
      ->check(CLI::Range(0, 8));
  app.add_option("--report-dir", report_dir, "directory for report artifacts");
  CLI11_PARSE(app, argc, argv);

  const std::vector<std::function<Outcome()>> checks{
      criterion_1,
      [&] { return criterion_2(report_dir); },
      criterion_3,
      criterion_4,
      criterion_5,
      criterion_6,
      criterion_7,
      criterion_8,
  };
  bool all = true;
  for (std::size_t k = 1; k <= checks.size(); ++k) {
    if (criterion != 0 && static_cast<std::size_t>(criterion) != k) continue;
    Outcome o;
    try {
      o = checks[k - 1]();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    std::cout << "criterion " << k << ": " << (o.pass ? "PASS" : "FAIL")
              << " " << o.detail << std::endl;
    all = all && o.pass;
  }
  return all ? 0 : 1;
}
