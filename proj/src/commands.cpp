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

#include "sgpd/commands.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <ostream>
#include <set>
#include <system_error>
#include <tuple>

#include "sgpd/cluster_sim.hpp"
#include "sgpd/codec.hpp"
#include "sgpd/errors.hpp"
#include "sgpd/matrix.hpp"
#include "sgpd/secrecy_audit.hpp"

namespace sgpd {

namespace {

std::string shortest(double x) {
  char buf[64];
  auto res = std::to_chars(buf, buf + sizeof buf, x);
  return std::string(buf, res.ptr);
}

template <typename T>
std::string join(const std::vector<T>& v) {
  std::string s;
  for (std::size_t k = 0; k < v.size(); ++k) {
    if (k) s += ',';
    s += std::to_string(v[k]);
  }
  return s;
}

// a dominates b: no worse in both coordinates and better in one. C_L/TD is
// compared as P_R/(td) without rounding.
bool dominates(const TradeoffPoint& a, const TradeoffPoint& b) {
  const unsigned __int128 lhs =
      static_cast<unsigned __int128>(a.recovery_threshold) * (b.t * b.d);
  const unsigned __int128 rhs =
      static_cast<unsigned __int128>(b.recovery_threshold) * (a.t * a.d);
  const bool le = a.recovery_threshold <= b.recovery_threshold && lhs <= rhs;
  const bool lt = a.recovery_threshold < b.recovery_threshold || lhs < rhs;
  return le && lt;
}

// Writes to the named file, or to `fallback` when the name is empty.
class Sink {
 public:
  Sink(const std::string& path, std::ostream& fallback) : os_(&fallback) {
    if (!path.empty()) {
      file_.open(path);
      if (!file_) throw ConfigError("cannot open " + path + " for writing");
      os_ = &file_;
    }
  }
  std::ostream& get() { return *os_; }

 private:
  std::ofstream file_;
  std::ostream* os_;
};

Matrix input_matrix(const std::string& path, std::size_t rows,
                    std::size_t cols, const PrimeField& f,
                    SeededRandomSource& rng) {
  if (path.empty()) return Matrix::random(rows, cols, f, rng);
  Matrix m = load_matrix(path);
  if (!(m.field() == f)) {
    throw ConfigError(path + " is over GF(" +
                      std::to_string(m.field().modulus()) +
                      "), expected GF(" + std::to_string(f.modulus()) + ")");
  }
  return m;
}

}  // namespace

std::vector<TradeoffPoint> sweep(const SweepSpec& spec) {
  if (spec.m == 0 || spec.n == 0) throw ConfigError("m and n must be >= 1");
  if (spec.P == 0) throw ConfigError("P must be >= 1");
  if (spec.modulus <= spec.P) {
    throw ConfigError("modulus " + std::to_string(spec.modulus) +
                      " must exceed P=" + std::to_string(spec.P));
  }
  const std::set<std::size_t> pcs(spec.pcs.begin(), spec.pcs.end());
  std::vector<TradeoffPoint> rows;
  for (std::size_t pc : pcs) {
    const std::size_t first = rows.size();
    for (std::size_t s = 1; s <= std::min(spec.m, spec.n); ++s) {
      if (spec.m % s || spec.n % s) continue;
      TradeoffPoint pt;
      pt.pc = pc;
      pt.t = spec.m / s;
      pt.s = s;
      pt.d = spec.n / s;
      const CodeParams params{pt.t, pt.s, pt.d, pc};
      pt.code_case = select_case(params);
      pt.recovery_threshold = build_exponent_map(params).recovery_threshold();
      pt.cl_over_td = static_cast<double>(pt.recovery_threshold) /
                      static_cast<double>(pt.t * pt.d);
      if (pt.s < pt.t) pt.naive = naive_secure_threshold(params);
      pt.feasible = pc < spec.P && pt.recovery_threshold <= spec.P &&
                    (pc == 0 || pt.recovery_threshold >= 2 * pc);
      rows.push_back(pt);
    }
    for (std::size_t a = first; a < rows.size(); ++a) {
      if (!rows[a].feasible) continue;
      bool dominated = false;
      for (std::size_t b = first; b < rows.size() && !dominated; ++b) {
        dominated = b != a && rows[b].feasible && dominates(rows[b], rows[a]);
      }
      rows[a].frontier = !dominated;
    }
  }
  std::sort(rows.begin(), rows.end(),
            [](const TradeoffPoint& x, const TradeoffPoint& y) {
              return std::tie(x.pc, x.t, x.s, x.d) <
                     std::tie(y.pc, y.t, y.s, y.d);
            });
  return rows;
}

void write_sweep_csv(std::ostream& os, const SweepSpec& spec,
                     const std::vector<TradeoffPoint>& points) {
  os << "# command=sweep\n"
     << "# m=" << spec.m << '\n'
     << "# n=" << spec.n << '\n'
     << "# P=" << spec.P << '\n'
     << "# pc_list=" << join(spec.pcs) << '\n'
     << "# modulus=" << spec.modulus << '\n';
  os << "pc,t,s,d,case,P_R,C_L_over_TD,naive_P_R,feasible,frontier\n";
  for (const TradeoffPoint& p : points) {
    os << p.pc << ',' << p.t << ',' << p.s << ',' << p.d << ','
       << to_string(p.code_case) << ',' << p.recovery_threshold << ','
       << shortest(p.cl_over_td) << ','
       << (p.naive ? std::to_string(*p.naive) : std::string()) << ','
       << (p.feasible ? 1 : 0) << ',' << (p.frontier ? 1 : 0) << '\n';
  }
}

int cmd_sweep(const SweepSpec& spec, const std::string& out_path,
              std::ostream& out, std::ostream& err) {
  try {
    const auto rows = sweep(spec);
    Sink sink(out_path, out);
    write_sweep_csv(sink.get(), spec, rows);
    return kExitOk;
  } catch (const ConfigError& e) {
    err << "config error: " << e.what() << '\n';
    return kExitConfig;
  }
}

int cmd_run(const RunConfig& c, std::ostream& out, std::ostream& err) {
  try {
    const PrimeField f(c.modulus);
    SeededRandomSource rng(c.seed);
    const Matrix a = input_matrix(c.a_path, c.T, c.S, f, rng);
    const Matrix b = input_matrix(c.b_path, c.S, c.D, f, rng);
    if (a.cols() != b.rows()) {
      throw ConfigError("A is " + std::to_string(a.rows()) + "x" +
                        std::to_string(a.cols()) + " but B has " +
                        std::to_string(b.rows()) + " rows");
    }
    const CodeParams& p = c.params;
    const BlockMatrix pa = partition(a, p.t, p.s);
    const BlockMatrix pb = partition(b, p.s, p.d);
    const EncodingPlan plan = build_plan(p, f, c.P);
    const AugmentedPair pair = augment(pa, pb, p.pc, c.P, rng);

    StragglerModel model;
    if (c.model == "fixed") {
      std::vector<std::size_t> ids = c.responder_ids;
      if (ids.empty()) {
        const std::size_t n = c.responders ? c.responders : c.P;
        for (std::size_t w = 1; w <= std::min(n, c.P); ++w) ids.push_back(w);
      }
      model = StragglerModel::fixed_set(std::move(ids));
    } else if (c.model == "random") {
      model = StragglerModel::random_subset(c.responders ? c.responders : c.P,
                                            c.model_seed);
    } else if (c.model == "latency") {
      model = StragglerModel::shifted_exponential(c.shift, c.rate, c.model_seed,
                                                  c.failure_probability);
    } else {
      throw ConfigError("unknown straggler model '" + c.model +
                        "' (expected fixed, random or latency)");
    }
    model.max_responders = c.responders;

    std::vector<std::string> warnings = plan.warnings;
    if (p.pc > 0) {
      const KeyRankReport kr = key_rank_check(plan, 1'000'000);
      if (kr.refused) {
        warnings.push_back("key rank check skipped: too many colluder subsets");
      } else if (!kr.deficient.empty()) {
        warnings.push_back(std::to_string(kr.deficient.size()) +
                           " colluder subsets see a singular key matrix; "
                           "these evaluation points are not secure");
      }
    }

    const RunReport rep = run(plan, pair, model);
    if (!c.trace_dir.empty()) {
      write_trace(c.trace_dir, plan, encode(plan, pair), model, rep, c.seed);
    }
    Sink sink(c.report_path, out);
    std::ostream& os = sink.get();
    os << "# command=run\n"
       << "# t=" << p.t << "\n# s=" << p.s << "\n# d=" << p.d
       << "\n# pc=" << p.pc << "\n# P=" << c.P << "\n# T=" << a.rows()
       << "\n# S=" << a.cols() << "\n# D=" << b.cols()
       << "\n# modulus=" << c.modulus << "\n# seed=" << c.seed
       << "\n# a=" << c.a_path << "\n# b=" << c.b_path
       << "\n# model=" << c.model << "\n# responders=" << c.responders
       << "\n# responder_ids=" << join(c.responder_ids)
       << "\n# shift=" << shortest(c.shift) << "\n# rate=" << shortest(c.rate)
       << "\n# failure_probability=" << shortest(c.failure_probability)
       << "\n# model_seed=" << c.model_seed << '\n';
    for (const std::string& w : warnings) os << "# warning=" << w << '\n';
    write_report(os, rep);
    if (rep.success && !c.out_path.empty()) save_matrix(c.out_path, *rep.decoded);
    if (!rep.success) err << "decode failed: " << rep.failure_cause << '\n';
    return rep.success && rep.verified ? kExitOk : kExitFailure;
  } catch (const ConfigError& e) {
    err << "config error: " << e.what() << '\n';
    return kExitConfig;
  } catch (const UsageError& e) {
    err << "config error: " << e.what() << '\n';
    return kExitConfig;
  }
}

int cmd_audit(const AuditConfig& c, std::ostream& out, std::ostream& err) {
  try {
    AuditInstance in;
    in.params = c.params;
    in.workers = c.P;
    in.modulus = c.modulus;
    in.T = c.T;
    in.S = c.S;
    in.D = c.D;
    in.budget = c.budget;
    in.mode = c.negative_control ? RandomnessMode::kZeroed
                                 : RandomnessMode::kUniform;
    const AuditResult r = audit_all_subsets(in);
    Sink sink(c.out_path, out);
    std::ostream& os = sink.get();
    os << "# command=audit\n# negative_control=" << c.negative_control
       << '\n';
    write_verdict(os, in, r);
    if (r.verdict == Verdict::kRefused) {
      err << "audit refused: " << r.message << '\n';
      return kExitRefused;
    }
    if (!c.negative_control) {
      PlanOptions opt;
      opt.check_capacity = false;
      const KeyRankReport kr = key_rank_check(
          build_plan(c.params, PrimeField(c.modulus), c.P, opt), c.budget);
      os << "key_rank subsets=" << kr.subsets_checked
         << " deficient=" << kr.deficient.size() << '\n';
    }
    return r.verdict == Verdict::kSecure ? kExitOk : kExitFailure;
  } catch (const ConfigError& e) {
    err << "config error: " << e.what() << '\n';
    return kExitConfig;
  } catch (const UsageError& e) {
    err << "config error: " << e.what() << '\n';
    return kExitConfig;
  }
}

}  // namespace sgpd
