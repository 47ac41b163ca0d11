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

#include "sgpd/cluster_sim.hpp"

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <limits>
#include <numeric>
#include <ostream>
#include <sstream>

#include "sgpd/errors.hpp"

namespace sgpd {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

// Fixed precision so that reports diff cleanly.
std::string fmt(double x) {
  if (std::isinf(x)) return "inf";
  std::ostringstream os;
  os.precision(17);
  os << x;
  return os.str();
}

std::vector<std::size_t> order_by_completion(const std::vector<double>& times) {
  std::vector<std::size_t> idx;
  for (std::size_t w = 0; w < times.size(); ++w) {
    if (!std::isinf(times[w])) idx.push_back(w);
  }
  std::sort(idx.begin(), idx.end(), [&](std::size_t x, std::size_t y) {
    return times[x] != times[y] ? times[x] < times[y] : x < y;
  });
  return idx;
}

}  // namespace

const char* to_string(StragglerKind k) {
  switch (k) {
    case StragglerKind::kFixedSet:
      return "fixed";
    case StragglerKind::kRandomSubset:
      return "random";
    case StragglerKind::kLatency:
      return "latency";
  }
  return "?";
}

StragglerModel StragglerModel::fixed_set(std::vector<std::size_t> ids) {
  StragglerModel m;
  m.kind = StragglerKind::kFixedSet;
  m.responders = std::move(ids);
  return m;
}

StragglerModel StragglerModel::random_subset(std::size_t count,
                                             std::uint64_t seed) {
  StragglerModel m;
  m.kind = StragglerKind::kRandomSubset;
  m.responder_count = count;
  m.seed = seed;
  return m;
}

StragglerModel StragglerModel::shifted_exponential(double shift, double rate,
                                                   std::uint64_t seed,
                                                   double failure_probability) {
  StragglerModel m;
  m.kind = StragglerKind::kLatency;
  m.shift = shift;
  m.rate = rate;
  m.seed = seed;
  m.failure_probability = failure_probability;
  return m;
}

std::vector<double> completion_times(const StragglerModel& model,
                                     std::size_t workers) {
  std::vector<double> times(workers, kInf);
  switch (model.kind) {
    case StragglerKind::kFixedSet: {
      double rank = 1.0;
      for (std::size_t id : model.responders) {
        if (id == 0 || id > workers) {
          throw ConfigError("responder id " + std::to_string(id) +
                            " outside 1.." + std::to_string(workers));
        }
        if (std::isinf(times[id - 1])) times[id - 1] = rank++;
      }
      break;
    }
    case StragglerKind::kRandomSubset: {
      if (model.responder_count > workers) {
        throw ConfigError("responder count " +
                          std::to_string(model.responder_count) +
                          " exceeds P=" + std::to_string(workers));
      }
      SeededRandomSource rng(model.seed);
      std::vector<std::size_t> ids(workers);
      std::iota(ids.begin(), ids.end(), 0);
      // Partial Fisher-Yates.
      for (std::size_t k = 0; k < model.responder_count; ++k) {
        std::swap(ids[k], ids[k + rng.below(workers - k)]);
        times[ids[k]] = static_cast<double>(k + 1);
      }
      break;
    }
    case StragglerKind::kLatency: {
      if (!(model.rate > 0.0) || model.shift < 0.0 ||
          model.failure_probability < 0.0 || model.failure_probability > 1.0) {
        throw ConfigError("latency model needs rate > 0, shift >= 0 and a "
                          "failure probability in [0,1]");
      }
      SeededRandomSource rng(model.seed);
      for (std::size_t w = 0; w < workers; ++w) {
        const bool failed = rng.unit() < model.failure_probability;
        const double delay = -std::log1p(-rng.unit()) / model.rate;
        if (!failed) times[w] = model.shift + delay;
      }
      break;
    }
  }
  if (model.max_responders > 0) {
    const auto order = order_by_completion(times);
    for (std::size_t k = model.max_responders; k < order.size(); ++k) {
      times[order[k]] = kInf;
    }
  }
  return times;
}

RunReport run(const EncodingPlan& plan, const AugmentedPair& pair,
              const StragglerModel& model) {
  RunReport rep;
  rep.params = plan.params;
  rep.code_case = plan.code_case;
  rep.workers = plan.workers();
  rep.recovery_threshold = plan.recovery_threshold;

  const std::vector<CodedShare> shares = encode(plan, pair);
  const std::vector<double> times = completion_times(model, plan.workers());
  const std::vector<std::size_t> order = order_by_completion(times);
  rep.survivors = order.size();

  const std::size_t take = std::min(order.size(), plan.recovery_threshold);
  std::vector<WorkerResult> results;
  for (std::size_t k = 0; k < take; ++k) {
    const std::size_t w = order[k];
    results.push_back(worker_compute(shares[w], times[w]));
    rep.responder_ids.push_back(shares[w].worker_id);
    rep.responder_points.push_back(shares[w].point);
    rep.communication_load += results.back().product.size();
  }
  rep.completion_time =
      take == plan.recovery_threshold && take > 0 ? times[order[take - 1]] : kInf;
  const Matrix& first = shares.front().a_share;
  const std::size_t block_elems =
      first.rows() * shares.front().b_share.cols();
  rep.expected_load = std::uint64_t{plan.recovery_threshold} * block_elems;

  try {
    Matrix c = decode(plan, results).assemble();
    rep.success = true;
    rep.checksum = checksum(c);
    rep.verified =
        c == multiply(pair.data_a().assemble(), pair.data_b().assemble());
    rep.decoded = std::move(c);
  } catch (const NotEnoughResults& e) {
    rep.failure_cause = std::string("NotEnoughResults: ") + e.what();
  }
  return rep;
}

void write_report(std::ostream& os, const RunReport& r) {
  auto join = [](const auto& v) {
    std::string s;
    for (std::size_t k = 0; k < v.size(); ++k) {
      if (k) s += ',';
      s += std::to_string(v[k]);
    }
    return s;
  };
  os << "case=" << to_string(r.code_case) << '\n'
     << "t=" << r.params.t << '\n'
     << "s=" << r.params.s << '\n'
     << "d=" << r.params.d << '\n'
     << "pc=" << r.params.pc << '\n'
     << "P=" << r.workers << '\n'
     << "P_R=" << r.recovery_threshold << '\n'
     << "survivors=" << r.survivors << '\n'
     << "responder_ids=" << join(r.responder_ids) << '\n'
     << "responder_points=" << join(r.responder_points) << '\n'
     << "completion_time=" << fmt(r.completion_time) << '\n'
     << "success=" << (r.success ? 1 : 0) << '\n'
     << "failure_cause=" << r.failure_cause << '\n'
     << "communication_load=" << r.communication_load << '\n'
     << "expected_load=" << r.expected_load << '\n'
     << "checksum=" << r.checksum << '\n'
     << "verified=" << (r.verified ? 1 : 0) << '\n';
}

LatencySummary latency_sweep(const EncodingPlan& plan,
                             const StragglerModel& model, std::size_t trials) {
  if (trials == 0) throw ConfigError("latency sweep needs at least one trial");
  LatencySummary out;
  out.trials = trials;
  const std::size_t k = plan.recovery_threshold;
  for (std::size_t n = 0; n < trials; ++n) {
    StragglerModel m = model;
    m.seed = model.seed + n;
    std::vector<double> times = completion_times(m, plan.workers());
    std::sort(times.begin(), times.end());
    if (k == 0 || std::isinf(times[k - 1])) {
      ++out.failed;
      continue;
    }
    out.samples.push_back(times[k - 1]);
  }
  const std::size_t n = out.samples.size();
  if (n > 0) {
    out.mean = std::accumulate(out.samples.begin(), out.samples.end(), 0.0) /
               static_cast<double>(n);
  }
  if (n > 1) {
    double ss = 0.0;
    for (double x : out.samples) ss += (x - out.mean) * (x - out.mean);
    out.sd = std::sqrt(ss / static_cast<double>(n - 1));
    out.se = out.sd / std::sqrt(static_cast<double>(n));
  }
  return out;
}

void write_trace(const std::string& dir, const EncodingPlan& plan,
                 const std::vector<CodedShare>& shares,
                 const StragglerModel& model, const RunReport& report,
                 std::uint64_t input_seed) {
  namespace fs = std::filesystem;
  fs::create_directories(dir);
  for (const CodedShare& s : shares) {
    std::ofstream f(fs::path(dir) / ("worker_" + std::to_string(s.worker_id) +
                                     ".share"));
    if (!f) throw ConfigError("cannot write trace into " + dir);
    write_share(f, s);
  }
  std::ofstream m(fs::path(dir) / "manifest.txt");
  if (!m) throw ConfigError("cannot write trace manifest into " + dir);
  m << "modulus=" << plan.field.modulus() << '\n'
    << "input_seed=" << input_seed << '\n'
    << "model=" << to_string(model.kind) << '\n'
    << "model_seed=" << model.seed << '\n'
    << "shift=" << fmt(model.shift) << '\n'
    << "rate=" << fmt(model.rate) << '\n'
    << "failure_probability=" << fmt(model.failure_probability) << '\n'
    << "responder_count=" << model.responder_count << '\n'
    << "max_responders=" << model.max_responders << '\n'
    << "shares=" << shares.size() << '\n';
  write_report(m, report);
}

}  // namespace sgpd
