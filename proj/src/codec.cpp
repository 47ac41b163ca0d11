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

#include "sgpd/codec.hpp"

#include <algorithm>
#include <istream>
#include <ostream>
#include <set>
#include <string>
#include <unordered_map>

#include "sgpd/errors.hpp"

namespace sgpd {

void ExponentMap::refresh_degrees() {
  max_degree_a = max_degree_b = raw_degree_a = raw_degree_b = 0;
  auto scan = [](const Grid<Term>& g, std::uint64_t& masked,
                 std::uint64_t& raw) {
    for (std::size_t r = 0; r < g.rows(); ++r) {
      for (std::size_t c = 0; c < g.cols(); ++c) {
        const Term& x = g(r, c);
        raw = std::max(raw, x.exponent);
        if (x.active()) masked = std::max(masked, x.exponent);
      }
    }
  };
  scan(a, max_degree_a, raw_degree_a);
  scan(b, max_degree_b, raw_degree_b);
}

namespace {

void check_params(const CodeParams& p) {
  if (p.t == 0 || p.s == 0 || p.d == 0) {
    throw ConfigError("grid sizes t, s, d must be at least 1");
  }
}

bool tall_layout(const CodeParams& p) { return p.s < p.t || p.pc == 0; }

// Wide layout with A row stride `stride`: A*_{i,j} at stride*i + j and
// B*_{k,l} at t*stride*l + s* - 1 - k (0-based indices).
ExponentMap wide_map(const CodeParams& p, std::size_t stride) {
  const KeyLayout layout = key_layout(p);
  const std::size_t delta = layout.delta;
  const std::size_t s_star = p.s + delta;
  ExponentMap m;
  m.a = Grid<Term>(p.t, s_star);
  m.b = Grid<Term>(s_star, p.d);
  for (std::size_t i = 0; i < p.t; ++i) {
    for (std::size_t j = 0; j < s_star; ++j) {
      Term& x = m.a(i, j);
      x.exponent = stride * i + j;
      x.key = j >= p.s;
      x.zero = layout.zero_mask_a(i, j);
      if (!x.key) x.outer = i, x.inner = j;
    }
  }
  for (std::size_t k = 0; k < s_star; ++k) {
    for (std::size_t l = 0; l < p.d; ++l) {
      Term& x = m.b(k, l);
      x.exponent = p.t * stride * l + s_star - 1 - k;
      x.key = k < delta;
      x.zero = layout.zero_mask_b(k, l);
      if (!x.key) x.outer = l, x.inner = k - delta;
    }
  }
  m.refresh_degrees();
  return m;
}

}  // namespace

ExponentMap build_exponent_map(const CodeParams& p) {
  check_params(p);
  if (!tall_layout(p)) {
    const std::size_t delta = key_layout(p).delta;
    return wide_map(p, p.s + 2 * delta);
  }
  const KeyLayout layout = key_layout(p);
  const std::size_t t_star = p.t + layout.delta;
  const std::size_t d_star = p.d + layout.delta;
  const std::size_t s = p.s;
  ExponentMap m;
  m.a = Grid<Term>(t_star, s);
  m.b = Grid<Term>(s, d_star);
  for (std::size_t i = 0; i < t_star; ++i) {
    for (std::size_t j = 0; j < s; ++j) {
      Term& x = m.a(i, j);
      x.exponent = s * i + j;
      x.key = i >= p.t;
      x.zero = layout.zero_mask_a(i, j);
      if (!x.key) x.outer = i, x.inner = j;
    }
  }
  for (std::size_t k = 0; k < s; ++k) {
    for (std::size_t l = 0; l < d_star; ++l) {
      Term& x = m.b(k, l);
      x.key = l >= p.d;
      x.zero = layout.zero_mask_b(k, l);
      if (!x.key) {
        x.exponent = s - 1 - k + t_star * s * l;
        x.outer = l, x.inner = k;
      } else {
        x.exponent = t_star * s * p.d + s * (l - p.d) + s - 1 - k;
      }
    }
  }
  m.refresh_degrees();
  return m;
}

ExponentMap unguarded_wide_map(const CodeParams& p) {
  check_params(p);
  if (p.s < p.t) throw UsageError("unguarded_wide_map needs s >= t");
  return wide_map(p, p.s + key_layout(p).delta);
}

Grid<std::uint64_t> extraction_exponents(const CodeParams& p) {
  check_params(p);
  Grid<std::uint64_t> g(p.t, p.d);
  const std::size_t delta = key_layout(p).delta;
  // Row stride of A and column stride of B in the product.
  std::uint64_t row = p.s, col = 0;
  if (tall_layout(p)) {
    col = (p.t + delta) * p.s;
  } else {
    row = p.s + 2 * delta;
    col = p.t * row;
  }
  for (std::size_t i = 0; i < p.t; ++i) {
    for (std::size_t l = 0; l < p.d; ++l) {
      g(i, l) = row * i + p.s - 1 + col * l;
    }
  }
  return g;
}

Grid<std::uint64_t> unguarded_wide_extraction(const CodeParams& p) {
  check_params(p);
  Grid<std::uint64_t> g(p.t, p.d);
  const std::uint64_t s_star = p.s + key_layout(p).delta;
  for (std::size_t i = 0; i < p.t; ++i) {
    for (std::size_t l = 0; l < p.d; ++l) {
      g(i, l) = s_star * i + p.s - 1 + p.t * s_star * l;
    }
  }
  return g;
}

std::uint64_t gpd_threshold(std::size_t t, std::size_t s, std::size_t d) {
  return std::uint64_t{t} * s * d + s - 1;
}

std::uint64_t tall_threshold(const CodeParams& p) {
  const auto [t, s, d, pc] = p;
  if (pc == 0) return gpd_threshold(t, s, d);
  const std::uint64_t delta = ceil_div(pc, s);
  const std::uint64_t t_star = t + delta;
  if (s * delta == pc) return t_star * s * (d + 1) + s * delta - 1;
  return t_star * s * (d + 1) - s * delta + 2 * pc - 1;
}

std::optional<std::uint64_t> tall_degree_bound(const CodeParams& p) {
  const auto [t, s, d, pc] = p;
  if (pc == 0) return std::nullopt;
  const std::uint64_t delta = ceil_div(pc, s);
  const std::uint64_t t_star = t + delta;
  if (s * delta == pc) return t_star * s * (d + 1) + s * delta - 1;
  return d * s * t_star - s * delta + 2 * pc + t - 2;
}

std::uint64_t wide_threshold(const CodeParams& p) {
  const auto [t, s, d, pc] = p;
  const std::uint64_t s_star = s + (pc == 0 ? 0 : ceil_div(pc, std::min(t, d)));
  return std::uint64_t{t} * d * s_star + s_star - 1;
}

std::optional<std::uint64_t> wide_special_threshold(const CodeParams& p,
                                                    StrictReading reading) {
  const auto [t, s, d, pc] = p;
  if (pc == 0 || t != d) return std::nullopt;
  const std::uint64_t delta = ceil_div(pc, std::min(t, d));
  const std::uint64_t divisor = reading == StrictReading::kMinTD ? std::min(t, d) : s;
  if (delta * divisor <= pc) return std::nullopt;
  const std::uint64_t s_star = s + delta;
  return s_star * (std::uint64_t{t} * t + 1) - 3;
}

std::uint64_t guarded_wide_threshold(const CodeParams& p) {
  const auto [t, s, d, pc] = p;
  const std::uint64_t delta = pc == 0 ? 0 : ceil_div(pc, std::min(t, d));
  return std::uint64_t{t} * d * (s + 2 * delta) + s - 1;
}

std::uint64_t naive_secure_threshold(const CodeParams& p) {
  const auto [t, s, d, pc] = p;
  if (pc == 0) return gpd_threshold(t, s, d);
  const std::uint64_t delta = ceil_div(pc, s);
  const std::uint64_t full = (t + delta) * s * (d + delta) + s - 1;
  return full - 2 * (s * delta - pc);
}

EncodingPlan build_plan(const CodeParams& params, const PrimeField& field,
                        std::size_t workers, const PlanOptions& options) {
  check_params(params);
  if (workers == 0) throw ConfigError("worker count P must be at least 1");
  if (params.pc >= workers) {
    throw ConfigError("collusion level P_C=" + std::to_string(params.pc) +
                      " must be below the worker count P=" +
                      std::to_string(workers));
  }

  EncodingPlan plan;
  plan.params = params;
  plan.code_case = select_case(params);
  plan.field = field;
  plan.delta = key_layout(params).delta;
  const bool tall = tall_layout(params);
  plan.t_star = params.t + (tall ? plan.delta : 0);
  plan.d_star = params.d + (tall ? plan.delta : 0);
  plan.s_star = params.s + (tall ? 0 : plan.delta);
  plan.exponents = build_exponent_map(params);
  plan.recovery_threshold = plan.exponents.recovery_threshold();
  plan.extraction = extraction_exponents(params);

  if (options.points.empty()) {
    if (field.modulus() <= workers) {
      throw ConfigError("field modulus p=" + std::to_string(field.modulus()) +
                        " must exceed the worker count P=" +
                        std::to_string(workers));
    }
    for (std::size_t w = 1; w <= workers; ++w) {
      plan.points.push_back(static_cast<std::uint32_t>(w));
    }
  } else {
    if (options.points.size() != workers) {
      throw ConfigError("expected " + std::to_string(workers) +
                        " evaluation points, got " +
                        std::to_string(options.points.size()));
    }
    std::set<std::uint32_t> seen;
    for (std::uint32_t z : options.points) {
      if (z == 0 || z >= field.modulus() || !seen.insert(z).second) {
        throw ConfigError("evaluation points must be distinct nonzero field "
                          "elements (bad point " + std::to_string(z) + ")");
      }
    }
    plan.points = options.points;
  }

  if (options.check_capacity) {
    if (workers < plan.recovery_threshold) {
      throw ConfigError("P=" + std::to_string(workers) +
                        " workers is below the recovery threshold P_R=" +
                        std::to_string(plan.recovery_threshold));
    }
    if (plan.recovery_threshold < 2 * params.pc) {
      throw ConfigError("recovery threshold P_R=" +
                        std::to_string(plan.recovery_threshold) +
                        " is below 2*P_C=" + std::to_string(2 * params.pc));
    }
  }

  ClosedForms& cf = plan.closed_forms;
  if (tall) {
    cf.expected = tall_threshold(params);
    cf.tall_degree_bound = tall_degree_bound(params);
    cf.naive = naive_secure_threshold(params);
    if (cf.expected != plan.recovery_threshold) {
      plan.warnings.push_back("construction P_R=" +
                              std::to_string(plan.recovery_threshold) +
                              " differs from the tall closed form " +
                              std::to_string(cf.expected));
    }
  } else {
    cf.expected = wide_threshold(params);
    cf.wide_special_min_td =
        wide_special_threshold(params, StrictReading::kMinTD);
    cf.wide_special_s = wide_special_threshold(params, StrictReading::kS);
    if (cf.expected != plan.exponents.unmasked_threshold()) {
      plan.warnings.push_back(
          "unmasked construction P_R=" +
          std::to_string(plan.exponents.unmasked_threshold()) +
          " differs from the wide closed form " + std::to_string(cf.expected));
    }
  }
  return plan;
}

ExponentAuditReport exponent_audit(const ExponentMap& map,
                                   const Grid<std::uint64_t>& extraction,
                                   std::size_t inner) {
  ExponentAuditReport report;
  auto duplicates = [](const Grid<Term>& g, std::vector<std::uint64_t>& out) {
    std::unordered_map<std::uint64_t, int> count;
    for (std::size_t r = 0; r < g.rows(); ++r) {
      for (std::size_t c = 0; c < g.cols(); ++c) {
        if (g(r, c).active() && ++count[g(r, c).exponent] == 2) {
          out.push_back(g(r, c).exponent);
        }
      }
    }
    std::sort(out.begin(), out.end());
  };
  duplicates(map.a, report.duplicates_a);
  duplicates(map.b, report.duplicates_b);

  // extraction exponent -> output block
  std::unordered_map<std::uint64_t, std::pair<std::size_t, std::size_t>> target;
  for (std::size_t i = 0; i < extraction.rows(); ++i) {
    for (std::size_t l = 0; l < extraction.cols(); ++l) {
      target.emplace(extraction(i, l), std::make_pair(i, l));
    }
  }
  Grid<std::vector<bool>> hits(extraction.rows(), extraction.cols(),
                               std::vector<bool>(inner, false));

  for (std::size_t ar = 0; ar < map.a.rows(); ++ar) {
    for (std::size_t ac = 0; ac < map.a.cols(); ++ac) {
      const Term& x = map.a(ar, ac);
      if (!x.active()) continue;
      for (std::size_t br = 0; br < map.b.rows(); ++br) {
        for (std::size_t bc = 0; bc < map.b.cols(); ++bc) {
          const Term& y = map.b(br, bc);
          if (!y.active()) continue;
          ++report.pairs_checked;
          const std::uint64_t e = x.exponent + y.exponent;
          auto it = target.find(e);
          if (it == target.end()) continue;
          const auto [i, l] = it->second;
          const bool wanted = !x.key && !y.key && x.outer == i &&
                              y.outer == l && x.inner == y.inner &&
                              x.inner < inner;
          if (wanted && !hits(i, l)[x.inner]) {
            hits(i, l)[x.inner] = true;
          } else {
            report.collisions.push_back(
                {i, l, e, ar, ac, br, bc, x, y});
          }
        }
      }
    }
  }
  for (std::size_t i = 0; i < extraction.rows(); ++i) {
    for (std::size_t l = 0; l < extraction.cols(); ++l) {
      const auto& h = hits(i, l);
      if (std::find(h.begin(), h.end(), false) != h.end()) {
        report.incomplete.emplace_back(i, l);
      }
    }
  }
  return report;
}

ExponentAuditReport exponent_audit(const EncodingPlan& plan) {
  return exponent_audit(plan.exponents, plan.extraction, plan.params.s);
}

namespace {

void check_pair(const EncodingPlan& plan, const AugmentedPair& pair) {
  const CodeParams& p = plan.params;
  const CodeParams& q = pair.params;
  if (p.t != q.t || p.s != q.s || p.d != q.d || p.pc != q.pc) {
    throw UsageError("augmented pair parameters do not match the plan");
  }
  if (pair.a_star.grid_rows() != plan.exponents.a.rows() ||
      pair.a_star.grid_cols() != plan.exponents.a.cols() ||
      pair.b_star.grid_rows() != plan.exponents.b.rows() ||
      pair.b_star.grid_cols() != plan.exponents.b.cols()) {
    throw UsageError("augmented grids do not match the plan's exponent map");
  }
  if (!(pair.a_star.field() == plan.field)) {
    throw UsageError("augmented pair field differs from the plan field");
  }
}

// sum_{blocks} M_{r,c} * z^{exp(r,c)}
Matrix evaluate(const BlockMatrix& m, const Grid<Term>& terms,
                const PrimeField& f, std::uint32_t z) {
  Matrix out(m.block_rows(), m.block_cols(), f);
  for (std::size_t r = 0; r < m.grid_rows(); ++r) {
    for (std::size_t c = 0; c < m.grid_cols(); ++c) {
      const Term& x = terms(r, c);
      if (!x.active()) continue;
      out.add_scaled(m.block(r, c), f.pow(z, x.exponent));
    }
  }
  return out;
}

}  // namespace

CodedShare encode_share(const EncodingPlan& plan, const AugmentedPair& pair,
                        std::size_t worker_id) {
  check_pair(plan, pair);
  if (worker_id == 0 || worker_id > plan.workers()) {
    throw UsageError("worker id " + std::to_string(worker_id) +
                     " outside 1.." + std::to_string(plan.workers()));
  }
  const std::uint32_t z = plan.points[worker_id - 1];
  return {worker_id, z,
          evaluate(pair.a_star, plan.exponents.a, plan.field, z),
          evaluate(pair.b_star, plan.exponents.b, plan.field, z)};
}

std::vector<CodedShare> encode(const EncodingPlan& plan,
                               const AugmentedPair& pair) {
  std::vector<CodedShare> out;
  out.reserve(plan.workers());
  for (std::size_t w = 1; w <= plan.workers(); ++w) {
    out.push_back(encode_share(plan, pair, w));
  }
  return out;
}

WorkerResult worker_compute(const CodedShare& share, double completion_time) {
  return {share.worker_id, share.point, multiply(share.a_share, share.b_share),
          completion_time};
}

namespace {

// The first P_R results by worker id, validated against the plan.
std::vector<const WorkerResult*> select_results(
    const EncodingPlan& plan, const std::vector<WorkerResult>& results) {
  std::vector<const WorkerResult*> sorted;
  std::set<std::uint32_t> points;
  std::set<std::size_t> ids;
  for (const WorkerResult& r : results) {
    if (r.worker_id == 0 || r.worker_id > plan.workers() ||
        plan.points[r.worker_id - 1] != r.point) {
      throw UsageError("result from worker " + std::to_string(r.worker_id) +
                       " at point " + std::to_string(r.point) +
                       " does not belong to the plan");
    }
    if (!points.insert(r.point).second || !ids.insert(r.worker_id).second) {
      throw UsageError("duplicate evaluation point " +
                       std::to_string(r.point) + " among worker results");
    }
    sorted.push_back(&r);
  }
  const std::size_t need = plan.recovery_threshold;
  if (sorted.size() < need) throw NotEnoughResults(sorted.size(), need);
  std::sort(sorted.begin(), sorted.end(),
            [](const WorkerResult* x, const WorkerResult* y) {
              return x->worker_id < y->worker_id;
            });
  sorted.resize(need);
  const Matrix& first = sorted.front()->product;
  for (const WorkerResult* r : sorted) {
    if (r->product.rows() != first.rows() ||
        r->product.cols() != first.cols() ||
        !(r->product.field() == plan.field)) {
      throw UsageError("worker products disagree in shape or field");
    }
  }
  return sorted;
}

// weights[e][q]: coefficient of z^e in the Lagrange basis polynomial of
// point q, for the requested exponents.
std::vector<std::vector<std::uint32_t>> lagrange_weights(
    const PrimeField& f, const std::vector<std::uint32_t>& x,
    const std::vector<std::uint64_t>& exponents) {
  const std::size_t n = x.size();
  // master(z) = prod (z - x_q), coefficients low to high, degree n.
  std::vector<std::uint32_t> master(n + 1, 0);
  master[0] = 1;
  for (std::size_t q = 0; q < n; ++q) {
    for (std::size_t k = q + 1; k > 0; --k) {
      master[k] = f.sub(master[k - 1], f.mul(x[q], master[k]));
    }
    master[0] = f.neg(f.mul(x[q], master[0]));
  }
  std::vector<std::vector<std::uint32_t>> w(
      exponents.size(), std::vector<std::uint32_t>(n, 0));
  std::vector<std::uint32_t> quotient(n);
  for (std::size_t q = 0; q < n; ++q) {
    // master(z) / (z - x_q) by synthetic division from the top.
    quotient[n - 1] = master[n];
    for (std::size_t k = n - 1; k > 0; --k) {
      quotient[k - 1] = f.add(master[k], f.mul(x[q], quotient[k]));
    }
    std::uint32_t denom = 1;
    for (std::size_t r = 0; r < n; ++r) {
      if (r != q) denom = f.mul(denom, f.sub(x[q], x[r]));
    }
    const std::uint32_t scale = f.inv(denom);
    for (std::size_t e = 0; e < exponents.size(); ++e) {
      w[e][q] = f.mul(quotient[exponents[e]], scale);
    }
  }
  return w;
}

std::vector<Matrix> combine(const PrimeField& f,
                            const std::vector<const WorkerResult*>& used,
                            const std::vector<std::uint64_t>& exponents) {
  std::vector<std::uint32_t> x;
  for (const WorkerResult* r : used) x.push_back(r->point);
  const auto w = lagrange_weights(f, x, exponents);
  const Matrix& shape = used.front()->product;
  std::vector<Matrix> out;
  out.reserve(exponents.size());
  for (std::size_t e = 0; e < exponents.size(); ++e) {
    Matrix acc(shape.rows(), shape.cols(), f);
    for (std::size_t q = 0; q < used.size(); ++q) {
      if (w[e][q] != 0) acc.add_scaled(used[q]->product, w[e][q]);
    }
    out.push_back(std::move(acc));
  }
  return out;
}

}  // namespace

BlockMatrix decode(const EncodingPlan& plan,
                   const std::vector<WorkerResult>& results) {
  const auto used = select_results(plan, results);
  const std::size_t t = plan.params.t;
  const std::size_t d = plan.params.d;
  std::vector<std::uint64_t> exponents;
  for (std::size_t i = 0; i < t; ++i) {
    for (std::size_t l = 0; l < d; ++l) {
      exponents.push_back(plan.extraction(i, l));
    }
  }
  auto blocks = combine(plan.field, used, exponents);
  const Matrix& shape = used.front()->product;
  BlockMatrix c(t, d, shape.rows(), shape.cols(), plan.field);
  for (std::size_t i = 0; i < t; ++i) {
    for (std::size_t l = 0; l < d; ++l) {
      c.block(i, l) = std::move(blocks[i * d + l]);
    }
  }
  return c;
}

std::vector<Matrix> interpolate_all(const EncodingPlan& plan,
                                    const std::vector<WorkerResult>& results) {
  const auto used = select_results(plan, results);
  std::vector<std::uint64_t> exponents(plan.recovery_threshold);
  for (std::size_t e = 0; e < exponents.size(); ++e) exponents[e] = e;
  return combine(plan.field, used, exponents);
}

CommunicationLoad communication_load(const EncodingPlan& plan, std::size_t T,
                                     std::size_t D) {
  const std::size_t t = plan.params.t;
  const std::size_t d = plan.params.d;
  if (T == 0 || D == 0 || T % t != 0 || D % d != 0) {
    throw ConfigError("T=" + std::to_string(T) + " and D=" +
                      std::to_string(D) + " must be positive multiples of t=" +
                      std::to_string(t) + " and d=" + std::to_string(d));
  }
  CommunicationLoad load;
  load.elements = std::uint64_t{plan.recovery_threshold} * (T / t) * (D / d);
  load.lower_bound = std::uint64_t{T} * D;
  load.over_td = static_cast<double>(plan.recovery_threshold) /
                 static_cast<double>(t * d);
  return load;
}

namespace {

void write_rows(std::ostream& os, const Matrix& m) {
  for (std::size_t r = 0; r < m.rows(); ++r) {
    for (std::size_t c = 0; c < m.cols(); ++c) {
      if (c) os << ' ';
      os << m(r, c);
    }
    os << '\n';
  }
}

Matrix read_rows(std::istream& is, std::size_t rows, std::size_t cols,
                 const PrimeField& f) {
  Matrix m(rows, cols, f);
  for (std::size_t r = 0; r < rows; ++r) {
    for (std::size_t c = 0; c < cols; ++c) {
      std::uint64_t v = 0;
      if (!(is >> v) || v >= f.modulus()) {
        throw ConfigError("share file: bad or missing matrix entry");
      }
      m(r, c) = static_cast<std::uint32_t>(v);
    }
  }
  return m;
}

}  // namespace

void write_share(std::ostream& os, const CodedShare& share) {
  os << share.worker_id << ' ' << share.point << ' ' << share.a_share.rows()
     << ' ' << share.a_share.cols() << ' ' << share.b_share.rows() << ' '
     << share.b_share.cols() << '\n';
  write_rows(os, share.a_share);
  write_rows(os, share.b_share);
}

CodedShare read_share(std::istream& is, const PrimeField& field) {
  std::size_t id = 0, ra = 0, ca = 0, rb = 0, cb = 0;
  std::uint64_t point = 0;
  if (!(is >> id >> point >> ra >> ca >> rb >> cb) ||
      point >= field.modulus()) {
    throw ConfigError("share file: bad header");
  }
  CodedShare s;
  s.worker_id = id;
  s.point = static_cast<std::uint32_t>(point);
  s.a_share = read_rows(is, ra, ca, field);
  s.b_share = read_rows(is, rb, cb, field);
  return s;
}

}  // namespace sgpd
