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

#include "sgpd/blocks.hpp"

#include <algorithm>
#include <string>

#include "sgpd/errors.hpp"

namespace sgpd {

BlockMatrix::BlockMatrix(std::size_t grid_rows, std::size_t grid_cols,
                         std::size_t block_rows, std::size_t block_cols,
                         const PrimeField& field)
    : grid_rows_(grid_rows),
      grid_cols_(grid_cols),
      block_rows_(block_rows),
      block_cols_(block_cols),
      field_(field),
      blocks_(grid_rows * grid_cols, Matrix(block_rows, block_cols, field)) {}

Matrix BlockMatrix::assemble() const {
  Matrix m(rows(), cols(), field_);
  for (std::size_t i = 0; i < grid_rows_; ++i) {
    for (std::size_t j = 0; j < grid_cols_; ++j) {
      const Matrix& b = block(i, j);
      for (std::size_t r = 0; r < block_rows_; ++r) {
        for (std::size_t c = 0; c < block_cols_; ++c) {
          m(i * block_rows_ + r, j * block_cols_ + c) = b(r, c);
        }
      }
    }
  }
  return m;
}

BlockMatrix partition(const Matrix& m, std::size_t grid_rows,
                      std::size_t grid_cols) {
  if (grid_rows == 0 || grid_cols == 0 || m.rows() % grid_rows != 0 ||
      m.cols() % grid_cols != 0) {
    throw ConfigError("cannot split a " + std::to_string(m.rows()) + "x" +
                      std::to_string(m.cols()) + " matrix into a " +
                      std::to_string(grid_rows) + "x" +
                      std::to_string(grid_cols) + " block grid");
  }
  const std::size_t br = m.rows() / grid_rows;
  const std::size_t bc = m.cols() / grid_cols;
  BlockMatrix out(grid_rows, grid_cols, br, bc, m.field());
  for (std::size_t i = 0; i < grid_rows; ++i) {
    for (std::size_t j = 0; j < grid_cols; ++j) {
      Matrix& b = out.block(i, j);
      for (std::size_t r = 0; r < br; ++r) {
        for (std::size_t c = 0; c < bc; ++c) {
          b(r, c) = m(i * br + r, j * bc + c);
        }
      }
    }
  }
  return out;
}

BlockMatrix multiply(const BlockMatrix& a, const BlockMatrix& b) {
  if (a.grid_cols() != b.grid_rows() || a.block_cols() != b.block_rows()) {
    throw UsageError("block multiply: inner grid or block dimensions differ");
  }
  BlockMatrix c(a.grid_rows(), b.grid_cols(), a.block_rows(), b.block_cols(),
                a.field());
  for (std::size_t i = 0; i < a.grid_rows(); ++i) {
    for (std::size_t j = 0; j < b.grid_cols(); ++j) {
      Matrix& acc = c.block(i, j);
      for (std::size_t k = 0; k < a.grid_cols(); ++k) {
        acc.add_scaled(multiply(a.block(i, k), b.block(k, j)), 1);
      }
    }
  }
  return c;
}

const char* to_string(CodeCase c) {
  switch (c) {
    case CodeCase::kNonSecure:
      return "gpd";
    case CodeCase::kSecureTall:
      return "sgpd-tall";
    case CodeCase::kSecureWide:
      return "sgpd-wide";
  }
  return "?";
}

CodeCase select_case(const CodeParams& params) {
  if (params.pc == 0) return CodeCase::kNonSecure;
  return params.s < params.t ? CodeCase::kSecureTall : CodeCase::kSecureWide;
}

std::size_t ceil_div(std::size_t a, std::size_t b) { return (a + b - 1) / b; }

bool AugmentedPair::is_key_a(std::size_t i, std::size_t j) const {
  return code_case == CodeCase::kSecureTall   ? i >= params.t
         : code_case == CodeCase::kSecureWide ? j >= params.s
                                              : false;
}

bool AugmentedPair::is_key_b(std::size_t k, std::size_t l) const {
  return code_case == CodeCase::kSecureTall   ? l >= params.d
         : code_case == CodeCase::kSecureWide ? k < delta
                                              : false;
}

std::size_t AugmentedPair::appended_blocks_a() const {
  return random_a.grid_rows() * random_a.grid_cols();
}

std::size_t AugmentedPair::appended_blocks_b() const {
  return random_b.grid_rows() * random_b.grid_cols();
}

BlockMatrix AugmentedPair::data_a() const {
  BlockMatrix out(params.t, params.s, a_star.block_rows(),
                  a_star.block_cols(), a_star.field());
  for (std::size_t i = 0; i < params.t; ++i) {
    for (std::size_t j = 0; j < params.s; ++j) {
      out.block(i, j) = a_star.block(i, j);
    }
  }
  return out;
}

BlockMatrix AugmentedPair::data_b() const {
  const std::size_t row0 = code_case == CodeCase::kSecureWide ? delta : 0;
  BlockMatrix out(params.s, params.d, b_star.block_rows(),
                  b_star.block_cols(), b_star.field());
  for (std::size_t k = 0; k < params.s; ++k) {
    for (std::size_t l = 0; l < params.d; ++l) {
      out.block(k, l) = b_star.block(row0 + k, l);
    }
  }
  return out;
}

KeyLayout key_layout(const CodeParams& params) {
  const auto [t, s, d, pc] = params;
  KeyLayout out;
  out.code_case = select_case(params);
  if (s < t) {
    out.delta = pc == 0 ? 0 : ceil_div(pc, s);
    const std::size_t t_star = t + out.delta;
    const std::size_t d_star = d + out.delta;
    out.zero_mask_a = Grid<bool>(t_star, s, false);
    out.zero_mask_b = Grid<bool>(s, d_star, false);
    const std::size_t zeros = s * out.delta - pc;
    for (std::size_t n = 0; n < zeros; ++n) {
      out.zero_mask_a(t_star - 1, s - 1 - n) = true;
      out.zero_mask_b(n, d_star - 1) = true;
    }
    return out;
  }
  out.delta = pc == 0 ? 0 : ceil_div(pc, std::min(t, d));
  const std::size_t s_star = s + out.delta;
  out.zero_mask_a = Grid<bool>(t, s_star, false);
  out.zero_mask_b = Grid<bool>(s_star, d, false);
  const std::size_t zeros_a = t * out.delta - pc;
  for (std::size_t n = 0; n < zeros_a; ++n) {
    out.zero_mask_a(t - 1 - n / out.delta, s + out.delta - 1 - n % out.delta) =
        true;
  }
  const std::size_t zeros_b = d * out.delta - pc;
  for (std::size_t n = 0; n < zeros_b; ++n) {
    out.zero_mask_b(n / d, d - 1 - n % d) = true;
  }
  return out;
}

namespace {

struct Shapes {
  std::size_t t, s, d;
};

Shapes check_inputs(const BlockMatrix& a, const BlockMatrix& b, std::size_t pc,
                    std::size_t workers) {
  if (a.grid_cols() != b.grid_rows() || a.block_cols() != b.block_rows()) {
    throw UsageError("A and B block grids are not conformable");
  }
  if (!(a.field() == b.field())) throw UsageError("A and B fields differ");
  if (pc >= workers) {
    throw ConfigError("collusion level P_C=" + std::to_string(pc) +
                      " must be below the worker count P=" +
                      std::to_string(workers));
  }
  return {a.grid_rows(), a.grid_cols(), b.grid_cols()};
}

void fill_random(BlockMatrix& m, SeededRandomSource& rng,
                 RandomnessMode mode) {
  if (mode == RandomnessMode::kZeroed) return;
  for (std::size_t i = 0; i < m.grid_rows(); ++i) {
    for (std::size_t j = 0; j < m.grid_cols(); ++j) {
      m.block(i, j) = Matrix::random(m.block_rows(), m.block_cols(),
                                     m.field(), rng);
    }
  }
}

}  // namespace

AugmentedPair augment_tall(const BlockMatrix& a, const BlockMatrix& b,
                           std::size_t pc, std::size_t workers,
                           SeededRandomSource& rng, RandomnessMode mode) {
  const auto [t, s, d] = check_inputs(a, b, pc, workers);
  if (s >= t) {
    throw UsageError("augment_tall needs s < t (got s=" + std::to_string(s) +
                     ", t=" + std::to_string(t) + ")");
  }
  const std::size_t delta = pc == 0 ? 0 : ceil_div(pc, s);
  const std::size_t t_star = t + delta;
  const std::size_t d_star = d + delta;
  const PrimeField& f = a.field();

  BlockMatrix r(delta, s, a.block_rows(), a.block_cols(), f);
  BlockMatrix r_prime(s, delta, b.block_rows(), b.block_cols(), f);
  fill_random(r, rng, mode);
  fill_random(r_prime, rng, mode);

  KeyLayout layout = key_layout({t, s, d, pc});
  Grid<bool>& mask_a = layout.zero_mask_a;
  Grid<bool>& mask_b = layout.zero_mask_b;
  for (std::size_t i = 0; i < delta; ++i) {
    for (std::size_t j = 0; j < s; ++j) {
      if (mask_a(t + i, j)) r.block(i, j) = Matrix(a.block_rows(), a.block_cols(), f);
    }
  }
  for (std::size_t k = 0; k < s; ++k) {
    for (std::size_t l = 0; l < delta; ++l) {
      if (mask_b(k, d + l)) r_prime.block(k, l) = Matrix(b.block_rows(), b.block_cols(), f);
    }
  }

  BlockMatrix a_star(t_star, s, a.block_rows(), a.block_cols(), f);
  for (std::size_t i = 0; i < t_star; ++i) {
    for (std::size_t j = 0; j < s; ++j) {
      a_star.block(i, j) = i < t ? a.block(i, j) : r.block(i - t, j);
    }
  }
  BlockMatrix b_star(s, d_star, b.block_rows(), b.block_cols(), f);
  for (std::size_t k = 0; k < s; ++k) {
    for (std::size_t l = 0; l < d_star; ++l) {
      b_star.block(k, l) = l < d ? b.block(k, l) : r_prime.block(k, l - d);
    }
  }

  return AugmentedPair{
      .params = {t, s, d, pc},
      .code_case = pc == 0 ? CodeCase::kNonSecure : CodeCase::kSecureTall,
      .delta = delta,
      .a_star = std::move(a_star),
      .b_star = std::move(b_star),
      .random_a = std::move(r),
      .random_b = std::move(r_prime),
      .zero_mask_a = std::move(mask_a),
      .zero_mask_b = std::move(mask_b),
  };
}

AugmentedPair augment_wide(const BlockMatrix& a, const BlockMatrix& b,
                           std::size_t pc, std::size_t workers,
                           SeededRandomSource& rng, RandomnessMode mode) {
  const auto [t, s, d] = check_inputs(a, b, pc, workers);
  if (s < t) {
    throw UsageError("augment_wide needs s >= t (got s=" + std::to_string(s) +
                     ", t=" + std::to_string(t) + ")");
  }
  const std::size_t delta = pc == 0 ? 0 : ceil_div(pc, std::min(t, d));
  const std::size_t s_star = s + delta;
  const PrimeField& f = a.field();

  BlockMatrix r(t, delta, a.block_rows(), a.block_cols(), f);
  BlockMatrix r_prime(delta, d, b.block_rows(), b.block_cols(), f);
  fill_random(r, rng, mode);
  fill_random(r_prime, rng, mode);

  KeyLayout layout = key_layout({t, s, d, pc});
  Grid<bool>& mask_a = layout.zero_mask_a;
  Grid<bool>& mask_b = layout.zero_mask_b;
  for (std::size_t i = 0; i < t; ++i) {
    for (std::size_t c = 0; c < delta; ++c) {
      if (mask_a(i, s + c)) r.block(i, c) = Matrix(a.block_rows(), a.block_cols(), f);
    }
  }
  for (std::size_t k = 0; k < delta; ++k) {
    for (std::size_t l = 0; l < d; ++l) {
      if (mask_b(k, l)) r_prime.block(k, l) = Matrix(b.block_rows(), b.block_cols(), f);
    }
  }

  BlockMatrix a_star(t, s_star, a.block_rows(), a.block_cols(), f);
  for (std::size_t i = 0; i < t; ++i) {
    for (std::size_t j = 0; j < s_star; ++j) {
      a_star.block(i, j) = j < s ? a.block(i, j) : r.block(i, j - s);
    }
  }
  BlockMatrix b_star(s_star, d, b.block_rows(), b.block_cols(), f);
  for (std::size_t k = 0; k < s_star; ++k) {
    for (std::size_t l = 0; l < d; ++l) {
      b_star.block(k, l) =
          k < delta ? r_prime.block(k, l) : b.block(k - delta, l);
    }
  }

  return AugmentedPair{
      .params = {t, s, d, pc},
      .code_case = pc == 0 ? CodeCase::kNonSecure : CodeCase::kSecureWide,
      .delta = delta,
      .a_star = std::move(a_star),
      .b_star = std::move(b_star),
      .random_a = std::move(r),
      .random_b = std::move(r_prime),
      .zero_mask_a = std::move(mask_a),
      .zero_mask_b = std::move(mask_b),
  };
}

AugmentedPair augment(const BlockMatrix& a, const BlockMatrix& b,
                      std::size_t pc, std::size_t workers,
                      SeededRandomSource& rng, RandomnessMode mode) {
  return a.grid_rows() > a.grid_cols()
             ? augment_tall(a, b, pc, workers, rng, mode)
             : augment_wide(a, b, pc, workers, rng, mode);
}

}  // namespace sgpd
