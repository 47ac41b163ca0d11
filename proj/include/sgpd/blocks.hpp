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

#ifndef SGPD_BLOCKS_HPP_
#define SGPD_BLOCKS_HPP_

#include <cstddef>
#include <cstdint>
#include <vector>

#include "sgpd/field.hpp"
#include "sgpd/matrix.hpp"

namespace sgpd {

template <typename T>
class Grid {
 public:
  Grid() = default;
  Grid(std::size_t rows, std::size_t cols, T init = T{})
      : rows_(rows), cols_(cols), cells_(rows * cols, Cell{init}) {}

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  const T& operator()(std::size_t r, std::size_t c) const {
    return cells_[r * cols_ + c].value;
  }
  T& operator()(std::size_t r, std::size_t c) {
    return cells_[r * cols_ + c].value;
  }

  std::size_t count(const T& value) const {
    std::size_t n = 0;
    for (const auto& x : cells_) n += (x.value == value);
    return n;
  }

  friend bool operator==(const Grid&, const Grid&) = default;

 private:
  // Wrapped so that Grid<bool> hands out real references.
  struct Cell {
    T value;
    friend bool operator==(const Cell&, const Cell&) = default;
  };
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<Cell> cells_;
};

// A matrix cut into a grid of equally sized blocks.
class BlockMatrix {
 public:
  BlockMatrix(std::size_t grid_rows, std::size_t grid_cols,
              std::size_t block_rows, std::size_t block_cols,
              const PrimeField& field);

  std::size_t grid_rows() const { return grid_rows_; }
  std::size_t grid_cols() const { return grid_cols_; }
  std::size_t block_rows() const { return block_rows_; }
  std::size_t block_cols() const { return block_cols_; }
  std::size_t rows() const { return grid_rows_ * block_rows_; }
  std::size_t cols() const { return grid_cols_ * block_cols_; }
  const PrimeField& field() const { return field_; }

  const Matrix& block(std::size_t i, std::size_t j) const {
    return blocks_[i * grid_cols_ + j];
  }
  Matrix& block(std::size_t i, std::size_t j) {
    return blocks_[i * grid_cols_ + j];
  }

  Matrix assemble() const;

  friend bool operator==(const BlockMatrix&, const BlockMatrix&) = default;

 private:
  std::size_t grid_rows_;
  std::size_t grid_cols_;
  std::size_t block_rows_;
  std::size_t block_cols_;
  PrimeField field_;
  std::vector<Matrix> blocks_;
};

// Throws ConfigError when the grid does not divide the matrix.
BlockMatrix partition(const Matrix& m, std::size_t grid_rows,
                      std::size_t grid_cols);

// Block-wise product C_{i,j} = sum_k A_{i,k} B_{k,j}.
BlockMatrix multiply(const BlockMatrix& a, const BlockMatrix& b);

enum class CodeCase { kNonSecure, kSecureTall, kSecureWide };

const char* to_string(CodeCase c);

// kZeroed replaces every key block by zero; used as a leak control.
enum class RandomnessMode { kUniform, kZeroed };

struct CodeParams {
  std::size_t t = 1;
  std::size_t s = 1;
  std::size_t d = 1;
  std::size_t pc = 0;
};

// P_C == 0 is non-secure regardless of shape; otherwise s < t is tall.
CodeCase select_case(const CodeParams& params);

struct AugmentedPair {
  CodeParams params;
  CodeCase code_case = CodeCase::kNonSecure;
  // Number of appended block rows (tall) or columns (wide).
  std::size_t delta = 0;

  BlockMatrix a_star;
  BlockMatrix b_star;

  // Key grids in natural order: tall R is delta x s and R' is s x delta;
  // wide R is t x delta and R' is delta x d. Masked blocks are zero here too.
  BlockMatrix random_a;
  BlockMatrix random_b;

  // Over the full augmented grids; true marks a structurally zero key block.
  Grid<bool> zero_mask_a;
  Grid<bool> zero_mask_b;

  bool is_key_a(std::size_t i, std::size_t j) const;
  bool is_key_b(std::size_t k, std::size_t l) const;

  std::size_t appended_blocks_a() const;
  std::size_t appended_blocks_b() const;

  // Data blocks back out of the augmented matrices.
  BlockMatrix data_a() const;
  BlockMatrix data_b() const;
};

std::size_t ceil_div(std::size_t a, std::size_t b);

// Augmentation sizes and structurally zero key blocks, shared by the
// augmenter and the code construction.
struct KeyLayout {
  CodeCase code_case = CodeCase::kNonSecure;
  std::size_t delta = 0;
  // Over the augmented grids A* and B*.
  Grid<bool> zero_mask_a;
  Grid<bool> zero_mask_b;
};

// Surplus keys (appended blocks minus P_C per side) are zeroed highest
// exponent first. Tall: last R row right to left, last R' column top to
// bottom. Wide: R bottom row right to left then upward, R' top row right to
// left then downward.
KeyLayout key_layout(const CodeParams& params);

// s < t: A* = [A; R] with ceil(P_C/s) key rows, B* = [B R'].
AugmentedPair augment_tall(const BlockMatrix& a, const BlockMatrix& b,
                           std::size_t pc, std::size_t workers,
                           SeededRandomSource& rng,
                           RandomnessMode mode = RandomnessMode::kUniform);

// s >= t: A* = [A R] with ceil(P_C/min{t,d}) key columns, B* = [R'; B].
AugmentedPair augment_wide(const BlockMatrix& a, const BlockMatrix& b,
                           std::size_t pc, std::size_t workers,
                           SeededRandomSource& rng,
                           RandomnessMode mode = RandomnessMode::kUniform);

// Dispatches on s < t. With P_C == 0 both paths are the identity.
AugmentedPair augment(const BlockMatrix& a, const BlockMatrix& b,
                      std::size_t pc, std::size_t workers,
                      SeededRandomSource& rng,
                      RandomnessMode mode = RandomnessMode::kUniform);

}  // namespace sgpd

#endif  // SGPD_BLOCKS_HPP_
