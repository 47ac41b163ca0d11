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

#ifndef SGPD_MATRIX_HPP_
#define SGPD_MATRIX_HPP_

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <span>
#include <string>
#include <vector>

#include "sgpd/field.hpp"

namespace sgpd {

// Dense row-major matrix over GF(p).
class Matrix {
 public:
  // 0x0 over GF(2); placeholder for aggregates that are filled later.
  Matrix() : Matrix(0, 0, PrimeField(2)) {}
  Matrix(std::size_t rows, std::size_t cols, const PrimeField& field);
  Matrix(std::size_t rows, std::size_t cols, const PrimeField& field,
         std::vector<std::uint32_t> values);

  static Matrix identity(std::size_t n, const PrimeField& field);
  static Matrix random(std::size_t rows, std::size_t cols,
                       const PrimeField& field, SeededRandomSource& rng);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  std::size_t size() const { return data_.size(); }
  const PrimeField& field() const { return field_; }

  std::uint32_t operator()(std::size_t r, std::size_t c) const {
    return data_[r * cols_ + c];
  }
  std::uint32_t& operator()(std::size_t r, std::size_t c) {
    return data_[r * cols_ + c];
  }
  std::span<const std::uint32_t> values() const { return data_; }
  std::span<std::uint32_t> values() { return data_; }

  bool is_zero() const;

  // this += scale * other
  void add_scaled(const Matrix& other, std::uint32_t scale);

  friend bool operator==(const Matrix& a, const Matrix& b) {
    return a.field_ == b.field_ && a.rows_ == b.rows_ && a.cols_ == b.cols_ &&
           a.data_ == b.data_;
  }

 private:
  std::size_t rows_;
  std::size_t cols_;
  PrimeField field_;
  std::vector<std::uint32_t> data_;
};

// Classical triple-loop product. Throws UsageError on shape or field mismatch.
Matrix multiply(const Matrix& a, const Matrix& b);

// 64-bit FNV-1a over the shape and entries.
std::uint64_t checksum(const Matrix& m);

// Text format: "rows cols modulus" then row-major integers.
void write_matrix(std::ostream& os, const Matrix& m);
Matrix read_matrix(std::istream& is);
void save_matrix(const std::string& path, const Matrix& m);
Matrix load_matrix(const std::string& path);

}  // namespace sgpd

#endif  // SGPD_MATRIX_HPP_
