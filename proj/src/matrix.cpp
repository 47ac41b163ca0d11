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

#include "sgpd/matrix.hpp"

#include <algorithm>
#include <fstream>
#include <istream>
#include <ostream>

#include "sgpd/errors.hpp"

namespace sgpd {

Matrix::Matrix(std::size_t rows, std::size_t cols, const PrimeField& field)
    : rows_(rows), cols_(cols), field_(field), data_(rows * cols, 0) {}

Matrix::Matrix(std::size_t rows, std::size_t cols, const PrimeField& field,
               std::vector<std::uint32_t> values)
    : rows_(rows), cols_(cols), field_(field), data_(std::move(values)) {
  if (data_.size() != rows * cols) {
    throw UsageError("matrix value count does not match its shape");
  }
  for (auto& v : data_) v = field_.reduce(v);
}

Matrix Matrix::identity(std::size_t n, const PrimeField& field) {
  Matrix m(n, n, field);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
  return m;
}

Matrix Matrix::random(std::size_t rows, std::size_t cols,
                      const PrimeField& field, SeededRandomSource& rng) {
  Matrix m(rows, cols, field);
  for (auto& v : m.data_) v = rng.sample(field);
  return m;
}

bool Matrix::is_zero() const {
  return std::all_of(data_.begin(), data_.end(),
                     [](std::uint32_t v) { return v == 0; });
}

void Matrix::add_scaled(const Matrix& other, std::uint32_t scale) {
  if (other.rows_ != rows_ || other.cols_ != cols_ ||
      !(other.field_ == field_)) {
    throw UsageError("add_scaled: shape or field mismatch");
  }
  if (scale == 0) return;
  for (std::size_t i = 0; i < data_.size(); ++i) {
    data_[i] = field_.add(data_[i], field_.mul(other.data_[i], scale));
  }
}

Matrix multiply(const Matrix& a, const Matrix& b) {
  if (a.cols() != b.rows()) {
    throw UsageError("multiply: inner dimensions " + std::to_string(a.cols()) +
                     " and " + std::to_string(b.rows()) + " differ");
  }
  if (!(a.field() == b.field())) throw UsageError("multiply: field mismatch");
  const PrimeField& f = a.field();
  const std::uint64_t p = f.modulus();
  Matrix c(a.rows(), b.cols(), f);
  std::vector<std::uint64_t> acc(b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i) {
    std::fill(acc.begin(), acc.end(), 0);
    for (std::size_t k = 0; k < a.cols(); ++k) {
      const std::uint64_t aik = a(i, k);
      if (aik == 0) continue;
      for (std::size_t j = 0; j < b.cols(); ++j) {
        acc[j] = (acc[j] + aik * b(k, j)) % p;
      }
    }
    for (std::size_t j = 0; j < b.cols(); ++j) {
      c(i, j) = static_cast<std::uint32_t>(acc[j]);
    }
  }
  return c;
}

std::uint64_t checksum(const Matrix& m) {
  std::uint64_t h = 1469598103934665603ull;
  auto mix = [&h](std::uint64_t v) {
    for (int byte = 0; byte < 8; ++byte) {
      h ^= (v >> (8 * byte)) & 0xffu;
      h *= 1099511628211ull;
    }
  };
  mix(m.rows());
  mix(m.cols());
  mix(m.field().modulus());
  for (auto v : m.values()) mix(v);
  return h;
}

void write_matrix(std::ostream& os, const Matrix& m) {
  os << m.rows() << ' ' << m.cols() << ' ' << m.field().modulus() << '\n';
  for (std::size_t r = 0; r < m.rows(); ++r) {
    for (std::size_t c = 0; c < m.cols(); ++c) {
      if (c != 0) os << ' ';
      os << m(r, c);
    }
    os << '\n';
  }
}

Matrix read_matrix(std::istream& is) {
  std::size_t rows = 0;
  std::size_t cols = 0;
  std::uint64_t modulus = 0;
  if (!(is >> rows >> cols >> modulus)) {
    throw ConfigError("matrix file: missing 'rows cols modulus' header");
  }
  if (modulus > 0xffffffffull) {
    throw ConfigError("matrix file: modulus out of range");
  }
  PrimeField field(static_cast<std::uint32_t>(modulus));
  std::vector<std::uint32_t> values(rows * cols);
  for (auto& v : values) {
    std::uint64_t x;
    if (!(is >> x)) throw ConfigError("matrix file: too few entries");
    if (x >= modulus) throw ConfigError("matrix file: entry not reduced");
    v = static_cast<std::uint32_t>(x);
  }
  return Matrix(rows, cols, field, std::move(values));
}

void save_matrix(const std::string& path, const Matrix& m) {
  std::ofstream os(path);
  if (!os) throw ConfigError("cannot write " + path);
  write_matrix(os, m);
}

Matrix load_matrix(const std::string& path) {
  std::ifstream is(path);
  if (!is) throw ConfigError("cannot read " + path);
  return read_matrix(is);
}

}  // namespace sgpd
