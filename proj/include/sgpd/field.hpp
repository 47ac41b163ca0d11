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

#ifndef SGPD_FIELD_HPP_
#define SGPD_FIELD_HPP_

#include <cstdint>
#include <ostream>
#include <random>

namespace sgpd {

class FieldElement;

// GF(p) for a prime p < 2^31. Raw operations work on reduced uint32 values
// so that dense matrices can store plain integers.
class PrimeField {
 public:
  // Throws ConfigError unless p is prime and below 2^31.
  explicit PrimeField(std::uint32_t p);

  std::uint32_t modulus() const { return p_; }

  std::uint32_t reduce(std::uint64_t x) const {
    return static_cast<std::uint32_t>(x % p_);
  }
  std::uint32_t add(std::uint32_t a, std::uint32_t b) const {
    std::uint32_t s = a + b;
    return s >= p_ ? s - p_ : s;
  }
  std::uint32_t sub(std::uint32_t a, std::uint32_t b) const {
    return a >= b ? a - b : a + p_ - b;
  }
  std::uint32_t neg(std::uint32_t a) const { return a == 0 ? 0 : p_ - a; }
  std::uint32_t mul(std::uint32_t a, std::uint32_t b) const {
    return static_cast<std::uint32_t>(static_cast<std::uint64_t>(a) * b % p_);
  }
  // 0^0 == 1.
  std::uint32_t pow(std::uint32_t a, std::uint64_t e) const;
  // Throws std::domain_error for a == 0.
  std::uint32_t inv(std::uint32_t a) const;

  FieldElement element(std::uint64_t value) const;

  friend bool operator==(const PrimeField&, const PrimeField&) = default;

 private:
  std::uint32_t p_;
};

bool is_prime(std::uint64_t n);

// A value tagged with its modulus. Mixing moduli is a UsageError.
class FieldElement {
 public:
  FieldElement(std::uint32_t value, std::uint32_t modulus);

  std::uint32_t value() const { return value_; }
  std::uint32_t modulus() const { return modulus_; }

  FieldElement operator+(const FieldElement& o) const;
  FieldElement operator-(const FieldElement& o) const;
  FieldElement operator*(const FieldElement& o) const;
  FieldElement operator-() const;

  FieldElement inv() const;
  FieldElement pow(std::uint64_t e) const;

  friend bool operator==(const FieldElement&, const FieldElement&) = default;
  friend std::ostream& operator<<(std::ostream& os, const FieldElement& x) {
    return os << x.value_;
  }

 private:
  void check_same(const FieldElement& o) const;

  std::uint32_t value_;
  std::uint32_t modulus_;
};

// Seeded source of uniform field elements. Not thread-safe; one per thread.
class SeededRandomSource {
 public:
  explicit SeededRandomSource(std::uint64_t seed) : engine_(seed) {}

  // Uniform on [0, bound) by rejection from the 64-bit engine output, so the
  // stream is identical on every standard library.
  std::uint64_t below(std::uint64_t bound);
  // Uniform on [0, 1) with 53 random bits.
  double unit();

  std::uint32_t sample(const PrimeField& f) {
    return static_cast<std::uint32_t>(below(f.modulus()));
  }
  FieldElement sample_uniform(const PrimeField& f);

  std::mt19937_64& engine() { return engine_; }

 private:
  std::mt19937_64 engine_;
};

}  // namespace sgpd

#endif  // SGPD_FIELD_HPP_
