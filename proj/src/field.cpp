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

#include "sgpd/field.hpp"

#include <limits>
#include <stdexcept>
#include <string>

#include "sgpd/errors.hpp"

namespace sgpd {

bool is_prime(std::uint64_t n) {
  if (n < 2) return false;
  if (n % 2 == 0) return n == 2;
  for (std::uint64_t d = 3; d * d <= n; d += 2) {
    if (n % d == 0) return false;
  }
  return true;
}

PrimeField::PrimeField(std::uint32_t p) : p_(p) {
  if (p >= (1u << 31) || !is_prime(p)) {
    throw ConfigError("field modulus " + std::to_string(p) +
                      " is not a prime below 2^31");
  }
}

std::uint32_t PrimeField::pow(std::uint32_t a, std::uint64_t e) const {
  std::uint32_t result = 1 % p_;
  std::uint32_t base = a % p_;
  while (e != 0) {
    if (e & 1) result = mul(result, base);
    base = mul(base, base);
    e >>= 1;
  }
  return result;
}

std::uint32_t PrimeField::inv(std::uint32_t a) const {
  if (a % p_ == 0) throw std::domain_error("zero has no inverse");
  return pow(a, p_ - 2);
}

FieldElement PrimeField::element(std::uint64_t value) const {
  return FieldElement(reduce(value), p_);
}

FieldElement::FieldElement(std::uint32_t value, std::uint32_t modulus)
    : value_(value % modulus), modulus_(modulus) {}

void FieldElement::check_same(const FieldElement& o) const {
  if (modulus_ != o.modulus_) {
    throw UsageError("field elements from GF(" + std::to_string(modulus_) +
                     ") and GF(" + std::to_string(o.modulus_) + ") mixed");
  }
}

FieldElement FieldElement::operator+(const FieldElement& o) const {
  check_same(o);
  std::uint32_t s = value_ + o.value_;
  return {s >= modulus_ ? s - modulus_ : s, modulus_};
}

FieldElement FieldElement::operator-(const FieldElement& o) const {
  check_same(o);
  return {value_ >= o.value_ ? value_ - o.value_ : value_ + modulus_ - o.value_,
          modulus_};
}

FieldElement FieldElement::operator*(const FieldElement& o) const {
  check_same(o);
  return {static_cast<std::uint32_t>(static_cast<std::uint64_t>(value_) *
                                     o.value_ % modulus_),
          modulus_};
}

FieldElement FieldElement::operator-() const {
  return {value_ == 0 ? 0 : modulus_ - value_, modulus_};
}

FieldElement FieldElement::pow(std::uint64_t e) const {
  FieldElement result(1, modulus_);
  FieldElement base = *this;
  while (e != 0) {
    if (e & 1) result = result * base;
    base = base * base;
    e >>= 1;
  }
  return result;
}

FieldElement FieldElement::inv() const {
  if (value_ == 0) throw std::domain_error("zero has no inverse");
  return pow(modulus_ - 2);
}

std::uint64_t SeededRandomSource::below(std::uint64_t bound) {
  if (bound == 0) throw UsageError("empty sampling range");
  const std::uint64_t max = std::numeric_limits<std::uint64_t>::max();
  const std::uint64_t limit = max - (max % bound + 1) % bound;
  std::uint64_t x;
  do {
    x = engine_();
  } while (x > limit);
  return x % bound;
}

double SeededRandomSource::unit() {
  return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
}

FieldElement SeededRandomSource::sample_uniform(const PrimeField& f) {
  return FieldElement(sample(f), f.modulus());
}

}  // namespace sgpd
