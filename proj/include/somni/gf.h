// Copyright 2026 The Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// Linear algebra over prime fields GF(q).

#ifndef SOMNI_GF_H_
#define SOMNI_GF_H_

#include <cstdint>
#include <random>
#include <span>
#include <vector>

namespace somni {

using FieldElement = std::uint32_t;
using Row = std::vector<FieldElement>;

bool IsPrime(std::uint64_t n);
// Smallest prime strictly greater than n.
std::uint64_t NextPrimeAbove(std::uint64_t n);

class PrimeField {
 public:
  // Throws DomainError unless q is a prime below 2^31.
  explicit PrimeField(std::uint32_t q);

  std::uint32_t order() const { return q_; }
  FieldElement Add(FieldElement a, FieldElement b) const {
    const std::uint32_t s = a + b;
    return s >= q_ ? s - q_ : s;
  }
  FieldElement Sub(FieldElement a, FieldElement b) const {
    return a >= b ? a - b : a + q_ - b;
  }
  FieldElement Mul(FieldElement a, FieldElement b) const {
    return static_cast<FieldElement>(static_cast<std::uint64_t>(a) * b % q_);
  }
  // a^(q-2). Undefined for zero.
  FieldElement Inverse(FieldElement a) const;

  // row += factor * other.
  void AddScaled(std::span<FieldElement> row, std::span<const FieldElement> other,
                 FieldElement factor) const;

  bool operator==(const PrimeField&) const = default;

 private:
  std::uint32_t q_;
};

// Incrementally maintained echelon basis of a row space. Each stored row has
// a unit pivot and zeros at the pivots of all rows stored before it.
class SpanBasis {
 public:
  SpanBasis(PrimeField field, int dimension);

  int dimension() const { return dimension_; }
  int rank() const { return static_cast<int>(rows_.size()); }
  const PrimeField& field() const { return field_; }
  const std::vector<Row>& rows() const { return rows_; }

  // Adds `row` to the span; returns true if the rank grew.
  bool Insert(std::span<const FieldElement> row);
  bool Contains(std::span<const FieldElement> row) const;
  // True if the unit vector e_column lies in the span.
  bool ContainsUnit(int column) const;

 private:
  Row Reduce(std::span<const FieldElement> row) const;

  PrimeField field_;
  int dimension_;
  std::vector<Row> rows_;
  std::vector<int> pivots_;
};

// Uniformly random element of the span of `rows`: each row weighted by an
// independent uniform coefficient.
Row RandomCombination(const PrimeField& field, int dimension,
                      std::span<const Row> rows, std::mt19937_64& rng);

// Rank of the stacked rows.
int Rank(const PrimeField& field, int dimension, std::span<const Row> rows);

}  // namespace somni

#endif  // SOMNI_GF_H_
