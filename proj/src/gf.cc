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

#include "somni/gf.h"

#include <string>

#include "somni/errors.h"

namespace somni {

bool IsPrime(std::uint64_t n) {
  if (n < 2) return false;
  for (std::uint64_t d = 2; d * d <= n; ++d) {
    if (n % d == 0) return false;
  }
  return true;
}

std::uint64_t NextPrimeAbove(std::uint64_t n) {
  std::uint64_t p = n + 1;
  while (!IsPrime(p)) ++p;
  return p;
}

PrimeField::PrimeField(std::uint32_t q) : q_(q) {
  if (q >= (1u << 31) || !IsPrime(q)) {
    throw DomainError("field order " + std::to_string(q) +
                      " is not a prime below 2^31");
  }
}

FieldElement PrimeField::Inverse(FieldElement a) const {
  FieldElement result = 1;
  FieldElement base = a % q_;
  for (std::uint32_t e = q_ - 2; e != 0; e >>= 1) {
    if (e & 1u) result = Mul(result, base);
    base = Mul(base, base);
  }
  return result;
}

void PrimeField::AddScaled(std::span<FieldElement> row,
                           std::span<const FieldElement> other,
                           FieldElement factor) const {
  if (factor == 0) return;
  for (std::size_t k = 0; k < row.size(); ++k) {
    if (other[k] != 0) row[k] = Add(row[k], Mul(factor, other[k]));
  }
}

SpanBasis::SpanBasis(PrimeField field, int dimension)
    : field_(field), dimension_(dimension) {
  if (dimension < 0) throw DomainError("negative dimension");
}

Row SpanBasis::Reduce(std::span<const FieldElement> row) const {
  if (static_cast<int>(row.size()) != dimension_) {
    throw DomainError("row has " + std::to_string(row.size()) +
                      " entries, expected " + std::to_string(dimension_));
  }
  Row v(row.begin(), row.end());
  for (auto& x : v) {
    if (x >= field_.order()) x %= field_.order();
  }
  for (std::size_t k = 0; k < rows_.size(); ++k) {
    const FieldElement c = v[pivots_[k]];
    if (c != 0) field_.AddScaled(v, rows_[k], field_.order() - c);
  }
  return v;
}

bool SpanBasis::Insert(std::span<const FieldElement> row) {
  Row v = Reduce(row);
  int pivot = -1;
  for (int k = 0; k < dimension_; ++k) {
    if (v[k] != 0) {
      pivot = k;
      break;
    }
  }
  if (pivot < 0) return false;
  const FieldElement inv = field_.Inverse(v[pivot]);
  for (auto& x : v) x = field_.Mul(x, inv);
  rows_.push_back(std::move(v));
  pivots_.push_back(pivot);
  return true;
}

bool SpanBasis::Contains(std::span<const FieldElement> row) const {
  const Row v = Reduce(row);
  for (FieldElement x : v) {
    if (x != 0) return false;
  }
  return true;
}

bool SpanBasis::ContainsUnit(int column) const {
  Row e(dimension_, 0);
  e.at(column) = 1;
  return Contains(e);
}

Row RandomCombination(const PrimeField& field, int dimension,
                      std::span<const Row> rows, std::mt19937_64& rng) {
  std::uniform_int_distribution<FieldElement> coeff(0, field.order() - 1);
  Row out(dimension, 0);
  for (const Row& r : rows) field.AddScaled(out, r, coeff(rng));
  return out;
}

int Rank(const PrimeField& field, int dimension, std::span<const Row> rows) {
  SpanBasis basis(field, dimension);
  for (const Row& r : rows) {
    basis.Insert(r);
    if (basis.rank() == dimension) break;
  }
  return basis.rank();
}

}  // namespace somni
