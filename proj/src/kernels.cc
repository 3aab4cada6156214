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

#include "somni/kernels.h"

#include <algorithm>
#include <omp.h>

#include "somni/errors.h"

namespace somni::kernels {
namespace {

bool UseThreads(Exec exec, std::uint64_t work) {
  return exec == Exec::kParallel && work >= kParallelThreshold &&
         !omp_in_parallel() && omp_get_max_threads() > 1;
}

Rational RateSum(std::span<const Rational> rates, Subset x) {
  Rational s = 0;
  x.ForEachMember([&](int i) { s += rates[i]; });
  return s;
}

void CheckRates(const EntropyTable& h, std::span<const Rational> rates) {
  if (static_cast<int>(rates.size()) != h.num_users()) {
    throw DomainError("rate vector does not cover the ground set");
  }
}

// Running state of the prefix minimization; Merge is commutative.
struct PrefixAccumulator {
  bool any = false;
  Rational value;
  Subset first, minimal, maximal;
  std::optional<Subset> nonsingleton;

  static bool Better(Subset a, Subset b) {
    return a.size() != b.size() ? a.size() < b.size() : a.bits() < b.bits();
  }

  void Offer(Subset x, const Rational& v, Subset full) {
    if (!any || v < value) {
      any = true;
      value = v;
      first = minimal = maximal = x;
      nonsingleton.reset();
    } else if (v == value) {
      first = std::min(first, x);
      minimal &= x;
      maximal |= x;
    } else {
      return;
    }
    if (x.size() >= 2 && x != full && (!nonsingleton || Better(x, *nonsingleton))) {
      nonsingleton = x;
    }
  }

  void Merge(const PrefixAccumulator& o) {
    if (!o.any) return;
    if (!any || o.value < value) {
      *this = o;
      return;
    }
    if (o.value > value) return;
    first = std::min(first, o.first);
    minimal &= o.minimal;
    maximal |= o.maximal;
    if (o.nonsingleton && (!nonsingleton || Better(*o.nonsingleton, *nonsingleton))) {
      nonsingleton = o.nonsingleton;
    }
  }
};

// Keeps the earliest strictly-better candidate in scan order.
struct PartitionAccumulator {
  bool any = false;
  Rational value;
  std::vector<Subset> blocks;
  std::uint64_t count = 0;
};

// Scans partitions of x; `eval` returns nullopt to skip a partition and
// `better(a, b)` says whether value a strictly beats b. The parallel path
// splits the walk by restricted-growth-string prefixes of a fixed depth and
// reduces the per-prefix winners in prefix order.
template <typename Eval, typename Better>
PartitionAccumulator ScanPartitions(Subset x, Exec exec, Eval eval,
                                    Better better) {
  auto scan = [&](std::span<const int> prefix) {
    PartitionAccumulator acc;
    ForEachPartition(x, prefix, [&](std::span<const Subset> blocks) {
      ++acc.count;
      std::optional<Rational> v = eval(blocks);
      if (v && (!acc.any || better(*v, acc.value))) {
        acc.any = true;
        acc.value = *v;
        acc.blocks.assign(blocks.begin(), blocks.end());
      }
    });
    return acc;
  };

  const int m = x.size();
  constexpr int kPrefixDepth = 6;
  const std::vector<std::vector<int>> prefixes =
      AllRestrictedGrowthStrings(std::min(m, kPrefixDepth));
  // Bell(m) grows fast; the prefix count is a fair proxy for work at m >= 5.
  if (!UseThreads(exec, m >= 5 ? kParallelThreshold : 0)) return scan({});

  std::vector<PartitionAccumulator> parts(prefixes.size());
  const auto n = static_cast<std::int64_t>(prefixes.size());
#pragma omp parallel for schedule(dynamic)
  for (std::int64_t k = 0; k < n; ++k) parts[k] = scan(prefixes[k]);

  PartitionAccumulator best;
  for (auto& p : parts) {
    best.count += p.count;
    if (p.any && (!best.any || better(p.value, best.value))) {
      best.any = true;
      best.value = p.value;
      best.blocks = std::move(p.blocks);
    }
  }
  return best;
}

}  // namespace

std::vector<Rational> EntropyValues(const SourceModel& source, Exec exec) {
  const int n = Users(source).size();
  const std::uint64_t total = std::uint64_t{1} << n;
  std::vector<Rational> values(total);
  const auto count = static_cast<std::int64_t>(total);
  if (UseThreads(exec, total)) {
#pragma omp parallel for schedule(dynamic, 16)
    for (std::int64_t b = 0; b < count; ++b) {
      values[b] = Entropy(source, Subset(static_cast<std::uint32_t>(b)));
    }
  } else {
    for (std::int64_t b = 0; b < count; ++b) {
      values[b] = Entropy(source, Subset(static_cast<std::uint32_t>(b)));
    }
  }
  return values;
}

EntropyTable BuildEntropyTable(const SourceModel& source, Exec exec) {
  return EntropyTable(Users(source), EntropyValues(source, exec));
}

PrefixMinimum MinimizeOverPrefix(const EntropyTable& h, const Rational& alpha,
                                 std::span<const Rational> rates, int i,
                                 Exec exec) {
  CheckRates(h, rates);
  if (i < 0 || i >= h.num_users()) throw DomainError("user index out of range");
  const Subset full = h.All();
  const Subset top = Subset::Singleton(i);
  const Rational shift = alpha - h(full);
  const std::uint64_t count = std::uint64_t{1} << i;

  auto offer = [&](PrefixAccumulator& acc, std::uint64_t s) {
    const Subset x = Subset(static_cast<std::uint32_t>(s)) | top;
    acc.Offer(x, shift + h(x) - RateSum(rates, x), full);
  };

  PrefixAccumulator acc;
  if (UseThreads(exec, count)) {
    const auto n = static_cast<std::int64_t>(count);
#pragma omp parallel
    {
      PrefixAccumulator local;
#pragma omp for schedule(static) nowait
      for (std::int64_t s = 0; s < n; ++s) offer(local, s);
#pragma omp critical(somni_prefix_min)
      acc.Merge(local);
    }
  } else {
    for (std::uint64_t s = 0; s < count; ++s) offer(acc, s);
  }
  return PrefixMinimum{acc.value,   acc.first,        acc.minimal,
                       acc.maximal, acc.nonsingleton, count};
}

std::optional<Subset> FindSwViolation(const EntropyTable& h, Subset x,
                                      std::span<const Rational> rates,
                                      Exec exec) {
  CheckRates(h, rates);
  if (!h.users().Contains(x)) throw DomainError("subset outside ground set");
  // Enumerate proper subsets C of x through the submasks of x.
  const std::vector<int> members = x.Members();
  const std::uint64_t count = std::uint64_t{1} << members.size();
  auto expand = [&](std::uint64_t s) {
    Subset c;
    for (std::size_t k = 0; k < members.size(); ++k) {
      if ((s >> k) & 1u) c |= Subset::Singleton(members[k]);
    }
    return c;
  };
  auto violates = [&](Subset c) {
    return c != x && RateSum(rates, c) < h(x) - h(x - c);
  };

  std::optional<Subset> best;
  if (UseThreads(exec, count)) {
    const auto n = static_cast<std::int64_t>(count);
#pragma omp parallel
    {
      std::optional<Subset> local;
#pragma omp for schedule(static) nowait
      for (std::int64_t s = 0; s < n; ++s) {
        const Subset c = expand(s);
        if (violates(c) && (!local || c < *local)) local = c;
      }
#pragma omp critical(somni_sw_violation)
      if (local && (!best || *local < *best)) best = local;
    }
  } else {
    for (std::uint64_t s = 0; s < count; ++s) {
      const Subset c = expand(s);
      if (violates(c) && (!best || c < *best)) best = c;
    }
  }
  return best;
}

std::optional<Subset> FindPolyhedronViolation(const EntropyTable& h,
                                              const Rational& alpha,
                                              std::span<const Rational> rates,
                                              Exec exec) {
  CheckRates(h, rates);
  const Rational shift = alpha - h(h.All());
  const std::uint64_t count = std::uint64_t{1} << h.num_users();
  auto violates = [&](Subset x) {
    return !x.empty() && RateSum(rates, x) > shift + h(x);
  };
  std::optional<Subset> best;
  if (UseThreads(exec, count)) {
    const auto n = static_cast<std::int64_t>(count);
#pragma omp parallel
    {
      std::optional<Subset> local;
#pragma omp for schedule(static) nowait
      for (std::int64_t b = 0; b < n; ++b) {
        const Subset x(static_cast<std::uint32_t>(b));
        if (violates(x) && (!local || x < *local)) local = x;
      }
#pragma omp critical(somni_polyhedron)
      if (local && (!best || *local < *best)) best = local;
    }
  } else {
    for (std::uint64_t b = 0; b < count; ++b) {
      const Subset x(static_cast<std::uint32_t>(b));
      if (violates(x)) return x;
    }
  }
  return best;
}

PartitionOptimum MaxPartitionRatio(const EntropyTable& h, Subset x,
                                   Exec exec) {
  if (x.size() < 2) {
    throw DomainError("partition ratio needs at least two users");
  }
  if (!h.users().Contains(x)) throw DomainError("subset outside ground set");
  const Rational hx = h(x);
  auto eval = [&](std::span<const Subset> blocks) -> std::optional<Rational> {
    if (blocks.size() < 2) return std::nullopt;
    Rational missing = 0;
    for (Subset c : blocks) missing += hx - h(c);
    return missing / static_cast<std::int64_t>(blocks.size() - 1);
  };
  auto acc = ScanPartitions(x, exec, eval, std::greater<Rational>());
  return {acc.value, std::move(acc.blocks), acc.count};
}

PartitionOptimum MinPartitionSum(const EntropyTable& h, const Rational& alpha,
                                 Subset x, Exec exec) {
  if (x.empty()) throw DomainError("cannot partition the empty set");
  if (!h.users().Contains(x)) throw DomainError("subset outside ground set");
  const Rational shift = alpha - h(h.All());
  auto eval = [&](std::span<const Subset> blocks) -> std::optional<Rational> {
    Rational sum = 0;
    for (Subset c : blocks) sum += shift + h(c);
    return sum;
  };
  auto acc = ScanPartitions(x, exec, eval, std::less<Rational>());
  return {acc.value, std::move(acc.blocks), acc.count};
}

}  // namespace somni::kernels
