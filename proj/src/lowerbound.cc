// Copyright 2026 The auclearn Authors
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

#include "auclearn/lowerbound.h"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include "auclearn/error.h"
#include "auclearn/random.h"

namespace auclearn {
namespace {

void CheckSubset(std::size_t n, std::span<const std::size_t> s) {
  for (std::size_t k = 0; k < s.size(); ++k) {
    if (s[k] + 1 >= n) {
      throw Error(ErrorCode::kIndexOutOfRange,
                  "subset element " + std::to_string(s[k]) + " out of range");
    }
  }
}

bool Contains(std::span<const std::size_t> s, std::size_t x) {
  return std::find(s.begin(), s.end(), x) != s.end();
}

double Median(std::vector<double> xs) {
  std::sort(xs.begin(), xs.end());
  const std::size_t k = xs.size();
  if (k == 0) return 0.0;
  return k % 2 == 1 ? xs[k / 2] : 0.5 * (xs[k / 2 - 1] + xs[k / 2]);
}

}  // namespace

ProductDistribution HardInstance(std::size_t n, double eps,
                                 std::span<const std::size_t> s) {
  if (n < 2) {
    throw Error(ErrorCode::kInvalidArgument, "need at least two bidders");
  }
  if (!(eps >= 0.0) || !(eps < 1.0 / 4000.0)) {
    throw Error(ErrorCode::kEpsTooLarge, "eps must be below 1/4000");
  }
  CheckSubset(n, s);
  const double plus = (1.0 + kHardC1 * eps) / static_cast<double>(n);
  const double minus = (1.0 - kHardC1 * eps) / static_cast<double>(n);
  const double atoms[] = {0.0, 1.0};
  std::vector<DiscreteDistribution> marginals;
  for (std::size_t i = 0; i + 1 < n; ++i) {
    const double p = Contains(s, i) ? plus : minus;
    const double weights[] = {1.0 - p, p};
    marginals.push_back(DiscreteDistribution::Make(atoms, weights));
  }
  marginals.push_back(DiscreteDistribution::PointMass(1.0));
  return ProductDistribution(std::move(marginals), 1.0);
}

StrategyProfile HardProfile(std::size_t n, std::span<const std::size_t> t,
                            double eta) {
  CheckSubset(n, t);
  StrategyProfile profile;
  for (std::size_t i = 0; i + 1 < n; ++i) {
    if (Contains(t, i)) {
      profile.push_back(MonotoneStrategy::Make({{0.0, 0.0}, {1.0, 0.5 + eta}}));
    } else {
      profile.push_back(MonotoneStrategy::Constant(0.0));
    }
  }
  profile.push_back(MonotoneStrategy::Constant(0.5));
  return profile;
}

double GapUtility(std::size_t n, double eps, std::span<const std::size_t> s,
                  std::span<const std::size_t> t) {
  CheckSubset(n, s);
  CheckSubset(n, t);
  const double nd = static_cast<double>(n);
  std::size_t in_s = 0;
  for (std::size_t x : t) in_s += Contains(s, x) ? 1 : 0;
  const std::size_t out_s = t.size() - in_s;
  return 0.5 *
         std::pow(1.0 - (1.0 + kHardC1 * eps) / nd, static_cast<double>(in_s)) *
         std::pow(1.0 - (1.0 - kHardC1 * eps) / nd, static_cast<double>(out_s));
}

DistinguisherResult DistinguisherExperiment(std::size_t n, double bias,
                                            std::size_t m, std::size_t trials,
                                            std::uint64_t seed) {
  if (n < 2) {
    throw Error(ErrorCode::kInvalidArgument, "need at least two bidders");
  }
  if (n > 16) {
    throw Error(ErrorCode::kTooLargeToEnumerate,
                "exact argmax over subsets needs n <= 16");
  }
  if (!(bias >= 0.0) || !(bias < 0.5)) {
    throw Error(ErrorCode::kEpsTooLarge, "bias c1 eps must be below 1/2");
  }
  if (m == 0 || trials == 0) {
    throw Error(ErrorCode::kInvalidArgument, "need m >= 1 and trials >= 1");
  }
  const std::size_t coords = n - 1;
  const std::size_t k = (coords + 1) / 2;
  const std::size_t cells = std::size_t{1} << coords;
  const double nd = static_cast<double>(n);
  DistinguisherResult result;
  std::vector<std::uint64_t> count(cells);
  for (std::size_t trial = 0; trial < trials; ++trial) {
    Rng rng(DeriveSeed(seed, static_cast<std::uint64_t>(trial)));
    const std::size_t size =
        rng.Below(2) == 0 ? coords / 2 : (coords + 1) / 2;
    std::vector<std::size_t> order(coords);
    std::iota(order.begin(), order.end(), std::size_t{0});
    for (std::size_t a = coords; a > 1; --a) {
      std::swap(order[a - 1], order[rng.Below(a)]);
    }
    std::vector<bool> in_s(coords, false);
    for (std::size_t a = 0; a < size; ++a) in_s[order[a]] = true;
    std::vector<double> p(coords);
    for (std::size_t c = 0; c < coords; ++c) {
      p[c] = (in_s[c] ? 1.0 + bias : 1.0 - bias) / nd;
    }

    // Histogram of which coordinates have value 1, then subset sums.
    std::fill(count.begin(), count.end(), 0);
    for (std::size_t r = 0; r < m; ++r) {
      std::size_t mask = 0;
      for (std::size_t c = 0; c < coords; ++c) {
        if (rng.Uniform01() < p[c]) mask |= std::size_t{1} << c;
      }
      ++count[mask];
    }
    for (std::size_t c = 0; c < coords; ++c) {
      for (std::size_t u = 0; u < cells; ++u) {
        if (u & (std::size_t{1} << c)) count[u] += count[u ^ (std::size_t{1} << c)];
      }
    }
    // EMP utility of T is proportional to the number of rows with no ones
    // in T. Scan size-k sets in lexicographic order; keep the first max.
    std::vector<std::size_t> t(k);
    std::iota(t.begin(), t.end(), std::size_t{0});
    std::vector<std::size_t> best_t = t;
    std::uint64_t best = 0;
    bool have = false;
    const std::size_t full = cells - 1;
    while (true) {
      std::size_t mask = 0;
      for (std::size_t x : t) mask |= std::size_t{1} << x;
      const std::uint64_t score = count[full & ~mask];
      if (!have || score > best) {
        best = score;
        best_t = t;
        have = true;
      }
      std::size_t a = k;
      while (a > 0 && t[a - 1] == coords - k + a - 1) --a;
      if (a == 0) break;
      ++t[a - 1];
      for (std::size_t b = a; b < k; ++b) t[b] = t[b - 1] + 1;
    }
    std::size_t outside = 0;
    std::size_t hit_outside = 0;
    std::size_t hit_inside = 0;
    for (std::size_t c = 0; c < coords; ++c) {
      if (!in_s[c]) ++outside;
    }
    for (std::size_t x : best_t) {
      if (in_s[x]) {
        ++hit_inside;
      } else {
        ++hit_outside;
      }
    }
    const double recovery =
        outside > 0 ? static_cast<double>(hit_outside) /
                          static_cast<double>(outside)
                    : 1.0 - static_cast<double>(hit_inside) /
                                static_cast<double>(best_t.size());
    result.recovery.push_back(recovery);
  }
  result.mean = std::accumulate(result.recovery.begin(), result.recovery.end(),
                                0.0) /
                static_cast<double>(trials);
  result.median = Median(result.recovery);
  return result;
}

}  // namespace auclearn
