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

#ifndef AUCLEARN_LOWERBOUND_H_
#define AUCLEARN_LOWERBOUND_H_

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "auclearn/dist.h"
#include "auclearn/strategy.h"

namespace auclearn {

inline constexpr double kHardC1 = 2000.0;

// Bidders in S (0-based, subset of {0, ..., n-2}) draw from F+ with
// P(v = 1) = (1 + c1 eps) / n, the other first n-1 bidders from F- with
// P(v = 1) = (1 - c1 eps) / n, and bidder n-1 has value 1. Requires
// eps < 1/4000.
ProductDistribution HardInstance(std::size_t n, double eps,
                                 std::span<const std::size_t> s);

// Bidders in T bid 1/2 + eta at value 1 and 0 at value 0, other opponents
// bid 0, and the last bidder bids 1/2.
StrategyProfile HardProfile(std::size_t n, std::span<const std::size_t> t,
                            double eta = 0.25);

// Interim utility of the last bidder (value 1, bid 1/2) against
// HardProfile(n, T).
double GapUtility(std::size_t n, double eps, std::span<const std::size_t> s,
                  std::span<const std::size_t> t);

struct DistinguisherResult {
  double mean = 0.0;
  double median = 0.0;
  std::vector<double> recovery;
};

// Per trial: draw S, draw m samples from the hard instance, take the
// EMP-argmax T over sets of size ceil((n-1)/2), and score the fraction of
// bidders outside S that T contains. `bias` is c1 eps.
DistinguisherResult DistinguisherExperiment(std::size_t n, double bias,
                                            std::size_t m, std::size_t trials,
                                            std::uint64_t seed);

}  // namespace auclearn

#endif  // AUCLEARN_LOWERBOUND_H_
