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

#ifndef AUCLEARN_DIST_H_
#define AUCLEARN_DIST_H_

#include <cstddef>
#include <cstdint>
#include <limits>
#include <span>
#include <vector>

#include "auclearn/random.h"

namespace auclearn {

inline constexpr double kUnbounded = std::numeric_limits<double>::infinity();

// Finite-support distribution on [0, H]. Atoms are strictly increasing and
// every stored weight is positive; weights sum to one.
class DiscreteDistribution {
 public:
  // Validates, merges duplicate atoms, drops zero weights and renormalizes.
  // Throws NegativeWeight, WeightSumZero or AtomOutOfRange.
  static DiscreteDistribution Make(std::span<const double> atoms,
                                   std::span<const double> weights,
                                   double upper_bound = kUnbounded);
  static DiscreteDistribution PointMass(double atom);
  static DiscreteDistribution Uniform(std::span<const double> atoms);

  const std::vector<double>& atoms() const { return atoms_; }
  const std::vector<double>& weights() const { return weights_; }
  std::size_t size() const { return atoms_.size(); }
  double min_atom() const { return atoms_.front(); }
  double max_atom() const { return atoms_.back(); }

  double Mean() const;
  // P(v <= x) and P(v < x).
  double Cdf(double x) const;
  double CdfBelow(double x) const;
  // Probability of exactly x (0 when x is not an atom).
  double Mass(double x) const;
  // E[max(v - threshold, 0)].
  double ExpectedExcess(double threshold) const;

  double Sample(Rng& rng) const;

 private:
  DiscreteDistribution() = default;

  std::vector<double> atoms_;
  std::vector<double> weights_;
  std::vector<double> cumulative_;
};

// Distribution of min(v, cap). Mass above cap collapses onto a single atom.
DiscreteDistribution TruncateAt(const DiscreteDistribution& dist, double cap);

// Independent marginals sharing the support bound H.
class ProductDistribution {
 public:
  // H defaults to the largest atom across marginals. Throws AtomOutOfRange
  // when an atom exceeds an explicit H, InvalidArgument when empty.
  explicit ProductDistribution(std::vector<DiscreteDistribution> marginals,
                               double upper_bound = -1.0);

  std::size_t size() const { return marginals_.size(); }
  const DiscreteDistribution& operator[](std::size_t i) const {
    return marginals_[i];
  }
  const std::vector<DiscreteDistribution>& marginals() const {
    return marginals_;
  }
  double upper_bound() const { return upper_bound_; }

  // Number of joint value profiles (saturating).
  std::size_t JointSupportSize() const;

 private:
  std::vector<DiscreteDistribution> marginals_;
  double upper_bound_;
};

// m x n matrix of sampled value profiles, row-major.
class SampleMatrix {
 public:
  SampleMatrix(std::size_t rows, std::size_t cols, std::vector<double> values,
               std::uint64_t seed = 0);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  std::uint64_t seed() const { return seed_; }
  double operator()(std::size_t row, std::size_t col) const {
    return values_[row * cols_ + col];
  }
  std::span<const double> Row(std::size_t row) const {
    return {values_.data() + row * cols_, cols_};
  }
  std::vector<double> Column(std::size_t col) const;
  const std::vector<double>& values() const { return values_; }

  // Rows [begin, end) as a new matrix with the same seed.
  SampleMatrix Slice(std::size_t begin, std::size_t end) const;

 private:
  std::size_t rows_;
  std::size_t cols_;
  std::vector<double> values_;
  std::uint64_t seed_;
};

// m i.i.d. rows; row j is drawn before row j+1, so a smaller m with the same
// seed yields a prefix of a larger draw.
SampleMatrix SampleProfiles(const ProductDistribution& dist, std::size_t m,
                            std::uint64_t seed);

// Product of per-column uniform distributions over the sampled values.
// H defaults to the largest entry.
ProductDistribution EmpiricalMarginals(const SampleMatrix& samples,
                                       double upper_bound = -1.0);

}  // namespace auclearn

#endif  // AUCLEARN_DIST_H_
