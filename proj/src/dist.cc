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

#include "auclearn/dist.h"

#include <algorithm>
#include <cmath>
#include <map>
#include <string>
#include <utility>

#include "auclearn/error.h"

namespace auclearn {

DiscreteDistribution DiscreteDistribution::Make(std::span<const double> atoms,
                                                std::span<const double> weights,
                                                double upper_bound) {
  if (atoms.empty() || atoms.size() != weights.size()) {
    throw Error(ErrorCode::kInvalidArgument,
                "atoms and weights must be nonempty and of equal length");
  }
  std::map<double, double> merged;
  double total = 0.0;
  for (std::size_t k = 0; k < atoms.size(); ++k) {
    if (!(weights[k] >= 0.0) || !std::isfinite(weights[k])) {
      throw Error(ErrorCode::kNegativeWeight,
                  "weight " + std::to_string(weights[k]) + " is negative");
    }
    if (!std::isfinite(atoms[k]) || atoms[k] < 0.0 || atoms[k] > upper_bound) {
      throw Error(ErrorCode::kAtomOutOfRange,
                  "atom " + std::to_string(atoms[k]) + " outside [0, H]");
    }
    if (weights[k] == 0.0) continue;
    // Normalize -0.0 so it merges with 0.0.
    merged[atoms[k] + 0.0] += weights[k];
    total += weights[k];
  }
  if (!(total > 0.0)) {
    throw Error(ErrorCode::kWeightSumZero, "weights sum to zero");
  }
  DiscreteDistribution d;
  d.atoms_.reserve(merged.size());
  d.weights_.reserve(merged.size());
  for (const auto& [a, w] : merged) {
    d.atoms_.push_back(a);
    d.weights_.push_back(w / total);
  }
  d.cumulative_.resize(d.weights_.size());
  double acc = 0.0;
  for (std::size_t k = 0; k < d.weights_.size(); ++k) {
    acc += d.weights_[k];
    d.cumulative_[k] = acc;
  }
  d.cumulative_.back() = 1.0;
  return d;
}

DiscreteDistribution DiscreteDistribution::PointMass(double atom) {
  const double w = 1.0;
  return Make({&atom, 1}, {&w, 1});
}

DiscreteDistribution DiscreteDistribution::Uniform(
    std::span<const double> atoms) {
  std::vector<double> w(atoms.size(), 1.0);
  return Make(atoms, w);
}

double DiscreteDistribution::Mean() const {
  double s = 0.0;
  for (std::size_t k = 0; k < atoms_.size(); ++k) s += atoms_[k] * weights_[k];
  return s;
}

double DiscreteDistribution::Cdf(double x) const {
  auto it = std::upper_bound(atoms_.begin(), atoms_.end(), x);
  if (it == atoms_.begin()) return 0.0;
  return cumulative_[static_cast<std::size_t>(it - atoms_.begin()) - 1];
}

double DiscreteDistribution::CdfBelow(double x) const {
  auto it = std::lower_bound(atoms_.begin(), atoms_.end(), x);
  if (it == atoms_.begin()) return 0.0;
  return cumulative_[static_cast<std::size_t>(it - atoms_.begin()) - 1];
}

double DiscreteDistribution::Mass(double x) const {
  auto it = std::lower_bound(atoms_.begin(), atoms_.end(), x);
  if (it == atoms_.end() || *it != x) return 0.0;
  return weights_[static_cast<std::size_t>(it - atoms_.begin())];
}

double DiscreteDistribution::ExpectedExcess(double threshold) const {
  double s = 0.0;
  for (std::size_t k = 0; k < atoms_.size(); ++k) {
    if (atoms_[k] > threshold) s += (atoms_[k] - threshold) * weights_[k];
  }
  return s;
}

double DiscreteDistribution::Sample(Rng& rng) const {
  const double u = rng.Uniform01();
  auto it = std::upper_bound(cumulative_.begin(), cumulative_.end(), u);
  if (it == cumulative_.end()) return atoms_.back();
  return atoms_[static_cast<std::size_t>(it - cumulative_.begin())];
}

DiscreteDistribution TruncateAt(const DiscreteDistribution& dist, double cap) {
  if (!(cap >= 0.0)) {
    throw Error(ErrorCode::kInvalidArgument, "truncation point must be >= 0");
  }
  std::vector<double> atoms;
  std::vector<double> weights;
  double above = 0.0;
  for (std::size_t k = 0; k < dist.size(); ++k) {
    if (dist.atoms()[k] < cap) {
      atoms.push_back(dist.atoms()[k]);
      weights.push_back(dist.weights()[k]);
    } else {
      above += dist.weights()[k];
    }
  }
  if (above > 0.0) {
    atoms.push_back(cap);
    weights.push_back(above);
  }
  return DiscreteDistribution::Make(atoms, weights);
}

ProductDistribution::ProductDistribution(
    std::vector<DiscreteDistribution> marginals, double upper_bound)
    : marginals_(std::move(marginals)), upper_bound_(upper_bound) {
  if (marginals_.empty()) {
    throw Error(ErrorCode::kInvalidArgument, "need at least one marginal");
  }
  double top = 0.0;
  for (const auto& m : marginals_) top = std::max(top, m.max_atom());
  if (upper_bound_ < 0.0) {
    upper_bound_ = top;
  } else if (top > upper_bound_) {
    throw Error(ErrorCode::kAtomOutOfRange,
                "atom " + std::to_string(top) + " exceeds H");
  }
}

std::size_t ProductDistribution::JointSupportSize() const {
  std::size_t total = 1;
  for (const auto& m : marginals_) {
    if (total > (std::size_t{1} << 40) / m.size()) return std::size_t{1} << 40;
    total *= m.size();
  }
  return total;
}

SampleMatrix::SampleMatrix(std::size_t rows, std::size_t cols,
                           std::vector<double> values, std::uint64_t seed)
    : rows_(rows), cols_(cols), values_(std::move(values)), seed_(seed) {
  if (rows_ == 0 || cols_ == 0 || values_.size() != rows_ * cols_) {
    throw Error(ErrorCode::kDimensionMismatch,
                "sample matrix needs m >= 1 rows of n values");
  }
  for (double v : values_) {
    if (!std::isfinite(v) || v < 0.0) {
      throw Error(ErrorCode::kAtomOutOfRange, "sample value outside [0, H]");
    }
  }
}

std::vector<double> SampleMatrix::Column(std::size_t col) const {
  std::vector<double> out(rows_);
  for (std::size_t r = 0; r < rows_; ++r) out[r] = (*this)(r, col);
  return out;
}

SampleMatrix SampleMatrix::Slice(std::size_t begin, std::size_t end) const {
  std::vector<double> v(values_.begin() + static_cast<long>(begin * cols_),
                        values_.begin() + static_cast<long>(end * cols_));
  return SampleMatrix(end - begin, cols_, std::move(v), seed_);
}

SampleMatrix SampleProfiles(const ProductDistribution& dist, std::size_t m,
                            std::uint64_t seed) {
  Rng rng(seed);
  const std::size_t n = dist.size();
  std::vector<double> values(m * n);
  for (std::size_t r = 0; r < m; ++r) {
    for (std::size_t i = 0; i < n; ++i) values[r * n + i] = dist[i].Sample(rng);
  }
  return SampleMatrix(m, n, std::move(values), seed);
}

ProductDistribution EmpiricalMarginals(const SampleMatrix& samples,
                                       double upper_bound) {
  std::vector<DiscreteDistribution> marginals;
  marginals.reserve(samples.cols());
  for (std::size_t i = 0; i < samples.cols(); ++i) {
    marginals.push_back(DiscreteDistribution::Uniform(samples.Column(i)));
  }
  return ProductDistribution(std::move(marginals), upper_bound);
}

}  // namespace auclearn
