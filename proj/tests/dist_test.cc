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

#include <cmath>
#include <vector>

#include "doctest.h"

#include "auclearn/dist.h"
#include "auclearn/error.h"
#include "oracles.h"

namespace auclearn {
namespace {

using V = std::vector<double>;

ErrorCode CodeOf(const std::function<void()>& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.code();
  }
  FAIL("expected an Error");
  return ErrorCode::kParse;
}

TEST_CASE("make normalizes, sorts and merges") {
  const auto b = DiscreteDistribution::Make(V{1, 0}, V{0.5, 0.5});
  CHECK(b.atoms() == V{0, 1});
  CHECK(b.weights() == V{0.5, 0.5});

  const auto p = DiscreteDistribution::Make(V{1, 1}, V{0.3, 0.7});
  CHECK(p.size() == 1);
  CHECK(p.atoms()[0] == 1.0);
  CHECK(p.weights()[0] == doctest::Approx(1.0).epsilon(1e-12));

  const auto s = DiscreteDistribution::Make(V{2, 0, 1}, V{2, 1, 1});
  CHECK(s.atoms() == V{0, 1, 2});
  CHECK(s.weights()[2] == doctest::Approx(0.5));
  CHECK(s.Mean() == doctest::Approx(1.25));
}

TEST_CASE("make drops zero weights") {
  const auto d = DiscreteDistribution::Make(V{0, 0.5, 1}, V{1, 0, 1});
  CHECK(d.atoms() == V{0, 1});
}

TEST_CASE("hard family plus marginal") {
  const double n = 4, eps = 1e-4, c1 = 2000;
  const double p = (1 + c1 * eps) / n;
  CHECK(p == doctest::Approx(0.3));
  const auto d = DiscreteDistribution::Make(V{0, 1}, V{1 - p, p});
  CHECK(d.Mass(1.0) == doctest::Approx(0.3).epsilon(1e-12));
}

TEST_CASE("make validation errors") {
  CHECK(CodeOf([] { DiscreteDistribution::Make(V{0, 1}, V{-0.1, 1.1}); }) ==
        ErrorCode::kNegativeWeight);
  CHECK(CodeOf([] { DiscreteDistribution::Make(V{0, 1}, V{0, 0}); }) ==
        ErrorCode::kWeightSumZero);
  CHECK(CodeOf([] { DiscreteDistribution::Make(V{0, 2}, V{1, 1}, 1.0); }) ==
        ErrorCode::kAtomOutOfRange);
  CHECK(CodeOf([] { DiscreteDistribution::Make(V{-1}, V{1}); }) ==
        ErrorCode::kAtomOutOfRange);
}

TEST_CASE("weights sum to one after random construction") {
  Rng rng(7);
  for (int t = 0; t < 200; ++t) {
    const auto d = testing::RandomDistribution(rng, 6);
    double s = 0;
    for (std::size_t k = 0; k < d.size(); ++k) {
      s += d.weights()[k];
      CHECK(d.weights()[k] > 0.0);
      if (k > 0) CHECK(d.atoms()[k] > d.atoms()[k - 1]);
    }
    CHECK(std::fabs(s - 1.0) <= 1e-12);
  }
}

TEST_CASE("cdf and mass") {
  const auto d = DiscreteDistribution::Uniform(V{0, 1, 2});
  CHECK(d.Cdf(-1) == 0.0);
  CHECK(d.Cdf(1) == doctest::Approx(2.0 / 3));
  CHECK(d.CdfBelow(1) == doctest::Approx(1.0 / 3));
  CHECK(d.Mass(1) == doctest::Approx(1.0 / 3));
  CHECK(d.Mass(0.5) == 0.0);
  CHECK(d.Cdf(2) == 1.0);
  CHECK(d.ExpectedExcess(1) == doctest::Approx(1.0 / 3));
}

TEST_CASE("truncate") {
  const auto u = DiscreteDistribution::Uniform(V{0, 1, 2});
  const auto t = TruncateAt(u, 1);
  CHECK(t.atoms() == V{0, 1});
  CHECK(t.weights()[0] == doctest::Approx(1.0 / 3));
  CHECK(t.weights()[1] == doctest::Approx(2.0 / 3));

  const auto same = TruncateAt(u, 5);
  CHECK(same.atoms() == u.atoms());
  CHECK(same.weights() == u.weights());

  const auto zero = TruncateAt(u, 0);
  CHECK(zero.atoms() == V{0});
}

TEST_CASE("truncate preserves mass and caps atoms") {
  Rng rng(11);
  for (int t = 0; t < 200; ++t) {
    const auto d = testing::RandomDistribution(rng, 5);
    const double sigma = rng.Uniform01();
    const auto c = TruncateAt(d, sigma);
    double s = 0;
    for (std::size_t k = 0; k < c.size(); ++k) {
      s += c.weights()[k];
      CHECK(c.atoms()[k] <= sigma);
    }
    CHECK(s == doctest::Approx(1.0).epsilon(1e-12));
    double expect = 0;
    for (std::size_t k = 0; k < d.size(); ++k) {
      expect += d.weights()[k] * std::min(d.atoms()[k], sigma);
    }
    CHECK(c.Mean() == doctest::Approx(expect).epsilon(1e-12));
  }
}

TEST_CASE("sampling") {
  const ProductDistribution points({DiscreteDistribution::PointMass(0.3),
                                    DiscreteDistribution::PointMass(0.7)});
  const auto s = SampleProfiles(points, 5, 1);
  for (std::size_t r = 0; r < 5; ++r) {
    CHECK(s(r, 0) == 0.3);
    CHECK(s(r, 1) == 0.7);
  }

  const auto bern = DiscreteDistribution::Make(V{0, 1}, V{0.5, 0.5});
  const ProductDistribution f({bern, bern, bern});
  const auto a = SampleProfiles(f, 1000, 42);
  const auto b = SampleProfiles(f, 1000, 42);
  CHECK(a.values() == b.values());
  const auto prefix = SampleProfiles(f, 10, 42);
  CHECK(std::equal(prefix.values().begin(), prefix.values().end(),
                   a.values().begin()));

  const std::size_t m = 100000;
  const auto big = SampleProfiles(f, m, 3);
  // Six standard errors of a Bernoulli(1/2) mean is 6 * 0.5 / sqrt(m).
  const double tol = 6 * 0.5 / std::sqrt(static_cast<double>(m));
  for (std::size_t c = 0; c < 3; ++c) {
    double mean = 0;
    for (double v : big.Column(c)) mean += v;
    mean /= m;
    CHECK(std::fabs(mean - 0.5) <= tol);
    CHECK(std::fabs(mean - 0.5) <= 0.01);
  }
}

TEST_CASE("empirical marginals converge on each atom") {
  Rng rng(5);
  const std::size_t m = 100000;
  for (int t = 0; t < 5; ++t) {
    const auto f = testing::RandomProduct(rng, 2, 4);
    const auto s = SampleProfiles(f, m, 100 + t);
    const auto e = EmpiricalMarginals(s);
    for (std::size_t i = 0; i < 2; ++i) {
      for (std::size_t k = 0; k < f[i].size(); ++k) {
        const double p = f[i].weights()[k];
        const double se = std::sqrt(p * (1 - p) / m);
        CHECK(std::fabs(e[i].Mass(f[i].atoms()[k]) - p) <= 6 * se + 1e-12);
      }
    }
  }
}

TEST_CASE("empirical marginals") {
  const SampleMatrix s(2, 2, V{1, 2, 1, 4});
  const auto e = EmpiricalMarginals(s);
  CHECK(e[0].atoms() == V{1});
  CHECK(e[1].atoms() == V{2, 4});
  CHECK(e[1].weights()[0] == doctest::Approx(0.5));
  CHECK(e.upper_bound() == 4.0);

  const SampleMatrix one(1, 3, V{0.1, 0.2, 0.3});
  const auto p = EmpiricalMarginals(one);
  for (std::size_t i = 0; i < 3; ++i) CHECK(p[i].size() == 1);

  const SampleMatrix col(4, 1, V{0, 0, 1, 1});
  const auto b = EmpiricalMarginals(col);
  CHECK(b[0].atoms() == V{0, 1});
  CHECK(b[0].weights()[0] == doctest::Approx(0.5));
}

TEST_CASE("product distribution bound") {
  const auto d = DiscreteDistribution::PointMass(0.5);
  CHECK(ProductDistribution({d}).upper_bound() == 0.5);
  CHECK(ProductDistribution({d}, 1.0).upper_bound() == 1.0);
  CHECK(CodeOf([&] { ProductDistribution({d}, 0.25); }) ==
        ErrorCode::kAtomOutOfRange);
}

}  // namespace
}  // namespace auclearn
