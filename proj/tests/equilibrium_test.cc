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

#include <algorithm>
#include <cmath>
#include <vector>

#include "doctest.h"

#include "auclearn/equilibrium.h"
#include "auclearn/error.h"
#include "auclearn/estimate.h"
#include "oracles.h"

namespace auclearn {
namespace {

using V = std::vector<double>;

const AuctionRule kFpa{Format::kFirstPrice, TieRule::kRandomAllocation};

ProductDistribution UniformPair(int k) {
  const auto u = DiscreteDistribution::Uniform(UniformGrid(1.0, 1.0 / k));
  return ProductDistribution({u, u}, 1.0);
}

TEST_CASE("single bidder") {
  const ProductDistribution one({DiscreteDistribution::Uniform(V{0.2, 0.7})});
  CHECK(VerifyBne(kFpa, one, {MonotoneStrategy::Constant(0.0)}).epsilon ==
        0.0);
  const auto r = SolveBne(kFpa, one, UniformGrid(0.7, 0.1));
  CHECK(r.certificate.epsilon == 0.0);
  CHECK(r.iterations == 1);
  CHECK(r.profile[0].MaxBid() == 0.0);
}

TEST_CASE("uniform grid anchors") {
  const int k = 20;
  const auto f = UniformPair(k);
  const auto grid = f[0].atoms();
  const auto half = VerifyBne(kFpa, f, ShadeProfile(2, grid, 0.5));
  CHECK(half.epsilon <= 2.0 / k);
  const auto truthful = VerifyBne(kFpa, f, ShadeProfile(2, grid, 1.0));
  CHECK(truthful.epsilon >= 0.2);
  CHECK(truthful.worst_value == 1.0);
}

TEST_CASE("certificate entries") {
  Rng rng(3);
  for (int t = 0; t < 50; ++t) {
    const auto f = testing::RandomProduct(rng, 3, 3);
    StrategyProfile p;
    for (std::size_t i = 0; i < 3; ++i) {
      p.push_back(testing::RandomStrategy(rng, f[i].atoms()));
    }
    const auto rule = t % 2 ? kFpa
                            : AuctionRule{Format::kAllPay,
                                          TieRule::kNoAllocation};
    const auto cert = VerifyBne(rule, f, p);
    double worst = 0.0;
    for (std::size_t i = 0; i < 3; ++i) {
      REQUIRE(cert.gaps[i].size() == f[i].size());
      const BidLandscape landscape(OpponentBids(f, p, i));
      for (std::size_t a = 0; a < f[i].size(); ++a) {
        const GapEntry& g = cert.gaps[i][a];
        CHECK(g.gap >= -1e-12);
        CHECK(g.value == f[i].atoms()[a]);
        CHECK(g.utility ==
              doctest::Approx(InterimUtility(rule, g.value,
                                             {p[i].Eval(g.value), false},
                                             landscape))
                  .epsilon(1e-12));
        CHECK(g.best_utility ==
              doctest::Approx(InterimUtility(rule, g.value, g.deviation,
                                             landscape))
                  .epsilon(1e-12));
        worst = std::max(worst, g.gap);
      }
    }
    CHECK(cert.epsilon == worst);
  }
  CHECK_THROWS_AS(VerifyBne(kFpa, UniformPair(2),
                            {MonotoneStrategy::Constant(0.0)}),
                  Error);
}

TEST_CASE("solver reaches the uniform anchor") {
  const auto f = UniformPair(20);
  const auto r = SolveBne(kFpa, f, UniformGrid(1.0, 1.0 / 40));
  CHECK(r.certificate.epsilon <= 0.05);
  CHECK(r.certificate.epsilon ==
        VerifyBne(kFpa, f, r.profile).epsilon);
}

TEST_CASE("solver on complete information") {
  const ProductDistribution f({DiscreteDistribution::PointMass(1.0),
                               DiscreteDistribution::PointMass(0.5)},
                              1.0);
  const auto r = SolveBne(kFpa, f, UniformGrid(1.0, 0.01));
  CHECK(r.certificate.epsilon <= 0.02);
  CHECK(r.profile[0].Eval(1.0) == doctest::Approx(0.5).epsilon(0.03));
}

TEST_CASE("solver rejects bad grids") {
  const auto f = UniformPair(4);
  CHECK_THROWS_AS(SolveBne(kFpa, f, V{}), Error);
  try {
    SolveBne(kFpa, f, V{});
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::kEmptyGrid);
  }
  CHECK_THROWS_AS(SolveBne(kFpa, f, V{0.0, 1.5}), Error);
}

TEST_CASE("offset grids") {
  const auto g = OffsetGrids(1.0, 0.25, 3);
  REQUIRE(g.size() == 3);
  CHECK(g[0] == UniformGrid(1.0, 0.25));
  CHECK(g[1].front() == 0.0);
  CHECK(g[1][1] == doctest::Approx(0.25 / 3));
  for (std::size_t i = 1; i < 3; ++i) {
    for (double b : g[i]) {
      CHECK(b <= 1.0);
      if (b == 0.0) continue;
      for (std::size_t j = 0; j < i; ++j) {
        CHECK(std::find(g[j].begin(), g[j].end(), b) == g[j].end());
      }
    }
  }

  const auto f = UniformPair(10);
  const auto r = SolveBne(kFpa, f, OffsetGrids(1.0, 0.05, 2));
  CHECK(r.certificate.epsilon == VerifyBne(kFpa, f, r.profile).epsilon);
  for (std::size_t i = 0; i < 2; ++i) {
    const auto grid = OffsetGrids(1.0, 0.05, 2)[i];
    for (double v : f[i].atoms()) {
      const double b = r.profile[i].Eval(v);
      CHECK(std::find(grid.begin(), grid.end(), b) != grid.end());
    }
  }
  CHECK_THROWS_AS(SolveBne(kFpa, f, OffsetGrids(1.0, 0.05, 3)), Error);
}

TEST_CASE("refining a nested grid never hurts") {
  const auto f = UniformPair(10);
  SolveOptions options;
  double previous = 1e9;
  for (double step : {0.1, 0.05, 0.025}) {
    const auto r = SolveBne(kFpa, f, UniformGrid(1.0, step), options);
    CHECK(r.certificate.epsilon <= previous);
    previous = r.certificate.epsilon;
    options.initial = r.profile;
  }
}

TEST_CASE("point masses at zero give zero") {
  Rng rng(5);
  const auto zero = DiscreteDistribution::PointMass(0.0);
  const ProductDistribution f({zero, zero, zero}, 1.0);
  for (int t = 0; t < 20; ++t) {
    // Arbitrary above zero, no overbidding at zero.
    StrategyProfile p;
    for (int i = 0; i < 3; ++i) {
      const double a = rng.Uniform01();
      p.push_back(MonotoneStrategy::Make(
          {{0.0, 0.0}, {0.3, a}, {0.8, a + rng.Uniform01() * (1 - a)}}));
    }
    CHECK(VerifyBne(kFpa, f, p).epsilon == 0.0);
    CHECK(VerifyBne({Format::kAllPay, TieRule::kNoAllocation}, f, p)
              .epsilon == 0.0);
  }
}

TEST_CASE("representation invariance") {
  Rng rng(9);
  for (int t = 0; t < 50; ++t) {
    const auto f = testing::RandomProduct(rng, 2, 4, 1.0, 0.1);
    std::vector<DiscreteDistribution> split;
    for (const auto& d : f.marginals()) {
      V atoms, weights;
      for (std::size_t a = 0; a < d.size(); ++a) {
        // Each atom written twice with weights in ratio 1:3, all scaled by 7.
        atoms.insert(atoms.end(), {d.atoms()[a], d.atoms()[a]});
        weights.insert(weights.end(),
                       {7 * 0.25 * d.weights()[a], 7 * 0.75 * d.weights()[a]});
      }
      split.push_back(DiscreteDistribution::Make(atoms, weights, 1.0));
    }
    const ProductDistribution g(split, 1.0);
    StrategyProfile p;
    for (std::size_t i = 0; i < 2; ++i) {
      p.push_back(testing::RandomStrategy(rng, f[i].atoms(), 1.0, 0.1));
    }
    CHECK(VerifyBne(kFpa, f, p).epsilon ==
          doctest::Approx(VerifyBne(kFpa, g, p).epsilon).epsilon(1e-12));
  }
}

TEST_CASE("transfer check") {
  const auto u = DiscreteDistribution::Uniform(V{0, 0.5, 1});
  const ProductDistribution f({u, u}, 1.0);
  V rows;
  for (double a : u.atoms()) rows.insert(rows.end(), {a, a});
  const SampleMatrix exact(3, 2, rows);
  const auto p = ShadeProfile(2, u.atoms(), 0.5);
  const auto same = EquilibriumTransferCheck(kFpa, f, exact, p);
  CHECK(same.eps_on_true == doctest::Approx(same.eps_on_empirical));

  const ProductDistribution one({u});
  const auto single = EquilibriumTransferCheck(
      kFpa, one, SampleMatrix(2, 1, V{0, 1}), {MonotoneStrategy::Constant(0)});
  CHECK(single.eps_on_true == 0.0);
  CHECK(single.eps_on_empirical == 0.0);

  const auto g = UniformPair(10);
  const auto s = SampleProfiles(g, 10000, 21);
  const auto solved = SolveBne(kFpa, EmpiricalMarginals(s, 1.0),
                               UniformGrid(1.0, 0.025));
  V alphas;
  const StrategyFamily family{solved.profile};
  const double err =
      SupError(s, kFpa, family, g, Estimator::kEmpp).sup_error;
  const auto r = EquilibriumTransferCheck(kFpa, g, s, solved.profile);
  CHECK(r.eps_on_empirical == doctest::Approx(solved.certificate.epsilon));
  CHECK(r.eps_on_true <= r.eps_on_empirical + 2 * err + 1e-12);
}

}  // namespace
}  // namespace auclearn
