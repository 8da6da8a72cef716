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

#include "auclearn/error.h"
#include "auclearn/pandora.h"
#include "oracles.h"

namespace auclearn {
namespace {

using V = std::vector<double>;

const auto kBernoulli = DiscreteDistribution::Make(V{0, 1}, V{0.5, 0.5});

SearchInstance RandomInstance(Rng& rng, std::size_t n, std::size_t atoms,
                              double cost_scale = 1.0) {
  auto f = testing::RandomProduct(rng, n, atoms);
  V costs;
  for (std::size_t i = 0; i < n; ++i) {
    costs.push_back(cost_scale * rng.Uniform01() * f[i].Mean());
  }
  return SearchInstance(f, costs);
}

double Median(V xs) {
  std::sort(xs.begin(), xs.end());
  const std::size_t k = xs.size();
  return k % 2 ? xs[k / 2] : 0.5 * (xs[k / 2 - 1] + xs[k / 2]);
}

TEST_CASE("weitzman index examples") {
  CHECK(WeitzmanIndex(kBernoulli, 0.0, 1.0) == 1.0);
  CHECK(WeitzmanIndex(kBernoulli, 0.25, 1.0) == doctest::Approx(0.5));
  CHECK(WeitzmanIndex(kBernoulli, 0.5, 1.0) == doctest::Approx(0.0));
  CHECK_THROWS_AS(WeitzmanIndex(kBernoulli, 0.6, 1.0), Error);
}

TEST_CASE("weitzman index solves its equation and falls with cost") {
  Rng rng(2);
  for (int t = 0; t < 300; ++t) {
    const auto d = testing::RandomDistribution(rng, 6);
    double previous = 2.0;
    for (int k = 0; k <= 10; ++k) {
      const double c = k == 10 ? d.Mean() : d.Mean() * k / 10.0;
      const double s = WeitzmanIndex(d, c, 1.0);
      if (c > 0) CHECK(d.ExpectedExcess(s) == doctest::Approx(c).epsilon(1e-12));
      CHECK(s <= previous);
      previous = s;
    }
  }
}

TEST_CASE("instance validation") {
  const ProductDistribution f({kBernoulli, kBernoulli});
  auto code = [&](const V& costs) {
    try {
      SearchInstance inst(f, costs);
    } catch (const Error& e) {
      return e.code();
    }
    return ErrorCode::kParse;
  };
  CHECK(code({0.1}) == ErrorCode::kDimensionMismatch);
  CHECK(code({0.1, -0.1}) == ErrorCode::kInvalidArgument);
  CHECK(code({0.1, 0.7}) == ErrorCode::kCostExceedsMean);
}

TEST_CASE("simulate policy examples") {
  IndexPolicy negative{{-0.1, -0.2}, {0.1, 0.1}, {}};
  CHECK(SimulatePolicy(negative, V{0.9, 0.9}) == 0.0);

  IndexPolicy one{{0.4}, {0.2}, {}};
  CHECK(SimulatePolicy(one, V{0.7}) == doctest::Approx(0.5));

  IndexPolicy two{{0.5, 0.3}, {0.1, 0.1}, {}};
  CHECK(SimulatePolicy(two, V{0.4, 0.9}) == doctest::Approx(0.3));
  CHECK(SimulatePolicy(two, V{0.2, 0.9}) == doctest::Approx(0.7));

  // Ties open the lower id first; a best value equal to the index stops.
  IndexPolicy tie{{0.5, 0.5}, {0.1, 0.1}, {}};
  CHECK(tie.Order() == std::vector<std::size_t>{0, 1});
  CHECK(SimulatePolicy(tie, V{0.5, 0.9}) == doctest::Approx(0.4));

  IndexPolicy budget{{0.9, 0.8, 0.7}, {0.3, 0.3, 0.3}, 0.65};
  CHECK(SimulatePolicy(budget, V{0.1, 0.2, 1.0}) == doctest::Approx(-0.4));
}

TEST_CASE("exact payoff examples") {
  const SearchInstance one(ProductDistribution({kBernoulli}), {0.25});
  CHECK(PolicyPayoffExact(one, WeitzmanPolicy(one)) == doctest::Approx(0.25));

  const SearchInstance inst(ProductDistribution({kBernoulli, kBernoulli}),
                            {0.1, 0.2});
  IndexPolicy negative{{-1, -1}, inst.costs(), {}};
  CHECK(PolicyPayoffExact(inst, negative) == 0.0);
}

TEST_CASE("exact payoff matches enumeration") {
  Rng rng(6);
  for (int t = 0; t < 300; ++t) {
    const auto inst = RandomInstance(rng, 2 + rng.Below(3), 3);
    IndexPolicy p = WeitzmanPolicy(inst);
    if (t % 3 == 1) {
      for (double& s : p.indices) s = rng.Uniform01() - 0.2;
    }
    if (t % 3 == 2) p.truncation_budget = rng.Uniform01();
    double expected = 0.0;
    testing::ForEachProfile(inst.boxes(), [&](const V& v, double w) {
      expected += w * SimulatePolicy(p, v);
    });
    CHECK(PolicyPayoffExact(inst, p) == doctest::Approx(expected).epsilon(1e-10));
  }
}

TEST_CASE("weitzman policy is optimal") {
  Rng rng(7);
  for (int t = 0; t < 200; ++t) {
    const auto inst = RandomInstance(rng, 1 + rng.Below(4), 4);
    const double exact = PolicyPayoffExact(inst, WeitzmanPolicy(inst));
    CHECK(std::fabs(exact - OptimalAdaptiveOracle(inst)) <= 1e-9);
    CHECK(std::fabs(exact - OptWelfare(inst)) <= 1e-10);
  }
  for (int t = 0; t < 100; ++t) {
    const auto inst = RandomInstance(rng, 1 + rng.Below(12), 8);
    CHECK(std::fabs(PolicyPayoffExact(inst, WeitzmanPolicy(inst)) -
                    OptWelfare(inst)) <= 1e-10);
  }
}

TEST_CASE("oracle examples") {
  Rng rng(8);
  for (int t = 0; t < 50; ++t) {
    const auto inst = RandomInstance(rng, 1, 4);
    const auto& d = inst.boxes()[0];
    CHECK(OptimalAdaptiveOracle(inst) ==
          doctest::Approx(std::max(d.Mean() - inst.costs()[0], 0.0)));
    CHECK(OptWelfare(inst) ==
          doctest::Approx(d.Mean() - inst.costs()[0]).epsilon(1e-12));
  }
  const SearchInstance pair(ProductDistribution({kBernoulli, kBernoulli}),
                            {0.1, 0.1});
  CHECK(OptimalAdaptiveOracle(pair) ==
        doctest::Approx(PolicyPayoffExact(pair, WeitzmanPolicy(pair))));

  // A box whose cost equals its mean adds nothing next to a better box.
  const auto weak = DiscreteDistribution::Make(V{0, 0.4}, V{0.5, 0.5});
  const auto strong = DiscreteDistribution::Make(V{0.3, 1}, V{0.5, 0.5});
  const SearchInstance both(ProductDistribution({weak, strong}), {0.2, 0.1});
  const SearchInstance alone(ProductDistribution({strong}), {0.1});
  CHECK(OptimalAdaptiveOracle(both) ==
        doctest::Approx(OptimalAdaptiveOracle(alone)).epsilon(1e-12));

  const SearchInstance large(
      ProductDistribution(std::vector<DiscreteDistribution>(5, kBernoulli)),
      V(5, 0.1));
  CHECK_THROWS_AS(OptimalAdaptiveOracle(large), Error);
}

TEST_CASE("free inspection gives the expected maximum") {
  Rng rng(9);
  for (int t = 0; t < 50; ++t) {
    const auto inst = RandomInstance(rng, 1 + rng.Below(4), 4, 0.0);
    double expected = 0.0;
    testing::ForEachProfile(inst.boxes(), [&](const V& v, double w) {
      expected += w * *std::max_element(v.begin(), v.end());
    });
    CHECK(OptWelfare(inst) == doctest::Approx(expected).epsilon(1e-12));
  }
}

TEST_CASE("exact payoff matches monte carlo") {
  Rng rng(10);
  const auto inst = RandomInstance(rng, 4, 4);
  const auto p = WeitzmanPolicy(inst);
  const int draws = 1000000;
  double sum = 0.0, sq = 0.0;
  V v(inst.size());
  for (int d = 0; d < draws; ++d) {
    for (std::size_t i = 0; i < v.size(); ++i) v[i] = inst.boxes()[i].Sample(rng);
    const double x = SimulatePolicy(p, v);
    sum += x;
    sq += x * x;
  }
  const double mean = sum / draws;
  const double se = std::sqrt((sq / draws - mean * mean) / draws);
  CHECK(std::fabs(mean - PolicyPayoffExact(inst, p)) <= 4 * se);
}

TEST_CASE("truncation loses at most eps") {
  Rng rng(11);
  int binding = 0;
  for (double eps : {0.1, 0.01}) {
    for (int t = 0; t < 100; ++t) {
      const std::size_t boxes =
          eps < 0.05 ? 20 + rng.Below(60) : 5 + rng.Below(20);
      const auto inst = RandomInstance(rng, boxes, 4);
      const double full = PolicyPayoffExact(inst, WeitzmanPolicy(inst));
      const double budget = TruncationBudget(1.0, eps);
      const double cut =
          PolicyPayoffExact(inst, WeitzmanPolicy(inst, budget));
      CHECK(cut <= full + 1e-12);
      CHECK(full <= cut + eps);
      double total = 0.0;
      for (double c : inst.costs()) total += c;
      binding += total > budget;
    }
  }
  CHECK(binding > 0);
  CHECK(TruncationBudget(1.0, 0.1) == doctest::Approx(2 * std::log(10.0)));
  CHECK_THROWS_AS(TruncationBudget(1.0, 1.0), Error);
}

TEST_CASE("truncation bites on a long search") {
  const auto rare = DiscreteDistribution::Make(V{0, 1}, V{0.95, 0.05});
  const SearchInstance inst(
      ProductDistribution(std::vector<DiscreteDistribution>(200, rare)),
      V(200, 0.04));
  const double full = PolicyPayoffExact(inst, WeitzmanPolicy(inst));
  const double cut =
      PolicyPayoffExact(inst, WeitzmanPolicy(inst, TruncationBudget(1.0, 0.1)));
  CHECK(full - cut > 1e-6);
  CHECK(full - cut <= 0.1);
}

TEST_CASE("huge budget changes nothing") {
  Rng rng(12);
  for (int t = 0; t < 50; ++t) {
    const auto inst = RandomInstance(rng, 1 + rng.Below(6), 4);
    double total = 0.0;
    for (double c : inst.costs()) total += c;
    CHECK(PolicyPayoffExact(inst, WeitzmanPolicy(inst, total)) ==
          PolicyPayoffExact(inst, WeitzmanPolicy(inst)));
  }
}

TEST_CASE("learning from samples") {
  const auto u = DiscreteDistribution::Uniform(V{0, 0.5, 1});
  const ProductDistribution f({u, u}, 1.0);
  V rows;
  for (double a : u.atoms()) rows.insert(rows.end(), {a, a});
  const V costs{0.1, 0.2};
  const auto exact =
      PandoraFromSamples(SampleMatrix(3, 2, rows), costs, f, 0.01);
  CHECK(exact.learned_payoff == doctest::Approx(exact.optimal_payoff));

  auto bern = [](double p) {
    return DiscreteDistribution::Make(V{0, 1}, V{1 - p, p});
  };
  const ProductDistribution g({bern(0.3), bern(0.5), bern(0.7)}, 1.0);
  const V g_costs{0.1, 0.2, 0.15};
  V regrets;
  for (std::uint64_t seed = 0; seed < 30; ++seed) {
    const auto r = PandoraFromSamples(SampleProfiles(g, 10000, seed), g_costs,
                                      g, 0.01);
    regrets.push_back(r.regret());
  }
  CHECK(Median(regrets) <= 0.05);

  const SampleMatrix low(2, 1, V{0, 0.1});
  CHECK_THROWS_AS(
      PandoraFromSamples(low, V{0.2}, ProductDistribution({kBernoulli}), 0.1),
      Error);
}

}  // namespace
}  // namespace auclearn
