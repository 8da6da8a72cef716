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

#include "auclearn/cli.h"

#include <algorithm>
#include <cstdint>
#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "json.hpp"

#include "auclearn/auction.h"
#include "auclearn/da.h"
#include "auclearn/dist.h"
#include "auclearn/equilibrium.h"
#include "auclearn/error.h"
#include "auclearn/estimate.h"
#include "auclearn/io.h"
#include "auclearn/lowerbound.h"
#include "auclearn/pandora.h"
#include "auclearn/random.h"

namespace auclearn::cli {
namespace {

using nlohmann::json;

struct Config {
  std::string instance;
  std::string profile;
  std::string family = "shade";
  std::string out;
  std::string format;
  std::string rule = "first-price";
  std::string tie = "random";
  std::string estimator = "empp";
  std::size_t m = 1000;
  std::size_t seeds = 1;
  std::uint64_t seed = 0;
  double grid_step = 0.05;
  double trunc_eps = 0.01;
  std::size_t n = 8;
  double eps = 0.01;
  std::size_t trials = 100;
  std::size_t max_iters = 500;
  double damping = 0.5;
};

AuctionRule RuleFrom(const Config& c) {
  AuctionRule r;
  r.format = c.rule == "all-pay" ? Format::kAllPay : Format::kFirstPrice;
  r.tie = c.tie == "none" ? TieRule::kNoAllocation : TieRule::kRandomAllocation;
  return r;
}

InstanceFile LoadInstance(const Config& c) {
  if (c.instance.empty()) {
    throw Error(ErrorCode::kInvalidArgument, "--instance is required");
  }
  return ParseInstance(ReadFile(c.instance));
}

std::vector<double> RequireCosts(const InstanceFile& f) {
  if (!f.costs) {
    throw Error(ErrorCode::kInvalidArgument, "instance has no \"costs\"");
  }
  return *f.costs;
}

std::vector<double> UnionAtoms(const ProductDistribution& dist) {
  std::vector<double> grid;
  for (const auto& m : dist.marginals()) {
    grid.insert(grid.end(), m.atoms().begin(), m.atoms().end());
  }
  std::sort(grid.begin(), grid.end());
  grid.erase(std::unique(grid.begin(), grid.end()), grid.end());
  return grid;
}

std::string CsvRow(std::initializer_list<std::string> fields) {
  std::string row;
  bool first = true;
  for (const auto& f : fields) {
    if (!first) row += ',';
    row += f;
    first = false;
  }
  return row + '\n';
}

std::string F(double x) { return FormatDouble(x); }
std::string U(std::uint64_t x) { return std::to_string(x); }

std::string Estimate(const Config& c) {
  const InstanceFile inst = LoadInstance(c);
  if (c.family != "shade") {
    throw Error(ErrorCode::kInvalidArgument, "unknown family " + c.family);
  }
  const std::vector<double> grid = UnionAtoms(inst.dist);
  std::vector<double> alphas;
  for (int k = 0; k <= 10; ++k) alphas.push_back(k / 10.0);
  const StrategyFamily family = ShadeFamily(inst.dist.size(), grid, alphas);
  const Estimator est =
      c.estimator == "emp" ? Estimator::kEmp : Estimator::kEmpp;
  std::string csv = CsvRow({"estimator", "m", "seed", "sup_error",
                            "argmax_bidder", "argmax_value", "profile_id"});
  json rows = json::array();
  for (std::size_t k = 0; k < c.seeds; ++k) {
    const std::uint64_t seed = c.seed + k;
    const SampleMatrix s = SampleProfiles(inst.dist, c.m, seed);
    const ErrorReport r = SupError(s, RuleFrom(c), family, inst.dist, est);
    csv += CsvRow({std::string(EstimatorName(est)), U(c.m), U(seed),
                   F(r.sup_error), U(r.argmax_bidder), F(r.argmax_value),
                   U(r.argmax_profile)});
    rows.push_back({{"estimator", EstimatorName(est)},
                    {"m", c.m},
                    {"seed", seed},
                    {"sup_error", r.sup_error},
                    {"argmax_bidder", r.argmax_bidder},
                    {"argmax_value", r.argmax_value},
                    {"profile_id", r.argmax_profile}});
  }
  return c.format == "json" ? rows.dump(2) + "\n" : csv;
}

std::string VerifyCommand(const Config& c) {
  const InstanceFile inst = LoadInstance(c);
  if (c.profile.empty()) {
    throw Error(ErrorCode::kInvalidArgument, "--profile is required");
  }
  const StrategyProfile profile = ParseProfile(ReadFile(c.profile));
  const BNECertificate cert = VerifyBne(RuleFrom(c), inst.dist, profile);
  if (c.format == "csv") {
    std::string csv =
        CsvRow({"bidder", "value", "utility", "best_utility", "gap"});
    for (std::size_t i = 0; i < cert.gaps.size(); ++i) {
      for (const GapEntry& e : cert.gaps[i]) {
        csv += CsvRow({U(i), F(e.value), F(e.utility), F(e.best_utility),
                       F(e.gap)});
      }
    }
    return csv;
  }
  return CertificateToJson(cert).dump(2) + "\n";
}

std::string SolveCommand(const Config& c) {
  const InstanceFile inst = LoadInstance(c);
  SolveOptions opts;
  opts.seed = c.seed;
  opts.max_iters = c.max_iters;
  opts.damping = c.damping;
  const std::vector<double> grid =
      UniformGrid(inst.dist.upper_bound(), c.grid_step);
  const SolveResult r = SolveBne(RuleFrom(c), inst.dist, grid, opts);
  const json j = {{"profile", ProfileToJson(r.profile)},
                  {"certificate", CertificateToJson(r.certificate)},
                  {"iterations", r.iterations},
                  {"best_iteration", r.best_iteration}};
  return j.dump(2) + "\n";
}

std::string PandoraCommand(const Config& c) {
  const InstanceFile inst = LoadInstance(c);
  const std::vector<double> costs = RequireCosts(inst);
  std::string csv =
      CsvRow({"seed", "learned_payoff", "optimal_payoff", "regret"});
  json rows = json::array();
  for (std::size_t k = 0; k < c.seeds; ++k) {
    const std::uint64_t seed = c.seed + k;
    const SampleMatrix s = SampleProfiles(inst.dist, c.m, seed);
    const PandoraLearnResult r =
        PandoraFromSamples(s, costs, inst.dist, c.trunc_eps);
    csv += CsvRow({U(seed), F(r.learned_payoff), F(r.optimal_payoff),
                   F(r.regret())});
    rows.push_back({{"seed", seed},
                    {"learned_payoff", r.learned_payoff},
                    {"optimal_payoff", r.optimal_payoff},
                    {"regret", r.regret()}});
  }
  return c.format == "json" ? rows.dump(2) + "\n" : csv;
}

std::string DaCommand(const Config& c) {
  const InstanceFile inst = LoadInstance(c);
  const std::vector<double> costs = RequireCosts(inst);
  PipelineParams params;
  params.rule = RuleFrom(c);
  params.grid_step = c.grid_step;
  params.solver.max_iters = c.max_iters;
  params.solver.damping = c.damping;
  std::string csv = CsvRow({"seed", "eps_prime", "utility_error",
                            "max_cost_error", "gap_lower_bound", "gap_exact",
                            "welfare", "opt_welfare", "poa_bound"});
  json rows = json::array();
  for (std::size_t k = 0; k < c.seeds; ++k) {
    const std::uint64_t seed = c.seed + k;
    params.solver.seed = seed;
    const SampleMatrix s = SampleProfiles(inst.dist, c.m, seed);
    const PipelineReport r = EmpiricalPipeline(s, costs, inst.dist, params);
    csv += CsvRow({U(seed), F(r.eps_prime), F(r.utility_error),
                   F(r.max_cost_error), F(r.gap_lower_bound), F(r.gap_exact),
                   F(r.welfare), F(r.opt_welfare), F(r.poa_bound)});
    json j = PipelineReportToJson(r);
    j["seed"] = seed;
    rows.push_back(j);
  }
  return c.format == "json" ? rows.dump(2) + "\n" : csv;
}

std::string LowerBoundCommand(const Config& c) {
  const DistinguisherResult r =
      DistinguisherExperiment(c.n, c.eps, c.m, c.trials, c.seed);
  if (c.format == "json") {
    return json({{"n", c.n},
                 {"eps", c.eps},
                 {"m", c.m},
                 {"mean", r.mean},
                 {"median", r.median},
                 {"recovery_fraction", r.recovery}})
               .dump(2) +
           "\n";
  }
  std::string csv = CsvRow({"n", "eps", "m", "trial", "recovery_fraction"});
  for (std::size_t t = 0; t < r.recovery.size(); ++t) {
    csv += CsvRow({U(c.n), F(c.eps), U(c.m), U(t), F(r.recovery[t])});
  }
  return csv;
}

std::string PdimCommand(const Config& c) {
  if (c.n < 2 || c.n > 3 || c.m < 1 || c.m > 6) {
    throw Error(ErrorCode::kInvalidArgument,
                "pdim-check supports n in {2, 3} and m in [1, 6]");
  }
  DenseFamilyParams params;
  params.values = {0.25, 0.5, 0.75, 1.0};
  params.own_bids = {0.0, 0.25, 0.5, 0.75, 1.0};
  params.opponent_levels = params.own_bids;
  std::string csv = CsvRow({"n", "m", "trial", "label_vectors",
                            "bound_two_bidder", "bound_general"});
  json rows = json::array();
  double general = 1.0;
  for (std::size_t k = 0; k < 3 * c.n; ++k) general *= c.m + 1.0;
  for (std::size_t t = 0; t < c.seeds; ++t) {
    Rng rng(DeriveSeed(c.seed + t, "pdim-check"));
    std::vector<double> values(c.m * (c.n - 1));
    for (double& v : values) v = rng.Uniform01();
    std::vector<double> witnesses(c.m);
    for (double& w : witnesses) w = rng.Uniform01() - 0.25;
    const SampleMatrix s(c.m, c.n - 1, values);
    const std::size_t count =
        LabelVectorCount(DenseUtilityFamily(RuleFrom(c), s, params), witnesses);
    const double two = (c.m + 1.0) * (c.m + 1.0);
    csv += CsvRow({U(c.n), U(c.m), U(t), U(count), F(two), F(general)});
    rows.push_back({{"n", c.n},
                    {"m", c.m},
                    {"trial", t},
                    {"label_vectors", count},
                    {"bound_two_bidder", two},
                    {"bound_general", general}});
  }
  return c.format == "json" ? rows.dump(2) + "\n" : csv;
}

void AddCommon(CLI::App* sub, Config& c) {
  sub->add_option("--out", c.out, "Output path (default stdout)");
  sub->add_option("--format", c.format, "Output format")
      ->check(CLI::IsMember({"csv", "json"}));
  sub->add_option("--seed", c.seed, "Base seed");
}

void AddAuction(CLI::App* sub, Config& c) {
  sub->add_option("--rule", c.rule, "Auction format")
      ->check(CLI::IsMember({"first-price", "all-pay"}));
  sub->add_option("--tie", c.tie, "Tie rule")
      ->check(CLI::IsMember({"random", "none"}));
}

}  // namespace

int Run(const std::vector<std::string>& args, std::ostream& out,
        std::ostream& err) {
  Config c;
  CLI::App app{"Sample-based auction learning experiments", "auclearn"};
  app.require_subcommand(1, 1);

  auto* estimate = app.add_subcommand("estimate", "Estimator sup error per seed");
  estimate->add_option("--instance", c.instance)->required();
  estimate->add_option("--family", c.family)->check(CLI::IsMember({"shade"}));
  estimate->add_option("--m", c.m)->check(CLI::PositiveNumber);
  estimate->add_option("--seeds", c.seeds)->check(CLI::PositiveNumber);
  estimate->add_option("--estimator", c.estimator)
      ->check(CLI::IsMember({"emp", "empp"}));
  AddAuction(estimate, c);
  AddCommon(estimate, c);

  auto* verify = app.add_subcommand("verify-bne", "Certify a profile");
  verify->add_option("--instance", c.instance)->required();
  verify->add_option("--profile", c.profile)->required();
  AddAuction(verify, c);
  AddCommon(verify, c);

  auto* solve = app.add_subcommand("solve-bne", "Search for an approximate BNE");
  solve->add_option("--instance", c.instance)->required();
  solve->add_option("--grid-step", c.grid_step)->check(CLI::PositiveNumber);
  solve->add_option("--max-iters", c.max_iters);
  solve->add_option("--damping", c.damping)->check(CLI::Range(0.0, 1.0));
  AddAuction(solve, c);
  AddCommon(solve, c);

  auto* pandora = app.add_subcommand("pandora", "Learn a search policy");
  pandora->add_option("--instance", c.instance)->required();
  pandora->add_option("--m", c.m)->check(CLI::PositiveNumber);
  pandora->add_option("--seeds", c.seeds)->check(CLI::PositiveNumber);
  pandora->add_option("--trunc-eps", c.trunc_eps)->check(CLI::PositiveNumber);
  AddCommon(pandora, c);

  auto* da = app.add_subcommand("da-experiment", "Empirical index pipeline");
  da->add_option("--instance", c.instance)->required();
  da->add_option("--m", c.m)->check(CLI::PositiveNumber);
  da->add_option("--seeds", c.seeds)->check(CLI::PositiveNumber);
  da->add_option("--grid-step", c.grid_step)->check(CLI::PositiveNumber);
  da->add_option("--max-iters", c.max_iters);
  da->add_option("--damping", c.damping)->check(CLI::Range(0.0, 1.0));
  AddAuction(da, c);
  AddCommon(da, c);

  auto* lower = app.add_subcommand("lowerbound", "Distinguisher experiment");
  lower->add_option("--n", c.n)->check(CLI::Range(2, 16));
  lower->add_option("--eps", c.eps, "Bias c1*eps of the hard family");
  lower->add_option("--m", c.m)->check(CLI::PositiveNumber);
  lower->add_option("--trials", c.trials)->check(CLI::PositiveNumber);
  AddCommon(lower, c);

  auto* pdim = app.add_subcommand("pdim-check", "Label vector counts");
  pdim->add_option("--n", c.n)->check(CLI::Range(2, 3));
  pdim->add_option("--m", c.m)->check(CLI::Range(1, 6));
  pdim->add_option("--seeds", c.seeds)->check(CLI::PositiveNumber);
  AddAuction(pdim, c);
  AddCommon(pdim, c);

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return 0;
  } catch (const CLI::ParseError& e) {
    err << "ERROR: usage: " << e.what() << "\n";
    return 2;
  }
  if (c.format.empty()) {
    c.format = verify->parsed() || solve->parsed() ? "json" : "csv";
  }

  try {
    std::string text;
    if (estimate->parsed()) text = Estimate(c);
    if (verify->parsed()) text = VerifyCommand(c);
    if (solve->parsed()) text = SolveCommand(c);
    if (pandora->parsed()) text = PandoraCommand(c);
    if (da->parsed()) text = DaCommand(c);
    if (lower->parsed()) text = LowerBoundCommand(c);
    if (pdim->parsed()) text = PdimCommand(c);
    if (c.out.empty()) {
      out << text;
    } else {
      std::ofstream f(c.out, std::ios::binary);
      if (!f) {
        throw Error(ErrorCode::kInvalidArgument, "cannot write " + c.out);
      }
      f << text;
    }
    return 0;
  } catch (const Error& e) {
    err << "ERROR: " << ErrorCodeName(e.code()) << ": " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    err << "ERROR: internal: " << e.what() << "\n";
    return 1;
  }
}

int Run(int argc, const char* const* argv) {
  std::vector<std::string> args;
  for (int k = 1; k < argc; ++k) args.emplace_back(argv[k]);
  return Run(args, std::cout, std::cerr);
}

}  // namespace auclearn::cli
