// Copyright 2026 The gaitlab Authors
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

// Mirrored-sampling evolution strategy with centered-rank fitness shaping.
//
// Each iteration draws `pairs` Gaussian directions e_k and evaluates
// theta + sigma e_k and theta - sigma e_k. Fitnesses are replaced by centered
// ranks in [-0.5, 0.5] (ties share their mean rank) and the ascent direction
//
//   g = 1 / (2 pairs sigma) * sum_k (rank(+k) - rank(-k)) e_k
//
// is applied with plain gradient ascent or Adam.

#ifndef GAITLAB_EVOLUTION_STRATEGY_H_
#define GAITLAB_EVOLUTION_STRATEGY_H_

#include <cstddef>
#include <cstdint>
#include <functional>
#include <span>
#include <string>
#include <vector>

namespace gaitlab {

enum class StepRule { kSgd, kAdam };

struct EsConfig {
  int pairs = 16;
  double sigma = 0.02;
  double learning_rate = 0.01;
  StepRule rule = StepRule::kAdam;
  double adam_beta1 = 0.9;
  double adam_beta2 = 0.999;
  double adam_epsilon = 1e-8;
  double weight_decay = 0.0;
  std::uint64_t seed = 0;
};

// Centered ranks in [-0.5, 0.5]; equal values share their average rank.
std::vector<double> CenteredRanks(std::span<const double> values);

// Deterministic 64-bit mix of a root seed and a stream index.
std::uint64_t MixSeed(std::uint64_t root, std::uint64_t stream);

class EvolutionStrategy {
 public:
  EvolutionStrategy(EsConfig config, std::vector<double> initial);

  const std::vector<double>& params() const { return params_; }
  const EsConfig& config() const { return config_; }

  // Candidates for `iteration`, ordered (+e_0, -e_0, +e_1, -e_1, ...).
  std::vector<std::vector<double>> Ask(int iteration);

  // Fitness per candidate in Ask() order (higher is better). With
  // sigma == 0 the parameters are left untouched. Throws TrainingError when
  // the update produces non-finite parameters.
  void Tell(std::span<const double> fitness);

 private:
  EsConfig config_;
  std::vector<double> params_;
  std::vector<std::vector<double>> noise_;
  std::vector<double> m_, v_;
  long step_ = 0;
};

// Evaluates fitness(params, iteration) for every candidate and updates, for
// `iterations` iterations. Returns the final parameters. Test hook for
// surrogate objectives; the locomotion trainer drives the same class.
std::vector<double> Maximize(
    const std::function<double(std::span<const double>, int)>& fitness,
    std::vector<double> initial, const EsConfig& config, int iterations);

// Runs fn(i) for i in [0, n) on up to `jobs` threads (0 = hardware
// concurrency). Work is claimed in index order; callers write results by
// index so the outcome does not depend on scheduling.
void ParallelFor(std::size_t n, int jobs,
                 const std::function<void(std::size_t)>& fn);

StepRule ParseStepRule(const std::string& name);
std::string StepRuleName(StepRule rule);

}  // namespace gaitlab

#endif  // GAITLAB_EVOLUTION_STRATEGY_H_
