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

#include "gaitlab/evolution_strategy.h"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <mutex>
#include <numeric>
#include <random>
#include <thread>

#include "gaitlab/errors.h"

namespace gaitlab {

std::vector<double> CenteredRanks(std::span<const double> values) {
  const std::size_t n = values.size();
  std::vector<double> ranks(n, 0.0);
  if (n < 2) return ranks;
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    return values[a] < values[b];
  });
  std::size_t i = 0;
  while (i < n) {
    std::size_t j = i;
    while (j + 1 < n && values[order[j + 1]] == values[order[i]]) ++j;
    const double mean_rank = 0.5 * static_cast<double>(i + j);
    for (std::size_t k = i; k <= j; ++k) ranks[order[k]] = mean_rank;
    i = j + 1;
  }
  const double denom = static_cast<double>(n - 1);
  for (double& r : ranks) r = r / denom - 0.5;
  return ranks;
}

std::uint64_t MixSeed(std::uint64_t root, std::uint64_t stream) {
  // splitmix64 over the combined words.
  std::uint64_t z = root + 0x9E3779B97F4A7C15ULL * (stream + 1);
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

EvolutionStrategy::EvolutionStrategy(EsConfig config, std::vector<double> initial)
    : config_(config), params_(std::move(initial)) {
  if (config_.pairs < 1) throw TrainingError("ES needs at least one pair");
  if (!(config_.sigma >= 0)) throw TrainingError("ES sigma must be >= 0");
  m_.assign(params_.size(), 0.0);
  v_.assign(params_.size(), 0.0);
}

std::vector<std::vector<double>> EvolutionStrategy::Ask(int iteration) {
  std::mt19937_64 rng(MixSeed(config_.seed, static_cast<std::uint64_t>(iteration)));
  std::normal_distribution<double> normal(0.0, 1.0);
  noise_.assign(config_.pairs, std::vector<double>(params_.size()));
  for (auto& e : noise_) {
    for (double& x : e) x = normal(rng);
  }
  std::vector<std::vector<double>> candidates;
  candidates.reserve(2 * noise_.size());
  for (const auto& e : noise_) {
    std::vector<double> plus(params_), minus(params_);
    for (std::size_t i = 0; i < params_.size(); ++i) {
      plus[i] += config_.sigma * e[i];
      minus[i] -= config_.sigma * e[i];
    }
    candidates.push_back(std::move(plus));
    candidates.push_back(std::move(minus));
  }
  return candidates;
}

void EvolutionStrategy::Tell(std::span<const double> fitness) {
  if (fitness.size() != 2 * noise_.size()) {
    throw TrainingError("fitness count does not match the last Ask()");
  }
  if (config_.sigma == 0.0) return;

  const std::vector<double> ranks = CenteredRanks(fitness);
  std::vector<double> grad(params_.size(), 0.0);
  for (std::size_t k = 0; k < noise_.size(); ++k) {
    const double w = ranks[2 * k] - ranks[2 * k + 1];
    if (w == 0.0) continue;
    for (std::size_t i = 0; i < grad.size(); ++i) grad[i] += w * noise_[k][i];
  }
  const double scale = 1.0 / (2.0 * static_cast<double>(noise_.size()) * config_.sigma);
  for (std::size_t i = 0; i < grad.size(); ++i) {
    grad[i] = grad[i] * scale - config_.weight_decay * params_[i];
  }

  ++step_;
  if (config_.rule == StepRule::kSgd) {
    for (std::size_t i = 0; i < grad.size(); ++i) {
      params_[i] += config_.learning_rate * grad[i];
    }
  } else {
    const double b1 = config_.adam_beta1;
    const double b2 = config_.adam_beta2;
    const double c1 = 1.0 - std::pow(b1, static_cast<double>(step_));
    const double c2 = 1.0 - std::pow(b2, static_cast<double>(step_));
    for (std::size_t i = 0; i < grad.size(); ++i) {
      m_[i] = b1 * m_[i] + (1.0 - b1) * grad[i];
      v_[i] = b2 * v_[i] + (1.0 - b2) * grad[i] * grad[i];
      params_[i] += config_.learning_rate * (m_[i] / c1) /
                    (std::sqrt(v_[i] / c2) + config_.adam_epsilon);
    }
  }
  for (double p : params_) {
    if (!std::isfinite(p)) {
      throw TrainingError("non-finite policy parameter after ES step " +
                          std::to_string(step_));
    }
  }
}

std::vector<double> Maximize(
    const std::function<double(std::span<const double>, int)>& fitness,
    std::vector<double> initial, const EsConfig& config, int iterations) {
  EvolutionStrategy es(config, std::move(initial));
  for (int it = 0; it < iterations; ++it) {
    const auto candidates = es.Ask(it);
    std::vector<double> f(candidates.size());
    for (std::size_t i = 0; i < candidates.size(); ++i) {
      f[i] = fitness(candidates[i], it);
    }
    es.Tell(f);
  }
  return es.params();
}

void ParallelFor(std::size_t n, int jobs,
                 const std::function<void(std::size_t)>& fn) {
  std::size_t workers =
      jobs > 0 ? static_cast<std::size_t>(jobs)
               : std::max<std::size_t>(1, std::thread::hardware_concurrency());
  workers = std::min(workers, n);
  if (workers <= 1) {
    for (std::size_t i = 0; i < n; ++i) fn(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::exception_ptr error;
  std::mutex error_mutex;
  std::vector<std::thread> threads;
  threads.reserve(workers);
  for (std::size_t w = 0; w < workers; ++w) {
    threads.emplace_back([&] {
      for (std::size_t i = next++; i < n; i = next++) {
        try {
          fn(i);
        } catch (...) {
          std::lock_guard<std::mutex> lock(error_mutex);
          if (!error) error = std::current_exception();
        }
      }
    });
  }
  for (auto& t : threads) t.join();
  if (error) std::rethrow_exception(error);
}

StepRule ParseStepRule(const std::string& name) {
  if (name == "sgd") return StepRule::kSgd;
  if (name == "adam") return StepRule::kAdam;
  throw ConfigError("train.optimizer", "expected \"sgd\" or \"adam\", got \"" +
                                           name + "\"");
}

std::string StepRuleName(StepRule rule) {
  return rule == StepRule::kSgd ? "sgd" : "adam";
}

}  // namespace gaitlab
