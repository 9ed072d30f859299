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

#include "gaitlab/policy.h"

#include <algorithm>
#include <cmath>
#include <string>

#include "gaitlab/errors.h"

namespace gaitlab {

Policy::Policy(std::vector<int> sizes) : sizes_(std::move(sizes)) {
  if (sizes_.size() < 2) {
    throw InputShapeError("policy needs at least input and output sizes");
  }
  std::size_t n = 0;
  int widest = 0;
  for (std::size_t l = 0; l + 1 < sizes_.size(); ++l) {
    if (sizes_[l] <= 0 || sizes_[l + 1] <= 0) {
      throw InputShapeError("policy layer sizes must be positive");
    }
    n += static_cast<std::size_t>(sizes_[l] + 1) * sizes_[l + 1];
  }
  for (int s : sizes_) widest = std::max(widest, s);
  params_.assign(n, 0.0);
  scratch_a_.resize(widest);
  scratch_b_.resize(widest);
}

void Policy::set_params(std::span<const double> p) {
  if (p.size() != params_.size()) {
    throw InputShapeError("expected " + std::to_string(params_.size()) +
                          " policy parameters, got " + std::to_string(p.size()));
  }
  std::copy(p.begin(), p.end(), params_.begin());
}

void Policy::InitRandom(Rng& rng, double output_gain) {
  std::normal_distribution<double> normal(0.0, 1.0);
  std::size_t k = 0;
  const std::size_t layers = sizes_.size() - 1;
  for (std::size_t l = 0; l < layers; ++l) {
    const int in = sizes_[l];
    const int out = sizes_[l + 1];
    double scale = 1.0 / std::sqrt(static_cast<double>(in));
    if (l + 1 == layers) scale *= output_gain;
    for (int i = 0; i < in * out; ++i) params_[k++] = scale * normal(rng);
    for (int i = 0; i < out; ++i) params_[k++] = 0.0;
  }
}

void Policy::Forward(std::span<const double> input, std::span<double> out) const {
  if (static_cast<int>(input.size()) != input_size()) {
    throw InputShapeError("policy input has " + std::to_string(input.size()) +
                          " entries, expected " + std::to_string(input_size()));
  }
  if (static_cast<int>(out.size()) != output_size()) {
    throw InputShapeError("policy output buffer has wrong size");
  }
  std::copy(input.begin(), input.end(), scratch_a_.begin());
  const double* w = params_.data();
  for (std::size_t l = 0; l + 1 < sizes_.size(); ++l) {
    const int in = sizes_[l];
    const int n_out = sizes_[l + 1];
    const double* b = w + static_cast<std::size_t>(in) * n_out;
    for (int o = 0; o < n_out; ++o) {
      const double* row = w + static_cast<std::size_t>(o) * in;
      double acc = b[o];
      for (int i = 0; i < in; ++i) acc += row[i] * scratch_a_[i];
      scratch_b_[o] = std::tanh(acc);
    }
    w = b + n_out;
    std::swap(scratch_a_, scratch_b_);
  }
  std::copy_n(scratch_a_.begin(), output_size(), out.begin());
}

JointVector ActionToTargets(std::span<const double> out,
                            const JointVector& nominal, double action_scale) {
  if (out.size() != nominal.size()) {
    throw InputShapeError("action has wrong size");
  }
  JointVector t;
  for (std::size_t j = 0; j < t.size(); ++j) {
    t[j] = nominal[j] + action_scale * out[j];
  }
  return t;
}

}  // namespace gaitlab
