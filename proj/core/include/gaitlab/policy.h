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

#ifndef GAITLAB_POLICY_H_
#define GAITLAB_POLICY_H_

#include <cstddef>
#include <span>
#include <vector>

#include "gaitlab/planar_sim.h"

namespace gaitlab {

// Fully connected tanh network. Every layer, the output layer included, uses
// tanh, so actions lie in [-1, 1]. Parameters are stored flat, layer by
// layer, each layer as a row-major weight matrix followed by its bias.
class Policy {
 public:
  Policy() = default;
  // `sizes` = {input, hidden..., output}; at least two entries.
  explicit Policy(std::vector<int> sizes);

  const std::vector<int>& sizes() const { return sizes_; }
  int input_size() const { return sizes_.front(); }
  int output_size() const { return sizes_.back(); }
  std::size_t num_params() const { return params_.size(); }

  std::span<const double> params() const { return params_; }
  // Throws InputShapeError on a size mismatch.
  void set_params(std::span<const double> p);

  // Gaussian init scaled by 1/sqrt(fan_in); the last layer is further
  // scaled by `output_gain`. Biases start at zero.
  void InitRandom(Rng& rng, double output_gain = 0.1);

  // Writes output_size() values into `out`. Uses internal scratch buffers, so
  // concurrent callers need their own copy of the policy.
  void Forward(std::span<const double> input, std::span<double> out) const;

 private:
  std::vector<int> sizes_;
  std::vector<double> params_;
  mutable std::vector<double> scratch_a_, scratch_b_;
};

// Joint position targets: nominal + action_scale * network output.
JointVector ActionToTargets(std::span<const double> out,
                            const JointVector& nominal, double action_scale);

}  // namespace gaitlab

#endif  // GAITLAB_POLICY_H_
