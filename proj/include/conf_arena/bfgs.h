// Copyright 2026 The Conf Arena Authors.
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

#ifndef CONF_ARENA_BFGS_H_
#define CONF_ARENA_BFGS_H_

#include <functional>

#include <Eigen/Core>

namespace conf_arena {

// Returns f(x) and writes the gradient into `grad` (already sized).
using Objective = std::function<double(const Eigen::VectorXd& x, Eigen::VectorXd& grad)>;

struct BfgsOptions {
  int max_iters = 100;
  // Stop once the Euclidean norm of the gradient drops below this.
  double gradient_tol = 1e-8;
};

struct BfgsResult {
  Eigen::VectorXd x;
  double value = 0.0;
  double gradient_norm = 0.0;
  int iterations = 0;
  bool converged = false;
};

// Dense inverse-Hessian BFGS with a strong-Wolfe line search, starting from
// the identity. An iteration is one accepted step.
BfgsResult minimize_bfgs(const Objective& f, Eigen::VectorXd x0,
                         const BfgsOptions& options);

}  // namespace conf_arena

#endif  // CONF_ARENA_BFGS_H_
