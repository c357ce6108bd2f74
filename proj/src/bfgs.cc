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

#include "conf_arena/bfgs.h"

#include <cmath>
#include <optional>

#include <Eigen/Dense>

namespace conf_arena {
namespace {

constexpr double kArmijo = 1e-4;
constexpr double kCurvature = 0.9;
constexpr int kMaxBracketSteps = 40;
constexpr int kMaxZoomSteps = 60;

struct Probe {
  double alpha = 0.0;
  double value = 0.0;
  double slope = 0.0;  // directional derivative along the search direction
  Eigen::VectorXd x;
  Eigen::VectorXd grad;
};

class LineSearch {
 public:
  LineSearch(const Objective& f, const Eigen::VectorXd& x, const Eigen::VectorXd& dir,
             double value0, double slope0)
      : f_(f), x_(x), dir_(dir), value0_(value0), slope0_(slope0) {}

  // Nocedal & Wright, algorithms 3.5 and 3.6.
  std::optional<Probe> run() {
    Probe prev{0.0, value0_, slope0_, {}, {}};
    double alpha = 1.0;
    for (int i = 0; i < kMaxBracketSteps; ++i) {
      Probe cur = probe(alpha);
      if (!std::isfinite(cur.value) || cur.value > value0_ + kArmijo * alpha * slope0_ ||
          (i > 0 && cur.value >= prev.value)) {
        return zoom(prev, cur);
      }
      if (std::abs(cur.slope) <= -kCurvature * slope0_) return cur;
      if (cur.slope >= 0.0) return zoom(cur, prev);
      prev = std::move(cur);
      alpha *= 2.0;
    }
    return std::nullopt;
  }

 private:
  Probe probe(double alpha) {
    Probe p;
    p.alpha = alpha;
    p.x = x_ + alpha * dir_;
    p.grad.resize(x_.size());
    p.value = f_(p.x, p.grad);
    p.slope = p.grad.dot(dir_);
    return p;
  }

  std::optional<Probe> zoom(Probe lo, Probe hi) {
    for (int i = 0; i < kMaxZoomSteps; ++i) {
      const double width = hi.alpha - lo.alpha;
      // Minimizer of the quadratic through lo (value, slope) and hi (value),
      // kept away from the interval ends; bisection when it misbehaves.
      double alpha = lo.alpha + 0.5 * width;
      if (std::isfinite(hi.value)) {
        const double denom = 2.0 * (hi.value - lo.value - lo.slope * width);
        if (denom > 0.0) {
          const double step = -lo.slope * width * width / denom;
          const double cand = lo.alpha + step;
          const double a = std::min(lo.alpha, hi.alpha);
          const double b = std::max(lo.alpha, hi.alpha);
          const double margin = 0.1 * (b - a);
          if (cand > a + margin && cand < b - margin) alpha = cand;
        }
      }
      Probe cur = probe(alpha);
      if (!std::isfinite(cur.value) || cur.value > value0_ + kArmijo * alpha * slope0_ ||
          cur.value >= lo.value) {
        hi = std::move(cur);
      } else {
        if (std::abs(cur.slope) <= -kCurvature * slope0_) return cur;
        if (cur.slope * (hi.alpha - lo.alpha) >= 0.0) hi = lo;
        lo = std::move(cur);
      }
      if (std::abs(hi.alpha - lo.alpha) < 1e-16 * std::max(1.0, std::abs(lo.alpha))) break;
    }
    // Accept the best sufficient-decrease point even without curvature.
    if (lo.alpha > 0.0 && lo.value < value0_) return lo;
    return std::nullopt;
  }

  const Objective& f_;
  const Eigen::VectorXd& x_;
  const Eigen::VectorXd& dir_;
  double value0_;
  double slope0_;
};

}  // namespace

BfgsResult minimize_bfgs(const Objective& f, Eigen::VectorXd x0,
                         const BfgsOptions& options) {
  const Eigen::Index n = x0.size();
  BfgsResult result;
  result.x = std::move(x0);
  Eigen::VectorXd grad(n);
  result.value = f(result.x, grad);
  result.gradient_norm = grad.norm();
  Eigen::MatrixXd inv_hessian = Eigen::MatrixXd::Identity(n, n);

  while (result.iterations < options.max_iters) {
    if (result.gradient_norm < options.gradient_tol) break;
    Eigen::VectorXd dir = -inv_hessian * grad;
    double slope = grad.dot(dir);
    if (slope >= 0.0) {
      // Lost descent; restart from steepest descent.
      inv_hessian.setIdentity();
      dir = -grad;
      slope = -grad.squaredNorm();
    }
    auto step = LineSearch(f, result.x, dir, result.value, slope).run();
    if (!step) break;

    const Eigen::VectorXd s = step->x - result.x;
    const Eigen::VectorXd y = step->grad - grad;
    const double sy = s.dot(y);
    result.x = std::move(step->x);
    grad = std::move(step->grad);
    result.value = step->value;
    result.gradient_norm = grad.norm();
    ++result.iterations;

    if (sy > 1e-12 * s.norm() * y.norm()) {
      const double rho = 1.0 / sy;
      const Eigen::VectorXd hy = inv_hessian * y;
      const double yhy = y.dot(hy);
      // H' = (I - rho s y^T) H (I - rho y s^T) + rho s s^T, expanded.
      inv_hessian.noalias() -= rho * (hy * s.transpose() + s * hy.transpose());
      inv_hessian.noalias() += (rho * rho * yhy + rho) * (s * s.transpose());
    }
  }
  result.converged = result.gradient_norm < options.gradient_tol;
  return result;
}

}  // namespace conf_arena
