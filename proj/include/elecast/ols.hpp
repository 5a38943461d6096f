// Copyright 2026 The elecast Authors. All rights reserved.
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

#pragma once

#include <cmath>
#include <span>
#include <vector>

#include "elecast/error.hpp"

namespace elecast {

struct LineFit {
  double intercept = 0.0;
  double slope = 0.0;
  double residual_sd = 0.0;  // divisor n - 2; zero when n == 2
  std::size_t n = 0;
};

// Simple linear regression y = intercept + slope * x by centered sums.
inline LineFit fit_line(std::span<const double> x, std::span<const double> y) {
  if (x.size() != y.size()) throw InputError("fit_line: length mismatch");
  const std::size_t n = x.size();
  if (n < 2) throw InsufficientDataError("need at least 2 points for a line fit", n);

  double mx = 0.0, my = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    mx += x[i];
    my += y[i];
  }
  mx /= static_cast<double>(n);
  my /= static_cast<double>(n);

  double sxx = 0.0, sxy = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    sxx += (x[i] - mx) * (x[i] - mx);
    sxy += (x[i] - mx) * (y[i] - my);
  }
  // Scale-aware zero test on the regressor spread.
  double scale = 0.0;
  for (double v : x) scale = std::max(scale, std::abs(v));
  if (sxx <= 1e-24 * std::max(1.0, scale * scale) * static_cast<double>(n)) {
    throw DegenerateDesignError("regressor is constant; slope not identified");
  }

  LineFit fit;
  fit.n = n;
  fit.slope = sxy / sxx;
  fit.intercept = my - fit.slope * mx;
  if (n > 2) {
    double rss = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      const double r = y[i] - fit.intercept - fit.slope * x[i];
      rss += r * r;
    }
    fit.residual_sd = std::sqrt(rss / static_cast<double>(n - 2));
  }
  return fit;
}

}  // namespace elecast
