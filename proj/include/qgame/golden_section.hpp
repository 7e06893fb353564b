// Copyright 2026 The qgame Authors
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

#ifndef QGAME_GOLDEN_SECTION_HPP
#define QGAME_GOLDEN_SECTION_HPP

#include <cmath>
#include <utility>

namespace qgame {

/// Golden-section search for a maximum of `f` on [lo, hi]. Stops once the
/// bracket is narrower than `tol`. Returns the best abscissa evaluated and
/// its value; the endpoints are included in the candidates so a monotone
/// objective converges onto the boundary.
template <typename F>
std::pair<double, double> golden_section_max(F&& f, double lo, double hi, double tol) {
  const double inv_phi = (std::sqrt(5.0) - 1.0) / 2.0;
  double best_x = lo;
  double best_f = f(lo);
  if (const double fh = f(hi); fh > best_f) {
    best_x = hi;
    best_f = fh;
  }
  double a = lo;
  double b = hi;
  double c = b - inv_phi * (b - a);
  double d = a + inv_phi * (b - a);
  double fc = f(c);
  double fd = f(d);
  while (b - a > tol) {
    if (fc >= fd) {
      b = d;
      d = c;
      fd = fc;
      c = b - inv_phi * (b - a);
      fc = f(c);
    } else {
      a = c;
      c = d;
      fc = fd;
      d = a + inv_phi * (b - a);
      fd = f(d);
    }
  }
  for (auto [x, fx] : {std::pair{c, fc}, std::pair{d, fd}}) {
    if (fx > best_f) {
      best_x = x;
      best_f = fx;
    }
  }
  return {best_x, best_f};
}

}  // namespace qgame

#endif  // QGAME_GOLDEN_SECTION_HPP
