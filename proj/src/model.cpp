// Copyright 2026 The probplan authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     https://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "probplan/model.hpp"

#include <cmath>
#include <stdexcept>

namespace probplan {
namespace {

void check_component(double v, const char* what) {
  if (std::isnan(v)) {
    throw std::invalid_argument(std::string("ratio ") + what + " is NaN");
  }
  if (v < 0.0) {
    throw std::invalid_argument(std::string("ratio ") + what +
                                " is negative");
  }
}

void check_ratio(const Ratio& r) {
  check_component(r.num, "numerator");
  check_component(r.den, "denominator");
  if (r.num == 0.0 && r.den == 0.0) {
    throw std::invalid_argument("ratio 0/0 is undefined");
  }
  if (std::isinf(r.den)) {
    throw std::invalid_argument("ratio denominator is infinite");
  }
}

}  // namespace

void Action::validate() const {
  if (!(prob >= 0.0 && prob <= 1.0)) {
    throw std::invalid_argument("action '" + id +
                                "': probability must lie in [0, 1]");
  }
  if (!std::isfinite(cost) || cost < 0.0) {
    throw std::invalid_argument("action '" + id +
                                "': cost must be finite and nonnegative");
  }
}

std::weak_ordering ratio_cmp(const Ratio& a, const Ratio& b) {
  check_ratio(a);
  check_ratio(b);

  // Infinite ratios: zero denominator or infinite numerator.
  const bool a_inf = a.den == 0.0 || std::isinf(a.num);
  const bool b_inf = b.den == 0.0 || std::isinf(b.num);
  if (a_inf || b_inf) {
    if (a_inf && b_inf) return std::weak_ordering::equivalent;
    return a_inf ? std::weak_ordering::greater : std::weak_ordering::less;
  }

  const double lhs = a.num * b.den;
  const double rhs = b.num * a.den;
  if (lhs < rhs) return std::weak_ordering::less;
  if (lhs > rhs) return std::weak_ordering::greater;
  return std::weak_ordering::equivalent;
}

}  // namespace probplan
