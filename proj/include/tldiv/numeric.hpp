// Copyright 2026 The tldiv Authors
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

#ifndef TLDIV_NUMERIC_HPP_
#define TLDIV_NUMERIC_HPP_

#include <boost/multiprecision/cpp_int.hpp>

#include <cstdint>

namespace tldiv {

// Exact arithmetic used for probabilities, posteriors and perimeters.
// Fixture equalities (1/2, 1/4, 5/8, ...) hold exactly, never up to epsilon.
using Int = boost::multiprecision::cpp_int;
using Rat = boost::multiprecision::cpp_rational;

inline Int factorial(std::uint64_t n) {
  Int r = 1;
  for (std::uint64_t i = 2; i <= n; ++i) r *= i;
  return r;
}

inline double to_double(const Rat& r) {
  return boost::multiprecision::numerator(r).convert_to<double>() /
         boost::multiprecision::denominator(r).convert_to<double>();
}

}  // namespace tldiv

#endif  // TLDIV_NUMERIC_HPP_
