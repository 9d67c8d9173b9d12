/*
   Copyright 2026 The rro authors

   Licensed under the Apache License, Version 2.0 (the "License");
   you may not use this file except in compliance with the License.
   You may obtain a copy of the License at

       http://www.apache.org/licenses/LICENSE-2.0

   Unless required by applicable law or agreed to in writing, software
   distributed under the License is distributed on an "AS IS" BASIS,
   WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
   See the License for the specific language governing permissions and
   limitations under the License.
*/

#pragma once

#include <cstddef>

#include "rro/null_distribution.hpp"

namespace rro {

inline constexpr double kDefaultEnumerationCap = 2e6;

/// C(m + n, m) as a double (exact below 2^53).
double interleaving_count(std::size_t m, std::size_t n) noexcept;

/// Permutation null of the statistic when both samples come from one
/// continuous parent: every interleaving of m X-ranks among m + n ranks is
/// equally likely, so the statistic is evaluated once per interleaving.
/// Throws EnumerationCapExceeded when C(m + n, m) > cap.
NullDistribution exact_null_distribution(std::size_t m, std::size_t n,
                                         double cap = kDefaultEnumerationCap);

}  // namespace rro
