// Copyright 2026 The AcuRank Authors.
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

#ifndef ACURANK_NORMAL_H_
#define ACURANK_NORMAL_H_

#include <cstdint>
#include <string_view>

namespace acurank {

inline constexpr double kSqrt2 = 1.41421356237309504880;
inline constexpr double kInvSqrt2Pi = 0.39894228040143267794;

double normal_pdf(double x);
double normal_cdf(double x);
// Upper tail 1 - Phi(x), accurate for large positive x.
double normal_sf(double x);
// Inverse of normal_cdf on (0, 1).
double normal_ppf(double p);

// Stateless 64-bit mixer (splitmix64 finalizer).
std::uint64_t mix_seed(std::uint64_t a, std::uint64_t b);
// Stable seed for a named sub-stream, e.g. (master_seed, query_id).
std::uint64_t derive_seed(std::uint64_t master, std::string_view key);

}  // namespace acurank

#endif  // ACURANK_NORMAL_H_
