// SPDX-License-Identifier: Apache-2.0
//
// lfnoma - limited-feedback NOMA analysis and simulation for mmWave downlinks
// Copyright (C) 2026 The lfnoma authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
// http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
// ------------------------------------------------------------------------

#pragma once

#include <cstdint>
#include <random>

namespace lfnoma {

// Every stochastic operation takes an explicit stream; nothing in the library
// owns global generator state.
using RandomStream = std::mt19937_64;

constexpr std::uint64_t splitmix64(std::uint64_t x) noexcept
{
    x += 0x9E3779B97F4A7C15ULL;
    x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
    x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
    return x ^ (x >> 31);
}

/// Independent stream for sub-task `index` of a run seeded with `base_seed`.
/// The mapping depends only on the pair, never on scheduling order.
inline RandomStream derive_stream(std::uint64_t base_seed, std::uint64_t index)
{
    const std::uint64_t a = splitmix64(base_seed);
    const std::uint64_t b = splitmix64(a ^ splitmix64(index + 0x632BE59BD9B4E019ULL));
    std::seed_seq seq{static_cast<std::uint32_t>(a), static_cast<std::uint32_t>(a >> 32),
                      static_cast<std::uint32_t>(b), static_cast<std::uint32_t>(b >> 32)};
    return RandomStream(seq);
}

/// Uniform draw on [0, 1) with 53 random bits.
inline double uniform01(RandomStream& rng)
{
    return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

} // namespace lfnoma
