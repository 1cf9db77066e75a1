// SPDX-License-Identifier: Apache-2.0
//
// uavicic: sensing-assisted interference coordination for cellular-connected UAVs
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

#ifndef UAVICIC_RANDOM_HPP
#define UAVICIC_RANDOM_HPP

#include <cstdint>
#include <random>

namespace uavicic
{

using RandomStream = std::mt19937_64;

// Substream identifiers. Each consumer of randomness inside one realization
// draws from its own stream so that enabling or disabling a scheme never
// shifts the draws seen by another.
enum class StreamId : std::uint64_t
{
    scenario = 1,
    fading = 2,
    los_state = 3,
    conventional_downlink = 4,
    sensing_downlink = 5,
    conventional_uplink = 6,
    sensing_uplink = 7,
    measurement_noise = 8,
};

// SplitMix64 finalizer.
constexpr std::uint64_t mix64(std::uint64_t z) noexcept
{
    z += 0x9e3779b97f4a7c15ULL;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

// Counter-based split: the seed of a substream depends only on
// (master, realization, stream), never on how many draws came before.
inline RandomStream derive_stream(std::uint64_t master_seed, std::uint64_t realization, StreamId stream)
{
    std::uint64_t s = mix64(master_seed);
    s = mix64(s ^ realization);
    s = mix64(s ^ static_cast<std::uint64_t>(stream));
    std::seed_seq seq{static_cast<std::uint32_t>(s), static_cast<std::uint32_t>(s >> 32)};
    return RandomStream(seq);
}

} // namespace uavicic

#endif
