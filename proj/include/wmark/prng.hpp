#pragma once

#include <cstdint>

#include "wmark/image.hpp"

namespace wmark {

/// Master secret for the spread-spectrum schemes. All per-bit PN
/// sequences derive from this one value.
struct WatermarkKey {
    std::uint64_t master = 0;
};

/// Bipolar pseudo-noise sequence; every element is exactly -1.0 or +1.0.
struct PnSequence {
    std::vector<double> values;
};

/// splitmix64 output function (Vigna, public domain). Bijective on
/// 64-bit words, so distinct inputs always map to distinct outputs.
std::uint64_t mix64(std::uint64_t z);

/// Per-bit seed: mix64(master XOR bit_index). Pure and platform
/// independent; bijectivity of mix64 guarantees collision-free seeds
/// for distinct bit indices under one key. Extractors must derive
/// seeds the same way or correlation detection fails.
std::uint64_t derive_seed(WatermarkKey key, std::uint64_t bit_index);

/// Deterministic bipolar sequence from the splitmix64 stream
/// (state += 0x9E3779B97F4A7C15, output = mix64(state)): element i is
/// +1.0 when bit 63 of the i-th output is set, else -1.0. Pinned
/// bit-for-bit by golden vectors in the test suite.
PnSequence pn_sequence(std::uint64_t seed, std::size_t length);

/// Same stream laid out row-major as a rows x cols matrix.
RealMatrix pn_matrix(std::uint64_t seed, int rows, int cols);

}  // namespace wmark
