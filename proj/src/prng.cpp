#include "wmark/prng.hpp"

#include <stdexcept>

namespace wmark {

std::uint64_t mix64(std::uint64_t z) {
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
}

std::uint64_t derive_seed(WatermarkKey key, std::uint64_t bit_index) {
    return mix64(key.master ^ bit_index);
}

namespace {
constexpr std::uint64_t kGolden = 0x9E3779B97F4A7C15ULL;
}

PnSequence pn_sequence(std::uint64_t seed, std::size_t length) {
    if (length == 0) throw std::invalid_argument("pn_sequence: length must be positive");
    PnSequence pn;
    pn.values.resize(length);
    std::uint64_t state = seed;
    for (std::size_t i = 0; i < length; ++i) {
        state += kGolden;
        pn.values[i] = (mix64(state) >> 63) ? 1.0 : -1.0;
    }
    return pn;
}

RealMatrix pn_matrix(std::uint64_t seed, int rows, int cols) {
    RealMatrix m(rows, cols);
    m.values = pn_sequence(seed, m.cell_count()).values;
    return m;
}

}  // namespace wmark
