#pragma once

#include <string>
#include <vector>

#include "wmark/image.hpp"
#include "wmark/prng.hpp"

namespace wmark {

/// Binary message matrix, row-major, elements 0 or 1.
struct WatermarkBits {
    int rows = 0;
    int cols = 0;
    std::vector<std::uint8_t> bits;

    WatermarkBits() = default;
    WatermarkBits(int r, int c);

    std::size_t bit_count() const { return bits.size(); }
    bool operator==(const WatermarkBits&) const = default;
};

/// Embedding strength. Imperceptibility/robustness trade-off knob.
struct Gain {
    double k = 1.0;
};

enum class SchemeId { SpatialCdma, DctMidband, WaveletCdma };

const char* scheme_name(SchemeId id);
SchemeId parse_scheme(const std::string& name);  // "spatial" | "dct" | "dwt"

constexpr double kDefaultGainSpatial = 2.0;
constexpr double kDefaultGainDct = 25.0;
constexpr double kDefaultGainDwt = 1.0;

double default_gain(SchemeId id);

// Both spread-spectrum schemes share one polarity convention: a 0 bit
// adds the keyed PN pattern, a 1 bit adds nothing, and extraction maps
// above-mean correlation back to 0. Warnings (degenerate all-same-bit
// watermarks, oversized additive payloads) are appended to *warnings
// when a sink is supplied.

/// Spatial CDMA spread spectrum: for every 0 bit i, adds
/// k * pn(derive_seed(key, i)) across the whole image, then requantizes.
GrayImage embed_spatial(const GrayImage& cover, const WatermarkBits& wm, WatermarkKey key, Gain gain,
                        std::vector<std::string>* warnings = nullptr);

/// Blind spatial extraction: regenerates each bit's PN pattern,
/// correlates it with the image, and thresholds at the mean correlation
/// (above mean -> 0). Constant images are an error.
WatermarkBits extract_spatial(const GrayImage& img, WatermarkKey key, int wm_rows, int wm_cols);

/// Mid-band DCT coefficient comparison, keyless. Message bits map
/// row-major onto 8x8 blocks; in each block the coefficients at 1-based
/// (5,2) and (4,3) are swapped/pushed apart so that bit 1 leaves
/// (5,2) > (4,3) with margin at least k. Blocks past the message are
/// untouched.
GrayImage embed_dct(const GrayImage& cover, const WatermarkBits& message, Gain gain);

/// Per block: bit = 1 iff coeff(5,2) > coeff(4,3); ties decode as 0.
WatermarkBits extract_dct(const GrayImage& img, std::size_t n_bits, int wm_rows, int wm_cols);

/// Wavelet CDMA spread spectrum: one Haar level; for every 0 bit i,
/// adds k * pn_h(i) to cH and k * pn_v(i) to cV (seeds derive from bit
/// index 2i for cH and 2i+1 for cV), then inverts and requantizes.
GrayImage embed_dwt(const GrayImage& cover, const WatermarkBits& wm, WatermarkKey key, Gain gain,
                    std::vector<std::string>* warnings = nullptr);

/// Blind wavelet extraction: per bit, averages the cH and cV
/// correlations and thresholds at the mean (above mean -> 0).
WatermarkBits extract_dwt(const GrayImage& img, WatermarkKey key, int wm_rows, int wm_cols);

}  // namespace wmark
