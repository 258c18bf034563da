#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <random>

#include "wmark/image.hpp"
#include "wmark/schemes.hpp"

namespace testutil {

// Uniform random raster; harsh content, good for codec and metric tests.
inline wmark::GrayImage random_image(std::uint64_t seed, int w, int h) {
    std::mt19937_64 rng(seed);
    std::uniform_int_distribution<int> dist(0, 255);
    wmark::GrayImage img(w, h);
    for (auto& p : img.pixels) p = static_cast<std::uint8_t>(dist(rng));
    return img;
}

inline wmark::RealMatrix random_matrix(std::uint64_t seed, int rows, int cols, double lo = -128.0,
                                       double hi = 128.0) {
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> dist(lo, hi);
    wmark::RealMatrix m(rows, cols);
    for (auto& v : m.values) v = dist(rng);
    return m;
}

// Photo-like cover: coarse random grid upsampled bilinearly. Smooth
// content is what the correlation detectors are designed for; harsh
// iid noise buries a low-gain mark below the detection floor.
inline wmark::GrayImage smooth_cover(std::uint64_t seed, int w, int h, int lo = 96, int hi = 160) {
    const int step = 16;
    const int gw = w / step + 2;
    const int gh = h / step + 2;
    std::mt19937_64 rng(seed);
    std::uniform_int_distribution<int> dist(lo, hi);
    std::vector<double> grid(static_cast<std::size_t>(gw) * gh);
    for (auto& g : grid) g = dist(rng);

    wmark::GrayImage img(w, h);
    for (int r = 0; r < h; ++r) {
        int gr = r / step;
        double fr = static_cast<double>(r % step) / step;
        for (int c = 0; c < w; ++c) {
            int gc = c / step;
            double fc = static_cast<double>(c % step) / step;
            double v00 = grid[gr * gw + gc];
            double v01 = grid[gr * gw + gc + 1];
            double v10 = grid[(gr + 1) * gw + gc];
            double v11 = grid[(gr + 1) * gw + gc + 1];
            double v = v00 * (1 - fr) * (1 - fc) + v01 * (1 - fr) * fc + v10 * fr * (1 - fc) + v11 * fr * fc;
            img.at(r, c) = static_cast<std::uint8_t>(std::lround(v));
        }
    }
    return img;
}

// Mixed watermark: random bits with at least one 0 and one 1.
inline wmark::WatermarkBits random_mixed_watermark(std::uint64_t seed, int rows, int cols) {
    std::mt19937_64 rng(seed);
    wmark::WatermarkBits wm(rows, cols);
    for (auto& b : wm.bits) b = static_cast<std::uint8_t>(rng() & 1);
    if (std::all_of(wm.bits.begin(), wm.bits.end(), [&](std::uint8_t b) { return b == wm.bits[0]; }))
        wm.bits[0] ^= 1;
    return wm;
}

// Deterministic 256x256 test scene: smooth background plus a bright
// disk and a dark rectangle, pixel range kept clear of the rails.
inline wmark::GrayImage test_scene_256() {
    wmark::GrayImage img = smooth_cover(0x5CE9E5EEDULL, 256, 256, 64, 192);
    for (int r = 0; r < 256; ++r)
        for (int c = 0; c < 256; ++c) {
            double dr = r - 96.0, dc = c - 88.0;
            int v = img.at(r, c);
            if (dr * dr + dc * dc < 40.0 * 40.0) v += 36;
            if (r >= 160 && r < 224 && c >= 144 && c < 232) v -= 40;
            img.at(r, c) = static_cast<std::uint8_t>(std::clamp(v, 8, 247));
        }
    return img;
}

}  // namespace testutil
