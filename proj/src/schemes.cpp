#include "wmark/schemes.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "wmark/metrics.hpp"
#include "wmark/transforms.hpp"

namespace wmark {

WatermarkBits::WatermarkBits(int r, int c)
    : rows(r), cols(c), bits(static_cast<std::size_t>(r) * c, 0) {
    if (r <= 0 || c <= 0) throw std::invalid_argument("watermark dimensions must be positive");
}

const char* scheme_name(SchemeId id) {
    switch (id) {
        case SchemeId::SpatialCdma: return "spatial";
        case SchemeId::DctMidband: return "dct";
        case SchemeId::WaveletCdma: return "dwt";
    }
    return "?";
}

SchemeId parse_scheme(const std::string& name) {
    if (name == "spatial") return SchemeId::SpatialCdma;
    if (name == "dct") return SchemeId::DctMidband;
    if (name == "dwt") return SchemeId::WaveletCdma;
    throw std::invalid_argument("unknown scheme '" + name + "' (expected spatial, dct or dwt)");
}

double default_gain(SchemeId id) {
    switch (id) {
        case SchemeId::SpatialCdma: return kDefaultGainSpatial;
        case SchemeId::DctMidband: return kDefaultGainDct;
        case SchemeId::WaveletCdma: return kDefaultGainDwt;
    }
    return 1.0;
}

namespace {

// Mid-band coefficient pair, 1-based (5,2) and (4,3) in the scheme's
// convention -> 0-based (4,1) and (3,2).
constexpr int kCoeffARow = 4, kCoeffACol = 1;
constexpr int kCoeffBRow = 3, kCoeffBCol = 2;

void require_gain(Gain gain) {
    if (!(gain.k > 0.0) || !std::isfinite(gain.k))
        throw std::invalid_argument("gain k must be positive and finite");
}

void require_wm(const WatermarkBits& wm) {
    if (wm.rows <= 0 || wm.cols <= 0 || wm.bit_count() != static_cast<std::size_t>(wm.rows) * wm.cols)
        throw std::invalid_argument("malformed watermark bits");
    for (std::uint8_t b : wm.bits)
        if (b > 1) throw std::invalid_argument("watermark bits must be 0 or 1");
}

bool all_same_bit(const WatermarkBits& wm) {
    return std::all_of(wm.bits.begin(), wm.bits.end(), [&](std::uint8_t b) { return b == wm.bits[0]; });
}

void warn(std::vector<std::string>* warnings, std::string msg) {
    if (warnings) warnings->push_back(std::move(msg));
}

void warn_degenerate(const WatermarkBits& wm, std::vector<std::string>* warnings) {
    if (all_same_bit(wm))
        warn(warnings, "degenerate watermark: all bits are " + std::to_string(int(wm.bits[0])) +
                           "; the mean-correlation detector cannot recover it");
}

// Threshold rule shared by both spread-spectrum extractors: bits start
// at 1, correlations above the mean flip them to 0.
WatermarkBits threshold_correlations(const std::vector<double>& corr, int wm_rows, int wm_cols) {
    double mean = 0.0;
    for (double c : corr) mean += c;
    mean /= static_cast<double>(corr.size());
    WatermarkBits wm(wm_rows, wm_cols);
    for (std::size_t i = 0; i < corr.size(); ++i) wm.bits[i] = (corr[i] > mean) ? 0 : 1;
    return wm;
}

}  // namespace

GrayImage embed_spatial(const GrayImage& cover, const WatermarkBits& wm, WatermarkKey key, Gain gain,
                        std::vector<std::string>* warnings) {
    require_gain(gain);
    require_wm(wm);
    warn_degenerate(wm, warnings);
    // Each zero bit adds a full-image PN pattern; the expected per-pixel
    // perturbation grows like k*sqrt(bits). Past an eighth of full scale
    // the mark stops being unobtrusive, so flag it (no hard limit).
    if (gain.k * std::sqrt(static_cast<double>(wm.bit_count())) > 255.0 / 8.0)
        warn(warnings, "additive budget: " + std::to_string(wm.bit_count()) + " bits at k=" +
                           std::to_string(gain.k) + " pushes expected distortion past 1/8 of full scale");

    RealMatrix work = to_real(cover);
    const std::size_t n = work.cell_count();
    for (std::size_t i = 0; i < wm.bit_count(); ++i) {
        if (wm.bits[i] != 0) continue;
        PnSequence pn = pn_sequence(derive_seed(key, i), n);
        for (std::size_t p = 0; p < n; ++p) work.values[p] += gain.k * pn.values[p];
    }
    return from_real(work);
}

WatermarkBits extract_spatial(const GrayImage& img, WatermarkKey key, int wm_rows, int wm_cols) {
    if (wm_rows <= 0 || wm_cols <= 0) throw std::invalid_argument("watermark dimensions must be positive");
    RealMatrix pixels = to_real(img);
    const std::size_t n_bits = static_cast<std::size_t>(wm_rows) * wm_cols;
    std::vector<double> corr(n_bits);
    for (std::size_t i = 0; i < n_bits; ++i) {
        RealMatrix pn = pn_matrix(derive_seed(key, i), img.height, img.width);
        corr[i] = correlation2d(pixels, pn);  // throws on constant image
    }
    return threshold_correlations(corr, wm_rows, wm_cols);
}

GrayImage embed_dct(const GrayImage& cover, const WatermarkBits& message, Gain gain) {
    require_gain(gain);
    require_wm(message);
    RealMatrix work = to_real(cover);
    auto blocks = blocks_8x8(work);  // rejects dims not divisible by 8
    if (message.bit_count() > blocks.size())
        throw std::invalid_argument("message has " + std::to_string(message.bit_count()) +
                                    " bits but the cover only has " + std::to_string(blocks.size()) +
                                    " 8x8 blocks");
    for (std::size_t i = 0; i < message.bit_count(); ++i) {
        RealMatrix coeffs = dct2_8x8(blocks[i].to_matrix());
        double& a = coeffs.at(kCoeffARow, kCoeffACol);
        double& b = coeffs.at(kCoeffBRow, kCoeffBCol);
        const double sign = message.bits[i] ? 1.0 : -1.0;  // bit 1 wants a > b
        if (sign * (a - b) < 0.0) std::swap(a, b);
        if (sign * (a - b) < gain.k) {
            double push = (gain.k - sign * (a - b)) / 2.0;
            a += sign * push;
            b -= sign * push;
        }
        blocks[i].assign(idct2_8x8(coeffs));
    }
    return from_real(work);
}

WatermarkBits extract_dct(const GrayImage& img, std::size_t n_bits, int wm_rows, int wm_cols) {
    if (wm_rows <= 0 || wm_cols <= 0) throw std::invalid_argument("watermark dimensions must be positive");
    if (n_bits != static_cast<std::size_t>(wm_rows) * wm_cols)
        throw std::invalid_argument("n_bits must equal wm_rows * wm_cols");
    RealMatrix work = to_real(img);
    auto blocks = blocks_8x8(work);
    if (n_bits > blocks.size())
        throw std::invalid_argument("requested " + std::to_string(n_bits) + " bits but the image only has " +
                                    std::to_string(blocks.size()) + " 8x8 blocks");
    WatermarkBits wm(wm_rows, wm_cols);
    for (std::size_t i = 0; i < n_bits; ++i) {
        RealMatrix coeffs = dct2_8x8(blocks[i].to_matrix());
        // strict inequality; ties decode as 0
        wm.bits[i] = coeffs.at(kCoeffARow, kCoeffACol) > coeffs.at(kCoeffBRow, kCoeffBCol) ? 1 : 0;
    }
    return wm;
}

GrayImage embed_dwt(const GrayImage& cover, const WatermarkBits& wm, WatermarkKey key, Gain gain,
                    std::vector<std::string>* warnings) {
    require_gain(gain);
    require_wm(wm);
    warn_degenerate(wm, warnings);

    DwtSubbands s = dwt2_haar(to_real(cover));  // rejects odd dims
    const int hr = s.cH.rows, hc = s.cH.cols;
    for (std::size_t i = 0; i < wm.bit_count(); ++i) {
        if (wm.bits[i] != 0) continue;
        // distinct seed domains keep the cH and cV patterns independent
        RealMatrix pn_h = pn_matrix(derive_seed(key, 2 * i), hr, hc);
        RealMatrix pn_v = pn_matrix(derive_seed(key, 2 * i + 1), hr, hc);
        for (std::size_t p = 0; p < s.cH.cell_count(); ++p) {
            s.cH.values[p] += gain.k * pn_h.values[p];
            s.cV.values[p] += gain.k * pn_v.values[p];
        }
    }
    return from_real(idwt2_haar(s));
}

WatermarkBits extract_dwt(const GrayImage& img, WatermarkKey key, int wm_rows, int wm_cols) {
    if (wm_rows <= 0 || wm_cols <= 0) throw std::invalid_argument("watermark dimensions must be positive");
    DwtSubbands s = dwt2_haar(to_real(img));
    const std::size_t n_bits = static_cast<std::size_t>(wm_rows) * wm_cols;
    std::vector<double> corr(n_bits);
    for (std::size_t i = 0; i < n_bits; ++i) {
        RealMatrix pn_h = pn_matrix(derive_seed(key, 2 * i), s.cH.rows, s.cH.cols);
        RealMatrix pn_v = pn_matrix(derive_seed(key, 2 * i + 1), s.cV.rows, s.cV.cols);
        corr[i] = (correlation2d(s.cH, pn_h) + correlation2d(s.cV, pn_v)) / 2.0;
    }
    return threshold_correlations(corr, wm_rows, wm_cols);
}

}  // namespace wmark
