#pragma once

#include <optional>

#include "wmark/image.hpp"
#include "wmark/schemes.hpp"

namespace wmark {

/// One image pair's quality numbers. psnr_db is +infinity when the
/// images are identical (rmse == 0).
struct MetricsReport {
    double psnr_db = 0.0;
    double rmse = 0.0;
    double mae = 0.0;
    std::optional<double> ber;
};

double mse(const GrayImage& a, const GrayImage& b);
double rmse(const GrayImage& a, const GrayImage& b);
double mae(const GrayImage& a, const GrayImage& b);

/// 10*log10(255^2 / mse), peak fixed at 255 for 8-bit data.
double psnr(const GrayImage& a, const GrayImage& b);

/// Pearson correlation over all cells, population statistics. Constant
/// input (zero variance on either side) is an error.
double correlation2d(const RealMatrix& a, const RealMatrix& b);

/// Fraction of mismatched bits.
double ber(const WatermarkBits& expected, const WatermarkBits& actual);

MetricsReport compare_images(const GrayImage& reference, const GrayImage& test);

}  // namespace wmark
