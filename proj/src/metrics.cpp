#include "wmark/metrics.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

namespace wmark {

namespace {
void require_same_dims(const GrayImage& a, const GrayImage& b, const char* who) {
    if (a.width != b.width || a.height != b.height)
        throw std::invalid_argument(std::string(who) + ": dimension mismatch " + std::to_string(a.width) + "x" +
                                    std::to_string(a.height) + " vs " + std::to_string(b.width) + "x" +
                                    std::to_string(b.height));
}
}  // namespace

double mse(const GrayImage& a, const GrayImage& b) {
    require_same_dims(a, b, "mse");
    double acc = 0.0;
    for (std::size_t i = 0; i < a.pixel_count(); ++i) {
        double d = static_cast<double>(a.pixels[i]) - static_cast<double>(b.pixels[i]);
        acc += d * d;
    }
    return acc / static_cast<double>(a.pixel_count());
}

double rmse(const GrayImage& a, const GrayImage& b) { return std::sqrt(mse(a, b)); }

double mae(const GrayImage& a, const GrayImage& b) {
    require_same_dims(a, b, "mae");
    double acc = 0.0;
    for (std::size_t i = 0; i < a.pixel_count(); ++i)
        acc += std::abs(static_cast<double>(a.pixels[i]) - static_cast<double>(b.pixels[i]));
    return acc / static_cast<double>(a.pixel_count());
}

double psnr(const GrayImage& a, const GrayImage& b) {
    double m = mse(a, b);
    if (m == 0.0) return std::numeric_limits<double>::infinity();
    return 10.0 * std::log10(255.0 * 255.0 / m);
}

double correlation2d(const RealMatrix& a, const RealMatrix& b) {
    if (a.rows != b.rows || a.cols != b.cols)
        throw std::invalid_argument("correlation2d: dimension mismatch");
    const std::size_t n = a.cell_count();
    double mean_a = 0.0, mean_b = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        mean_a += a.values[i];
        mean_b += b.values[i];
    }
    mean_a /= static_cast<double>(n);
    mean_b /= static_cast<double>(n);
    double cov = 0.0, var_a = 0.0, var_b = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        double da = a.values[i] - mean_a;
        double db = b.values[i] - mean_b;
        cov += da * db;
        var_a += da * da;
        var_b += db * db;
    }
    if (var_a == 0.0 || var_b == 0.0)
        throw std::domain_error("correlation2d: constant input, correlation undefined");
    return cov / std::sqrt(var_a * var_b);
}

double ber(const WatermarkBits& expected, const WatermarkBits& actual) {
    if (expected.rows != actual.rows || expected.cols != actual.cols)
        throw std::invalid_argument("ber: watermark dimension mismatch");
    std::size_t wrong = 0;
    for (std::size_t i = 0; i < expected.bit_count(); ++i)
        if (expected.bits[i] != actual.bits[i]) ++wrong;
    return static_cast<double>(wrong) / static_cast<double>(expected.bit_count());
}

MetricsReport compare_images(const GrayImage& reference, const GrayImage& test) {
    MetricsReport r;
    r.psnr_db = psnr(reference, test);
    r.rmse = rmse(reference, test);
    r.mae = mae(reference, test);
    return r;
}

}  // namespace wmark
