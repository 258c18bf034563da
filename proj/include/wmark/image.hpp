#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace wmark {

/// 8-bit grayscale raster, row-major. width*height == pixels.size().
struct GrayImage {
    int width = 0;
    int height = 0;
    std::vector<std::uint8_t> pixels;

    GrayImage() = default;
    GrayImage(int w, int h, std::uint8_t fill = 0);

    std::uint8_t& at(int row, int col) { return pixels[static_cast<std::size_t>(row) * width + col]; }
    std::uint8_t at(int row, int col) const { return pixels[static_cast<std::size_t>(row) * width + col]; }
    std::size_t pixel_count() const { return pixels.size(); }

    bool operator==(const GrayImage&) const = default;
};

/// Dense double matrix, row-major. Working buffer for transform
/// coefficients and PN patterns.
struct RealMatrix {
    int rows = 0;
    int cols = 0;
    std::vector<double> values;

    RealMatrix() = default;
    RealMatrix(int r, int c, double fill = 0.0);

    double& at(int row, int col) { return values[static_cast<std::size_t>(row) * cols + col]; }
    double at(int row, int col) const { return values[static_cast<std::size_t>(row) * cols + col]; }
    std::size_t cell_count() const { return values.size(); }
};

/// Mutable view of one 8x8 tile of a parent RealMatrix. Writing through
/// the view modifies exactly the 64 cells of that tile.
class Block8x8 {
public:
    Block8x8(RealMatrix& parent, int block_row, int block_col)
        : parent_(&parent), block_row_(block_row), block_col_(block_col) {}

    int block_row() const { return block_row_; }
    int block_col() const { return block_col_; }

    double& at(int r, int c) { return parent_->at(block_row_ * 8 + r, block_col_ * 8 + c); }
    double at(int r, int c) const { return parent_->at(block_row_ * 8 + r, block_col_ * 8 + c); }

    RealMatrix to_matrix() const;
    void assign(const RealMatrix& m);  // m must be 8x8

private:
    RealMatrix* parent_;
    int block_row_;
    int block_col_;
};

/// Parses a portable graymap: binary "P5" or ASCII "P2", maxval 255,
/// '#' comments permitted. Errors report the offending byte offset.
GrayImage load_pgm(const std::vector<std::uint8_t>& bytes);

/// Canonical binary encoding: "P5\n<w> <h>\n255\n" followed by raw pixels.
/// load_pgm(save_pgm(img)) == img bit-exactly.
std::vector<std::uint8_t> save_pgm(const GrayImage& img);

GrayImage load_pgm_file(const std::string& path);
void save_pgm_file(const GrayImage& img, const std::string& path);

/// Exact widening of pixel values to doubles.
RealMatrix to_real(const GrayImage& img);

/// Quantizes back to 8 bits: round half away from zero, then clamp to
/// [0,255]. NaN cells are an error.
GrayImage from_real(const RealMatrix& m);

/// Enumerates all 8x8 tiles row-major by block coordinate. Both matrix
/// dimensions must be divisible by 8; anything else is rejected (no
/// silent padding).
std::vector<Block8x8> blocks_8x8(RealMatrix& m);

}  // namespace wmark
