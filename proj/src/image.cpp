#include "wmark/image.hpp"

#include <cctype>
#include <cmath>
#include <fstream>
#include <stdexcept>

#include "wmark/errors.hpp"

namespace wmark {

GrayImage::GrayImage(int w, int h, std::uint8_t fill)
    : width(w), height(h), pixels(static_cast<std::size_t>(w) * h, fill) {
    if (w <= 0 || h <= 0) throw std::invalid_argument("image dimensions must be positive");
}

RealMatrix::RealMatrix(int r, int c, double fill)
    : rows(r), cols(c), values(static_cast<std::size_t>(r) * c, fill) {
    if (r <= 0 || c <= 0) throw std::invalid_argument("matrix dimensions must be positive");
}

RealMatrix Block8x8::to_matrix() const {
    RealMatrix m(8, 8);
    for (int r = 0; r < 8; ++r)
        for (int c = 0; c < 8; ++c) m.at(r, c) = at(r, c);
    return m;
}

void Block8x8::assign(const RealMatrix& m) {
    if (m.rows != 8 || m.cols != 8) throw std::invalid_argument("block assignment requires an 8x8 matrix");
    for (int r = 0; r < 8; ++r)
        for (int c = 0; c < 8; ++c) at(r, c) = m.at(r, c);
}

namespace {

// Cursor over the raw bytes; keeps the offset for error messages.
struct ByteReader {
    const std::vector<std::uint8_t>& bytes;
    std::size_t pos = 0;

    bool eof() const { return pos >= bytes.size(); }
    int peek() const { return eof() ? -1 : bytes[pos]; }
    int get() { return eof() ? -1 : bytes[pos++]; }

    [[noreturn]] void fail(const std::string& what) const {
        throw std::runtime_error("pgm parse error at byte " + std::to_string(pos) + ": " + what);
    }

    // Whitespace and '#' comments are interchangeable between header tokens.
    void skip_space_and_comments() {
        while (!eof()) {
            int c = peek();
            if (std::isspace(c)) {
                ++pos;
            } else if (c == '#') {
                while (!eof() && get() != '\n') {
                }
            } else {
                break;
            }
        }
    }

    long read_uint(const char* what) {
        skip_space_and_comments();
        if (eof() || !std::isdigit(peek())) fail(std::string("expected ") + what);
        long v = 0;
        while (!eof() && std::isdigit(peek())) {
            v = v * 10 + (get() - '0');
            if (v > 1'000'000'000L) fail(std::string(what) + " out of range");
        }
        return v;
    }
};

}  // namespace

GrayImage load_pgm(const std::vector<std::uint8_t>& bytes) {
    ByteReader in{bytes};
    if (bytes.size() < 2) in.fail("not a portable graymap");
    char m0 = static_cast<char>(in.get());
    char m1 = static_cast<char>(in.get());
    bool binary;
    if (m0 == 'P' && m1 == '5') {
        binary = true;
    } else if (m0 == 'P' && m1 == '2') {
        binary = false;
    } else {
        in.pos = 0;
        in.fail("bad magic, expected P5 or P2");
    }

    long w = in.read_uint("width");
    long h = in.read_uint("height");
    if (w <= 0 || h <= 0) in.fail("dimensions must be positive");
    if (w > 65535 || h > 65535) in.fail("dimensions too large");
    long maxval = in.read_uint("maxval");
    if (maxval != 255) in.fail("unsupported maxval " + std::to_string(maxval) + " (must be 255)");

    GrayImage img(static_cast<int>(w), static_cast<int>(h));
    if (binary) {
        // Exactly one whitespace byte separates maxval from the raster.
        if (in.eof() || !std::isspace(in.peek())) in.fail("expected single whitespace before raster");
        in.get();
        if (bytes.size() - in.pos < img.pixel_count()) {
            in.pos = bytes.size();
            in.fail("truncated raster, need " + std::to_string(img.pixel_count()) + " bytes");
        }
        std::copy(bytes.begin() + in.pos, bytes.begin() + in.pos + img.pixel_count(), img.pixels.begin());
    } else {
        for (std::size_t i = 0; i < img.pixel_count(); ++i) {
            long v = in.read_uint("pixel value");
            if (v > 255) in.fail("pixel value " + std::to_string(v) + " exceeds maxval");
            img.pixels[i] = static_cast<std::uint8_t>(v);
        }
    }
    return img;
}

std::vector<std::uint8_t> save_pgm(const GrayImage& img) {
    std::string header = "P5\n" + std::to_string(img.width) + " " + std::to_string(img.height) + "\n255\n";
    std::vector<std::uint8_t> out(header.begin(), header.end());
    out.insert(out.end(), img.pixels.begin(), img.pixels.end());
    return out;
}

GrayImage load_pgm_file(const std::string& path) {
    std::ifstream f(path, std::ios::binary);
    if (!f) throw IoError("cannot open " + path);
    std::vector<std::uint8_t> bytes((std::istreambuf_iterator<char>(f)), std::istreambuf_iterator<char>());
    try {
        return load_pgm(bytes);
    } catch (const std::exception& e) {
        throw IoError(path + ": " + e.what());
    }
}

void save_pgm_file(const GrayImage& img, const std::string& path) {
    std::ofstream f(path, std::ios::binary | std::ios::trunc);
    if (!f) throw IoError("cannot open " + path + " for writing");
    auto bytes = save_pgm(img);
    f.write(reinterpret_cast<const char*>(bytes.data()), static_cast<std::streamsize>(bytes.size()));
    if (!f) throw IoError("write failed: " + path);
}

RealMatrix to_real(const GrayImage& img) {
    RealMatrix m(img.height, img.width);
    for (std::size_t i = 0; i < img.pixel_count(); ++i) m.values[i] = img.pixels[i];
    return m;
}

GrayImage from_real(const RealMatrix& m) {
    GrayImage img(m.cols, m.rows);
    for (std::size_t i = 0; i < m.cell_count(); ++i) {
        double v = m.values[i];
        if (std::isnan(v)) throw std::invalid_argument("from_real: NaN at cell " + std::to_string(i));
        double r = std::round(v);  // std::round is half away from zero
        if (r < 0.0) r = 0.0;
        if (r > 255.0) r = 255.0;
        img.pixels[i] = static_cast<std::uint8_t>(r);
    }
    return img;
}

std::vector<Block8x8> blocks_8x8(RealMatrix& m) {
    if (m.rows % 8 != 0 || m.cols % 8 != 0)
        throw std::invalid_argument("blocks_8x8: dimensions " + std::to_string(m.rows) + "x" +
                                    std::to_string(m.cols) + " are not multiples of 8; crop the image first");
    std::vector<Block8x8> blocks;
    blocks.reserve(static_cast<std::size_t>(m.rows / 8) * (m.cols / 8));
    for (int br = 0; br < m.rows / 8; ++br)
        for (int bc = 0; bc < m.cols / 8; ++bc) blocks.emplace_back(m, br, bc);
    return blocks;
}

}  // namespace wmark
