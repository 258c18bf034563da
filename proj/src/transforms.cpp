#include "wmark/transforms.hpp"

#include <array>
#include <cmath>
#include <stdexcept>

namespace wmark {

namespace {

// Orthonormal DCT-II basis: B[k][n] = s(k) * cos(pi*(2n+1)*k/16).
const std::array<std::array<double, 8>, 8>& dct_basis() {
    static const auto basis = [] {
        std::array<std::array<double, 8>, 8> b{};
        const double pi = std::acos(-1.0);
        for (int k = 0; k < 8; ++k) {
            double s = (k == 0) ? std::sqrt(1.0 / 8.0) : std::sqrt(2.0 / 8.0);
            for (int n = 0; n < 8; ++n) b[k][n] = s * std::cos(pi * (2 * n + 1) * k / 16.0);
        }
        return b;
    }();
    return basis;
}

void require_8x8(const RealMatrix& m, const char* who) {
    if (m.rows != 8 || m.cols != 8)
        throw std::invalid_argument(std::string(who) + ": expected an 8x8 matrix, got " +
                                    std::to_string(m.rows) + "x" + std::to_string(m.cols));
}

}  // namespace

RealMatrix dct2_8x8(const RealMatrix& block) {
    require_8x8(block, "dct2_8x8");
    const auto& B = dct_basis();
    // rows first: T = B * X
    std::array<std::array<double, 8>, 8> tmp{};
    for (int k = 0; k < 8; ++k)
        for (int c = 0; c < 8; ++c) {
            double acc = 0.0;
            for (int n = 0; n < 8; ++n) acc += B[k][n] * block.at(n, c);
            tmp[k][c] = acc;
        }
    // then columns: C = T * B'
    RealMatrix out(8, 8);
    for (int k = 0; k < 8; ++k)
        for (int l = 0; l < 8; ++l) {
            double acc = 0.0;
            for (int n = 0; n < 8; ++n) acc += tmp[k][n] * B[l][n];
            out.at(k, l) = acc;
        }
    return out;
}

RealMatrix idct2_8x8(const RealMatrix& coeffs) {
    require_8x8(coeffs, "idct2_8x8");
    const auto& B = dct_basis();
    // X = B' * C * B
    std::array<std::array<double, 8>, 8> tmp{};
    for (int n = 0; n < 8; ++n)
        for (int l = 0; l < 8; ++l) {
            double acc = 0.0;
            for (int k = 0; k < 8; ++k) acc += B[k][n] * coeffs.at(k, l);
            tmp[n][l] = acc;
        }
    RealMatrix out(8, 8);
    for (int n = 0; n < 8; ++n)
        for (int m = 0; m < 8; ++m) {
            double acc = 0.0;
            for (int l = 0; l < 8; ++l) acc += tmp[n][l] * B[l][m];
            out.at(n, m) = acc;
        }
    return out;
}

DwtSubbands dwt2_haar(const RealMatrix& m) {
    if (m.rows % 2 != 0 || m.cols % 2 != 0)
        throw std::invalid_argument("dwt2_haar: dimensions " + std::to_string(m.rows) + "x" +
                                    std::to_string(m.cols) + " must be even; crop the image first");
    const int hr = m.rows / 2;
    const int hc = m.cols / 2;
    DwtSubbands s;
    s.cA = RealMatrix(hr, hc);
    s.cH = RealMatrix(hr, hc);
    s.cV = RealMatrix(hr, hc);
    s.cD = RealMatrix(hr, hc);
    s.original_rows = m.rows;
    s.original_cols = m.cols;
    for (int i = 0; i < hr; ++i)
        for (int j = 0; j < hc; ++j) {
            double a = m.at(2 * i, 2 * j);
            double b = m.at(2 * i, 2 * j + 1);
            double c = m.at(2 * i + 1, 2 * j);
            double d = m.at(2 * i + 1, 2 * j + 1);
            s.cA.at(i, j) = (a + b + c + d) / 2.0;
            s.cH.at(i, j) = (a - b + c - d) / 2.0;
            s.cV.at(i, j) = (a + b - c - d) / 2.0;
            s.cD.at(i, j) = (a - b - c + d) / 2.0;
        }
    return s;
}

RealMatrix idwt2_haar(const DwtSubbands& s) {
    const int hr = s.cA.rows;
    const int hc = s.cA.cols;
    auto same = [&](const RealMatrix& b) { return b.rows == hr && b.cols == hc; };
    if (!same(s.cH) || !same(s.cV) || !same(s.cD))
        throw std::invalid_argument("idwt2_haar: subband dimensions disagree");
    RealMatrix m(hr * 2, hc * 2);
    for (int i = 0; i < hr; ++i)
        for (int j = 0; j < hc; ++j) {
            double ca = s.cA.at(i, j);
            double ch = s.cH.at(i, j);
            double cv = s.cV.at(i, j);
            double cd = s.cD.at(i, j);
            m.at(2 * i, 2 * j) = (ca + ch + cv + cd) / 2.0;
            m.at(2 * i, 2 * j + 1) = (ca - ch + cv - cd) / 2.0;
            m.at(2 * i + 1, 2 * j) = (ca + ch - cv - cd) / 2.0;
            m.at(2 * i + 1, 2 * j + 1) = (ca - ch - cv + cd) / 2.0;
        }
    return m;
}

}  // namespace wmark
