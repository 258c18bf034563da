#pragma once

#include "wmark/image.hpp"

namespace wmark {

/// One level of 2D Haar analysis. All four subbands are h/2 x w/2 for
/// an even h x w input. Orientation convention (fixed here, since the
/// schemes only need embed/extract to agree):
///   cA - lowpass both axes (approximation)
///   cH - horizontal highpass, vertical lowpass (horizontal detail)
///   cV - vertical highpass, horizontal lowpass (vertical detail)
///   cD - highpass both axes (diagonal detail)
struct DwtSubbands {
    RealMatrix cA, cH, cV, cD;
    int original_rows = 0;
    int original_cols = 0;
};

/// Orthonormal 2D DCT-II of one 8x8 block (separable; 1D scale factors
/// sqrt(1/8) for k=0, sqrt(2/8) otherwise). A constant block of value c
/// maps to a lone DC coefficient of 8c.
///
/// Coefficient positions are 0-based in code; the mid-band pair the DCT
/// scheme manipulates is documented 1-based as (5,2) and (4,3), i.e.
/// at(4,1) and at(3,2) here.
RealMatrix dct2_8x8(const RealMatrix& block);

/// Exact inverse of dct2_8x8.
RealMatrix idct2_8x8(const RealMatrix& coeffs);

/// Single-level orthonormal Haar analysis (taps 1/sqrt2, 1/sqrt2 and
/// 1/sqrt2, -1/sqrt2 over non-overlapping pairs). Requires even
/// dimensions; odd inputs are rejected, crop before calling.
DwtSubbands dwt2_haar(const RealMatrix& m);

/// Exact inverse of dwt2_haar.
RealMatrix idwt2_haar(const DwtSubbands& s);

}  // namespace wmark
