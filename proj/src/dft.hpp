#pragma once

// Thin FFTW wrapper. Plans are created once per (shape, direction) under a
// lock with FFTW_ESTIMATE, so repeated runs pick the same plan and produce
// bit-identical results; execution uses the thread-safe new-array interface.

#include "qha/types.hpp"

namespace qha::detail {

enum class Direction { forward, backward };

/// In-place unnormalized length-n DFT of a contiguous buffer.
/// forward: X[k] = sum_j x[j] e^{-2 pi i jk/n}; backward uses e^{+2 pi i jk/n}.
void dft(Complex* data, int n, Direction dir);

/// In-place unnormalized 2-D DFT over both axes of a square or rectangular matrix.
void dft2(CMatrix& data, Direction dir);

}  // namespace qha::detail
