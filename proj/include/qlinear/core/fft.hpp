#pragma once

#include <span>

#include "qlinear/core/wavefunction.hpp"

// Thin FFTW3 wrapper. Plans are created once per length with FFTW_ESTIMATE
// (deterministic, so repeated runs are bit-identical) and cached behind a
// mutex; execution is thread-safe.
namespace qlinear::fft {

/// In place, unnormalized: X_k = sum_j x_j exp(-2 pi i j k / n).
void forward(std::span<Complex> data);
/// In place, unnormalized: x_j = sum_k X_k exp(+2 pi i j k / n).
void backward(std::span<Complex> data);

}  // namespace qlinear::fft
