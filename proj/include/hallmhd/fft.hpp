#pragma once

#include <complex>
#include <cstddef>

namespace hallmhd {

using cplx = std::complex<double>;

// Cached out-of-place c2c 3D transforms of size n^3. Plans are built once per
// size with FFTW_ESTIMATE (deterministic plan choice) and are safe to execute
// concurrently on distinct arrays. No scaling is applied here; callers own the
// 1/n^3 convention.
namespace fft {

void forward(int n, const cplx* in, cplx* out);   // e^{-i xi.x} sign
void backward(int n, const cplx* in, cplx* out);  // e^{+i xi.x} sign

}  // namespace fft
}  // namespace hallmhd
