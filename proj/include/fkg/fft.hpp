#ifndef FKG_FFT_HPP
#define FKG_FFT_HPP

#include <complex>
#include <span>

namespace fkg::fft {

using cplx = std::complex<double>;

// Unnormalized DFTs, any even length, backed by FFTW.
//   forward:  out[k] = sum_i in[i] e^{-2*pi*I*i*k/n}
//   backward: out[i] = sum_k in[k] e^{+2*pi*I*i*k/n}
// Plans are cached per length; creation is serialized (the FFTW planner is
// not thread-safe), execution is safe to run concurrently.
void forward(std::span<const cplx> in, std::span<cplx> out);
void backward(std::span<const cplx> in, std::span<cplx> out);

} // namespace fkg::fft

#endif
