#ifndef DLAB_FFT_HPP
#define DLAB_FFT_HPP

#include <complex>
#include <vector>

namespace dlab {

// Unnormalized DFT pair (FFTW conventions):
//   forward:  F_k = sum_j f_j e^{-2 pi i j k / n}
//   inverse:  f_j = sum_k F_k e^{+2 pi i j k / n}   (caller divides by n)
// With x_j on the grid, e^{-i xi_k x_j} = e^{-2 pi i j k / n} * e^{+i pi k},
// but multiplier operations never see that phase, so raw bins are used
// throughout and only norms/serialization apply constants.
void fft_forward(std::vector<std::complex<double>>& data);
void fft_inverse(std::vector<std::complex<double>>& data); // includes 1/n

} // namespace dlab

#endif
