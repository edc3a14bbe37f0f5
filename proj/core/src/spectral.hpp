#pragma once

#include <complex>
#include <cstddef>
#include <span>
#include <vector>

namespace scpulse::detail {

/// Forward real DFT: c_k = sum_j f_j exp(-2 pi i j k / N), k = 0..N/2.
std::vector<std::complex<double>> rfft(std::span<const double> f);

/// Inverse of rfft including the 1/N normalisation.
std::vector<double> irfft(std::span<const std::complex<double>> c, std::size_t n);

}  // namespace scpulse::detail
