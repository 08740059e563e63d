#pragma once

#include <complex>
#include <span>
#include <vector>

#include "enhance/raster.hpp"

namespace enhance::spectral {

using Complex = std::complex<double>;
using ComplexField = Raster<Complex>;

/// 2D grid of Fourier coefficients. Row index u pairs with the image row,
/// column index v with the image column. dc_centered is set by fftshift.
struct Spectrum {
    ComplexField coeffs;
    bool dc_centered = false;

    std::size_t width() const noexcept { return coeffs.width(); }
    std::size_t height() const noexcept { return coeffs.height(); }
};

bool is_power_of_two(std::size_t n) noexcept;

/// In-place 1D DFT. Power-of-two lengths use recursive radix-2
/// decimation-in-time; other lengths fall back to the O(n^2) direct sum.
/// `inverse` flips the exponent sign and does not scale.
void dft1(std::span<Complex> line, bool inverse = false);

Spectrum dft2(const FieldImage& img);
Spectrum dft2(const ComplexField& field);

/// Inverse transform with the 1/(MN) factor. Throws ShiftedSpectrum if the
/// spectrum is still DC-centered.
ComplexField idft2(const Spectrum& spec);

Spectrum fftshift(const Spectrum& spec);
Spectrum ifftshift(const Spectrum& spec);

// ln(1 + |F|) per coefficient.
FieldImage magnitude_spectrum(const Spectrum& spec);

FieldImage real_part(const ComplexField& field);
FieldImage magnitude(const ComplexField& field);

}  // namespace enhance::spectral
