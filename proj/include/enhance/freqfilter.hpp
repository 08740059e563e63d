#pragma once

#include "enhance/raster.hpp"
#include "enhance/spectral.hpp"

namespace enhance::freqfilter {

enum class Family { Ideal, Butterworth, Gaussian };
enum class Kind { LowPass, HighPass };

/// Transfer function H(u,v) laid out on the DC-centered grid. Gains lie in
/// [0, 1]; the high-pass of every family is the pointwise complement of its
/// low-pass.
struct FilterMask {
    FieldImage gains;
    Family family = Family::Ideal;
    Kind kind = Kind::LowPass;
    double cutoff = 1.0;
    int order = 0;  // Butterworth only

    std::size_t width() const noexcept { return gains.width(); }
    std::size_t height() const noexcept { return gains.height(); }
};

/// Euclidean distance of each grid cell from the centered DC at
/// (rows / 2, cols / 2), in frequency-grid pixels.
FieldImage distance_grid(std::size_t rows, std::size_t cols);

// Boundary inclusive: D <= D0 passes.
FilterMask ideal_mask(std::size_t rows, std::size_t cols, double cutoff, Kind kind);
FilterMask butterworth_mask(std::size_t rows, std::size_t cols, double cutoff, int order, Kind kind);
FilterMask gaussian_mask(std::size_t rows, std::size_t cols, double cutoff, Kind kind);

FilterMask make_mask(Family family, std::size_t rows, std::size_t cols, double cutoff, int order,
                     Kind kind);

/// |idft2(ifftshift(fftshift(dft2(img)) * mask))|. Filtering happens at the
/// native size, so the implied convolution wraps around the image edges.
FieldImage apply_frequency_filter(const FieldImage& img, const FilterMask& mask);

}  // namespace enhance::freqfilter
