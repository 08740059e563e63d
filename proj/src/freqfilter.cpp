#include "enhance/freqfilter.hpp"

#include <cmath>

namespace enhance::freqfilter {

namespace {

void check_cutoff(double cutoff) {
    if (!(cutoff > 0.0) || !std::isfinite(cutoff)) {
        throw Error(ErrorCode::BadCutoff, "cutoff must be a positive radius");
    }
}

template <typename LowPassGain>
FilterMask build(std::size_t rows, std::size_t cols, Family family, Kind kind, double cutoff,
                 int order, LowPassGain gain) {
    FieldImage gains = distance_grid(rows, cols);
    for (double& d : gains.pixels()) {
        const double low = gain(d);
        d = kind == Kind::LowPass ? low : 1.0 - low;
    }
    return {std::move(gains), family, kind, cutoff, order};
}

}  // namespace

FieldImage distance_grid(std::size_t rows, std::size_t cols) {
    FieldImage grid(cols, rows);
    const double center_row = static_cast<double>(rows / 2);
    const double center_col = static_cast<double>(cols / 2);
    for (std::size_t r = 0; r < rows; ++r) {
        for (std::size_t c = 0; c < cols; ++c) {
            grid.at(r, c) = std::hypot(static_cast<double>(r) - center_row,
                                       static_cast<double>(c) - center_col);
        }
    }
    return grid;
}

FilterMask ideal_mask(std::size_t rows, std::size_t cols, double cutoff, Kind kind) {
    check_cutoff(cutoff);
    return build(rows, cols, Family::Ideal, kind, cutoff, 0,
                 [cutoff](double d) { return d <= cutoff ? 1.0 : 0.0; });
}

FilterMask butterworth_mask(std::size_t rows, std::size_t cols, double cutoff, int order, Kind kind) {
    check_cutoff(cutoff);
    if (order < 1) throw Error(ErrorCode::BadOrder, "butterworth order must be >= 1");
    return build(rows, cols, Family::Butterworth, kind, cutoff, order, [cutoff, order](double d) {
        return 1.0 / (1.0 + std::pow(d / cutoff, 2.0 * order));
    });
}

FilterMask gaussian_mask(std::size_t rows, std::size_t cols, double cutoff, Kind kind) {
    check_cutoff(cutoff);
    return build(rows, cols, Family::Gaussian, kind, cutoff, 0,
                 [cutoff](double d) { return std::exp(-(d * d) / (2.0 * cutoff * cutoff)); });
}

FilterMask make_mask(Family family, std::size_t rows, std::size_t cols, double cutoff, int order,
                     Kind kind) {
    switch (family) {
        case Family::Ideal: return ideal_mask(rows, cols, cutoff, kind);
        case Family::Butterworth: return butterworth_mask(rows, cols, cutoff, order, kind);
        case Family::Gaussian: return gaussian_mask(rows, cols, cutoff, kind);
    }
    throw Error(ErrorCode::InvalidArgument, "unknown filter family");
}

FieldImage apply_frequency_filter(const FieldImage& img, const FilterMask& mask) {
    if (!img.same_shape(mask.gains)) {
        throw Error(ErrorCode::DimensionMismatch, "filter mask dimensions do not match image");
    }
    spectral::Spectrum centered = spectral::fftshift(spectral::dft2(img));
    for (std::size_t i = 0; i < centered.coeffs.size(); ++i) centered.coeffs[i] *= mask.gains[i];
    return spectral::magnitude(spectral::idft2(spectral::ifftshift(centered)));
}

}  // namespace enhance::freqfilter
