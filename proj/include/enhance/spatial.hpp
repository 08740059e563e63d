#pragma once

#include <utility>
#include <vector>

#include "enhance/raster.hpp"

namespace enhance::spatial {

/// How samples outside the image are read.
///   Reflect   - mirror about the edge sample without repeating it (dcb|abcd|cba)
///   Replicate - clamp to the nearest edge sample
///   Zero      - read 0
enum class BoundaryPolicy { Reflect, Replicate, Zero };

/// Square odd-sized weight matrix, row-major.
class Kernel {
public:
    Kernel(std::size_t size, std::vector<double> weights);

    std::size_t size() const noexcept { return size_; }
    std::size_t radius() const noexcept { return size_ / 2; }
    double at(std::size_t row, std::size_t col) const { return weights_[row * size_ + col]; }
    const std::vector<double>& weights() const noexcept { return weights_; }

    static Kernel identity();
    static Kernel mean(std::size_t size);
    static Kernel laplacian();
    static Kernel sobel_x();
    static Kernel sobel_y();
    static Kernel prewitt_x();
    static Kernel prewitt_y();

private:
    std::size_t size_;
    std::vector<double> weights_;
};

struct Gradient {
    FieldImage gx;
    FieldImage gy;
};

/// Maps a possibly out-of-range index onto [0, n), or returns -1 for Zero.
std::ptrdiff_t resolve_index(std::ptrdiff_t i, std::size_t n, BoundaryPolicy policy) noexcept;

// Cross-correlation (the kernel is not flipped). Output has the input's shape.
FieldImage correlate(const FieldImage& img, const Kernel& kernel, BoundaryPolicy policy);

FieldImage mean_filter(const FieldImage& img, std::size_t size, BoundaryPolicy policy = BoundaryPolicy::Zero);
FieldImage median_filter(const FieldImage& img, std::size_t size,
                         BoundaryPolicy policy = BoundaryPolicy::Reflect);

/// Gaussian spatial weight times Gaussian range weight, normalized over the
/// diameter x diameter window. sigma_color is in gray levels, sigma_space in pixels.
FieldImage bilateral_filter(const FieldImage& img, std::size_t diameter, double sigma_color,
                            double sigma_space, BoundaryPolicy policy = BoundaryPolicy::Reflect);

FieldImage laplacian(const FieldImage& img, BoundaryPolicy policy = BoundaryPolicy::Zero);
Gradient sobel(const FieldImage& img, BoundaryPolicy policy = BoundaryPolicy::Zero);
Gradient prewitt(const FieldImage& img, BoundaryPolicy policy = BoundaryPolicy::Zero);

FieldImage gradient_magnitude(const FieldImage& gx, const FieldImage& gy);
// atan2(gy, gx) in (-pi, pi]; (0, 0) maps to 0.
FieldImage gradient_direction(const FieldImage& gx, const FieldImage& gy);

}  // namespace enhance::spatial
