#include "enhance/spatial.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace enhance::spatial {

namespace {

void check_window(std::size_t size) {
    if (size < 3 || size % 2 == 0) {
        throw Error(ErrorCode::EvenKernel, "kernel size must be odd and >= 3, got " + std::to_string(size));
    }
}

// Visits every in-window sample as (row offset, col offset, value). Zero-policy
// taps outside the image are reported as 0.
template <typename Visit>
void for_window(const FieldImage& img, std::size_t row, std::size_t col, std::size_t radius,
                BoundaryPolicy policy, Visit visit) {
    const auto r = static_cast<std::ptrdiff_t>(radius);
    for (std::ptrdiff_t a = -r; a <= r; ++a) {
        const std::ptrdiff_t sr = resolve_index(static_cast<std::ptrdiff_t>(row) + a, img.height(), policy);
        for (std::ptrdiff_t b = -r; b <= r; ++b) {
            const std::ptrdiff_t sc = resolve_index(static_cast<std::ptrdiff_t>(col) + b, img.width(), policy);
            const double value = (sr < 0 || sc < 0)
                                     ? 0.0
                                     : img.at(static_cast<std::size_t>(sr), static_cast<std::size_t>(sc));
            visit(a, b, value);
        }
    }
}

void check_same_shape(const FieldImage& a, const FieldImage& b) {
    if (!a.same_shape(b)) throw Error(ErrorCode::DimensionMismatch, "gradient components differ in shape");
}

}  // namespace

Kernel::Kernel(std::size_t size, std::vector<double> weights) : size_(size), weights_(std::move(weights)) {
    if (size_ % 2 == 0) throw Error(ErrorCode::EvenKernel, "kernel size must be odd");
    if (weights_.size() != size_ * size_) {
        throw Error(ErrorCode::DimensionMismatch, "kernel weight count must be size*size");
    }
}

Kernel Kernel::identity() { return Kernel(1, {1.0}); }

Kernel Kernel::mean(std::size_t size) {
    check_window(size);
    return Kernel(size, std::vector<double>(size * size, 1.0 / static_cast<double>(size * size)));
}

Kernel Kernel::laplacian() { return Kernel(3, {0, -1, 0, -1, 4, -1, 0, -1, 0}); }
Kernel Kernel::sobel_x() { return Kernel(3, {-1, 0, 1, -2, 0, 2, -1, 0, 1}); }
Kernel Kernel::sobel_y() { return Kernel(3, {-1, -2, -1, 0, 0, 0, 1, 2, 1}); }
Kernel Kernel::prewitt_x() { return Kernel(3, {-1, 0, 1, -1, 0, 1, -1, 0, 1}); }
Kernel Kernel::prewitt_y() { return Kernel(3, {-1, -1, -1, 0, 0, 0, 1, 1, 1}); }

std::ptrdiff_t resolve_index(std::ptrdiff_t i, std::size_t n, BoundaryPolicy policy) noexcept {
    const auto len = static_cast<std::ptrdiff_t>(n);
    if (i >= 0 && i < len) return i;
    switch (policy) {
        case BoundaryPolicy::Zero:
            return -1;
        case BoundaryPolicy::Replicate:
            return i < 0 ? 0 : len - 1;
        case BoundaryPolicy::Reflect: {
            if (len == 1) return 0;
            // Mirror with period 2(n-1) so arbitrarily wide overhangs stay in range.
            const std::ptrdiff_t period = 2 * (len - 1);
            std::ptrdiff_t m = i % period;
            if (m < 0) m += period;
            return m < len ? m : period - m;
        }
    }
    return -1;
}

FieldImage correlate(const FieldImage& img, const Kernel& kernel, BoundaryPolicy policy) {
    FieldImage out(img.width(), img.height());
    const auto r = static_cast<std::ptrdiff_t>(kernel.radius());
    for (std::size_t row = 0; row < img.height(); ++row) {
        for (std::size_t col = 0; col < img.width(); ++col) {
            double acc = 0.0;
            for_window(img, row, col, kernel.radius(), policy, [&](std::ptrdiff_t a, std::ptrdiff_t b, double v) {
                acc += kernel.at(static_cast<std::size_t>(a + r), static_cast<std::size_t>(b + r)) * v;
            });
            out.at(row, col) = acc;
        }
    }
    return out;
}

FieldImage mean_filter(const FieldImage& img, std::size_t size, BoundaryPolicy policy) {
    return correlate(img, Kernel::mean(size), policy);
}

FieldImage median_filter(const FieldImage& img, std::size_t size, BoundaryPolicy policy) {
    check_window(size);
    FieldImage out(img.width(), img.height());
    std::vector<double> window;
    window.reserve(size * size);
    const auto mid = static_cast<std::ptrdiff_t>(size * size / 2);
    for (std::size_t row = 0; row < img.height(); ++row) {
        for (std::size_t col = 0; col < img.width(); ++col) {
            window.clear();
            for_window(img, row, col, size / 2, policy,
                       [&](std::ptrdiff_t, std::ptrdiff_t, double v) { window.push_back(v); });
            std::nth_element(window.begin(), window.begin() + mid, window.end());
            out.at(row, col) = window[static_cast<std::size_t>(mid)];
        }
    }
    return out;
}

FieldImage bilateral_filter(const FieldImage& img, std::size_t diameter, double sigma_color,
                            double sigma_space, BoundaryPolicy policy) {
    check_window(diameter);
    if (!(sigma_color > 0.0) || !(sigma_space > 0.0)) {
        throw Error(ErrorCode::BadSigma, "bilateral sigmas must be positive");
    }
    const double space_coeff = -1.0 / (2.0 * sigma_space * sigma_space);
    const double color_coeff = -1.0 / (2.0 * sigma_color * sigma_color);
    const auto r = static_cast<std::ptrdiff_t>(diameter / 2);
    std::vector<double> spatial_weights;
    for (std::ptrdiff_t a = -r; a <= r; ++a) {
        for (std::ptrdiff_t b = -r; b <= r; ++b) {
            spatial_weights.push_back(std::exp(static_cast<double>(a * a + b * b) * space_coeff));
        }
    }

    FieldImage out(img.width(), img.height());
    for (std::size_t row = 0; row < img.height(); ++row) {
        for (std::size_t col = 0; col < img.width(); ++col) {
            const double center = img.at(row, col);
            // Accumulated relative to the center so a flat window returns it exactly.
            double weighted = 0.0;
            double norm = 0.0;
            std::size_t tap = 0;
            for_window(img, row, col, diameter / 2, policy, [&](std::ptrdiff_t, std::ptrdiff_t, double v) {
                const double diff = v - center;
                const double w = spatial_weights[tap++] * std::exp(diff * diff * color_coeff);
                weighted += w * diff;
                norm += w;
            });
            // The center tap always has weight 1, so norm >= 1.
            out.at(row, col) = center + weighted / norm;
        }
    }
    return out;
}

FieldImage laplacian(const FieldImage& img, BoundaryPolicy policy) {
    return correlate(img, Kernel::laplacian(), policy);
}

Gradient sobel(const FieldImage& img, BoundaryPolicy policy) {
    return {correlate(img, Kernel::sobel_x(), policy), correlate(img, Kernel::sobel_y(), policy)};
}

Gradient prewitt(const FieldImage& img, BoundaryPolicy policy) {
    return {correlate(img, Kernel::prewitt_x(), policy), correlate(img, Kernel::prewitt_y(), policy)};
}

FieldImage gradient_magnitude(const FieldImage& gx, const FieldImage& gy) {
    check_same_shape(gx, gy);
    FieldImage out(gx.width(), gx.height());
    for (std::size_t i = 0; i < out.size(); ++i) out[i] = std::hypot(gx[i], gy[i]);
    return out;
}

FieldImage gradient_direction(const FieldImage& gx, const FieldImage& gy) {
    check_same_shape(gx, gy);
    FieldImage out(gx.width(), gx.height());
    for (std::size_t i = 0; i < out.size(); ++i) {
        if (gx[i] == 0.0 && gy[i] == 0.0) {
            out[i] = 0.0;
            continue;
        }
        const double theta = std::atan2(gy[i], gx[i]);
        // atan2(-0.0, x<0) yields -pi; fold onto the half-open range's closed end.
        out[i] = theta == -std::numbers::pi ? std::numbers::pi : theta;
    }
    return out;
}

}  // namespace enhance::spatial
