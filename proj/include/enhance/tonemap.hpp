#pragma once

#include <array>
#include <cstdint>

#include "enhance/raster.hpp"

namespace enhance::tonemap {

inline constexpr std::size_t kLevels = 256;

struct Histogram {
    std::array<std::uint64_t, kLevels> counts{};

    std::uint64_t total() const noexcept;
    friend bool operator==(const Histogram&, const Histogram&) = default;
};

/// Running prefix sum of a histogram; cumulative[255] is the pixel count.
struct Cdf {
    std::array<std::uint64_t, kLevels> cumulative{};

    std::uint64_t total() const noexcept { return cumulative.back(); }
    friend bool operator==(const Cdf&, const Cdf&) = default;
};

/// 256-entry intensity remapping table.
struct Lut {
    std::array<std::uint8_t, kLevels> map{};

    static Lut identity();
    std::uint8_t operator()(std::uint8_t v) const noexcept { return map[v]; }
    friend bool operator==(const Lut&, const Lut&) = default;
};

Histogram histogram(const GrayImage& img);
Cdf cdf(const Histogram& h);

// map[v] = quantize((cdf[v] - cmin) * 255 / (cmax - cmin)); cmin is the minimum
// over all 256 entries (cdf[0]), so an unoccupied level 0 gives cmin == 0.
Lut equalization_lut(const Cdf& c);

/// Linear stretch of [x_min, x_max] onto [y_min, y_max]; inputs outside the
/// source range clamp to the nearest target endpoint.
Lut stretch_lut(std::uint8_t x_min, std::uint8_t x_max, std::uint8_t y_min, std::uint8_t y_max);

// c * ln(1 + v) with c = 255 / ln(1 + v_max).
Lut log_lut(std::uint8_t v_max);

/// Discrete CDF inversion: map[v] is the smallest target level t whose
/// normalized target CDF reaches the normalized source CDF at v.
Lut matching_lut(const Cdf& source, const Cdf& target);

GrayImage apply_lut(const GrayImage& img, const Lut& lut);

// Convenience compositions over whole images.
GrayImage equalize(const GrayImage& img);
GrayImage stretch(const GrayImage& img, std::uint8_t y_min = 0, std::uint8_t y_max = 255);
GrayImage log_transform(const GrayImage& img);
GrayImage match(const GrayImage& source, const GrayImage& target);

}  // namespace enhance::tonemap
