#include "enhance/tonemap.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace enhance::tonemap {

std::uint64_t Histogram::total() const noexcept {
    return std::accumulate(counts.begin(), counts.end(), std::uint64_t{0});
}

Lut Lut::identity() {
    Lut lut;
    for (std::size_t v = 0; v < kLevels; ++v) lut.map[v] = static_cast<std::uint8_t>(v);
    return lut;
}

Histogram histogram(const GrayImage& img) {
    Histogram h;
    for (std::uint8_t v : img.pixels()) ++h.counts[v];
    return h;
}

Cdf cdf(const Histogram& h) {
    Cdf c;
    std::partial_sum(h.counts.begin(), h.counts.end(), c.cumulative.begin());
    return c;
}

Lut equalization_lut(const Cdf& c) {
    const std::uint64_t cmax = c.total();
    if (cmax == 0) throw Error(ErrorCode::EmptyImage, "empty histogram");
    const std::uint64_t cmin = *std::min_element(c.cumulative.begin(), c.cumulative.end());
    Lut lut;
    if (cmax == cmin) return lut;
    const double span = static_cast<double>(cmax - cmin);
    for (std::size_t v = 0; v < kLevels; ++v) {
        lut.map[v] = quantize(static_cast<double>(c.cumulative[v] - cmin) * 255.0 / span);
    }
    return lut;
}

Lut stretch_lut(std::uint8_t x_min, std::uint8_t x_max, std::uint8_t y_min, std::uint8_t y_max) {
    if (x_min >= x_max) {
        throw Error(ErrorCode::DegenerateRange, "degenerate intensity range");
    }
    if (y_min > y_max) {
        throw Error(ErrorCode::InvalidArgument, "y_min must not exceed y_max");
    }
    const double scale = static_cast<double>(y_max - y_min) / static_cast<double>(x_max - x_min);
    Lut lut;
    for (std::size_t v = 0; v < kLevels; ++v) {
        if (v <= x_min) {
            lut.map[v] = y_min;
        } else if (v >= x_max) {
            lut.map[v] = y_max;
        } else {
            lut.map[v] = quantize(static_cast<double>(v - x_min) * scale + y_min);
        }
    }
    return lut;
}

Lut log_lut(std::uint8_t v_max) {
    if (v_max == 0) throw Error(ErrorCode::DegenerateRange, "degenerate intensity range");
    const double c = 255.0 / std::log1p(static_cast<double>(v_max));
    Lut lut;
    for (std::size_t v = 0; v < kLevels; ++v) {
        lut.map[v] = quantize(c * std::log1p(static_cast<double>(v)));
    }
    return lut;
}

Lut matching_lut(const Cdf& source, const Cdf& target) {
    const std::uint64_t n_src = source.total();
    const std::uint64_t n_tgt = target.total();
    if (n_src == 0 || n_tgt == 0) throw Error(ErrorCode::EmptyImage, "empty histogram");

    // T(t) >= S(v)  <=>  target[t] * n_src >= source[v] * n_tgt, compared exactly.
    Lut lut;
    std::size_t t = 0;
    for (std::size_t v = 0; v < kLevels; ++v) {
        const auto want = static_cast<unsigned __int128>(source.cumulative[v]) * n_tgt;
        while (t + 1 < kLevels && static_cast<unsigned __int128>(target.cumulative[t]) * n_src < want) {
            ++t;
        }
        lut.map[v] = static_cast<std::uint8_t>(t);
    }
    return lut;
}

GrayImage apply_lut(const GrayImage& img, const Lut& lut) {
    GrayImage out(img.width(), img.height());
    std::transform(img.pixels().begin(), img.pixels().end(), out.pixels().begin(), lut);
    return out;
}

GrayImage equalize(const GrayImage& img) {
    return apply_lut(img, equalization_lut(cdf(histogram(img))));
}

GrayImage stretch(const GrayImage& img, std::uint8_t y_min, std::uint8_t y_max) {
    const auto [lo, hi] = std::minmax_element(img.pixels().begin(), img.pixels().end());
    return apply_lut(img, stretch_lut(*lo, *hi, y_min, y_max));
}

GrayImage log_transform(const GrayImage& img) {
    return apply_lut(img, log_lut(*std::max_element(img.pixels().begin(), img.pixels().end())));
}

GrayImage match(const GrayImage& source, const GrayImage& target) {
    return apply_lut(source, matching_lut(cdf(histogram(source)), cdf(histogram(target))));
}

}  // namespace enhance::tonemap
