#pragma once

// Independent reference implementations used only by the tests. None of these
// share code paths with the library beyond the container types.

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstdint>
#include <numbers>
#include <random>
#include <vector>

#include "enhance/raster.hpp"
#include "enhance/spatial.hpp"
#include "enhance/spectral.hpp"

namespace oracle {

using enhance::FieldImage;
using enhance::GrayImage;
using Complex = std::complex<double>;

inline FieldImage random_field(std::size_t width, std::size_t height, std::mt19937_64& rng,
                               double lo = 0.0, double hi = 255.0) {
    std::uniform_real_distribution<double> dist(lo, hi);
    FieldImage f(width, height);
    for (double& v : f.pixels()) v = dist(rng);
    return f;
}

inline GrayImage random_gray(std::size_t width, std::size_t height, std::mt19937_64& rng,
                             int lo = 0, int hi = 255) {
    std::uniform_int_distribution<int> dist(lo, hi);
    GrayImage g(width, height);
    for (auto& v : g.pixels()) v = static_cast<std::uint8_t>(dist(rng));
    return g;
}

/// F(u,v) = sum_x sum_y f(x,y) exp(-j 2 pi (u x / M + v y / N)), evaluated
/// term by term. u, x index rows (M = height); v, y index columns (N = width).
inline std::vector<Complex> naive_dft2(const FieldImage& f) {
    const std::size_t M = f.height();
    const std::size_t N = f.width();
    std::vector<Complex> out(M * N);
    for (std::size_t u = 0; u < M; ++u) {
        for (std::size_t v = 0; v < N; ++v) {
            Complex acc = 0.0;
            for (std::size_t x = 0; x < M; ++x) {
                for (std::size_t y = 0; y < N; ++y) {
                    const double phase = -2.0 * std::numbers::pi *
                                         (static_cast<double>(u * x) / static_cast<double>(M) +
                                          static_cast<double>(v * y) / static_cast<double>(N));
                    acc += f.at(x, y) * Complex(std::cos(phase), std::sin(phase));
                }
            }
            out[u * N + v] = acc;
        }
    }
    return out;
}

// Out-of-range sampling written independently of the library's resolver.
inline double sample(const FieldImage& img, long r, long c, enhance::spatial::BoundaryPolicy policy) {
    const long h = static_cast<long>(img.height());
    const long w = static_cast<long>(img.width());
    auto fold = [policy](long i, long n) -> long {
        using enhance::spatial::BoundaryPolicy;
        if (policy == BoundaryPolicy::Replicate) return std::clamp(i, 0L, n - 1);
        if (policy == BoundaryPolicy::Zero) return (i < 0 || i >= n) ? -1 : i;
        if (n == 1) return 0;
        while (i < 0 || i >= n) {
            if (i < 0) i = -i;
            if (i >= n) i = 2 * (n - 1) - i;
        }
        return i;
    };
    const long rr = fold(r, h);
    const long cc = fold(c, w);
    if (rr < 0 || cc < 0) return 0.0;
    return img.at(static_cast<std::size_t>(rr), static_cast<std::size_t>(cc));
}

/// Quadruple loop: every output pixel, every kernel tap, rows then columns.
inline FieldImage correlate(const FieldImage& img, const std::vector<double>& weights, std::size_t k,
                            enhance::spatial::BoundaryPolicy policy) {
    FieldImage out(img.width(), img.height());
    const long r = static_cast<long>(k / 2);
    for (long i = 0; i < static_cast<long>(img.height()); ++i) {
        for (long j = 0; j < static_cast<long>(img.width()); ++j) {
            double acc = 0.0;
            for (long a = -r; a <= r; ++a) {
                for (long b = -r; b <= r; ++b) {
                    acc += weights[static_cast<std::size_t>((a + r) * static_cast<long>(k) + (b + r))] *
                           sample(img, i + a, j + b, policy);
                }
            }
            out.at(static_cast<std::size_t>(i), static_cast<std::size_t>(j)) = acc;
        }
    }
    return out;
}

/// Normalized Gaussian-weighted window average (the bilateral filter with an
/// infinitely wide range kernel).
inline FieldImage gaussian_spatial(const FieldImage& img, std::size_t d, double sigma_space,
                                   enhance::spatial::BoundaryPolicy policy) {
    FieldImage out(img.width(), img.height());
    const long r = static_cast<long>(d / 2);
    for (long i = 0; i < static_cast<long>(img.height()); ++i) {
        for (long j = 0; j < static_cast<long>(img.width()); ++j) {
            double num = 0.0;
            double den = 0.0;
            for (long a = -r; a <= r; ++a) {
                for (long b = -r; b <= r; ++b) {
                    const double w = std::exp(-static_cast<double>(a * a + b * b) / (2.0 * sigma_space * sigma_space));
                    num += w * sample(img, i + a, j + b, policy);
                    den += w;
                }
            }
            out.at(static_cast<std::size_t>(i), static_cast<std::size_t>(j)) = num / den;
        }
    }
    return out;
}

/// Direct double-sum bilateral filter.
inline FieldImage bilateral(const FieldImage& img, std::size_t d, double sigma_color, double sigma_space,
                            enhance::spatial::BoundaryPolicy policy) {
    FieldImage out(img.width(), img.height());
    const long r = static_cast<long>(d / 2);
    for (long i = 0; i < static_cast<long>(img.height()); ++i) {
        for (long j = 0; j < static_cast<long>(img.width()); ++j) {
            const double center = img.at(static_cast<std::size_t>(i), static_cast<std::size_t>(j));
            double num = 0.0;
            double den = 0.0;
            for (long a = -r; a <= r; ++a) {
                for (long b = -r; b <= r; ++b) {
                    const double s = sample(img, i + a, j + b, policy);
                    const double w = std::exp(-static_cast<double>(a * a + b * b) / (2.0 * sigma_space * sigma_space)) *
                                     std::exp(-(center - s) * (center - s) / (2.0 * sigma_color * sigma_color));
                    num += w * s;
                    den += w;
                }
            }
            out.at(static_cast<std::size_t>(i), static_cast<std::size_t>(j)) = num / den;
        }
    }
    return out;
}

inline double relative_frobenius(const std::vector<Complex>& got, const std::vector<Complex>& want) {
    double err = 0.0;
    double ref = 0.0;
    for (std::size_t i = 0; i < got.size(); ++i) {
        err += std::norm(got[i] - want[i]);
        ref += std::norm(want[i]);
    }
    return std::sqrt(err) / std::max(std::sqrt(ref), 1e-300);
}

// Brute-force CDF inversion over all 256 levels, in floating point.
inline std::vector<int> brute_force_matching(const std::vector<double>& src_cdf_norm,
                                             const std::vector<double>& tgt_cdf_norm) {
    std::vector<int> map(256, 0);
    for (int v = 0; v < 256; ++v) {
        for (int t = 0; t < 256; ++t) {
            if (tgt_cdf_norm[t] >= src_cdf_norm[v]) {
                map[v] = t;
                break;
            }
        }
    }
    return map;
}

}  // namespace oracle
