#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <variant>
#include <vector>

#include "enhance/error.hpp"

namespace enhance {

/// Row-major 2D grid. Width and height are both at least 1 and the sample
/// count always equals width * height.
template <typename T>
class Raster {
public:
    using value_type = T;

    Raster(std::size_t width, std::size_t height, T fill = T{})
        : width_(width), height_(height), data_(checked_area(width, height), fill) {}

    Raster(std::size_t width, std::size_t height, std::vector<T> data)
        : width_(width), height_(height), data_(std::move(data)) {
        if (data_.size() != checked_area(width, height)) {
            throw Error(ErrorCode::DimensionMismatch,
                        "sample count " + std::to_string(data_.size()) + " does not match " +
                            std::to_string(width) + "x" + std::to_string(height));
        }
    }

    std::size_t width() const noexcept { return width_; }
    std::size_t height() const noexcept { return height_; }
    std::size_t size() const noexcept { return data_.size(); }

    T& at(std::size_t row, std::size_t col) { return data_[row * width_ + col]; }
    const T& at(std::size_t row, std::size_t col) const { return data_[row * width_ + col]; }

    T& operator[](std::size_t i) { return data_[i]; }
    const T& operator[](std::size_t i) const { return data_[i]; }

    std::span<T> pixels() & noexcept { return data_; }
    std::span<const T> pixels() const& noexcept { return data_; }
    // A span into a temporary would dangle (e.g. in a range-for initializer).
    std::span<const T> pixels() const&& = delete;
    const std::vector<T>& data() const noexcept { return data_; }

    auto begin() noexcept { return data_.begin(); }
    auto end() noexcept { return data_.end(); }
    auto begin() const noexcept { return data_.begin(); }
    auto end() const noexcept { return data_.end(); }

    bool same_shape(const Raster& other) const noexcept {
        return width_ == other.width_ && height_ == other.height_;
    }

    template <typename U>
    bool same_shape(const Raster<U>& other) const noexcept {
        return width_ == other.width() && height_ == other.height();
    }

    friend bool operator==(const Raster&, const Raster&) = default;

private:
    static std::size_t checked_area(std::size_t width, std::size_t height) {
        if (width == 0 || height == 0) {
            throw Error(ErrorCode::InvalidArgument, "image dimensions must be at least 1x1");
        }
        return width * height;
    }

    std::size_t width_;
    std::size_t height_;
    std::vector<T> data_;
};

struct Rgb {
    std::uint8_t r = 0;
    std::uint8_t g = 0;
    std::uint8_t b = 0;

    friend bool operator==(const Rgb&, const Rgb&) = default;
};

using GrayImage = Raster<std::uint8_t>;
using FieldImage = Raster<double>;
using RgbImage = Raster<Rgb>;

using NetpbmImage = std::variant<GrayImage, RgbImage>;

// Round half away from zero, then clamp to [0, 255]. Throws NonFinite on NaN/Inf.
std::uint8_t quantize(double value);

/// Parses P2/P5 (gray) or P3/P6 (color) with maxval 255.
NetpbmImage read_netpbm(std::span<const std::uint8_t> bytes);

/// Binary PGM: "P5\n<w> <h>\n255\n" then width*height raw bytes.
std::vector<std::uint8_t> write_pgm(const GrayImage& img);

// Rec.601 luma.
GrayImage to_gray(const RgbImage& img);

/// Collapses either Netpbm flavor to grayscale.
GrayImage as_gray(const NetpbmImage& img);

FieldImage to_field(const GrayImage& img);
GrayImage from_field(const FieldImage& field);

NetpbmImage load_netpbm(const std::string& path);
void save_pgm(const GrayImage& img, const std::string& path);

}  // namespace enhance
