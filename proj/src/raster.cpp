#include "enhance/raster.hpp"

#include <cmath>
#include <fstream>
#include <iterator>
#include <optional>

namespace enhance {

namespace {

bool is_space(std::uint8_t c) {
    return c == ' ' || c == '\t' || c == '\n' || c == '\r' || c == '\v' || c == '\f';
}

class HeaderReader {
public:
    explicit HeaderReader(std::span<const std::uint8_t> bytes) : bytes_(bytes) {}

    // Next whitespace-delimited token, skipping '#' comments that run to end of line.
    std::optional<std::string> token() {
        skip_space_and_comments();
        std::string out;
        while (pos_ < bytes_.size() && !is_space(bytes_[pos_]) && bytes_[pos_] != '#') {
            out.push_back(static_cast<char>(bytes_[pos_++]));
        }
        if (out.empty()) return std::nullopt;
        return out;
    }

    std::size_t number(ErrorCode code, const char* what) {
        auto tok = token();
        if (!tok) throw Error(code, std::string("missing ") + what);
        std::size_t value = 0;
        for (char c : *tok) {
            if (c < '0' || c > '9') {
                throw Error(code, std::string("invalid ") + what + " '" + *tok + "'");
            }
            value = value * 10 + static_cast<std::size_t>(c - '0');
            if (value > (std::size_t{1} << 40)) {
                throw Error(code, std::string(what) + " out of range");
            }
        }
        return value;
    }

    // Binary payload starts after exactly one whitespace byte.
    std::span<const std::uint8_t> payload() {
        if (pos_ >= bytes_.size() || !is_space(bytes_[pos_])) {
            throw Error(ErrorCode::MalformedHeader, "missing whitespace before pixel data");
        }
        return bytes_.subspan(pos_ + 1);
    }

private:
    void skip_space_and_comments() {
        while (pos_ < bytes_.size()) {
            if (is_space(bytes_[pos_])) {
                ++pos_;
            } else if (bytes_[pos_] == '#') {
                while (pos_ < bytes_.size() && bytes_[pos_] != '\n') ++pos_;
            } else {
                break;
            }
        }
    }

    std::span<const std::uint8_t> bytes_;
    std::size_t pos_ = 0;
};

std::vector<std::uint8_t> read_samples(HeaderReader& reader, bool binary, std::size_t count) {
    std::vector<std::uint8_t> samples;
    samples.reserve(count);
    if (binary) {
        auto payload = reader.payload();
        if (payload.size() < count) {
            throw Error(ErrorCode::TruncatedData, "expected " + std::to_string(count) +
                                                      " samples, found " +
                                                      std::to_string(payload.size()));
        }
        samples.assign(payload.begin(), payload.begin() + static_cast<std::ptrdiff_t>(count));
        return samples;
    }
    for (std::size_t i = 0; i < count; ++i) {
        auto tok = reader.token();
        if (!tok) {
            throw Error(ErrorCode::TruncatedData, "expected " + std::to_string(count) +
                                                      " samples, found " + std::to_string(i));
        }
        std::size_t value = 0;
        for (char c : *tok) {
            if (c < '0' || c > '9') {
                throw Error(ErrorCode::MalformedHeader, "invalid sample '" + *tok + "'");
            }
            value = value * 10 + static_cast<std::size_t>(c - '0');
            if (value > 255) {
                throw Error(ErrorCode::MalformedHeader, "sample exceeds maxval: " + *tok);
            }
        }
        samples.push_back(static_cast<std::uint8_t>(value));
    }
    return samples;
}

}  // namespace

std::uint8_t quantize(double value) {
    if (!std::isfinite(value)) {
        throw Error(ErrorCode::NonFinite, "non-finite intensity");
    }
    const double r = std::round(value);
    if (r <= 0.0) return 0;
    if (r >= 255.0) return 255;
    return static_cast<std::uint8_t>(r);
}

NetpbmImage read_netpbm(std::span<const std::uint8_t> bytes) {
    HeaderReader reader(bytes);
    const auto magic = reader.token();
    if (!magic || magic->size() != 2 || (*magic)[0] != 'P') {
        throw Error(ErrorCode::MalformedHeader, "bad magic number");
    }
    const char kind = (*magic)[1];
    if (kind != '2' && kind != '3' && kind != '5' && kind != '6') {
        throw Error(ErrorCode::MalformedHeader, "unsupported magic " + *magic);
    }
    const std::size_t width = reader.number(ErrorCode::MalformedHeader, "width");
    const std::size_t height = reader.number(ErrorCode::MalformedHeader, "height");
    if (width == 0 || height == 0) {
        throw Error(ErrorCode::MalformedHeader, "zero image dimension");
    }
    const std::size_t maxval = reader.number(ErrorCode::MalformedHeader, "maxval");
    if (maxval != 255) {
        throw Error(ErrorCode::UnsupportedMaxval,
                    "unsupported maxval " + std::to_string(maxval) + " (only 255)");
    }

    const bool binary = kind == '5' || kind == '6';
    const bool color = kind == '3' || kind == '6';
    const std::size_t pixels = width * height;

    if (!color) {
        return GrayImage(width, height, read_samples(reader, binary, pixels));
    }
    const auto samples = read_samples(reader, binary, pixels * 3);
    std::vector<Rgb> rgb(pixels);
    for (std::size_t i = 0; i < pixels; ++i) {
        rgb[i] = {samples[3 * i], samples[3 * i + 1], samples[3 * i + 2]};
    }
    return RgbImage(width, height, std::move(rgb));
}

std::vector<std::uint8_t> write_pgm(const GrayImage& img) {
    const std::string header = "P5\n" + std::to_string(img.width()) + " " +
                               std::to_string(img.height()) + "\n255\n";
    std::vector<std::uint8_t> out(header.begin(), header.end());
    out.insert(out.end(), img.data().begin(), img.data().end());
    return out;
}

GrayImage to_gray(const RgbImage& img) {
    GrayImage out(img.width(), img.height());
    for (std::size_t i = 0; i < img.size(); ++i) {
        const Rgb& p = img[i];
        out[i] = quantize(0.299 * p.r + 0.587 * p.g + 0.114 * p.b);
    }
    return out;
}

GrayImage as_gray(const NetpbmImage& img) {
    if (const auto* gray = std::get_if<GrayImage>(&img)) return *gray;
    return to_gray(std::get<RgbImage>(img));
}

FieldImage to_field(const GrayImage& img) {
    std::vector<double> values(img.data().begin(), img.data().end());
    return FieldImage(img.width(), img.height(), std::move(values));
}

GrayImage from_field(const FieldImage& field) {
    GrayImage out(field.width(), field.height());
    for (std::size_t i = 0; i < field.size(); ++i) out[i] = quantize(field[i]);
    return out;
}

NetpbmImage load_netpbm(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw Error(ErrorCode::Io, "cannot open " + path);
    std::vector<std::uint8_t> bytes((std::istreambuf_iterator<char>(in)),
                                    std::istreambuf_iterator<char>());
    return read_netpbm(bytes);
}

void save_pgm(const GrayImage& img, const std::string& path) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw Error(ErrorCode::Io, "cannot write " + path);
    const auto bytes = write_pgm(img);
    out.write(reinterpret_cast<const char*>(bytes.data()), static_cast<std::streamsize>(bytes.size()));
    if (!out) throw Error(ErrorCode::Io, "write failed for " + path);
}

}  // namespace enhance
