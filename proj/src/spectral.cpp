#include "enhance/spectral.hpp"

#include <cmath>
#include <numbers>

namespace enhance::spectral {

namespace {

// exp(sign * j * 2*pi * k / n), with k reduced mod n first to keep the
// argument small for long direct sums.
Complex twiddle(std::size_t k, std::size_t n, double sign) {
    const double angle = sign * 2.0 * std::numbers::pi * static_cast<double>(k % n) / static_cast<double>(n);
    return {std::cos(angle), std::sin(angle)};
}

void radix2(std::span<Complex> a, double sign, std::vector<Complex>& scratch) {
    const std::size_t n = a.size();
    if (n == 1) return;
    const std::size_t half = n / 2;

    scratch.resize(n);
    for (std::size_t i = 0; i < half; ++i) {
        scratch[i] = a[2 * i];
        scratch[half + i] = a[2 * i + 1];
    }
    std::copy(scratch.begin(), scratch.begin() + static_cast<std::ptrdiff_t>(n), a.begin());

    radix2(a.first(half), sign, scratch);
    radix2(a.subspan(half), sign, scratch);

    for (std::size_t k = 0; k < half; ++k) {
        const Complex even = a[k];
        const Complex odd = twiddle(k, n, sign) * a[half + k];
        a[k] = even + odd;
        a[half + k] = even - odd;
    }
}

void direct(std::span<Complex> a, double sign) {
    const std::size_t n = a.size();
    std::vector<Complex> table(n);
    for (std::size_t i = 0; i < n; ++i) table[i] = twiddle(i, n, sign);
    std::vector<Complex> out(n);
    for (std::size_t k = 0; k < n; ++k) {
        Complex acc = 0.0;
        for (std::size_t x = 0; x < n; ++x) acc += a[x] * table[(k * x) % n];
        out[k] = acc;
    }
    std::copy(out.begin(), out.end(), a.begin());
}

// Row pass then column pass.
void transform2(ComplexField& field, bool inverse) {
    const std::size_t rows = field.height();
    const std::size_t cols = field.width();
    for (std::size_t r = 0; r < rows; ++r) {
        dft1(field.pixels().subspan(r * cols, cols), inverse);
    }
    std::vector<Complex> column(rows);
    for (std::size_t c = 0; c < cols; ++c) {
        for (std::size_t r = 0; r < rows; ++r) column[r] = field.at(r, c);
        dft1(column, inverse);
        for (std::size_t r = 0; r < rows; ++r) field.at(r, c) = column[r];
    }
}

Spectrum shifted(const Spectrum& spec, std::size_t row_shift, std::size_t col_shift, bool centered) {
    const std::size_t rows = spec.height();
    const std::size_t cols = spec.width();
    ComplexField out(cols, rows);
    for (std::size_t r = 0; r < rows; ++r) {
        for (std::size_t c = 0; c < cols; ++c) {
            out.at((r + row_shift) % rows, (c + col_shift) % cols) = spec.coeffs.at(r, c);
        }
    }
    return {std::move(out), centered};
}

}  // namespace

bool is_power_of_two(std::size_t n) noexcept { return n != 0 && (n & (n - 1)) == 0; }

void dft1(std::span<Complex> line, bool inverse) {
    const double sign = inverse ? 1.0 : -1.0;
    if (line.size() <= 1) return;
    if (is_power_of_two(line.size())) {
        std::vector<Complex> scratch;
        radix2(line, sign, scratch);
    } else {
        direct(line, sign);
    }
}

Spectrum dft2(const FieldImage& img) {
    ComplexField field(img.width(), img.height());
    for (std::size_t i = 0; i < img.size(); ++i) field[i] = img[i];
    transform2(field, false);
    return {std::move(field), false};
}

Spectrum dft2(const ComplexField& field) {
    ComplexField copy = field;
    transform2(copy, false);
    return {std::move(copy), false};
}

ComplexField idft2(const Spectrum& spec) {
    if (spec.dc_centered) {
        throw Error(ErrorCode::ShiftedSpectrum, "spectrum is DC-centered; apply ifftshift first");
    }
    ComplexField field = spec.coeffs;
    transform2(field, true);
    const double scale = 1.0 / static_cast<double>(field.size());
    for (Complex& z : field.pixels()) z *= scale;
    return field;
}

Spectrum fftshift(const Spectrum& spec) {
    return shifted(spec, spec.height() / 2, spec.width() / 2, true);
}

Spectrum ifftshift(const Spectrum& spec) {
    return shifted(spec, (spec.height() + 1) / 2, (spec.width() + 1) / 2, false);
}

FieldImage magnitude_spectrum(const Spectrum& spec) {
    FieldImage out(spec.width(), spec.height());
    for (std::size_t i = 0; i < out.size(); ++i) out[i] = std::log1p(std::abs(spec.coeffs[i]));
    return out;
}

FieldImage real_part(const ComplexField& field) {
    FieldImage out(field.width(), field.height());
    for (std::size_t i = 0; i < out.size(); ++i) out[i] = field[i].real();
    return out;
}

FieldImage magnitude(const ComplexField& field) {
    FieldImage out(field.width(), field.height());
    for (std::size_t i = 0; i < out.size(); ++i) out[i] = std::abs(field[i]);
    return out;
}

}  // namespace enhance::spectral
