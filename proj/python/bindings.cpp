#include <pybind11/numpy.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <sstream>

#include "enhance/freqfilter.hpp"
#include "enhance/pipeline.hpp"
#include "enhance/raster.hpp"
#include "enhance/spatial.hpp"
#include "enhance/spectral.hpp"
#include "enhance/tonemap.hpp"

namespace py = pybind11;
using namespace enhance;

namespace {

using GrayArray = py::array_t<std::uint8_t, py::array::c_style | py::array::forcecast>;
using RealArray = py::array_t<double, py::array::c_style | py::array::forcecast>;
using ComplexArray = py::array_t<std::complex<double>, py::array::c_style | py::array::forcecast>;

template <typename T, typename Array>
Raster<T> to_raster(const Array& a) {
    if (a.ndim() != 2) throw py::value_error("expected a 2D array");
    const auto h = static_cast<std::size_t>(a.shape(0));
    const auto w = static_cast<std::size_t>(a.shape(1));
    std::vector<T> data(a.data(), a.data() + h * w);
    return Raster<T>(w, h, std::move(data));
}

template <typename T>
py::array_t<T> to_array(const Raster<T>& r) {
    py::array_t<T> out({r.height(), r.width()});
    std::copy(r.begin(), r.end(), out.mutable_data());
    return out;
}

FieldImage field(const RealArray& a) { return to_raster<double>(a); }
GrayImage gray(const GrayArray& a) { return to_raster<std::uint8_t>(a); }

spatial::BoundaryPolicy border(const std::string& name) {
    if (name == "zero") return spatial::BoundaryPolicy::Zero;
    if (name == "reflect") return spatial::BoundaryPolicy::Reflect;
    if (name == "replicate") return spatial::BoundaryPolicy::Replicate;
    throw py::value_error("border must be zero, reflect or replicate");
}

freqfilter::Kind kind(const std::string& name) {
    if (name == "lowpass") return freqfilter::Kind::LowPass;
    if (name == "highpass") return freqfilter::Kind::HighPass;
    throw py::value_error("kind must be lowpass or highpass");
}

template <std::size_t N>
py::array_t<std::uint64_t> counts_array(const std::array<std::uint64_t, N>& counts) {
    py::array_t<std::uint64_t> out(N);
    std::copy(counts.begin(), counts.end(), out.mutable_data());
    return out;
}

tonemap::Cdf cdf_from(const py::array_t<std::uint64_t, py::array::c_style | py::array::forcecast>& a) {
    if (a.ndim() != 1 || a.shape(0) != 256) throw py::value_error("expected 256 cumulative counts");
    tonemap::Cdf c;
    std::copy(a.data(), a.data() + 256, c.cumulative.begin());
    return c;
}

py::array_t<std::uint8_t> lut_array(const tonemap::Lut& lut) {
    py::array_t<std::uint8_t> out(256);
    std::copy(lut.map.begin(), lut.map.end(), out.mutable_data());
    return out;
}

tonemap::Lut lut_from(const GrayArray& a) {
    if (a.ndim() != 1 || a.shape(0) != 256) throw py::value_error("expected a 256-entry LUT");
    tonemap::Lut lut;
    std::copy(a.data(), a.data() + 256, lut.map.begin());
    return lut;
}

}  // namespace

PYBIND11_MODULE(_enhance, m) {
    m.doc() = "Image enhancement: tone mapping, frequency-domain and spatial filtering";

    static py::exception<Error> error(m, "EnhanceError", PyExc_ValueError);
    py::register_exception_translator([](std::exception_ptr p) {
        try {
            if (p) std::rethrow_exception(p);
        } catch (const Error& e) {
            const std::string msg = std::string(to_string(e.code())) + ": " + e.what();
            PyErr_SetString(error.ptr(), msg.c_str());
        }
    });

    // raster
    m.def("read_netpbm", [](const py::bytes& data) -> py::array {
        const std::string s = data;
        const NetpbmImage img = read_netpbm(std::span(reinterpret_cast<const std::uint8_t*>(s.data()), s.size()));
        if (const auto* g = std::get_if<GrayImage>(&img)) return to_array(*g);
        const auto& rgb = std::get<RgbImage>(img);
        py::array_t<std::uint8_t> out({rgb.height(), rgb.width(), std::size_t{3}});
        auto* dst = out.mutable_data();
        for (const Rgb& px : rgb) {
            *dst++ = px.r;
            *dst++ = px.g;
            *dst++ = px.b;
        }
        return out;
    }, py::arg("data"), "Decode P2/P3/P5/P6 bytes; color images come back as (H, W, 3).");
    m.def("write_pgm", [](const GrayArray& img) {
        const auto bytes = write_pgm(gray(img));
        return py::bytes(reinterpret_cast<const char*>(bytes.data()), bytes.size());
    }, py::arg("image"));
    m.def("to_gray", [](const GrayArray& rgb) {
        if (rgb.ndim() != 3 || rgb.shape(2) != 3) throw py::value_error("expected an (H, W, 3) array");
        const auto h = static_cast<std::size_t>(rgb.shape(0));
        const auto w = static_cast<std::size_t>(rgb.shape(1));
        std::vector<Rgb> px(h * w);
        for (std::size_t i = 0; i < px.size(); ++i) px[i] = {rgb.data()[3 * i], rgb.data()[3 * i + 1], rgb.data()[3 * i + 2]};
        return to_array(to_gray(RgbImage(w, h, std::move(px))));
    }, py::arg("rgb"));
    m.def("quantize", [](const RealArray& f) { return to_array(from_field(field(f))); }, py::arg("field"));

    // tonemap
    m.def("histogram", [](const GrayArray& img) { return counts_array(tonemap::histogram(gray(img)).counts); });
    m.def("cdf", [](const GrayArray& img) {
        return counts_array(tonemap::cdf(tonemap::histogram(gray(img))).cumulative);
    }, "Cumulative histogram of an image.");
    m.def("equalization_lut", [](const py::array_t<std::uint64_t>& c) { return lut_array(tonemap::equalization_lut(cdf_from(c))); });
    m.def("stretch_lut", [](std::uint8_t x_min, std::uint8_t x_max, std::uint8_t y_min, std::uint8_t y_max) {
        return lut_array(tonemap::stretch_lut(x_min, x_max, y_min, y_max));
    }, py::arg("x_min"), py::arg("x_max"), py::arg("y_min") = 0, py::arg("y_max") = 255);
    m.def("log_lut", [](std::uint8_t v_max) { return lut_array(tonemap::log_lut(v_max)); }, py::arg("v_max"));
    m.def("matching_lut", [](const py::array_t<std::uint64_t>& s, const py::array_t<std::uint64_t>& t) {
        return lut_array(tonemap::matching_lut(cdf_from(s), cdf_from(t)));
    }, py::arg("source_cdf"), py::arg("target_cdf"));
    m.def("apply_lut", [](const GrayArray& img, const GrayArray& lut) {
        return to_array(tonemap::apply_lut(gray(img), lut_from(lut)));
    }, py::arg("image"), py::arg("lut"));
    m.def("equalize", [](const GrayArray& img) { return to_array(tonemap::equalize(gray(img))); });
    m.def("stretch", [](const GrayArray& img, std::uint8_t y_min, std::uint8_t y_max) {
        return to_array(tonemap::stretch(gray(img), y_min, y_max));
    }, py::arg("image"), py::arg("y_min") = 0, py::arg("y_max") = 255);
    m.def("log_transform", [](const GrayArray& img) { return to_array(tonemap::log_transform(gray(img))); });
    m.def("match", [](const GrayArray& src, const GrayArray& tgt) {
        return to_array(tonemap::match(gray(src), gray(tgt)));
    }, py::arg("source"), py::arg("target"));

    // spectral
    py::class_<spectral::Spectrum>(m, "Spectrum")
        .def_property_readonly("coeffs", [](const spectral::Spectrum& s) { return to_array(s.coeffs); })
        .def_readonly("dc_centered", &spectral::Spectrum::dc_centered)
        .def_property_readonly("shape", [](const spectral::Spectrum& s) { return py::make_tuple(s.height(), s.width()); });
    m.def("spectrum", [](const ComplexArray& coeffs, bool dc_centered) {
        return spectral::Spectrum{to_raster<std::complex<double>>(coeffs), dc_centered};
    }, py::arg("coeffs"), py::arg("dc_centered") = false);
    m.def("dft2", [](const RealArray& f) { return spectral::dft2(field(f)); }, py::arg("image"));
    m.def("idft2", [](const spectral::Spectrum& s) { return to_array(spectral::idft2(s)); }, py::arg("spectrum"));
    m.def("fftshift", &spectral::fftshift, py::arg("spectrum"));
    m.def("ifftshift", &spectral::ifftshift, py::arg("spectrum"));
    m.def("magnitude_spectrum", [](const spectral::Spectrum& s) { return to_array(spectral::magnitude_spectrum(s)); });

    // freqfilter
    m.def("distance_grid", [](std::size_t rows, std::size_t cols) { return to_array(freqfilter::distance_grid(rows, cols)); });
    m.def("ideal_mask", [](std::size_t rows, std::size_t cols, double cutoff, const std::string& k) {
        return to_array(freqfilter::ideal_mask(rows, cols, cutoff, kind(k)).gains);
    }, py::arg("rows"), py::arg("cols"), py::arg("cutoff"), py::arg("kind") = "lowpass");
    m.def("butterworth_mask", [](std::size_t rows, std::size_t cols, double cutoff, int order, const std::string& k) {
        return to_array(freqfilter::butterworth_mask(rows, cols, cutoff, order, kind(k)).gains);
    }, py::arg("rows"), py::arg("cols"), py::arg("cutoff"), py::arg("order") = 2, py::arg("kind") = "lowpass");
    m.def("gaussian_mask", [](std::size_t rows, std::size_t cols, double cutoff, const std::string& k) {
        return to_array(freqfilter::gaussian_mask(rows, cols, cutoff, kind(k)).gains);
    }, py::arg("rows"), py::arg("cols"), py::arg("cutoff"), py::arg("kind") = "lowpass");
    m.def("apply_frequency_filter", [](const RealArray& img, const RealArray& gains) {
        const FieldImage g = field(gains);
        for (double v : g) {
            if (!(v >= 0.0 && v <= 1.0)) throw py::value_error("mask gains must lie in [0, 1]");
        }
        return to_array(freqfilter::apply_frequency_filter(field(img), {g}));
    }, py::arg("image"), py::arg("mask"));

    // spatial
    m.def("correlate", [](const RealArray& img, const RealArray& kernel, const std::string& b) {
        const FieldImage k = field(kernel);
        if (k.width() != k.height()) throw py::value_error("kernel must be square");
        return to_array(spatial::correlate(field(img), spatial::Kernel(k.width(), k.data()), border(b)));
    }, py::arg("image"), py::arg("kernel"), py::arg("border") = "zero");
    m.def("mean_filter", [](const RealArray& img, std::size_t k, const std::string& b) {
        return to_array(spatial::mean_filter(field(img), k, border(b)));
    }, py::arg("image"), py::arg("ksize") = 3, py::arg("border") = "zero");
    m.def("median_filter", [](const RealArray& img, std::size_t k, const std::string& b) {
        return to_array(spatial::median_filter(field(img), k, border(b)));
    }, py::arg("image"), py::arg("ksize") = 3, py::arg("border") = "reflect");
    m.def("bilateral_filter", [](const RealArray& img, std::size_t d, double sc, double ss, const std::string& b) {
        return to_array(spatial::bilateral_filter(field(img), d, sc, ss, border(b)));
    }, py::arg("image"), py::arg("d") = 9, py::arg("sigma_color") = 75.0, py::arg("sigma_space") = 75.0,
       py::arg("border") = "reflect");
    m.def("laplacian", [](const RealArray& img, const std::string& b) {
        return to_array(spatial::laplacian(field(img), border(b)));
    }, py::arg("image"), py::arg("border") = "zero");
    m.def("sobel", [](const RealArray& img, const std::string& b) {
        const auto g = spatial::sobel(field(img), border(b));
        return py::make_tuple(to_array(g.gx), to_array(g.gy));
    }, py::arg("image"), py::arg("border") = "zero");
    m.def("prewitt", [](const RealArray& img, const std::string& b) {
        const auto g = spatial::prewitt(field(img), border(b));
        return py::make_tuple(to_array(g.gx), to_array(g.gy));
    }, py::arg("image"), py::arg("border") = "zero");
    m.def("gradient_magnitude", [](const RealArray& gx, const RealArray& gy) {
        return to_array(spatial::gradient_magnitude(field(gx), field(gy)));
    });
    m.def("gradient_direction", [](const RealArray& gx, const RealArray& gy) {
        return to_array(spatial::gradient_direction(field(gx), field(gy)));
    });

    // cli
    m.def("run", [](const std::vector<std::string>& args) {
        std::ostringstream err;
        const int status = pipeline::run(args, err);
        return py::make_tuple(status, err.str());
    }, py::arg("args"), "Run the enhance CLI in-process; returns (exit_status, diagnostics).");
}
