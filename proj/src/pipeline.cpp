#include "enhance/pipeline.hpp"

#include <algorithm>
#include <charconv>
#include <cstdio>
#include <fstream>
#include <numeric>
#include <ostream>

#include "enhance/spectral.hpp"
#include "enhance/tonemap.hpp"

namespace enhance::pipeline {

namespace {

using spatial::BoundaryPolicy;

template <typename... Ts>
struct Overloaded : Ts... {
    using Ts::operator()...;
};
template <typename... Ts>
Overloaded(Ts...) -> Overloaded<Ts...>;

bool is_step_name(const std::string& tok) {
    static const char* const kNames[] = {"equalize", "stretch", "logmap", "match", "spectrum",
                                         "lowpass", "highpass", "smooth", "edges"};
    return std::any_of(std::begin(kNames), std::end(kNames), [&](const char* n) { return tok == n; });
}

class Tokens {
public:
    explicit Tokens(std::span<const std::string> args) : args_(args) {}

    bool done() const { return pos_ >= args_.size(); }
    const std::string& peek() const { return args_[pos_]; }
    const std::string& next() { return args_[pos_++]; }

    const std::string& value_for(const std::string& flag) {
        if (done()) throw UsageError("missing value for " + flag);
        return next();
    }

    bool at_step_flag() const { return !done() && peek().size() > 1 && peek()[0] == '-'; }

private:
    std::span<const std::string> args_;
    std::size_t pos_ = 0;
};

template <typename T>
T parse_number(const std::string& text, const std::string& flag) {
    T value{};
    const char* first = text.data();
    const char* last = text.data() + text.size();
    if (!text.empty() && *first == '+') ++first;
    const auto [ptr, ec] = std::from_chars(first, last, value);
    if (ec != std::errc() || ptr != last || first == last) {
        throw UsageError("invalid value '" + text + "' for " + flag);
    }
    return value;
}

BoundaryPolicy parse_border(const std::string& text) {
    if (text == "zero") return BoundaryPolicy::Zero;
    if (text == "reflect") return BoundaryPolicy::Reflect;
    if (text == "replicate") return BoundaryPolicy::Replicate;
    throw UsageError("unknown border '" + text + "' (zero|reflect|replicate)");
}

[[noreturn]] void unknown_flag(const std::string& step, const std::string& flag) {
    throw UsageError("unknown flag " + flag + " for step '" + step + "'");
}

Stretch parse_stretch(Tokens& t) {
    Stretch s;
    while (t.at_step_flag()) {
        const std::string flag = t.next();
        if (flag == "--x-min") s.x_min = parse_number<int>(t.value_for(flag), flag);
        else if (flag == "--x-max") s.x_max = parse_number<int>(t.value_for(flag), flag);
        else if (flag == "--y-min") s.y_min = parse_number<int>(t.value_for(flag), flag);
        else if (flag == "--y-max") s.y_max = parse_number<int>(t.value_for(flag), flag);
        else unknown_flag("stretch", flag);
    }
    return s;
}

Match parse_match(Tokens& t) {
    Match m;
    bool have_target = false;
    while (t.at_step_flag()) {
        const std::string flag = t.next();
        if (flag == "--target") {
            m.target_path = t.value_for(flag);
            have_target = true;
        } else {
            unknown_flag("match", flag);
        }
    }
    if (!have_target) throw UsageError("match requires --target PATH");
    return m;
}

FrequencyFilter parse_filter(Tokens& t, const std::string& name) {
    FrequencyFilter f;
    f.kind = name == "lowpass" ? freqfilter::Kind::LowPass : freqfilter::Kind::HighPass;
    bool have_family = false;
    bool have_cutoff = false;
    while (t.at_step_flag()) {
        const std::string flag = t.next();
        if (flag == "--filter") {
            const std::string& v = t.value_for(flag);
            if (v == "ideal") f.family = freqfilter::Family::Ideal;
            else if (v == "butterworth") f.family = freqfilter::Family::Butterworth;
            else if (v == "gaussian") f.family = freqfilter::Family::Gaussian;
            else throw UsageError("unknown filter '" + v + "' (ideal|butterworth|gaussian)");
            have_family = true;
        } else if (flag == "--cutoff") {
            f.cutoff = parse_number<double>(t.value_for(flag), flag);
            have_cutoff = true;
        } else if (flag == "--order") {
            f.order = parse_number<int>(t.value_for(flag), flag);
        } else {
            unknown_flag(name, flag);
        }
    }
    if (!have_family) throw UsageError(name + " requires --filter");
    if (!have_cutoff) throw UsageError(name + " requires --cutoff");
    return f;
}

Smooth parse_smooth(Tokens& t) {
    Smooth s;
    bool have_method = false;
    while (t.at_step_flag()) {
        const std::string flag = t.next();
        if (flag == "--method") {
            const std::string& v = t.value_for(flag);
            if (v == "mean") s.method = SmoothMethod::Mean;
            else if (v == "median") s.method = SmoothMethod::Median;
            else if (v == "bilateral") s.method = SmoothMethod::Bilateral;
            else throw UsageError("unknown smoothing method '" + v + "' (mean|median|bilateral)");
            have_method = true;
        } else if (flag == "--ksize") {
            s.ksize = parse_number<int>(t.value_for(flag), flag);
        } else if (flag == "--d") {
            s.diameter = parse_number<int>(t.value_for(flag), flag);
        } else if (flag == "--sigma-color") {
            s.sigma_color = parse_number<double>(t.value_for(flag), flag);
        } else if (flag == "--sigma-space") {
            s.sigma_space = parse_number<double>(t.value_for(flag), flag);
        } else if (flag == "--border") {
            s.border = parse_border(t.value_for(flag));
        } else {
            unknown_flag("smooth", flag);
        }
    }
    if (!have_method) throw UsageError("smooth requires --method");
    return s;
}

Edges parse_edges(Tokens& t) {
    Edges e;
    bool have_method = false;
    bool have_output = false;
    while (t.at_step_flag()) {
        const std::string flag = t.next();
        if (flag == "--method") {
            const std::string& v = t.value_for(flag);
            if (v == "sobel") e.method = EdgeMethod::Sobel;
            else if (v == "prewitt") e.method = EdgeMethod::Prewitt;
            else if (v == "laplacian") e.method = EdgeMethod::Laplacian;
            else throw UsageError("unknown edge method '" + v + "' (sobel|prewitt|laplacian)");
            have_method = true;
        } else if (flag == "--output") {
            const std::string& v = t.value_for(flag);
            if (v == "magnitude") e.output = EdgeOutput::Magnitude;
            else if (v == "gx") e.output = EdgeOutput::Gx;
            else if (v == "gy") e.output = EdgeOutput::Gy;
            else if (v == "direction") e.output = EdgeOutput::Direction;
            else throw UsageError("unknown edge output '" + v + "' (magnitude|gx|gy|direction)");
            have_output = true;
        } else if (flag == "--border") {
            e.border = parse_border(t.value_for(flag));
        } else {
            unknown_flag("edges", flag);
        }
    }
    if (!have_method) throw UsageError("edges requires --method");
    if (have_output && e.method == EdgeMethod::Laplacian && e.output != EdgeOutput::Magnitude) {
        throw UsageError("laplacian only supports --output magnitude");
    }
    return e;
}

void expect_no_flags(Tokens& t, const std::string& name) {
    if (t.at_step_flag()) unknown_flag(name, t.peek());
}

Step parse_step(Tokens& t) {
    const std::string name = t.next();
    if (name == "equalize") {
        expect_no_flags(t, name);
        return Equalize{};
    }
    if (name == "logmap") {
        expect_no_flags(t, name);
        return LogMap{};
    }
    if (name == "spectrum") {
        expect_no_flags(t, name);
        return SpectrumView{};
    }
    if (name == "stretch") return parse_stretch(t);
    if (name == "match") return parse_match(t);
    if (name == "lowpass" || name == "highpass") return parse_filter(t, name);
    if (name == "smooth") return parse_smooth(t);
    if (name == "edges") return parse_edges(t);
    throw UsageError("unknown step '" + name + "'");
}

std::uint8_t intensity(int v, const char* what) {
    if (v < 0 || v > 255) {
        throw Error(ErrorCode::InvalidArgument,
                    std::string(what) + " must be an intensity in [0, 255], got " + std::to_string(v));
    }
    return static_cast<std::uint8_t>(v);
}

const char* border_name(BoundaryPolicy p) {
    switch (p) {
        case BoundaryPolicy::Zero: return "zero";
        case BoundaryPolicy::Reflect: return "reflect";
        case BoundaryPolicy::Replicate: return "replicate";
    }
    return "?";
}

BoundaryPolicy smooth_border(const Smooth& s) {
    if (s.border) return *s.border;
    return s.method == SmoothMethod::Mean ? BoundaryPolicy::Zero : BoundaryPolicy::Reflect;
}

BoundaryPolicy edge_border(const Edges& e) { return e.border.value_or(BoundaryPolicy::Zero); }

std::string fmt4(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.4f", v);
    return buf;
}

std::string fmt_number(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%g", v);
    return buf;
}

FieldImage apply_tone(const FieldImage& img, const tonemap::Lut& lut) {
    return to_field(tonemap::apply_lut(from_field(img), lut));
}

}  // namespace

Invocation parse_args(std::span<const std::string> args) {
    Invocation inv;
    Tokens t(args);
    bool have_in = false;
    bool have_out = false;
    while (!t.done() && !is_step_name(t.peek())) {
        const std::string flag = t.next();
        if (flag == "-i") {
            inv.input = t.value_for(flag);
            have_in = true;
        } else if (flag == "-o") {
            inv.output = t.value_for(flag);
            have_out = true;
        } else if (flag == "--report") {
            inv.report = t.value_for(flag);
        } else if (flag == "--quantize-between") {
            inv.quantize_between = true;
        } else {
            throw UsageError("unknown option " + flag);
        }
    }
    if (!have_in) throw UsageError("missing -i PATH");
    if (!have_out) throw UsageError("missing -o PATH");
    while (!t.done()) {
        if (!is_step_name(t.peek())) throw UsageError("expected a step name, got '" + t.peek() + "'");
        inv.steps.push_back(parse_step(t));
    }
    if (inv.steps.empty()) throw UsageError("no steps given");
    for (std::size_t i = 0; i + 1 < inv.steps.size(); ++i) {
        if (std::holds_alternative<SpectrumView>(inv.steps[i])) {
            throw UsageError("spectrum must be the last step");
        }
    }
    return inv;
}

void validate(const Invocation& inv) {
    for (const Step& step : inv.steps) {
        std::visit(Overloaded{
                       [](const Stretch& s) {
                           const auto y_min = intensity(s.y_min, "--y-min");
                           const auto y_max = intensity(s.y_max, "--y-max");
                           if (s.x_min) intensity(*s.x_min, "--x-min");
                           if (s.x_max) intensity(*s.x_max, "--x-max");
                           if (s.x_min && s.x_max && *s.x_min >= *s.x_max) {
                               throw Error(ErrorCode::DegenerateRange, "degenerate intensity range");
                           }
                           if (y_min > y_max) {
                               throw Error(ErrorCode::InvalidArgument, "--y-min must not exceed --y-max");
                           }
                       },
                       [](const FrequencyFilter& f) {
                           // A 1x1 probe runs the mask constructor's own checks.
                           freqfilter::make_mask(f.family, 1, 1, f.cutoff, f.order, f.kind);
                       },
                       [](const Smooth& s) {
                           const int size = s.method == SmoothMethod::Bilateral ? s.diameter : s.ksize;
                           if (size < 3 || size % 2 == 0) {
                               throw Error(ErrorCode::EvenKernel,
                                           "kernel size must be odd and >= 3, got " + std::to_string(size));
                           }
                           if (s.method == SmoothMethod::Bilateral && (!(s.sigma_color > 0) || !(s.sigma_space > 0))) {
                               throw Error(ErrorCode::BadSigma, "bilateral sigmas must be positive");
                           }
                       },
                       [](const auto&) {},
                   },
                   step);
    }
}

std::string describe(const Step& step) {
    return std::visit(
        Overloaded{
            [](const Equalize&) -> std::string { return "equalize"; },
            [](const LogMap&) -> std::string { return "logmap"; },
            [](const SpectrumView&) -> std::string { return "spectrum"; },
            [](const Stretch& s) -> std::string {
                return "stretch x_min=" + (s.x_min ? std::to_string(*s.x_min) : std::string("auto")) +
                       " x_max=" + (s.x_max ? std::to_string(*s.x_max) : std::string("auto")) +
                       " y_min=" + std::to_string(s.y_min) + " y_max=" + std::to_string(s.y_max);
            },
            [](const Match& m) -> std::string { return "match target=" + m.target_path; },
            [](const FrequencyFilter& f) -> std::string {
                static const char* const kFamilies[] = {"ideal", "butterworth", "gaussian"};
                std::string out = f.kind == freqfilter::Kind::LowPass ? "lowpass" : "highpass";
                out += std::string(" filter=") + kFamilies[static_cast<int>(f.family)];
                out += " cutoff=" + fmt_number(f.cutoff);
                if (f.family == freqfilter::Family::Butterworth) out += " order=" + std::to_string(f.order);
                return out;
            },
            [](const Smooth& s) -> std::string {
                static const char* const kMethods[] = {"mean", "median", "bilateral"};
                std::string out = std::string("smooth method=") + kMethods[static_cast<int>(s.method)];
                if (s.method == SmoothMethod::Bilateral) {
                    out += " d=" + std::to_string(s.diameter) + " sigma_color=" + fmt_number(s.sigma_color) +
                           " sigma_space=" + fmt_number(s.sigma_space);
                } else {
                    out += " ksize=" + std::to_string(s.ksize);
                }
                return out + " border=" + border_name(smooth_border(s));
            },
            [](const Edges& e) -> std::string {
                static const char* const kMethods[] = {"sobel", "prewitt", "laplacian"};
                static const char* const kOutputs[] = {"magnitude", "gx", "gy", "direction"};
                return std::string("edges method=") + kMethods[static_cast<int>(e.method)] +
                       " output=" + kOutputs[static_cast<int>(e.output)] + " border=" + border_name(edge_border(e));
            },
        },
        step);
}

FieldImage minmax_stretch(const FieldImage& field) {
    const auto [lo, hi] = std::minmax_element(field.pixels().begin(), field.pixels().end());
    FieldImage out(field.width(), field.height(), 0.0);
    if (!(*hi > *lo)) return out;
    const double scale = 255.0 / (*hi - *lo);
    for (std::size_t i = 0; i < field.size(); ++i) out[i] = (field[i] - *lo) * scale;
    return out;
}

StepResult apply_step(const Step& step, const FieldImage& image) {
    return std::visit(
        Overloaded{
            [&](const Equalize&) -> StepResult {
                const GrayImage gray = from_field(image);
                return {apply_tone(image, tonemap::equalization_lut(tonemap::cdf(tonemap::histogram(gray)))), {}};
            },
            [&](const Stretch& s) -> StepResult {
                const GrayImage gray = from_field(image);
                const auto [lo, hi] = std::minmax_element(gray.pixels().begin(), gray.pixels().end());
                const auto x_min = s.x_min ? intensity(*s.x_min, "--x-min") : *lo;
                const auto x_max = s.x_max ? intensity(*s.x_max, "--x-max") : *hi;
                const auto lut = tonemap::stretch_lut(x_min, x_max, intensity(s.y_min, "--y-min"),
                                                      intensity(s.y_max, "--y-max"));
                return {apply_tone(image, lut), {}};
            },
            [&](const LogMap&) -> StepResult {
                const GrayImage gray = from_field(image);
                const auto v_max = *std::max_element(gray.pixels().begin(), gray.pixels().end());
                return {apply_tone(image, tonemap::log_lut(v_max)), {}};
            },
            [&](const Match& m) -> StepResult {
                const GrayImage target = as_gray(load_netpbm(m.target_path));
                const auto lut = tonemap::matching_lut(tonemap::cdf(tonemap::histogram(from_field(image))),
                                                       tonemap::cdf(tonemap::histogram(target)));
                return {apply_tone(image, lut), {}};
            },
            [&](const SpectrumView&) -> StepResult {
                const FieldImage logmag =
                    spectral::magnitude_spectrum(spectral::fftshift(spectral::dft2(image)));
                const auto [lo, hi] = std::minmax_element(logmag.pixels().begin(), logmag.pixels().end());
                return {minmax_stretch(logmag), "rescaled_from=[" + fmt4(*lo) + "," + fmt4(*hi) + "]"};
            },
            [&](const FrequencyFilter& f) -> StepResult {
                const auto mask = freqfilter::make_mask(f.family, image.height(), image.width(), f.cutoff,
                                                        f.order, f.kind);
                return {freqfilter::apply_frequency_filter(image, mask), {}};
            },
            [&](const Smooth& s) -> StepResult {
                const BoundaryPolicy border = smooth_border(s);
                switch (s.method) {
                    case SmoothMethod::Mean:
                        return {spatial::mean_filter(image, static_cast<std::size_t>(s.ksize), border), {}};
                    case SmoothMethod::Median:
                        return {spatial::median_filter(image, static_cast<std::size_t>(s.ksize), border), {}};
                    case SmoothMethod::Bilateral:
                        return {spatial::bilateral_filter(image, static_cast<std::size_t>(s.diameter), s.sigma_color,
                                                          s.sigma_space, border),
                                {}};
                }
                throw Error(ErrorCode::InvalidArgument, "unknown smoothing method");
            },
            [&](const Edges& e) -> StepResult {
                const BoundaryPolicy border = edge_border(e);
                FieldImage response = [&] {
                    if (e.method == EdgeMethod::Laplacian) return spatial::laplacian(image, border);
                    const spatial::Gradient g = e.method == EdgeMethod::Sobel ? spatial::sobel(image, border)
                                                                              : spatial::prewitt(image, border);
                    switch (e.output) {
                        case EdgeOutput::Gx: return g.gx;
                        case EdgeOutput::Gy: return g.gy;
                        case EdgeOutput::Direction: return spatial::gradient_direction(g.gx, g.gy);
                        case EdgeOutput::Magnitude: break;
                    }
                    return spatial::gradient_magnitude(g.gx, g.gy);
                }();
                const auto [lo, hi] = std::minmax_element(response.pixels().begin(), response.pixels().end());
                const std::string note = "rescaled_from=[" + fmt4(*lo) + "," + fmt4(*hi) + "]";
                return {minmax_stretch(response), note};
            },
        },
        step);
}

GrayImage spectrum_export(const FieldImage& img) {
    return from_field(apply_step(SpectrumView{}, img).image);
}

void spectrum_export(const FieldImage& img, const std::string& out_path) {
    save_pgm(spectrum_export(img), out_path);
}

std::string report_line(const Step& step, const StepResult& result) {
    const auto px = result.image.pixels();
    const auto [lo, hi] = std::minmax_element(px.begin(), px.end());
    const double mean = std::accumulate(px.begin(), px.end(), 0.0) / static_cast<double>(px.size());
    std::string line = describe(step) + " min=" + fmt4(*lo) + " max=" + fmt4(*hi) + " mean=" + fmt4(mean);
    if (!result.note.empty()) line += " " + result.note;
    return line;
}

std::string usage() {
    return "usage: enhance -i PATH -o PATH [--report PATH] [--quantize-between] STEP [STEP ...]\n"
           "steps:\n"
           "  equalize\n"
           "  stretch [--x-min N --x-max N] [--y-min N=0 --y-max N=255]\n"
           "  logmap\n"
           "  match --target PATH\n"
           "  spectrum                      (terminal)\n"
           "  lowpass|highpass --filter ideal|butterworth|gaussian --cutoff F [--order N=2]\n"
           "  smooth --method mean|median|bilateral [--ksize N=3] [--d N=9 --sigma-color F=75\n"
           "         --sigma-space F=75] [--border zero|reflect|replicate]\n"
           "  edges --method sobel|prewitt|laplacian [--output magnitude|gx|gy|direction]\n"
           "        [--border zero|reflect|replicate]\n";
}

int run(std::span<const std::string> args, std::ostream& err) {
    Invocation inv;
    try {
        inv = parse_args(args);
    } catch (const UsageError& e) {
        err << "enhance: " << e.what() << "\n";
        return 2;
    }

    try {
        validate(inv);
        FieldImage working = to_field(as_gray(load_netpbm(inv.input)));
        std::vector<std::string> report;
        for (const Step& step : inv.steps) {
            StepResult result = apply_step(step, working);
            if (inv.quantize_between) result.image = to_field(from_field(result.image));
            report.push_back(report_line(step, result));
            working = std::move(result.image);
        }
        save_pgm(from_field(working), inv.output);
        if (inv.report) {
            std::ofstream out(*inv.report, std::ios::app);
            if (!out) throw Error(ErrorCode::Io, "cannot write report " + *inv.report);
            for (const auto& line : report) out << line << "\n";
        }
    } catch (const Error& e) {
        err << "enhance: " << e.what() << "\n";
        return 1;
    }
    return 0;
}

}  // namespace enhance::pipeline
