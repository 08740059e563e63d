#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <variant>
#include <vector>

#include "enhance/freqfilter.hpp"
#include "enhance/raster.hpp"
#include "enhance/spatial.hpp"

namespace enhance::pipeline {

/// Flag-grammar violation; maps to exit status 2.
class UsageError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

struct Equalize {};

struct Stretch {
    std::optional<int> x_min;
    std::optional<int> x_max;
    int y_min = 0;
    int y_max = 255;
};

struct LogMap {};

struct Match {
    std::string target_path;
};

// Terminal: replaces the working image with its centered log-magnitude spectrum.
struct SpectrumView {};

struct FrequencyFilter {
    freqfilter::Kind kind = freqfilter::Kind::LowPass;
    freqfilter::Family family = freqfilter::Family::Ideal;
    double cutoff = 0;
    int order = 2;
};

enum class SmoothMethod { Mean, Median, Bilateral };

struct Smooth {
    SmoothMethod method = SmoothMethod::Mean;
    int ksize = 3;
    int diameter = 9;
    double sigma_color = 75;
    double sigma_space = 75;
    std::optional<spatial::BoundaryPolicy> border;
};

enum class EdgeMethod { Sobel, Prewitt, Laplacian };
enum class EdgeOutput { Magnitude, Gx, Gy, Direction };

struct Edges {
    EdgeMethod method = EdgeMethod::Sobel;
    EdgeOutput output = EdgeOutput::Magnitude;
    std::optional<spatial::BoundaryPolicy> border;
};

using Step = std::variant<Equalize, Stretch, LogMap, Match, SpectrumView, FrequencyFilter, Smooth, Edges>;

struct Invocation {
    std::string input;
    std::string output;
    std::optional<std::string> report;
    bool quantize_between = false;
    std::vector<Step> steps;
};

/// Parses the arguments that follow the program name.
Invocation parse_args(std::span<const std::string> args);

/// Checks every step's parameters against the bound operation's preconditions.
/// Throws enhance::Error on the first violation.
void validate(const Invocation& inv);

std::string describe(const Step& step);

struct StepResult {
    FieldImage image;
    std::string note;  // extra report text, e.g. a rescale applied for export
};

StepResult apply_step(const Step& step, const FieldImage& image);

/// Linear min-max rescale onto [0, 255]; a flat field maps to all zeros.
FieldImage minmax_stretch(const FieldImage& field);

/// Centered ln(1 + |F|) spectrum, min-max stretched and quantized.
GrayImage spectrum_export(const FieldImage& img);
void spectrum_export(const FieldImage& img, const std::string& out_path);

std::string report_line(const Step& step, const StepResult& result);

/// Full CLI behavior: 0 on success, 1 on library errors, 2 on grammar errors.
/// Diagnostics are written to `err` as a single line.
int run(std::span<const std::string> args, std::ostream& err);

std::string usage();

}  // namespace enhance::pipeline
