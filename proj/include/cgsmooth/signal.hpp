#ifndef CGSMOOTH_SIGNAL_HPP
#define CGSMOOTH_SIGNAL_HPP

#include <cstdint>
#include <limits>
#include <string>
#include <variant>
#include <vector>

namespace cgsmooth {

/// A 1D real-valued discrete signal with vertex positions.
struct Signal {
    std::vector<double> samples;
    std::vector<double> positions;

    std::size_t size() const { return samples.size(); }

    /// Samples with unit-spaced positions 0, 1, ..., n-1.
    static Signal with_default_positions(std::vector<double> samples);

    /// Throws unless samples/positions have equal nonzero length, positions
    /// are strictly increasing, and every value is finite.
    void validate(const char* context) const;
};

// Segment kinds for synthetic clean signals. `step` and `constant` both hold a
// level; the distinction is only descriptive (a step opens a new plateau).
struct ConstantSegment { double level; };
struct StepSegment { double level; };
struct RampSegment { double from; double to; };
struct SineSegment { double amplitude; double period; }; // value = 0.5 + A*sin(2*pi*t/period)

struct Segment {
    std::variant<ConstantSegment, StepSegment, RampSegment, SineSegment> shape;
    std::size_t count = 0;
};

struct CleanSignalSpec {
    std::size_t length = 4730;
    std::vector<Segment> segments;

    /// Throws SpecError unless segment counts sum to length and every segment
    /// stays inside [0, 1].
    void validate() const;
};

/// The repository's documented default test signal: steps, ramps, plateaus
/// (touching 0 and 1 so the dynamic range is exactly 1) and a sine section.
/// Lengths other than 4730 scale the canonical segment proportions.
CleanSignalSpec default_clean_spec(std::size_t length = 4730);

struct NoiseSpec {
    double variance = 0.01;
    std::uint64_t seed = 12345;
};

inline constexpr double kInfiniteDb = std::numeric_limits<double>::infinity();

struct Metrics {
    double mse = 0.0;
    double psnr_db = 0.0; // +inf exactly when mse == 0
    double snr_db = 0.0;
};

Signal generate_clean(const CleanSignalSpec& spec);
Signal add_noise(const Signal& x, const NoiseSpec& noise);

/// mse = mean squared error; psnr = 10*log10(R^2/mse) with R the reference's
/// dynamic range; snr = 10*log10(sum ref^2 / sum err^2).
Metrics compute_metrics(const Signal& reference, const Signal& estimate);

double l2_norm(const std::vector<double>& v);
double dot(const std::vector<double>& a, const std::vector<double>& b);

} // namespace cgsmooth

#endif
