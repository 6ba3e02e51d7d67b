#include "cgsmooth/signal.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "cgsmooth/errors.hpp"
#include "cgsmooth/rng.hpp"

namespace cgsmooth {

Signal Signal::with_default_positions(std::vector<double> samples) {
    Signal s;
    s.positions.resize(samples.size());
    std::iota(s.positions.begin(), s.positions.end(), 0.0);
    s.samples = std::move(samples);
    return s;
}

void Signal::validate(const char* context) const {
    const std::string where(context);
    if (samples.empty()) throw SpecError(where + ": signal is empty");
    if (samples.size() != positions.size())
        throw DimensionError(where + ": samples/positions length mismatch");
    for (std::size_t i = 0; i < samples.size(); ++i) {
        if (!std::isfinite(samples[i]) || !std::isfinite(positions[i]))
            throw SpecError(where + ": non-finite value at index " + std::to_string(i));
        if (i > 0 && !(positions[i] > positions[i - 1]))
            throw SpecError(where + ": positions not strictly increasing at index " + std::to_string(i));
    }
}

namespace {

struct SegmentRange { double lo; double hi; };

SegmentRange segment_range(const Segment& seg) {
    struct Visitor {
        std::size_t count;
        SegmentRange operator()(const ConstantSegment& c) const { return {c.level, c.level}; }
        SegmentRange operator()(const StepSegment& s) const { return {s.level, s.level}; }
        SegmentRange operator()(const RampSegment& r) const {
            return {std::min(r.from, r.to), std::max(r.from, r.to)};
        }
        SegmentRange operator()(const SineSegment& s) const {
            return {0.5 - s.amplitude, 0.5 + s.amplitude};
        }
    };
    return std::visit(Visitor{seg.count}, seg.shape);
}

} // namespace

void CleanSignalSpec::validate() const {
    if (length == 0) throw SpecError("CleanSignalSpec: length must be positive");
    if (segments.empty()) throw SpecError("CleanSignalSpec: no segments");
    std::size_t total = 0;
    for (const auto& seg : segments) {
        if (seg.count == 0) throw SpecError("CleanSignalSpec: empty segment");
        total += seg.count;
        const auto range = segment_range(seg);
        if (range.lo < 0.0 || range.hi > 1.0)
            throw SpecError("CleanSignalSpec: segment leaves [0, 1]");
        if (const auto* sine = std::get_if<SineSegment>(&seg.shape)) {
            if (!(sine->period > 0.0)) throw SpecError("CleanSignalSpec: sine period must be positive");
            if (sine->amplitude < 0.0) throw SpecError("CleanSignalSpec: sine amplitude must be nonnegative");
        }
    }
    if (total != length)
        throw SpecError("CleanSignalSpec: segment counts sum to " + std::to_string(total) +
                        ", expected " + std::to_string(length));
}

CleanSignalSpec default_clean_spec(std::size_t length) {
    // Canonical proportions at N = 4730; other lengths scale and the first
    // segment absorbs the rounding remainder.
    struct Piece {
        Segment seg;
        std::size_t count;
    };
    const std::vector<Piece> canon = {
        {{ConstantSegment{0.20}, 0}, 350},
        {{StepSegment{0.80}, 0}, 450},
        {{RampSegment{0.80, 0.30}, 0}, 620},
        {{ConstantSegment{0.30}, 0}, 280},
        {{StepSegment{1.00}, 0}, 400},
        {{StepSegment{0.00}, 0}, 400},
        {{SineSegment{0.30, 520.0}, 0}, 1040},
        {{StepSegment{0.55}, 0}, 360},
        {{RampSegment{0.55, 0.05}, 0}, 480},
        {{ConstantSegment{0.65}, 0}, 350},
    };
    const std::size_t canon_total = 4730;

    CleanSignalSpec spec;
    spec.length = length;
    std::size_t assigned = 0;
    for (std::size_t i = 1; i < canon.size(); ++i) {
        std::size_t count = std::max<std::size_t>(1, canon[i].count * length / canon_total);
        spec.segments.push_back(canon[i].seg);
        spec.segments.back().count = count;
        assigned += count;
    }
    if (assigned >= length)
        throw SpecError("default_clean_spec: length too small for the default shape");
    Segment first = canon[0].seg;
    first.count = length - assigned;
    spec.segments.insert(spec.segments.begin(), first);
    spec.validate();
    return spec;
}

Signal generate_clean(const CleanSignalSpec& spec) {
    spec.validate();
    std::vector<double> samples;
    samples.reserve(spec.length);
    for (const auto& seg : spec.segments) {
        const std::size_t m = seg.count;
        struct Visitor {
            std::vector<double>& out;
            std::size_t m;
            void operator()(const ConstantSegment& c) const {
                out.insert(out.end(), m, c.level);
            }
            void operator()(const StepSegment& s) const {
                out.insert(out.end(), m, s.level);
            }
            void operator()(const RampSegment& r) const {
                if (m == 1) {
                    out.push_back(r.from);
                    return;
                }
                for (std::size_t t = 0; t < m; ++t)
                    out.push_back(r.from + (r.to - r.from) * static_cast<double>(t) /
                                               static_cast<double>(m - 1));
            }
            void operator()(const SineSegment& s) const {
                for (std::size_t t = 0; t < m; ++t)
                    out.push_back(0.5 + s.amplitude *
                                            std::sin(2.0 * 3.14159265358979323846 *
                                                     static_cast<double>(t) / s.period));
            }
        };
        std::visit(Visitor{samples, m}, seg.shape);
    }
    return Signal::with_default_positions(std::move(samples));
}

Signal add_noise(const Signal& x, const NoiseSpec& noise) {
    x.validate("add_noise");
    if (!(noise.variance > 0.0)) throw SpecError("add_noise: variance must be positive");
    GaussianSampler gauss(noise.seed);
    const double sigma = std::sqrt(noise.variance);
    Signal out;
    out.positions = x.positions;
    out.samples.reserve(x.size());
    for (double v : x.samples) out.samples.push_back(v + sigma * gauss.next());
    return out;
}

Metrics compute_metrics(const Signal& reference, const Signal& estimate) {
    reference.validate("compute_metrics reference");
    estimate.validate("compute_metrics estimate");
    if (reference.size() != estimate.size())
        throw DimensionError("compute_metrics: length mismatch");

    const std::size_t n = reference.size();
    double err2 = 0.0;
    double ref2 = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        const double d = reference.samples[i] - estimate.samples[i];
        err2 += d * d;
        ref2 += reference.samples[i] * reference.samples[i];
    }
    const auto [lo, hi] = std::minmax_element(reference.samples.begin(), reference.samples.end());
    const double range = *hi - *lo;
    if (range == 0.0)
        throw UndefinedMetricError("compute_metrics: PSNR undefined for constant reference");

    Metrics m;
    m.mse = err2 / static_cast<double>(n);
    if (m.mse == 0.0) {
        m.psnr_db = kInfiniteDb;
        m.snr_db = kInfiniteDb;
    } else {
        m.psnr_db = 10.0 * std::log10(range * range / m.mse);
        m.snr_db = 10.0 * std::log10(ref2 / err2);
    }
    return m;
}

double l2_norm(const std::vector<double>& v) {
    double acc = 0.0;
    for (double x : v) acc += x * x;
    return std::sqrt(acc);
}

double dot(const std::vector<double>& a, const std::vector<double>& b) {
    double acc = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) acc += a[i] * b[i];
    return acc;
}

} // namespace cgsmooth
