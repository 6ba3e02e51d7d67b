#ifndef CGSMOOTH_ITERATE_HPP
#define CGSMOOTH_ITERATE_HPP

#include <cstdint>
#include <optional>
#include <ostream>
#include <span>
#include <string>
#include <variant>
#include <vector>

#include "cgsmooth/operators.hpp"
#include "cgsmooth/signal.hpp"

namespace cgsmooth {

using FilterParams = std::variant<BfParams, GfParams>;

/// Weight guidance: a frozen signal, or the current iterate (nonlinear).
struct GuidancePolicy {
    enum class Mode { fixed, self_guided };
    Mode mode = Mode::self_guided;
    std::optional<Signal> guidance; // set iff mode == fixed

    static GuidancePolicy fixed(Signal g) {
        return GuidancePolicy{Mode::fixed, std::move(g)};
    }
    static GuidancePolicy self_guided() { return GuidancePolicy{Mode::self_guided, std::nullopt}; }
};

struct IterationEvent {
    enum class Kind { breakdown, indefinite_curvature, converged };
    Kind kind;
    int cycle = 0;
    int step = 0;
    std::string detail;
};

struct IterationRecord {
    long iteration = 0;          // record ordinal
    long applications = 0;       // W-equivalent operator applications so far
    std::optional<Metrics> metrics; // vs the reference signal, when one is set
    std::optional<double> residual_norm; // ||Lx|| for the operator in effect
};

/// Per-iteration trace shared by the power-iteration and CG drivers.
/// CSV columns: iter,applications,mse,psnr_db,snr_db,residual_norm.
class IterationLog {
public:
    void set_reference(Signal clean);
    const std::optional<Signal>& reference() const { return reference_; }

    void count_build() { ++builds_; }
    void count_application() { ++applications_; }
    void record(std::span<const double> current, std::optional<double> residual_norm);
    void add_event(IterationEvent::Kind kind, int cycle, int step, std::string detail);

    long applications() const { return applications_; }
    long builds() const { return builds_; }
    const std::vector<IterationRecord>& records() const { return records_; }
    const std::vector<IterationEvent>& events() const { return events_; }
    bool has_breakdown() const;

    void write_csv(std::ostream& out) const;
    void write_csv_file(const std::string& path) const;

private:
    std::optional<Signal> reference_;
    std::vector<IterationRecord> records_;
    std::vector<IterationEvent> events_;
    long applications_ = 0;
    long builds_ = 0;
};

/// Truncated-window box mean of radius rho; O(N) via prefix sums.
Signal mean_filter(const Signal& x, int rho);

/// One bilateral sweep: y = D^{-1}(g) W(g) x.
Signal bf_step(const Signal& x, const Signal& g, const BfParams& params);

/// One guided-filter sweep in the O(N) local-linear-model form, with
/// truncated-window box means.
Signal gf_step_fast(const Signal& x, const Signal& g, const GfParams& params);

/// Repeated filter sweeps (power iteration). Fixed guidance freezes the
/// weights once; self-guidance rebuilds them from each new iterate.
Signal iterate_filter(const Signal& x0, const FilterParams& params, const GuidancePolicy& policy,
                      int iterations, IterationLog& log);

} // namespace cgsmooth

#endif
