#include "cgsmooth/iterate.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>

#include "cgsmooth/errors.hpp"

namespace cgsmooth {

void IterationLog::set_reference(Signal clean) {
    clean.validate("IterationLog reference");
    reference_ = std::move(clean);
}

void IterationLog::record(std::span<const double> current, std::optional<double> residual_norm) {
    IterationRecord rec;
    rec.iteration = static_cast<long>(records_.size());
    rec.applications = applications_;
    rec.residual_norm = residual_norm;
    if (reference_ && reference_->size() == current.size()) {
        Signal estimate;
        estimate.samples.assign(current.begin(), current.end());
        estimate.positions = reference_->positions;
        rec.metrics = compute_metrics(*reference_, estimate);
    }
    records_.push_back(std::move(rec));
}

void IterationLog::add_event(IterationEvent::Kind kind, int cycle, int step, std::string detail) {
    events_.push_back(IterationEvent{kind, cycle, step, std::move(detail)});
}

bool IterationLog::has_breakdown() const {
    return std::any_of(events_.begin(), events_.end(), [](const IterationEvent& e) {
        return e.kind == IterationEvent::Kind::breakdown;
    });
}

void IterationLog::write_csv(std::ostream& out) const {
    out << "iter,applications,mse,psnr_db,snr_db,residual_norm\n";
    char buf[64];
    auto put = [&](double v) {
        std::snprintf(buf, sizeof(buf), "%.17g", v);
        out << buf;
    };
    const double nan = std::nan("");
    for (const auto& rec : records_) {
        out << rec.iteration << ',' << rec.applications << ',';
        put(rec.metrics ? rec.metrics->mse : nan);
        out << ',';
        put(rec.metrics ? rec.metrics->psnr_db : nan);
        out << ',';
        put(rec.metrics ? rec.metrics->snr_db : nan);
        out << ',';
        put(rec.residual_norm ? *rec.residual_norm : nan);
        out << '\n';
    }
}

void IterationLog::write_csv_file(const std::string& path) const {
    std::ofstream f(path, std::ios::binary);
    if (!f) throw IoError("IterationLog: cannot open " + path);
    write_csv(f);
}

Signal mean_filter(const Signal& x, int rho) {
    x.validate("mean_filter");
    if (rho < 1) throw SpecError("mean_filter: rho must be >= 1");
    const long n = static_cast<long>(x.size());
    std::vector<double> prefix(static_cast<std::size_t>(n) + 1, 0.0);
    for (long i = 0; i < n; ++i)
        prefix[static_cast<std::size_t>(i) + 1] = prefix[static_cast<std::size_t>(i)] + x.samples[static_cast<std::size_t>(i)];
    Signal y;
    y.positions = x.positions;
    y.samples.resize(static_cast<std::size_t>(n));
    for (long i = 0; i < n; ++i) {
        const long lo = std::max(0L, i - rho);
        const long hi = std::min(n - 1, i + rho);
        const double sum = prefix[static_cast<std::size_t>(hi) + 1] - prefix[static_cast<std::size_t>(lo)];
        y.samples[static_cast<std::size_t>(i)] = sum / static_cast<double>(hi - lo + 1);
    }
    return y;
}

Signal bf_step(const Signal& x, const Signal& g, const BfParams& params) {
    if (x.size() != g.size()) throw DimensionError("bf_step: signal/guidance length mismatch");
    const auto op = bf_build(g, params);
    return apply_inverse_degree(op, apply_weight(op, x));
}

namespace {

std::vector<double> box_mean(const std::vector<double>& v, int rho) {
    const long n = static_cast<long>(v.size());
    std::vector<double> prefix(static_cast<std::size_t>(n) + 1, 0.0);
    for (long i = 0; i < n; ++i)
        prefix[static_cast<std::size_t>(i) + 1] = prefix[static_cast<std::size_t>(i)] + v[static_cast<std::size_t>(i)];
    std::vector<double> out(static_cast<std::size_t>(n));
    for (long i = 0; i < n; ++i) {
        const long lo = std::max(0L, i - rho);
        const long hi = std::min(n - 1, i + rho);
        out[static_cast<std::size_t>(i)] =
            (prefix[static_cast<std::size_t>(hi) + 1] - prefix[static_cast<std::size_t>(lo)]) /
            static_cast<double>(hi - lo + 1);
    }
    return out;
}

} // namespace

Signal gf_step_fast(const Signal& x, const Signal& g, const GfParams& params) {
    x.validate("gf_step_fast input");
    g.validate("gf_step_fast guidance");
    if (x.size() != g.size()) throw DimensionError("gf_step_fast: signal/guidance length mismatch");
    params.validate();
    const std::size_t n = x.size();
    const int rho = params.rho;

    std::vector<double> gg(n), gx(n);
    for (std::size_t i = 0; i < n; ++i) {
        gg[i] = g.samples[i] * g.samples[i];
        gx[i] = g.samples[i] * x.samples[i];
    }
    const auto mean_g = box_mean(g.samples, rho);
    const auto mean_x = box_mean(x.samples, rho);
    const auto corr_g = box_mean(gg, rho);
    const auto corr_gx = box_mean(gx, rho);

    std::vector<double> a(n), b(n);
    for (std::size_t i = 0; i < n; ++i) {
        const double var_g = corr_g[i] - mean_g[i] * mean_g[i];
        const double cov_gx = corr_gx[i] - mean_g[i] * mean_x[i];
        a[i] = cov_gx / (var_g + params.epsilon);
        b[i] = mean_x[i] - a[i] * mean_g[i];
    }
    const auto mean_a = box_mean(a, rho);
    const auto mean_b = box_mean(b, rho);

    Signal y;
    y.positions = x.positions;
    y.samples.resize(n);
    for (std::size_t i = 0; i < n; ++i) y.samples[i] = mean_a[i] * g.samples[i] + mean_b[i];
    return y;
}

Signal iterate_filter(const Signal& x0, const FilterParams& params, const GuidancePolicy& policy,
                      int iterations, IterationLog& log) {
    x0.validate("iterate_filter input");
    if (iterations < 0) throw SpecError("iterate_filter: iterations must be >= 0");
    if (policy.mode == GuidancePolicy::Mode::fixed) {
        if (!policy.guidance) throw SpecError("iterate_filter: fixed policy without guidance");
        if (policy.guidance->size() != x0.size())
            throw DimensionError("iterate_filter: guidance length mismatch");
    }
    if (iterations == 0) return x0;

    Signal x = x0;
    const bool is_bf = std::holds_alternative<BfParams>(params);

    if (policy.mode == GuidancePolicy::Mode::fixed) {
        // Linear filter: weights frozen from g, one build for all sweeps.
        if (is_bf) {
            const auto op = bf_build(*policy.guidance, std::get<BfParams>(params));
            log.count_build();
            for (int t = 0; t < iterations; ++t) {
                x = apply_inverse_degree(op, apply_weight(op, x));
                log.count_application();
                log.record(x.samples, std::nullopt);
            }
        } else {
            const auto op = gf_build(*policy.guidance, std::get<GfParams>(params));
            log.count_build();
            for (int t = 0; t < iterations; ++t) {
                x = apply_weight(op, x); // D = I for the guided filter
                log.count_application();
                log.record(x.samples, std::nullopt);
            }
        }
        return x;
    }

    // Self-guided: nonlinear, weights follow the current iterate.
    for (int t = 0; t < iterations; ++t) {
        if (is_bf) {
            x = bf_step(x, x, std::get<BfParams>(params));
        } else {
            x = gf_step_fast(x, x, std::get<GfParams>(params));
        }
        log.count_build();
        log.count_application();
        log.record(x.samples, std::nullopt);
    }
    return x;
}

} // namespace cgsmooth
