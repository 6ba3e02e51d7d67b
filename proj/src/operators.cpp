#include "cgsmooth/operators.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>

#include "cgsmooth/errors.hpp"

namespace cgsmooth {

void BfParams::validate() const {
    if (!(sigma_d > 0.0)) throw SpecError("BfParams: sigma_d must be positive");
    if (!(sigma_r > 0.0)) throw SpecError("BfParams: sigma_r must be positive");
    if (half_width < 1) throw SpecError("BfParams: half_width must be >= 1");
}

void GfParams::validate() const {
    if (!(epsilon > 0.0)) throw SpecError("GfParams: epsilon must be positive");
    if (rho < 1) throw SpecError("GfParams: rho must be >= 1");
}

BandedSymOperator::BandedSymOperator(std::size_t n, int half_bandwidth,
                                     std::vector<std::vector<double>> bands,
                                     std::vector<double> degrees)
    : n_(n), half_bandwidth_(half_bandwidth), bands_(std::move(bands)),
      degrees_(std::move(degrees)) {
    if (n_ == 0) throw SpecError("BandedSymOperator: empty");
    if (half_bandwidth_ < 0) throw SpecError("BandedSymOperator: negative bandwidth");
    if (bands_.size() != static_cast<std::size_t>(half_bandwidth_) + 1)
        throw DimensionError("BandedSymOperator: band count mismatch");
    for (int off = 0; off <= half_bandwidth_; ++off) {
        const std::size_t expect = n_ > static_cast<std::size_t>(off) ? n_ - static_cast<std::size_t>(off) : 0;
        if (bands_[static_cast<std::size_t>(off)].size() != expect)
            throw DimensionError("BandedSymOperator: band length mismatch at offset " + std::to_string(off));
    }
    if (degrees_.size() != n_) throw DimensionError("BandedSymOperator: degree length mismatch");
}

double BandedSymOperator::weight(std::size_t i, std::size_t j) const {
    const std::size_t lo = std::min(i, j);
    const std::size_t hi = std::max(i, j);
    const std::size_t off = hi - lo;
    if (off > static_cast<std::size_t>(half_bandwidth_)) return 0.0;
    return bands_[off][lo];
}

void BandedSymOperator::weight_times(std::span<const double> x, std::span<double> y) const {
    if (x.size() != n_ || y.size() != n_)
        throw DimensionError("weight_times: dimension mismatch");
    for (std::size_t i = 0; i < n_; ++i) y[i] = bands_[0][i] * x[i];
    for (int off = 1; off <= half_bandwidth_; ++off) {
        const auto& band = bands_[static_cast<std::size_t>(off)];
        const std::size_t m = band.size();
        for (std::size_t i = 0; i < m; ++i) {
            y[i] += band[i] * x[i + static_cast<std::size_t>(off)];
            y[i + static_cast<std::size_t>(off)] += band[i] * x[i];
        }
    }
}

void BandedSymOperator::laplacian_times(std::span<const double> x, std::span<double> y) const {
    weight_times(x, y);
    for (std::size_t i = 0; i < n_; ++i) y[i] = degrees_[i] * x[i] - y[i];
}

void BandedSymOperator::inverse_degree_times(std::span<const double> r, std::span<double> s) const {
    if (r.size() != n_ || s.size() != n_)
        throw DimensionError("inverse_degree_times: dimension mismatch");
    for (std::size_t i = 0; i < n_; ++i)
        if (!(degrees_[i] > 0.0))
            throw SingularDegreeError("inverse_degree_times: nonpositive degree at index " + std::to_string(i));
    for (std::size_t i = 0; i < n_; ++i) s[i] = r[i] / degrees_[i];
}

double BandedSymOperator::degree_consistency_error() const {
    double worst = 0.0;
    for (std::size_t i = 0; i < n_; ++i) {
        double row = bands_[0][i];
        for (int off = 1; off <= half_bandwidth_; ++off) {
            const auto& band = bands_[static_cast<std::size_t>(off)];
            if (i + static_cast<std::size_t>(off) < n_) row += band[i];
            if (i >= static_cast<std::size_t>(off)) row += band[i - static_cast<std::size_t>(off)];
        }
        const double scale = std::max(std::abs(degrees_[i]), 1.0);
        worst = std::max(worst, std::abs(row - degrees_[i]) / scale);
    }
    return worst;
}

BandedSymOperator bf_build(const Signal& g, const BfParams& params) {
    g.validate("bf_build guidance");
    params.validate();
    const std::size_t n = g.size();
    const int b = params.half_width;
    const int bw = std::min<int>(b, static_cast<int>(n) - 1);

    std::vector<std::vector<double>> bands(static_cast<std::size_t>(bw) + 1);
    bands[0].assign(n, 1.0); // both exponents vanish at i == j
    const double inv_two_sd2 = 1.0 / (2.0 * params.sigma_d * params.sigma_d);
    const double inv_two_sr2 = 1.0 / (2.0 * params.sigma_r * params.sigma_r);
    for (int off = 1; off <= bw; ++off) {
        auto& band = bands[static_cast<std::size_t>(off)];
        band.resize(n - static_cast<std::size_t>(off));
        for (std::size_t i = 0; i < band.size(); ++i) {
            const std::size_t j = i + static_cast<std::size_t>(off);
            const double dp = g.positions[j] - g.positions[i];
            const double dg = g.samples[j] - g.samples[i];
            band[i] = std::exp(-dp * dp * inv_two_sd2) * std::exp(-dg * dg * inv_two_sr2);
        }
    }

    std::vector<double> degrees(n);
    for (std::size_t i = 0; i < n; ++i) {
        double row = bands[0][i];
        for (int off = 1; off <= bw; ++off) {
            const auto& band = bands[static_cast<std::size_t>(off)];
            if (i + static_cast<std::size_t>(off) < n) row += band[i];
            if (i >= static_cast<std::size_t>(off)) row += band[i - static_cast<std::size_t>(off)];
        }
        degrees[i] = row;
    }
    return BandedSymOperator(n, bw, std::move(bands), std::move(degrees));
}

namespace {

// Symmetric (half-sample mirror) extension index: ..., g[1], g[0] | g[0..n-1] | g[n-1], ...
inline std::size_t mirror_fold(long idx, long n) {
    if (idx < 0) idx = -1 - idx;
    if (idx >= n) idx = 2 * n - 1 - idx;
    return static_cast<std::size_t>(idx);
}

struct WindowStats {
    std::vector<double> mean;     // indexed by k + rho, k in [-rho, n-1+rho]
    std::vector<double> variance; // population variance over the full window
};

WindowStats gf_window_stats(const std::vector<double>& g, int rho) {
    const long n = static_cast<long>(g.size());
    const long pad = 2 * rho;
    const long ext_len = n + 2 * pad;
    std::vector<double> prefix(static_cast<std::size_t>(ext_len) + 1, 0.0);
    std::vector<double> prefix_sq(static_cast<std::size_t>(ext_len) + 1, 0.0);
    for (long e = 0; e < ext_len; ++e) {
        const double v = g[mirror_fold(e - pad, n)];
        prefix[static_cast<std::size_t>(e) + 1] = prefix[static_cast<std::size_t>(e)] + v;
        prefix_sq[static_cast<std::size_t>(e) + 1] = prefix_sq[static_cast<std::size_t>(e)] + v * v;
    }
    const long window = 2 * rho + 1;
    const double inv_w = 1.0 / static_cast<double>(window);
    WindowStats stats;
    const long k_count = n + 2 * rho; // centers k in [-rho, n-1+rho]
    stats.mean.resize(static_cast<std::size_t>(k_count));
    stats.variance.resize(static_cast<std::size_t>(k_count));
    for (long k = -rho; k <= n - 1 + rho; ++k) {
        const long lo = k - rho + pad; // extended-array coordinates
        const double sum = prefix[static_cast<std::size_t>(lo + window)] - prefix[static_cast<std::size_t>(lo)];
        const double sum_sq =
            prefix_sq[static_cast<std::size_t>(lo + window)] - prefix_sq[static_cast<std::size_t>(lo)];
        const double mu = sum * inv_w;
        const std::size_t slot = static_cast<std::size_t>(k + rho);
        stats.mean[slot] = mu;
        stats.variance[slot] = std::max(0.0, sum_sq * inv_w - mu * mu);
    }
    return stats;
}

} // namespace

// The guided-filter transform matrix. Windows are kept at full size by
// mirroring the guidance at the signal ends and folding the out-of-range
// columns back in; this keeps W symmetric with every row summing to exactly 1
// (the interior rows coincide with the usual overlapping-window formula).
BandedSymOperator gf_build(const Signal& g, const GfParams& params) {
    g.validate("gf_build guidance");
    params.validate();
    const long n = static_cast<long>(g.size());
    const int rho = params.rho;
    if (n < 2L * rho + 1)
        throw SpecError("gf_build: signal shorter than one full window (need n >= 2*rho+1)");

    const auto stats = gf_window_stats(g.samples, rho);
    const long bw = 2 * rho;
    const double inv_w2 = 1.0 / (static_cast<double>(2 * rho + 1) * static_cast<double>(2 * rho + 1));

    auto g_ext = [&](long e) { return g.samples[mirror_fold(e, n)]; };

    // Contribution of all windows covering original row i and extended column e.
    auto pair_sum = [&](long i, long e) {
        double acc = 0.0;
        const long k_lo = std::max(i, e) - rho;
        const long k_hi = std::min(i, e) + rho;
        const double gi = g.samples[static_cast<std::size_t>(i)];
        const double ge = g_ext(e);
        for (long k = k_lo; k <= k_hi; ++k) {
            const std::size_t slot = static_cast<std::size_t>(k + rho);
            const double mu = stats.mean[slot];
            acc += inv_w2 * (1.0 + (gi - mu) * (ge - mu) / (stats.variance[slot] + params.epsilon));
        }
        return acc;
    };

    std::vector<std::vector<double>> bands(static_cast<std::size_t>(bw) + 1);
    for (long off = 0; off <= bw; ++off) {
        auto& band = bands[static_cast<std::size_t>(off)];
        band.resize(static_cast<std::size_t>(n - off));
        for (long i = 0; i + off < n; ++i) {
            const long j = i + off;
            double w = pair_sum(i, j);
            // Folded contributions from the mirrored columns.
            const long left = -1 - j;
            if (left >= i - bw) w += pair_sum(i, left);
            const long right = 2 * n - 1 - j;
            if (right <= i + bw) w += pair_sum(i, right);
            band[static_cast<std::size_t>(i)] = w;
        }
    }

    std::vector<double> degrees(static_cast<std::size_t>(n), 1.0); // D is the identity
    return BandedSymOperator(static_cast<std::size_t>(n), static_cast<int>(bw), std::move(bands),
                             std::move(degrees));
}

Signal apply_weight(const BandedSymOperator& op, const Signal& x) {
    x.validate("apply_weight");
    if (x.size() != op.size()) throw DimensionError("apply_weight: dimension mismatch");
    Signal y;
    y.positions = x.positions;
    y.samples.resize(x.size());
    op.weight_times(x.samples, y.samples);
    return y;
}

Signal apply_laplacian(const BandedSymOperator& op, const Signal& x) {
    x.validate("apply_laplacian");
    if (x.size() != op.size()) throw DimensionError("apply_laplacian: dimension mismatch");
    Signal y;
    y.positions = x.positions;
    y.samples.resize(x.size());
    op.laplacian_times(x.samples, y.samples);
    return y;
}

Signal apply_inverse_degree(const BandedSymOperator& op, const Signal& r) {
    r.validate("apply_inverse_degree");
    if (r.size() != op.size()) throw DimensionError("apply_inverse_degree: dimension mismatch");
    Signal s;
    s.positions = r.positions;
    s.samples.resize(r.size());
    op.inverse_degree_times(r.samples, s.samples);
    return s;
}

std::vector<std::vector<double>> dense_oracle(const BandedSymOperator& op) {
    if (op.size() > 512)
        throw SizeError("dense_oracle: refusing to materialize n > 512");
    const std::size_t n = op.size();
    std::vector<std::vector<double>> mat(n, std::vector<double>(n, 0.0));
    for (int off = 0; off <= op.half_bandwidth(); ++off) {
        const auto band = op.band(off);
        for (std::size_t i = 0; i < band.size(); ++i) {
            mat[i][i + static_cast<std::size_t>(off)] = band[i];
            mat[i + static_cast<std::size_t>(off)][i] = band[i];
        }
    }
    return mat;
}

void dump_operator(const BandedSymOperator& op, const std::string& weights_path,
                   const std::string& degrees_path) {
    std::ofstream wf(weights_path, std::ios::binary);
    if (!wf) throw IoError("dump_operator: cannot open " + weights_path);
    wf << "i,j,w\n";
    char buf[64];
    for (int off = 0; off <= op.half_bandwidth(); ++off) {
        const auto band = op.band(off);
        for (std::size_t i = 0; i < band.size(); ++i) {
            std::snprintf(buf, sizeof(buf), "%.17g", band[i]);
            wf << i << ',' << i + static_cast<std::size_t>(off) << ',' << buf << '\n';
        }
    }
    std::ofstream df(degrees_path, std::ios::binary);
    if (!df) throw IoError("dump_operator: cannot open " + degrees_path);
    df << "i,d\n";
    for (std::size_t i = 0; i < op.size(); ++i) {
        std::snprintf(buf, sizeof(buf), "%.17g", op.degree(i));
        df << i << ',' << buf << '\n';
    }
}

} // namespace cgsmooth
