#ifndef CGSMOOTH_OPERATORS_HPP
#define CGSMOOTH_OPERATORS_HPP

#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include "cgsmooth/signal.hpp"

namespace cgsmooth {

/// Bilateral filter parameters: spatial scale, range scale and the graph
/// neighborhood radius b (the weight matrix has 2b+1 diagonals).
struct BfParams {
    double sigma_d = 0.5;
    double sigma_r = 0.1;
    int half_width = 2;

    void validate() const;
};

/// Guided filter parameters: regularization and mean-filter radius rho.
/// The induced weight matrix has half-bandwidth 2*rho.
struct GfParams {
    double epsilon = 1e-3;
    int rho = 1;

    void validate() const;
};

/// Symmetric banded weight matrix W with per-vertex degrees D. Only one
/// triangle is stored: band(off)[i] holds w_{i,i+off} for 0 <= off <= b.
class BandedSymOperator {
public:
    BandedSymOperator(std::size_t n, int half_bandwidth,
                      std::vector<std::vector<double>> bands,
                      std::vector<double> degrees);

    std::size_t size() const { return n_; }
    int half_bandwidth() const { return half_bandwidth_; }

    double weight(std::size_t i, std::size_t j) const;
    double degree(std::size_t i) const { return degrees_[i]; }
    const std::vector<double>& degrees() const { return degrees_; }
    std::span<const double> band(int off) const { return bands_[static_cast<std::size_t>(off)]; }

    /// y = W x over the band.
    void weight_times(std::span<const double> x, std::span<double> y) const;
    /// y = D x - W x.
    void laplacian_times(std::span<const double> x, std::span<double> y) const;
    /// s = D^{-1} r; throws SingularDegreeError if any degree is <= 0.
    void inverse_degree_times(std::span<const double> r, std::span<double> s) const;

    /// Largest rel. deviation of stored degrees from recomputed band row sums.
    double degree_consistency_error() const;

private:
    std::size_t n_;
    int half_bandwidth_;
    std::vector<std::vector<double>> bands_; // bands_[off] has n - off entries
    std::vector<double> degrees_;
};

BandedSymOperator bf_build(const Signal& g, const BfParams& params);
BandedSymOperator gf_build(const Signal& g, const GfParams& params);

// Signal-level wrappers (positions copied from the input).
Signal apply_weight(const BandedSymOperator& op, const Signal& x);
Signal apply_laplacian(const BandedSymOperator& op, const Signal& x);
Signal apply_inverse_degree(const BandedSymOperator& op, const Signal& r);

/// Full n x n expansion of the stored triangle (exactly symmetric). Guarded
/// at n <= 512; intended for tests and debugging only.
std::vector<std::vector<double>> dense_oracle(const BandedSymOperator& op);

/// Debug dump: stored triangle as `i,j,w` rows and degrees as `i,d` rows.
void dump_operator(const BandedSymOperator& op, const std::string& weights_path,
                   const std::string& degrees_path);

} // namespace cgsmooth

#endif
