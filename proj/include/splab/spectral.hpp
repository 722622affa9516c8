#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "splab/digraph.hpp"
#include "splab/matrix.hpp"

namespace splab {

struct SpectralReport {
    std::uint32_t n = 0;
    std::uint64_t q = 0;
    std::uint64_t N = 0;      // vertex count q^{2n^2}
    std::uint64_t d = 0;      // degree q^{n^2}
    double lambda2 = 0.0;     // estimated lambda(G) = sqrt(lambda_2 of MM^t)
    double residual = 0.0;
    std::uint64_t iterations = 0;
    double c_measured = 0.0;  // lambda2 / q^{n^2 - 1/2}
    std::string method;
    bool connected = false;
    bool converged = false;
};

enum class SpectralMethod { DenseExact, DeflatedPower };
SpectralMethod parse_method(const std::string& name);  // "dense-exact" | "deflated-power"
std::string method_name(SpectralMethod m);

struct SpectralOptions {
    double tol = 1e-9;             // power-iteration residual target
    std::uint64_t max_iter = 3000;
    std::uint64_t seed = 1;
    unsigned threads = 0;          // 0 = default_threads()
    std::uint64_t dense_max_n = 10000;
    bool check_connectivity = true;
};

// Matrix-free action of the adjacency matrix and its transpose, table-driven.
// Vectors are indexed by packed vertices a*Q + c.
class SpectralEngine {
  public:
    explicit SpectralEngine(const MatRing& ring);

    std::uint64_t vertex_count() const { return N_; }
    std::uint64_t degree() const { return Q_; }

    void apply_M(const double* x, double* y, unsigned threads) const;
    void apply_Mt(const double* x, double* y, unsigned threads) const;

    SpectralReport dense_exact(const SpectralOptions& opts) const;
    SpectralReport deflated_power(const SpectralOptions& opts) const;

  private:
    const MatRing* ring_;
    std::uint64_t Q_, N_;
    std::vector<std::uint32_t> mul_, sub_;  // own copies when ring lacks tables
    const std::uint32_t* mul_tab_;
    const std::uint32_t* sub_tab_;
};

SpectralReport second_eigenvalue(const MatRing& ring, SpectralMethod method,
                                 const SpectralOptions& opts = {});

}  // namespace splab
