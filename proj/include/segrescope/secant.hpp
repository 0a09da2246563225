#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "segrescope/errors.hpp"
#include "segrescope/states.hpp"

namespace segrescope {

// Result of one (variety, k) secant-dimension query. Dimensions are
// projective; `computed_dim` is the numerical-rank answer from stacked
// tangent bases at k+1 generic points, maximized over independent trials.
struct SecantReport {
    SystemShape shape;
    std::string variety_kind = "SEGRE";
    int k = 0;
    int ambient_dim = 0;   // 𝒩 − 1
    int span_dim = 0;      // M′, dimension of the linear span of the variety
    int variety_dim = 0;   // d = Σ (N_j − 1)
    int expected_dim = 0;  // min(M′, (k+1)(d+1) − 1)
    int computed_dim = 0;
    int defect = 0;        // expected − computed
    bool fills = false;    // computed == ambient
    int trials = 0;
    std::uint64_t seed = 0;
    double rank_tol = 0.0;
    std::vector<int> trial_ranks;  // diagnostics: affine rank per trial
    bool rank_stable = true;       // all trials agreed before max-taking
};

// Thrown by least_filling_k when no k ≤ k_max fills the ambient space.
struct NotFilledError : Error {
    SecantReport last_report;
    NotFilledError(const std::string& msg, SecantReport report)
        : Error(msg), last_report(std::move(report)) {}
};

// Outcome of a rank-r alternating-least-squares fit.
struct RankEstimate {
    int r = 1;
    double residual = 0.0;  // ‖state − fit‖₂ / ‖state‖₂, best restart
    int iterations = 0;     // ALS cycles spent in the best restart
    int restarts = 0;
    bool converged = false; // residual change < stall_tol over the last 10 cycles
};

// min(M′, (k+1)(d+1) − 1); throws DomainError on negative input or M′ < d.
int expected_secant_dim(int d, int k, int m_prime);

// Spanning set of the affine tangent space of the Segre variety at the
// product of the given factors: the point itself plus, per factor j, each
// completion direction orthogonal to factor j (factors are normalized
// first; the completion is the trailing columns of a Householder QR).
// Column count 1 + Σ_j (N_j − 1); numerical rank d + 1 at generic points.
Eigen::MatrixXcd tangent_basis_at(const std::vector<Eigen::VectorXcd>& factors);

// Terracini-style sampling: stacks tangent bases at k+1 generic points
// (factor entries i.i.d. standard complex Gaussian per derived sub-seed),
// takes the numerical rank (singular values > rank_tol·σ_max) and reports
// the maximum over `trials` independent samples. Guarded to 𝒩 ≤ 4096.
SecantReport secant_dimension(const SystemShape& shape, int k, int trials = 3,
                              std::uint64_t seed = 0, double rank_tol = 1e-8);

// Smallest k ≤ k_max whose secant fills the ambient space; throws
// NotFilledError (carrying the last report) when none does.
int least_filling_k(const SystemShape& shape, int k_max, int trials = 3,
                    std::uint64_t seed = 0, double rank_tol = 1e-8);

// Best rank-r fit Σ_{i≤r} v₁⁽ⁱ⁾⊗⋯⊗v_m⁽ⁱ⁾ by cyclic alternating least
// squares over the factor blocks. Ranks are warm-started: each restart
// fits rank 1 first, then grows one column at a time, so the residual is
// non-increasing in r for a fixed seed policy. Factor norms are rebalanced
// each cycle and capped at 1e8 (border-rank blowup flags converged=false).
// Never throws on non-convergence; the best found is always returned.
RankEstimate best_rank_r(const PureState& state, int r, int restarts = 10,
                         int max_iters = 500, std::uint64_t seed = 0,
                         double stall_tol = 1e-10);

// True iff the best rank-(k+1) fit reaches relative residual ≤ tol. The
// certificate is one-sided: true exhibits a witness, false may merely be a
// fitting failure.
bool secant_membership(const PureState& state, int k, double tol,
                       int restarts = 10, int max_iters = 500,
                       std::uint64_t seed = 0, double stall_tol = 1e-10);

} // namespace segrescope
