#pragma once

#include <cstdint>
#include <vector>

#include <Eigen/Dense>

#include "segrescope/measures.hpp"
#include "segrescope/states.hpp"

namespace segrescope {

// Outcome of the decomposition search. `value` is an upper bound on the
// convex roof by construction: every evaluated candidate is a valid
// decomposition of rho.
struct RoofResult {
    double value = 0.0;
    Ensemble best_ensemble;
    int restarts_used = 0;
    int iterations = 0;            // proposals evaluated in total
    std::vector<double> history;   // best value per restart, in search order
};

// Σ pᵢ · pure_measure(ψᵢ, spec).
double ensemble_average(const Ensemble& ensemble, const MeasureSpec& spec);

// The decomposition freedom: with rho = Σ λ_a|e_a⟩⟨e_a| (eigenvalues
// descending, rank R = #{λ > 1e-12·λ_max}) and U an L×R matrix with
// orthonormal columns, the subnormalized vectors wᵢ = Σ_a U_{ia}√λ_a|e_a⟩
// give pᵢ = ⟨wᵢ|wᵢ⟩ and ψᵢ = wᵢ/√pᵢ. Members below p = 1e-14 are dropped.
Ensemble decomposition_from_isometry(const DensityMatrix& rho,
                                     const Eigen::MatrixXcd& isometry);

// Minimizes ensemble_average over isometries by derivative-free local
// search: random Givens rotations mixing member pairs, step size halved
// after 20 consecutive rejections, stopped below step 1e-8. Levels
// L' = rank..L run in sequence, each warm-started from the previous
// incumbent (zero-padded), so the value is non-increasing in L; level rank
// starts from the spectral decomposition, so the value never exceeds the
// spectral-ensemble average. Guarded to 𝒩 ≤ 64.
RoofResult convex_roof_upper_bound(const DensityMatrix& rho, const MeasureSpec& spec,
                                   int decomposition_length, int restarts = 20,
                                   int max_iters = 6000, std::uint64_t seed = 0);

// Two-qubit closed form: max(0, √μ₁−√μ₂−√μ₃−√μ₄) with μᵢ the decreasing
// eigenvalues of ρ·(σ_y⊗σ_y)ρ*(σ_y⊗σ_y).
double wootters_mixed(const DensityMatrix& rho);

} // namespace segrescope
