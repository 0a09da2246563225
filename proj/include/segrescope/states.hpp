#pragma once

#include <complex>
#include <span>
#include <vector>

#include <Eigen/Dense>

#include "segrescope/errors.hpp"

namespace segrescope {

// Shared numerical tolerances for state validity checks.
inline constexpr double kNormTol = 1e-10;       // |‖α‖₂ − 1|
inline constexpr double kHermitianTol = 1e-10;  // entrywise
inline constexpr double kPsdFloor = -1e-9;      // eigenvalue floor
inline constexpr double kTraceTol = 1e-10;      // |Tr ρ − 1|
inline constexpr double kEnsembleProbTol = 1e-10;
inline constexpr double kEnsembleMixTol = 1e-8; // entrywise vs Σ pᵢ|ψᵢ⟩⟨ψᵢ|

// Largest total dimension a shape may declare. Keeps malformed inputs from
// requesting absurd allocations; individual algorithms impose tighter guards.
inline constexpr long long kMaxTotalDim = 1 << 22;

// Factor dimensions (N₁,…,N_m) of a multipartite system, every N_j ≥ 2.
struct SystemShape {
    std::vector<int> dims;

    int factor_count() const { return static_cast<int>(dims.size()); }

    // Product of all factor dimensions.
    int total() const;

    // (N₁−1,…,N_m−1): the per-factor projective dimensions.
    std::vector<int> nbar() const;

    bool operator==(const SystemShape&) const = default;
};

// Validates dims (m ≥ 1, every N_j ≥ 2, product within kMaxTotalDim).
SystemShape make_shape(std::vector<int> dims);

// Flattening convention, fixed globally: row-major with the first subsystem
// index slowest. idx is 1-based; the returned offset is 0-based.
int multi_index_to_offset(const SystemShape& shape, std::span<const int> idx);
std::vector<int> offset_to_multi_index(const SystemShape& shape, int offset);

// Pure state: complex amplitudes α over a shape, flattened as above.
struct PureState {
    SystemShape shape;
    Eigen::VectorXcd amplitudes;

    double norm() const { return amplitudes.norm(); }
    bool is_normalized(double tol = kNormTol) const {
        return std::abs(norm() - 1.0) <= tol;
    }
};

// Validates the amplitude length against the shape.
PureState make_pure_state(SystemShape shape, Eigen::VectorXcd amplitudes);

// Mixed state carrier; Hermitian, PSD, trace one when checked.
struct DensityMatrix {
    SystemShape shape;
    Eigen::MatrixXcd entries;
};

// Validates Hermiticity (kHermitianTol), the PSD floor (kPsdFloor) and the
// trace (kTraceTol); throws ShapeError / DomainError on violation.
DensityMatrix make_density_matrix(SystemShape shape, Eigen::MatrixXcd entries);

// Weighted pure-state decomposition; all members share one shape.
struct Ensemble {
    struct Member {
        double p = 0.0;
        PureState state;
    };
    std::vector<Member> members;

    DensityMatrix mixture() const;
};

// Validates probabilities (nonnegative, sum 1 within kEnsembleProbTol) and
// that all members share one shape.
Ensemble make_ensemble(std::vector<Ensemble::Member> members);

// |ψ⟩⟨ψ| of a normalized pure state; throws NormalizationError otherwise.
DensityMatrix density_from_pure(const PureState& state);

// Partial trace over every factor except `keep` (1-based axis).
DensityMatrix reduced_density(const PureState& state, int keep);

} // namespace segrescope
