#pragma once

#include "segrescope/segre.hpp"
#include "segrescope/states.hpp"

namespace segrescope {

enum class MeasureKind { Concurrence, FMeasure };

// Concurrence evaluates the Segre quadrics, the F measure the full
// permutation family. `normalization` is the multiplicative constant under
// the square root; 1 calibrates the two-qubit value to Wootters' formula.
struct MeasureSpec {
    MeasureKind kind = MeasureKind::Concurrence;
    double normalization = 1.0;
};

inline QuadricKind quadric_kind_of(MeasureKind kind) {
    return kind == MeasureKind::Concurrence ? QuadricKind::Segre : QuadricKind::Full;
}

// sqrt(normalization · Σ |quadric values|²) over the ordered-tuple
// multiplicity convention; vanishes exactly on product states
// (Concurrence kind). Requires a normalized state on m ≥ 2 factors.
double pure_measure(const PureState& state, const MeasureSpec& spec);

// Two-qubit closed form 2|α₁₁α₂₂ − α₁₂α₂₁|; agrees with pure_measure at
// Concurrence kind and normalization 1.
double wootters_pure(const PureState& state);

} // namespace segrescope
