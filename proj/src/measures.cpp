#include "segrescope/measures.hpp"

#include <cmath>
#include <string>

namespace segrescope {

double pure_measure(const PureState& state, const MeasureSpec& spec) {
    if (spec.normalization <= 0.0) {
        throw DomainError("normalization constant must be positive");
    }
    if (state.shape.factor_count() < 2) {
        throw ShapeError("measures need at least two factors");
    }
    if (!state.is_normalized()) {
        throw NormalizationError("state norm is " + std::to_string(state.norm()));
    }
    const double s = quadric_sum_sq(state.amplitudes, state.shape,
                                    quadric_kind_of(spec.kind));
    return std::sqrt(spec.normalization * s);
}

double wootters_pure(const PureState& state) {
    if (state.shape.dims != std::vector<int>{2, 2}) {
        throw ShapeError("Wootters' formula needs shape (2,2)");
    }
    if (!state.is_normalized()) {
        throw NormalizationError("state norm is " + std::to_string(state.norm()));
    }
    const auto& a = state.amplitudes;
    return 2.0 * std::abs(a[0] * a[3] - a[1] * a[2]);
}

} // namespace segrescope
