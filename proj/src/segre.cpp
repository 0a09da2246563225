#include "segrescope/segre.hpp"

#include <algorithm>
#include <map>
#include <string>
#include <utility>

namespace segrescope {

namespace {

// Compensated (Kahan) accumulator; keeps the tuple sums deterministic to
// well below the contract tolerances regardless of magnitude spread.
struct KahanAccumulator {
    double sum = 0.0;
    double carry = 0.0;

    void add(double x) {
        const double y = x - carry;
        const double t = sum + y;
        carry = (t - sum) - y;
        sum = t;
    }
};

std::vector<int> strides_of(const SystemShape& shape) {
    const int m = shape.factor_count();
    std::vector<int> s(m, 1);
    for (int j = m - 2; j >= 0; --j) s[j] = s[j + 1] * shape.dims[j + 1];
    return s;
}

// Offset displacement of replacing K's entries by L's on the positions of
// `swap_set` (0-based positions here).
int swap_delta(const std::vector<int>& k_idx, const std::vector<int>& l_idx,
               const std::vector<int>& swap_set0, const std::vector<int>& strides) {
    int delta = 0;
    for (int pos : swap_set0) delta += (l_idx[pos] - k_idx[pos]) * strides[pos];
    return delta;
}

} // namespace

std::complex<double> Quadric::evaluate(const PureState& state) const {
    const SystemShape& shape = state.shape;
    const int off_k = multi_index_to_offset(shape, left);
    const int off_l = multi_index_to_offset(shape, right);
    std::vector<int> swapped_k = left;
    std::vector<int> swapped_l = right;
    for (int pos : swap_set) {
        swapped_k[pos - 1] = right[pos - 1];
        swapped_l[pos - 1] = left[pos - 1];
    }
    const int off_ks = multi_index_to_offset(shape, swapped_k);
    const int off_ls = multi_index_to_offset(shape, swapped_l);
    const auto& a = state.amplitudes;
    return a[off_k] * a[off_l] - a[off_ks] * a[off_ls];
}

std::vector<std::vector<int>> swap_classes(int factor_count, QuadricKind kind) {
    const int m = factor_count;
    if (m < 2) throw ShapeError("swap classes need at least two factors");
    std::vector<std::vector<int>> classes;
    if (kind == QuadricKind::Segre) {
        // Singletons; for m = 2 the two positions are complementary and
        // collapse to one class.
        const int count = (m == 2) ? 1 : m;
        for (int j = 1; j <= count; ++j) classes.push_back({j});
        return classes;
    }
    // Full: nonempty proper subsets modulo complement. Canonical side is the
    // smaller one; on a tie the one containing position 1.
    std::vector<unsigned> masks;
    const unsigned all = (1u << m) - 1u;
    for (unsigned mask = 1; mask < all; ++mask) {
        const int pc = __builtin_popcount(mask);
        const int pcc = m - pc;
        if (pc < pcc || (pc == pcc && (mask & 1u))) masks.push_back(mask);
    }
    std::sort(masks.begin(), masks.end(), [](unsigned a, unsigned b) {
        const int pa = __builtin_popcount(a), pb = __builtin_popcount(b);
        if (pa != pb) return pa < pb;
        return a < b;
    });
    for (unsigned mask : masks) {
        std::vector<int> s;
        for (int j = 0; j < m; ++j)
            if (mask & (1u << j)) s.push_back(j + 1);
        classes.push_back(std::move(s));
    }
    return classes;
}

PureState segre_embed(const std::vector<Eigen::VectorXcd>& factors) {
    if (factors.empty()) throw ShapeError("segre_embed needs at least one factor");
    std::vector<int> dims;
    dims.reserve(factors.size());
    for (std::size_t j = 0; j < factors.size(); ++j) {
        if (factors[j].norm() == 0.0) {
            throw DegenerateFactorError("factor " + std::to_string(j + 1) +
                                        " is zero");
        }
        dims.push_back(static_cast<int>(factors[j].size()));
    }
    SystemShape shape = make_shape(std::move(dims));
    // Iterated Kronecker product, first factor slowest.
    Eigen::VectorXcd amps(1);
    amps[0] = 1.0;
    for (const Eigen::VectorXcd& f : factors) {
        Eigen::VectorXcd next(amps.size() * f.size());
        for (Eigen::Index i = 0; i < amps.size(); ++i)
            for (Eigen::Index a = 0; a < f.size(); ++a)
                next[i * f.size() + a] = amps[i] * f[a];
        amps = std::move(next);
    }
    return PureState{std::move(shape), std::move(amps)};
}

QuadricSet generate_quadrics(const SystemShape& shape, QuadricKind kind) {
    const int m = shape.factor_count();
    if (m < 2) throw ShapeError("no nontrivial quadrics on a single factor");
    const int n = shape.total();
    const auto strides = strides_of(shape);

    std::vector<std::vector<int>> index_of(n);
    for (int off = 0; off < n; ++off) index_of[off] = offset_to_multi_index(shape, off);

    // A quadric is the difference of two monomials α_A·α_B; its identity (up
    // to sign) is the unordered pair of unordered offset pairs.
    using Monomial = std::pair<int, int>;
    using Key = std::pair<Monomial, Monomial>;
    std::map<Key, Quadric> seen;
    std::vector<Key> order;

    for (const std::vector<int>& s : swap_classes(m, kind)) {
        std::vector<int> s0(s.size());
        for (std::size_t i = 0; i < s.size(); ++i) s0[i] = s[i] - 1;
        for (int off_k = 0; off_k < n; ++off_k) {
            for (int off_l = 0; off_l < n; ++off_l) {
                const int delta = swap_delta(index_of[off_k], index_of[off_l], s0, strides);
                const Monomial plain{std::min(off_k, off_l), std::max(off_k, off_l)};
                const Monomial swapped{std::min(off_k + delta, off_l - delta),
                                       std::max(off_k + delta, off_l - delta)};
                if (plain == swapped) continue; // identically zero
                const Key key = plain < swapped ? Key{plain, swapped} : Key{swapped, plain};
                if (seen.emplace(key, Quadric{index_of[off_k], index_of[off_l], s}).second) {
                    order.push_back(key);
                }
            }
        }
    }

    QuadricSet set{shape, kind, {}};
    set.items.reserve(order.size());
    for (const Key& key : order) set.items.push_back(seen.at(key));
    return set;
}

QuadricEvaluator::QuadricEvaluator(SystemShape shape, QuadricKind kind)
    : shape_(std::move(shape)), total_(shape_.total()), strides_(strides_of(shape_)) {
    const int m = shape_.factor_count();
    if (m < 2) throw ShapeError("quadric sums need at least two factors");
    index_table_.resize(static_cast<std::size_t>(total_) * m);
    for (int off = 0; off < total_; ++off) {
        const std::vector<int> idx = offset_to_multi_index(shape_, off);
        for (int j = 0; j < m; ++j) index_table_[static_cast<std::size_t>(off) * m + j] = idx[j];
    }
    for (const std::vector<int>& s : swap_classes(m, kind)) {
        std::vector<int> s0(s.size());
        for (std::size_t i = 0; i < s.size(); ++i) s0[i] = s[i] - 1;
        classes0_.push_back(std::move(s0));
    }
}

double QuadricEvaluator::sum_sq(const Eigen::VectorXcd& amplitudes) const {
    if (amplitudes.size() != total_) {
        throw ShapeError("amplitude length does not match shape");
    }
    const int m = shape_.factor_count();
    const std::complex<double>* a = amplitudes.data();
    KahanAccumulator acc;
    for (const std::vector<int>& s0 : classes0_) {
        for (int off_k = 0; off_k < total_; ++off_k) {
            const int* idx_k = &index_table_[static_cast<std::size_t>(off_k) * m];
            for (int off_l = 0; off_l < total_; ++off_l) {
                const int* idx_l = &index_table_[static_cast<std::size_t>(off_l) * m];
                int delta = 0;
                for (int pos : s0) delta += (idx_l[pos] - idx_k[pos]) * strides_[pos];
                const std::complex<double> v =
                    a[off_k] * a[off_l] - a[off_k + delta] * a[off_l - delta];
                acc.add(std::norm(v));
            }
        }
    }
    return acc.sum;
}

double quadric_sum_sq(const Eigen::VectorXcd& amplitudes, const SystemShape& shape,
                      QuadricKind kind) {
    return QuadricEvaluator(shape, kind).sum_sq(amplitudes);
}

double separability_residual(const PureState& state, QuadricKind kind) {
    if (!state.is_normalized()) {
        throw NormalizationError("state norm is " + std::to_string(state.norm()));
    }
    return std::sqrt(quadric_sum_sq(state.amplitudes, state.shape, kind));
}

bool is_separable(const PureState& state, double tol) {
    if (tol <= 0.0) throw DomainError("separability tolerance must be positive");
    return separability_residual(state, QuadricKind::Segre) <= tol;
}

Eigen::MatrixXcd partition_reshape(const PureState& state, int split) {
    const int m = state.shape.factor_count();
    if (split < 1 || split >= m) {
        throw ShapeError("split " + std::to_string(split) +
                         " is not a proper cut of " + std::to_string(m) + " factors");
    }
    int rows = 1, cols = 1;
    for (int j = 0; j < split; ++j) rows *= state.shape.dims[j];
    for (int j = split; j < m; ++j) cols *= state.shape.dims[j];
    using RowMajorMap = Eigen::Map<const Eigen::Matrix<std::complex<double>, Eigen::Dynamic,
                                                       Eigen::Dynamic, Eigen::RowMajor>>;
    return RowMajorMap(state.amplitudes.data(), rows, cols);
}

} // namespace segrescope
