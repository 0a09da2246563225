#pragma once

#include <vector>

#include <Eigen/Dense>

#include "segrescope/states.hpp"

namespace segrescope {

// Which family of degree-2 forms to evaluate.
//   Segre: single-position swaps only; their common zero locus is the set of
//          decomposable (product) states.
//   Full:  swaps over every nonempty proper position subset; contains the
//          Segre family.
enum class QuadricKind { Segre, Full };

// A binomial quadric α_K·α_L − α_{K'}·α_{L'} where K' (resp. L') is K
// (resp. L) with the entries at the positions in `swap_set` replaced by
// L's (resp. K's). Multi-indices and positions are 1-based.
struct Quadric {
    std::vector<int> left;      // K
    std::vector<int> right;     // L
    std::vector<int> swap_set;  // S, sorted, nonempty proper subset of 1..m

    std::complex<double> evaluate(const PureState& state) const;
};

struct QuadricSet {
    SystemShape shape;
    QuadricKind kind = QuadricKind::Segre;
    std::vector<Quadric> items;
};

// Canonical representatives of the swap-set families, deduplicated modulo
// S ~ complement(S): a swap on S and a swap on its complement produce the
// same pair of monomials. For Segre these are the single positions (one
// class in total when m = 2); for Full, every nonempty proper subset class.
std::vector<std::vector<int>> swap_classes(int factor_count, QuadricKind kind);

// The product state with amplitudes α_{k₁…k_m} = Π_j (factor_j)_{k_j}.
PureState segre_embed(const std::vector<Eigen::VectorXcd>& factors);

// Enumerates the distinct quadrics of the given kind. Two (K, L, S) triples
// describe the same quadric when they share the same unordered pair of
// monomials up to overall sign (this covers K↔L exchange, the swapped vs
// unswapped pair, and S vs its complement); one canonical representative is
// kept per class, in a deterministic order.
QuadricSet generate_quadrics(const SystemShape& shape, QuadricKind kind);

// Evaluates Σ over swap classes and over all ordered multi-index pairs
// (K, L) of |quadric value|², with compensated summation — the
// ordered-tuple multiplicity convention shared with the entanglement
// measures. Index tables are built once at construction so repeated
// evaluation (the convex-roof inner loop) stays allocation-free.
class QuadricEvaluator {
public:
    QuadricEvaluator(SystemShape shape, QuadricKind kind);

    // Amplitudes need not be normalized.
    double sum_sq(const Eigen::VectorXcd& amplitudes) const;

    const SystemShape& shape() const { return shape_; }

private:
    SystemShape shape_;
    int total_ = 0;
    std::vector<int> strides_;
    std::vector<int> index_table_;           // total × m, 1-based entries
    std::vector<std::vector<int>> classes0_; // swap classes, 0-based positions
};

// One-shot form of the above.
double quadric_sum_sq(const Eigen::VectorXcd& amplitudes, const SystemShape& shape,
                      QuadricKind kind);

// sqrt of quadric_sum_sq on a normalized state; zero exactly on the
// decomposable states (Segre kind).
double separability_residual(const PureState& state, QuadricKind kind);

bool is_separable(const PureState& state, double tol = 1e-8);

// The (N₁⋯N_l) × (N_{l+1}⋯N_m) matrix whose entry (row, col) is the
// amplitude at flattened offset row·cols + col; rank 1 exactly when the
// state is a product across the cut after position l.
Eigen::MatrixXcd partition_reshape(const PureState& state, int split);

} // namespace segrescope
