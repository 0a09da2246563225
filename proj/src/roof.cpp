#include "segrescope/roof.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <string>

#include "segrescope/rng.hpp"
#include "segrescope/segre.hpp"

namespace segrescope {

namespace {

constexpr double kRankCutoff = 1e-12;   // relative eigenvalue cutoff
constexpr double kMemberDrop = 1e-14;   // probability below which members drop
constexpr long long kRoofTotalGuard = 64;
constexpr double kInitialStep = 0.5;
constexpr double kMinStep = 1e-8;
constexpr int kRejectionWindow = 20;

struct Spectral {
    Eigen::VectorXd eigenvalues;   // descending, above cutoff
    Eigen::MatrixXcd eigenvectors; // matching columns
    int rank = 0;
};

Spectral spectral_decomposition(const DensityMatrix& rho) {
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(rho.entries);
    const Eigen::VectorXd& evs = es.eigenvalues(); // ascending
    const double cutoff = kRankCutoff * evs[evs.size() - 1];
    Spectral out;
    for (Eigen::Index a = evs.size() - 1; a >= 0; --a) {
        if (evs[a] > cutoff) ++out.rank;
    }
    out.eigenvalues.resize(out.rank);
    out.eigenvectors.resize(rho.entries.rows(), out.rank);
    for (int i = 0; i < out.rank; ++i) {
        const Eigen::Index a = evs.size() - 1 - i;
        out.eigenvalues[i] = evs[a];
        out.eigenvectors.col(i) = es.eigenvectors().col(a);
    }
    return out;
}

} // namespace

double ensemble_average(const Ensemble& ensemble, const MeasureSpec& spec) {
    double total = 0.0;
    for (const Ensemble::Member& m : ensemble.members) {
        total += m.p * pure_measure(m.state, spec);
    }
    return total;
}

Ensemble decomposition_from_isometry(const DensityMatrix& rho,
                                     const Eigen::MatrixXcd& isometry) {
    const Spectral sp = spectral_decomposition(rho);
    if (isometry.cols() != sp.rank) {
        throw RankError("isometry has " + std::to_string(isometry.cols()) +
                        " columns but rho has numerical rank " +
                        std::to_string(sp.rank));
    }
    if (isometry.rows() < isometry.cols()) {
        throw IsometryError("isometry has fewer rows than columns");
    }
    const double dev = (isometry.adjoint() * isometry -
                        Eigen::MatrixXcd::Identity(sp.rank, sp.rank))
                           .cwiseAbs()
                           .maxCoeff();
    if (dev > 1e-10) {
        throw IsometryError("columns are not orthonormal (deviation " +
                            std::to_string(dev) + ")");
    }

    // B's columns are √λ_a e_a; member i is the i-th row of U·Bᵀ.
    Eigen::MatrixXcd b = sp.eigenvectors;
    for (int a = 0; a < sp.rank; ++a) b.col(a) *= std::sqrt(sp.eigenvalues[a]);

    std::vector<Ensemble::Member> members;
    for (Eigen::Index i = 0; i < isometry.rows(); ++i) {
        Eigen::VectorXcd w = b * isometry.row(i).transpose();
        const double p = w.squaredNorm();
        if (p < kMemberDrop) continue;
        members.push_back(Ensemble::Member{p, PureState{rho.shape, w / std::sqrt(p)}});
    }
    return make_ensemble(std::move(members));
}

namespace {

// Roof objective on subnormalized members: the quadrics are degree 2 in the
// amplitudes, so sqrt(𝒩_c · Σ|Q(w)|²) = p · pure_measure(w/√p) directly.
struct Objective {
    const MeasureSpec* spec;
    const Eigen::MatrixXcd* b; // 𝒩 × R, columns √λ_a e_a
    QuadricEvaluator evaluator;
    mutable Eigen::VectorXcd workspace;

    Objective(const SystemShape& shape, const MeasureSpec& s, const Eigen::MatrixXcd& bm)
        : spec(&s), b(&bm), evaluator(shape, quadric_kind_of(s.kind)),
          workspace(shape.total()) {}

    double term(const Eigen::MatrixXcd& u, Eigen::Index row) const {
        workspace.noalias() = (*b) * u.row(row).transpose();
        if (workspace.squaredNorm() < kMemberDrop) return 0.0;
        return std::sqrt(spec->normalization * evaluator.sum_sq(workspace));
    }

    double total(const Eigen::MatrixXcd& u, std::vector<double>& terms) const {
        terms.resize(u.rows());
        double sum = 0.0;
        for (Eigen::Index i = 0; i < u.rows(); ++i) {
            terms[i] = term(u, i);
            sum += terms[i];
        }
        return sum;
    }
};

struct SearchOutcome {
    Eigen::MatrixXcd u;
    double value = std::numeric_limits<double>::infinity();
    int proposals = 0;
};

// Derivative-free descent over left rotations of the isometry. A Givens
// rotation on a member pair changes only those two rows, so the objective
// is delta-updated.
SearchOutcome local_search(Eigen::MatrixXcd u, const Objective& obj,
                           int max_iters, rng::Gaussian& g) {
    SearchOutcome out;
    std::vector<double> terms;
    double value = obj.total(u, terms);
    const Eigen::Index rows = u.rows();
    double step = kInitialStep;
    int rejects = 0;
    int proposals = 0;

    Eigen::RowVectorXcd old_i, old_j;
    while (proposals < max_iters && step >= kMinStep && rows > 1) {
        const Eigen::Index i = static_cast<Eigen::Index>(g.below(rows));
        Eigen::Index j = static_cast<Eigen::Index>(g.below(rows - 1));
        if (j >= i) ++j;
        const double theta = step * g.uniform_half_open();
        const double phi = 2.0 * 3.141592653589793238462643 * g.uniform_half_open();
        const std::complex<double> phase(std::cos(phi), std::sin(phi));
        const double c = std::cos(theta);
        old_i = u.row(i);
        old_j = u.row(j);
        ++proposals;

        // Probe the rotation in both senses; the objective is locally
        // cone-like near member-measure zeros, so one sense usually helps.
        bool accepted = false;
        for (const double s : {std::sin(theta), -std::sin(theta)}) {
            u.row(i) = c * old_i - phase * s * old_j;
            u.row(j) = std::conj(phase) * s * old_i + c * old_j;
            const double term_i = obj.term(u, i);
            const double term_j = obj.term(u, j);
            const double candidate = value - terms[i] - terms[j] + term_i + term_j;
            if (candidate < value) {
                value = candidate;
                terms[i] = term_i;
                terms[j] = term_j;
                accepted = true;
                break;
            }
        }
        if (accepted) {
            rejects = 0;
        } else {
            u.row(i) = old_i;
            u.row(j) = old_j;
            if (++rejects >= kRejectionWindow) {
                step *= 0.5;
                rejects = 0;
            }
        }
    }

    out.u = std::move(u);
    out.value = value;
    out.proposals = proposals;
    return out;
}

Eigen::MatrixXcd random_isometry(Eigen::Index rows, Eigen::Index cols,
                                 rng::Gaussian& g) {
    Eigen::MatrixXcd a(rows, cols);
    for (Eigen::Index r = 0; r < rows; ++r)
        for (Eigen::Index c = 0; c < cols; ++c) a(r, c) = g.next_complex();
    Eigen::HouseholderQR<Eigen::MatrixXcd> qr(a);
    return qr.householderQ() * Eigen::MatrixXcd::Identity(rows, cols);
}

} // namespace

RoofResult convex_roof_upper_bound(const DensityMatrix& rho, const MeasureSpec& spec,
                                   int decomposition_length, int restarts,
                                   int max_iters, std::uint64_t seed) {
    if (restarts < 1) throw DomainError("restarts must be at least 1");
    if (max_iters < 1) throw DomainError("max_iters must be at least 1");
    const long long total = rho.shape.total();
    if (total > kRoofTotalGuard) {
        throw ResourceError("total dimension " + std::to_string(total) +
                            " exceeds the roof guard of " +
                            std::to_string(kRoofTotalGuard));
    }

    const Spectral sp = spectral_decomposition(rho);
    const int rank = sp.rank;
    if (decomposition_length < rank) {
        throw DomainError("decomposition length " +
                          std::to_string(decomposition_length) +
                          " is below the rank " + std::to_string(rank));
    }
    if (static_cast<long long>(decomposition_length) > total * total) {
        throw DomainError("decomposition length " +
                          std::to_string(decomposition_length) +
                          " exceeds the search cap of " + std::to_string(total * total));
    }

    Eigen::MatrixXcd b = sp.eigenvectors;
    for (int a = 0; a < rank; ++a) b.col(a) *= std::sqrt(sp.eigenvalues[a]);
    const Objective obj(rho.shape, spec, b);

    RoofResult result;
    Eigen::MatrixXcd incumbent;

    for (int level = rank; level <= decomposition_length; ++level) {
        Eigen::MatrixXcd best_u;
        double best_value = std::numeric_limits<double>::infinity();
        for (int restart = 0; restart < restarts; ++restart) {
            rng::Gaussian g(rng::derive_seed(
                seed, static_cast<std::uint64_t>(level) * 1000003u +
                          static_cast<std::uint64_t>(restart)));
            Eigen::MatrixXcd init;
            if (restart == 0 && level == rank) {
                init = Eigen::MatrixXcd::Identity(rank, rank); // spectral ensemble
            } else if (restart == 0) {
                init = Eigen::MatrixXcd::Zero(level, rank);
                init.topRows(level - 1) = incumbent;
            } else {
                init = random_isometry(level, rank, g);
            }
            SearchOutcome outcome = local_search(std::move(init), obj, max_iters, g);
            result.iterations += outcome.proposals;
            result.history.push_back(outcome.value);
            ++result.restarts_used;
            if (outcome.value < best_value) {
                best_value = outcome.value;
                best_u = std::move(outcome.u);
            }
        }
        incumbent = std::move(best_u);
    }

    result.best_ensemble = decomposition_from_isometry(rho, incumbent);
    // Exact re-evaluation; the delta-updated search value may carry rounding
    // drift of order 1e-13.
    result.value = ensemble_average(result.best_ensemble, spec);
    return result;
}

double wootters_mixed(const DensityMatrix& rho) {
    if (rho.shape.dims != std::vector<int>{2, 2}) {
        throw ShapeError("Wootters' formula needs shape (2,2)");
    }
    Eigen::Matrix4cd yy = Eigen::Matrix4cd::Zero();
    yy(0, 3) = -1.0;
    yy(1, 2) = 1.0;
    yy(2, 1) = 1.0;
    yy(3, 0) = -1.0;
    const Eigen::Matrix4cd tilde = yy * rho.entries.conjugate() * yy;
    const Eigen::Matrix4cd product = rho.entries * tilde;
    Eigen::ComplexEigenSolver<Eigen::Matrix4cd> es(product, false);
    std::array<double, 4> roots{};
    for (int i = 0; i < 4; ++i) {
        roots[static_cast<std::size_t>(i)] =
            std::sqrt(std::max(0.0, es.eigenvalues()[i].real()));
    }
    std::sort(roots.begin(), roots.end(), std::greater<>());
    return std::max(0.0, roots[0] - roots[1] - roots[2] - roots[3]);
}

} // namespace segrescope
