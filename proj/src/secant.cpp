#include "segrescope/secant.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "segrescope/rng.hpp"

namespace segrescope {

namespace {

constexpr long long kSecantTotalGuard = 4096;
constexpr double kFactorNormCap = 1e8;
constexpr int kStallWindow = 10;

Eigen::VectorXcd random_unit_factor(rng::Gaussian& g, int n) {
    Eigen::VectorXcd v(n);
    do {
        for (int i = 0; i < n; ++i) v[i] = g.next_complex();
    } while (v.norm() == 0.0);
    return v / v.norm();
}

Eigen::VectorXcd kron_columns(const std::vector<Eigen::MatrixXcd>& factors,
                              const std::vector<int>& col) {
    Eigen::VectorXcd out(1);
    out[0] = 1.0;
    for (std::size_t j = 0; j < factors.size(); ++j) {
        const auto f = factors[j].col(col[j]);
        Eigen::VectorXcd next(out.size() * f.size());
        for (Eigen::Index i = 0; i < out.size(); ++i)
            for (Eigen::Index a = 0; a < f.size(); ++a)
                next[i * f.size() + a] = out[i] * f[a];
        out = std::move(next);
    }
    return out;
}

int numerical_rank(const Eigen::MatrixXcd& m, double rank_tol) {
    Eigen::BDCSVD<Eigen::MatrixXcd> svd(m);
    const auto& sv = svd.singularValues();
    if (sv.size() == 0 || sv[0] == 0.0) return 0;
    const double cut = rank_tol * sv[0];
    int rank = 0;
    while (rank < sv.size() && sv[rank] > cut) ++rank;
    return rank;
}

} // namespace

int expected_secant_dim(int d, int k, int m_prime) {
    if (d < 0 || k < 0 || m_prime < 0) {
        throw DomainError("secant dimension inputs must be nonnegative");
    }
    if (m_prime < d) {
        throw DomainError("span dimension M' cannot be below the variety dimension");
    }
    return std::min(m_prime, (k + 1) * (d + 1) - 1);
}

Eigen::MatrixXcd tangent_basis_at(const std::vector<Eigen::VectorXcd>& factors) {
    const int m = static_cast<int>(factors.size());
    if (m == 0) throw ShapeError("tangent basis needs at least one factor");
    std::vector<Eigen::VectorXcd> unit(m);
    long long total = 1;
    int cols = 1;
    for (int j = 0; j < m; ++j) {
        const double nrm = factors[j].norm();
        if (nrm == 0.0) {
            throw DegenerateFactorError("factor " + std::to_string(j + 1) + " is zero");
        }
        unit[j] = factors[j] / nrm;
        total *= factors[j].size();
        cols += static_cast<int>(factors[j].size()) - 1;
    }

    // Orthonormal completion of each unit factor: trailing Q columns of the
    // Householder QR of the single-column matrix [v].
    std::vector<Eigen::MatrixXcd> completion(m);
    for (int j = 0; j < m; ++j) {
        const Eigen::Index n = unit[j].size();
        Eigen::HouseholderQR<Eigen::MatrixXcd> qr(unit[j]);
        Eigen::MatrixXcd q = qr.householderQ() * Eigen::MatrixXcd::Identity(n, n);
        completion[j] = q.rightCols(n - 1);
    }

    std::vector<Eigen::MatrixXcd> point(m);
    for (int j = 0; j < m; ++j) point[j] = unit[j];

    Eigen::MatrixXcd basis(total, cols);
    std::vector<int> col_pick(m, 0);
    basis.col(0) = kron_columns(point, col_pick);
    int next = 1;
    for (int j = 0; j < m; ++j) {
        std::vector<Eigen::MatrixXcd> mixed = point;
        mixed[j] = completion[j];
        for (int w = 0; w < completion[j].cols(); ++w) {
            col_pick[j] = w;
            basis.col(next++) = kron_columns(mixed, col_pick);
        }
        col_pick[j] = 0;
    }
    return basis;
}

SecantReport secant_dimension(const SystemShape& shape, int k, int trials,
                              std::uint64_t seed, double rank_tol) {
    if (k < 0) throw DomainError("secant index k must be nonnegative");
    if (trials < 1) throw DomainError("trials must be at least 1");
    if (rank_tol <= 0.0) throw DomainError("rank tolerance must be positive");
    const long long total = shape.total();
    if (total > kSecantTotalGuard) {
        throw ResourceError("total dimension " + std::to_string(total) +
                            " exceeds the desk-scale guard of " +
                            std::to_string(kSecantTotalGuard));
    }

    const int m = shape.factor_count();
    int d = 0;
    for (int j = 0; j < m; ++j) d += shape.dims[j] - 1;

    const long long stacked_cols =
        (static_cast<long long>(k) + 1) * (static_cast<long long>(d) + 1);
    if (stacked_cols > 4 * kSecantTotalGuard) {
        throw ResourceError("tangent stack of " + std::to_string(stacked_cols) +
                            " columns exceeds the desk-scale guard of " +
                            std::to_string(4 * kSecantTotalGuard));
    }

    SecantReport report;
    report.shape = shape;
    report.k = k;
    report.ambient_dim = static_cast<int>(total) - 1;
    report.span_dim = report.ambient_dim;  // decomposable tensors span everything
    report.variety_dim = d;
    report.expected_dim = expected_secant_dim(d, k, report.span_dim);
    report.trials = trials;
    report.seed = seed;
    report.rank_tol = rank_tol;

    const int cols_per_point = d + 1;
    for (int t = 0; t < trials; ++t) {
        rng::Gaussian g(rng::derive_seed(seed, static_cast<std::uint64_t>(t)));
        Eigen::MatrixXcd stacked(total, (k + 1) * cols_per_point);
        for (int p = 0; p <= k; ++p) {
            std::vector<Eigen::VectorXcd> factors(m);
            for (int j = 0; j < m; ++j) factors[j] = random_unit_factor(g, shape.dims[j]);
            stacked.middleCols(p * cols_per_point, cols_per_point) =
                tangent_basis_at(factors);
        }
        report.trial_ranks.push_back(numerical_rank(stacked, rank_tol));
    }

    const int best = *std::max_element(report.trial_ranks.begin(),
                                       report.trial_ranks.end());
    report.rank_stable = std::all_of(report.trial_ranks.begin(),
                                     report.trial_ranks.end(),
                                     [&](int r) { return r == best; });
    report.computed_dim = best - 1;
    report.defect = report.expected_dim - report.computed_dim;
    report.fills = report.computed_dim == report.ambient_dim;
    return report;
}

int least_filling_k(const SystemShape& shape, int k_max, int trials,
                    std::uint64_t seed, double rank_tol) {
    if (k_max < 0) throw DomainError("k_max must be nonnegative");
    SecantReport last;
    for (int k = 0; k <= k_max; ++k) {
        last = secant_dimension(shape, k, trials, seed, rank_tol);
        if (last.fills) return k;
    }
    throw NotFilledError("no secant fills the ambient space for k <= " +
                             std::to_string(k_max),
                         std::move(last));
}

namespace {

// Working state of one CP-ALS fit: one N_j × r factor block per mode.
struct CpFit {
    std::vector<Eigen::MatrixXcd> factors;
    bool capped = false;
};

// Mode-j flattening: row k_j, columns over the remaining indices in
// original order, first remaining factor slowest.
Eigen::MatrixXcd flatten_mode(const Eigen::VectorXcd& x, const SystemShape& shape,
                              int mode) {
    const int m = shape.factor_count();
    const int nj = shape.dims[mode];
    const int cols = static_cast<int>(x.size()) / nj;
    int inner = 1;
    for (int j = mode + 1; j < m; ++j) inner *= shape.dims[j];
    const int outer = cols / inner;
    Eigen::MatrixXcd out(nj, cols);
    for (int o = 0; o < outer; ++o)
        for (int a = 0; a < nj; ++a)
            for (int i = 0; i < inner; ++i)
                out(a, o * inner + i) = x[(o * nj + a) * inner + i];
    return out;
}

// Khatri-Rao product of all factor blocks except `mode`, in original order
// with the first remaining factor slowest; matches flatten_mode's columns.
Eigen::MatrixXcd khatri_rao_except(const std::vector<Eigen::MatrixXcd>& factors,
                                   int mode) {
    const int r = static_cast<int>(factors.front().cols());
    Eigen::MatrixXcd z = Eigen::MatrixXcd::Ones(1, r);
    for (int j = 0; j < static_cast<int>(factors.size()); ++j) {
        if (j == mode) continue;
        const Eigen::MatrixXcd& f = factors[j];
        Eigen::MatrixXcd next(z.rows() * f.rows(), r);
        for (Eigen::Index zr = 0; zr < z.rows(); ++zr)
            for (Eigen::Index fr = 0; fr < f.rows(); ++fr)
                next.row(zr * f.rows() + fr) = z.row(zr).cwiseProduct(f.row(fr));
        z = std::move(next);
    }
    return z;
}

Eigen::VectorXcd reconstruct(const CpFit& fit, Eigen::Index total) {
    const int r = static_cast<int>(fit.factors.front().cols());
    Eigen::VectorXcd out = Eigen::VectorXcd::Zero(total);
    std::vector<int> pick(fit.factors.size());
    for (int c = 0; c < r; ++c) {
        std::fill(pick.begin(), pick.end(), c);
        out += kron_columns(fit.factors, pick);
    }
    return out;
}

double relative_residual(const CpFit& fit, const Eigen::VectorXcd& x) {
    return (x - reconstruct(fit, x.size())).norm() / x.norm();
}

// One cycle of least-squares updates over every mode. The r × r system is
// regularized by a tiny ridge so zero columns (fresh warm-start columns)
// stay solvable.
void als_cycle(CpFit& fit, const std::vector<Eigen::MatrixXcd>& flattenings) {
    const int m = static_cast<int>(fit.factors.size());
    const int r = static_cast<int>(fit.factors.front().cols());
    for (int j = 0; j < m; ++j) {
        Eigen::MatrixXcd gram = Eigen::MatrixXcd::Ones(r, r);
        for (int o = 0; o < m; ++o) {
            if (o == j) continue;
            gram = gram.cwiseProduct(
                (fit.factors[o].adjoint() * fit.factors[o]).eval());
        }
        const Eigen::MatrixXcd z = khatri_rao_except(fit.factors, j);
        const Eigen::MatrixXcd rhs = flattenings[j] * z.conjugate();
        Eigen::MatrixXcd lhs = gram.conjugate();
        const double ridge = 1e-14 * std::max(1.0, lhs.diagonal().real().maxCoeff());
        lhs.diagonal().array() += ridge;
        // A_j solves A_j · conj(G) = X_(j) · conj(Z).
        fit.factors[j] = lhs.ldlt().solve(rhs.adjoint()).adjoint();
    }
}

// Equalize per-mode column norms at their geometric mean; cap blowups.
void rebalance(CpFit& fit) {
    const int m = static_cast<int>(fit.factors.size());
    const int r = static_cast<int>(fit.factors.front().cols());
    for (int c = 0; c < r; ++c) {
        double log_prod = 0.0;
        bool zero = false;
        for (int j = 0; j < m; ++j) {
            const double nrm = fit.factors[j].col(c).norm();
            if (nrm == 0.0) { zero = true; break; }
            log_prod += std::log(nrm);
        }
        if (zero) continue;
        double target = std::exp(log_prod / m);
        if (target > kFactorNormCap) {
            target = kFactorNormCap;
            fit.capped = true;
        }
        for (int j = 0; j < m; ++j) {
            const double nrm = fit.factors[j].col(c).norm();
            fit.factors[j].col(c) *= target / nrm;
        }
    }
}

} // namespace

RankEstimate best_rank_r(const PureState& state, int r, int restarts,
                         int max_iters, std::uint64_t seed, double stall_tol) {
    if (r < 1) throw DomainError("rank must be at least 1");
    if (restarts < 1) throw DomainError("restarts must be at least 1");
    if (max_iters < 1) throw DomainError("max_iters must be at least 1");
    if (state.amplitudes.norm() == 0.0) throw DomainError("state is zero");

    const SystemShape& shape = state.shape;
    const int m = shape.factor_count();
    std::vector<Eigen::MatrixXcd> flattenings(m);
    for (int j = 0; j < m; ++j) flattenings[j] = flatten_mode(state.amplitudes, shape, j);

    RankEstimate best;
    best.r = r;
    best.restarts = restarts;
    best.residual = std::numeric_limits<double>::infinity();

    for (int restart = 0; restart < restarts; ++restart) {
        rng::Gaussian g(rng::derive_seed(seed, static_cast<std::uint64_t>(restart)));
        CpFit fit;
        fit.factors.assign(m, Eigen::MatrixXcd());
        int cycles = 0;
        double residual = 1.0;
        bool stalled = false;

        for (int rank_now = 1; rank_now <= r; ++rank_now) {
            for (int j = 0; j < m; ++j) {
                Eigen::VectorXcd col(shape.dims[j]);
                for (int a = 0; a < shape.dims[j]; ++a) col[a] = g.next_complex();
                // The first mode's fresh column starts at zero so the grown
                // model reproduces the incumbent fit exactly; the residual
                // can then only improve.
                if (rank_now > 1 && j == 0) col.setZero();
                fit.factors[j].conservativeResize(shape.dims[j], rank_now);
                fit.factors[j].col(rank_now - 1) = col;
            }
            fit.capped = false;
            std::vector<double> history;
            history.reserve(max_iters);
            stalled = false;
            for (int it = 0; it < max_iters; ++it) {
                als_cycle(fit, flattenings);
                rebalance(fit);
                ++cycles;
                residual = relative_residual(fit, state.amplitudes);
                history.push_back(residual);
                if (history.size() > static_cast<std::size_t>(kStallWindow) &&
                    history[history.size() - 1 - kStallWindow] - residual < stall_tol) {
                    stalled = true;
                    break;
                }
            }
        }

        if (residual < best.residual) {
            best.residual = residual;
            best.iterations = cycles;
            best.converged = stalled && !fit.capped;
        }
    }
    return best;
}

bool secant_membership(const PureState& state, int k, double tol, int restarts,
                       int max_iters, std::uint64_t seed, double stall_tol) {
    if (k < 0) throw DomainError("secant index k must be nonnegative");
    if (tol <= 0.0) throw DomainError("tolerance must be positive");
    return best_rank_r(state, k + 1, restarts, max_iters, seed, stall_tol).residual <= tol;
}

} // namespace segrescope
