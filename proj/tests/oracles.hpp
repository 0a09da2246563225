// Test-only oracles: independent brute-force routes for everything the
// library computes cleverly. Deliberately slow and literal; nothing here may
// call into the code paths under test beyond plain data types.
#pragma once

#include <complex>
#include <map>
#include <set>
#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "segrescope/rng.hpp"
#include "segrescope/segre.hpp"
#include "segrescope/states.hpp"

namespace oracles {

using Complex = std::complex<double>;
using segrescope::PureState;
using segrescope::SystemShape;

// Explicit stride arithmetic, Σ_j (idx_j − 1)·Π_{j'>j} N_{j'}.
inline int offset_of(const std::vector<int>& dims, const std::vector<int>& idx) {
    int offset = 0;
    for (std::size_t j = 0; j < dims.size(); ++j) {
        int stride = 1;
        for (std::size_t after = j + 1; after < dims.size(); ++after) {
            stride *= dims[after];
        }
        offset += (idx[j] - 1) * stride;
    }
    return offset;
}

// Odometer over 1-based multi-indices; returns false after the last one.
inline bool advance(std::vector<int>& idx, const std::vector<int>& dims) {
    for (int j = static_cast<int>(dims.size()) - 1; j >= 0; --j) {
        if (idx[j] < dims[j]) {
            ++idx[j];
            return true;
        }
        idx[j] = 1;
    }
    return false;
}

// Double-loop partial trace onto factor `keep` (1-based).
inline Eigen::MatrixXcd partial_trace(const PureState& state, int keep) {
    const auto& dims = state.shape.dims;
    const int nk = dims[keep - 1];
    Eigen::MatrixXcd rho = Eigen::MatrixXcd::Zero(nk, nk);
    std::vector<int> idx(dims.size(), 1);
    do {
        std::vector<int> jdx(dims.size(), 1);
        do {
            bool same_rest = true;
            for (std::size_t j = 0; j < dims.size(); ++j) {
                if (static_cast<int>(j) == keep - 1) continue;
                if (idx[j] != jdx[j]) { same_rest = false; break; }
            }
            if (same_rest) {
                rho(idx[keep - 1] - 1, jdx[keep - 1] - 1) +=
                    state.amplitudes[offset_of(dims, idx)] *
                    std::conj(state.amplitudes[offset_of(dims, jdx)]);
            }
        } while (advance(jdx, dims));
    } while (advance(idx, dims));
    return rho;
}

// All swap subsets of the kind's family, as sorted 0-based position lists.
inline std::vector<std::vector<int>> swap_family(int m, segrescope::QuadricKind kind) {
    std::vector<std::vector<int>> family;
    if (kind == segrescope::QuadricKind::Segre) {
        for (int j = 0; j < m; ++j) family.push_back({j});
        return family;
    }
    for (unsigned mask = 1; mask + 1 < (1u << m); ++mask) {
        std::vector<int> s;
        for (int j = 0; j < m; ++j)
            if (mask & (1u << j)) s.push_back(j);
        family.push_back(std::move(s));
    }
    return family;
}

// Counts the distinct quadric polynomials of a family by comparing actual
// coefficient maps (monomial α_A·α_B ↦ integer coefficient), normalized so
// the lowest monomial has a positive coefficient.
inline int distinct_quadric_count(const SystemShape& shape,
                                  segrescope::QuadricKind kind) {
    const auto& dims = shape.dims;
    const int m = shape.factor_count();
    std::set<std::map<std::pair<int, int>, int>> polynomials;
    for (const std::vector<int>& s : swap_family(m, kind)) {
        std::vector<int> k_idx(m, 1);
        do {
            std::vector<int> l_idx(m, 1);
            do {
                std::vector<int> ks = k_idx, ls = l_idx;
                for (int pos : s) {
                    ks[pos] = l_idx[pos];
                    ls[pos] = k_idx[pos];
                }
                std::map<std::pair<int, int>, int> poly;
                auto monomial = [&](const std::vector<int>& a,
                                    const std::vector<int>& b) {
                    const int oa = offset_of(dims, a), ob = offset_of(dims, b);
                    return std::make_pair(std::min(oa, ob), std::max(oa, ob));
                };
                poly[monomial(k_idx, l_idx)] += 1;
                poly[monomial(ks, ls)] -= 1;
                std::erase_if(poly, [](const auto& kv) { return kv.second == 0; });
                if (poly.empty()) continue;
                if (poly.begin()->second < 0) {
                    for (auto& kv : poly) kv.second = -kv.second;
                }
                polynomials.insert(std::move(poly));
            } while (advance(l_idx, dims));
        } while (advance(k_idx, dims));
    }
    return static_cast<int>(polynomials.size());
}

// Brute-force Σ over swap classes (family modulo S ~ complement) and all
// ordered (K, L) of |α_K α_L − α_{K'} α_{L'}|².
inline double quadric_sum(const PureState& state, segrescope::QuadricKind kind) {
    const auto& dims = state.shape.dims;
    const int m = state.shape.factor_count();
    const unsigned all = (1u << m) - 1u;
    std::set<unsigned> classes;
    for (const std::vector<int>& s : swap_family(m, kind)) {
        unsigned mask = 0;
        for (int pos : s) mask |= 1u << pos;
        classes.insert(std::min(mask, all & ~mask));
    }
    double total = 0.0;
    for (unsigned mask : classes) {
        std::vector<int> s;
        for (int j = 0; j < m; ++j)
            if (mask & (1u << j)) s.push_back(j);
        std::vector<int> k_idx(m, 1);
        do {
            std::vector<int> l_idx(m, 1);
            do {
                std::vector<int> ks = k_idx, ls = l_idx;
                for (int pos : s) {
                    ks[pos] = l_idx[pos];
                    ls[pos] = k_idx[pos];
                }
                const Complex v =
                    state.amplitudes[offset_of(dims, k_idx)] *
                        state.amplitudes[offset_of(dims, l_idx)] -
                    state.amplitudes[offset_of(dims, ks)] *
                        state.amplitudes[offset_of(dims, ls)];
                total += std::norm(v);
            } while (advance(l_idx, dims));
        } while (advance(k_idx, dims));
    }
    return total;
}

// Affine dimension of the {N₁×N₂ matrices of rank ≤ k+1} variety:
// (k+1)(N₁+N₂−(k+1)), capped at N₁N₂.
inline int matrix_rank_variety_affine_dim(int n1, int n2, int k) {
    const int r = k + 1;
    return std::min(r * (n1 + n2 - r), n1 * n2);
}

// --- seeded generators -------------------------------------------------

inline PureState random_state(const SystemShape& shape, std::uint64_t seed) {
    segrescope::rng::Gaussian g(seed);
    Eigen::VectorXcd amps(shape.total());
    for (Eigen::Index i = 0; i < amps.size(); ++i) amps[i] = g.next_complex();
    amps /= amps.norm();
    return PureState{shape, std::move(amps)};
}

inline Eigen::VectorXcd random_factor(int n, segrescope::rng::Gaussian& g) {
    Eigen::VectorXcd v(n);
    for (int i = 0; i < n; ++i) v[i] = g.next_complex();
    return v;
}

inline Eigen::MatrixXcd random_unitary(int n, segrescope::rng::Gaussian& g) {
    Eigen::MatrixXcd a(n, n);
    for (int r = 0; r < n; ++r)
        for (int c = 0; c < n; ++c) a(r, c) = g.next_complex();
    Eigen::HouseholderQR<Eigen::MatrixXcd> qr(a);
    return qr.householderQ() * Eigen::MatrixXcd::Identity(n, n);
}

// Ginibre construction: G G† / tr, rank ≤ columns.
inline segrescope::DensityMatrix random_density(const SystemShape& shape, int rank,
                                                std::uint64_t seed) {
    segrescope::rng::Gaussian g(seed);
    const int n = shape.total();
    Eigen::MatrixXcd gin(n, rank);
    for (int r = 0; r < n; ++r)
        for (int c = 0; c < rank; ++c) gin(r, c) = g.next_complex();
    Eigen::MatrixXcd rho = gin * gin.adjoint();
    rho /= rho.trace().real();
    rho = ((rho + rho.adjoint()) / 2.0).eval();
    return segrescope::DensityMatrix{shape, std::move(rho)};
}

// --- named states -------------------------------------------------------

inline PureState bell() {
    Eigen::VectorXcd a(4);
    a << std::sqrt(0.5), 0.0, 0.0, std::sqrt(0.5);
    return PureState{segrescope::make_shape({2, 2}), a};
}

inline PureState bell_minus() {
    Eigen::VectorXcd a(4);
    a << std::sqrt(0.5), 0.0, 0.0, -std::sqrt(0.5);
    return PureState{segrescope::make_shape({2, 2}), a};
}

inline PureState ghz3() {
    Eigen::VectorXcd a = Eigen::VectorXcd::Zero(8);
    a[0] = std::sqrt(0.5);
    a[7] = std::sqrt(0.5);
    return PureState{segrescope::make_shape({2, 2, 2}), a};
}

inline PureState w3() {
    Eigen::VectorXcd a = Eigen::VectorXcd::Zero(8);
    const double c = 1.0 / std::sqrt(3.0);
    a[1] = c;  // |112⟩
    a[2] = c;  // |121⟩
    a[4] = c;  // |211⟩
    return PureState{segrescope::make_shape({2, 2, 2}), a};
}

inline PureState basis_state(const SystemShape& shape, const std::vector<int>& idx) {
    Eigen::VectorXcd a = Eigen::VectorXcd::Zero(shape.total());
    a[offset_of(shape.dims, idx)] = 1.0;
    return PureState{shape, std::move(a)};
}

// p·|Bell⟩⟨Bell| + (1−p)·I/4.
inline segrescope::DensityMatrix werner(double p) {
    const PureState b = bell();
    Eigen::MatrixXcd rho = p * (b.amplitudes * b.amplitudes.adjoint());
    rho += (1.0 - p) / 4.0 * Eigen::MatrixXcd::Identity(4, 4);
    return segrescope::DensityMatrix{b.shape, std::move(rho)};
}

// Independent route to the two-qubit mixed concurrence: eigenvalues of
// ρ·(σ_y⊗σ_y)ρ*(σ_y⊗σ_y) assembled entry by entry from σ_y.
inline double wootters_eigen(const segrescope::DensityMatrix& rho) {
    Eigen::Matrix2cd sy;
    sy << Complex(0, 0), Complex(0, -1), Complex(0, 1), Complex(0, 0);
    Eigen::Matrix4cd yy;
    for (int k1 = 0; k1 < 2; ++k1)
        for (int k2 = 0; k2 < 2; ++k2)
            for (int l1 = 0; l1 < 2; ++l1)
                for (int l2 = 0; l2 < 2; ++l2)
                    yy(2 * k1 + k2, 2 * l1 + l2) = sy(k1, l1) * sy(k2, l2);
    const Eigen::Matrix4cd prod = rho.entries * yy * rho.entries.conjugate() * yy;
    Eigen::ComplexEigenSolver<Eigen::Matrix4cd> es(prod, false);
    std::vector<double> roots;
    for (int i = 0; i < 4; ++i) {
        roots.push_back(std::sqrt(std::max(0.0, es.eigenvalues()[i].real())));
    }
    std::sort(roots.begin(), roots.end(), std::greater<>());
    return std::max(0.0, roots[0] - roots[1] - roots[2] - roots[3]);
}

// Local unitary on factor `axis` (1-based) of a state, by explicit loops.
inline PureState apply_local_unitary(const PureState& state, int axis,
                                     const Eigen::MatrixXcd& u) {
    const auto& dims = state.shape.dims;
    Eigen::VectorXcd out = Eigen::VectorXcd::Zero(state.amplitudes.size());
    std::vector<int> idx(dims.size(), 1);
    do {
        Complex sum = 0.0;
        std::vector<int> src = idx;
        for (int a = 1; a <= dims[axis - 1]; ++a) {
            src[axis - 1] = a;
            sum += u(idx[axis - 1] - 1, a - 1) *
                   state.amplitudes[offset_of(dims, src)];
        }
        out[offset_of(dims, idx)] = sum;
    } while (advance(idx, dims));
    return PureState{state.shape, std::move(out)};
}

// Relabels subsystems: new factor j is old factor perm[j] (0-based perm).
inline PureState permute_subsystems(const PureState& state,
                                    const std::vector<int>& perm) {
    const auto& dims = state.shape.dims;
    std::vector<int> new_dims(dims.size());
    for (std::size_t j = 0; j < dims.size(); ++j) new_dims[j] = dims[perm[j]];
    Eigen::VectorXcd out(state.amplitudes.size());
    std::vector<int> idx(new_dims.size(), 1);
    do {
        std::vector<int> old_idx(dims.size());
        for (std::size_t j = 0; j < dims.size(); ++j) old_idx[perm[j]] = idx[j];
        out[offset_of(new_dims, idx)] = state.amplitudes[offset_of(dims, old_idx)];
    } while (advance(idx, new_dims));
    return PureState{segrescope::make_shape(new_dims), std::move(out)};
}

} // namespace oracles
