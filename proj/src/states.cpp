#include "segrescope/states.hpp"

#include <string>

namespace segrescope {

int SystemShape::total() const {
    long long t = 1;
    for (int d : dims) t *= d;
    return static_cast<int>(t);
}

std::vector<int> SystemShape::nbar() const {
    std::vector<int> out(dims.size());
    for (std::size_t j = 0; j < dims.size(); ++j) out[j] = dims[j] - 1;
    return out;
}

SystemShape make_shape(std::vector<int> dims) {
    if (dims.empty()) throw ShapeError("shape needs at least one factor");
    long long t = 1;
    for (std::size_t j = 0; j < dims.size(); ++j) {
        if (dims[j] < 2) {
            throw ShapeError("factor dimension N_" + std::to_string(j + 1) +
                             " = " + std::to_string(dims[j]) + " must be >= 2");
        }
        t *= dims[j];
        if (t > kMaxTotalDim) {
            throw ShapeError("total dimension exceeds the guard of " +
                             std::to_string(kMaxTotalDim));
        }
    }
    return SystemShape{std::move(dims)};
}

int multi_index_to_offset(const SystemShape& shape, std::span<const int> idx) {
    const int m = shape.factor_count();
    if (static_cast<int>(idx.size()) != m) {
        throw IndexError("multi-index has " + std::to_string(idx.size()) +
                         " entries for " + std::to_string(m) + " factors");
    }
    int offset = 0;
    for (int j = 0; j < m; ++j) {
        if (idx[j] < 1 || idx[j] > shape.dims[j]) {
            throw IndexError("index " + std::to_string(idx[j]) +
                             " out of range on axis " + std::to_string(j + 1));
        }
        offset = offset * shape.dims[j] + (idx[j] - 1);
    }
    return offset;
}

std::vector<int> offset_to_multi_index(const SystemShape& shape, int offset) {
    if (offset < 0 || offset >= shape.total()) {
        throw IndexError("offset " + std::to_string(offset) + " out of range");
    }
    const int m = shape.factor_count();
    std::vector<int> idx(m);
    for (int j = m - 1; j >= 0; --j) {
        idx[j] = offset % shape.dims[j] + 1;
        offset /= shape.dims[j];
    }
    return idx;
}

PureState make_pure_state(SystemShape shape, Eigen::VectorXcd amplitudes) {
    if (amplitudes.size() != shape.total()) {
        throw ShapeError("amplitude length " + std::to_string(amplitudes.size()) +
                         " does not match total dimension " +
                         std::to_string(shape.total()));
    }
    return PureState{std::move(shape), std::move(amplitudes)};
}

DensityMatrix make_density_matrix(SystemShape shape, Eigen::MatrixXcd entries) {
    const int n = shape.total();
    if (entries.rows() != n || entries.cols() != n) {
        throw ShapeError("density matrix is " + std::to_string(entries.rows()) +
                         "x" + std::to_string(entries.cols()) + ", expected " +
                         std::to_string(n) + "x" + std::to_string(n));
    }
    const double herm = (entries - entries.adjoint()).cwiseAbs().maxCoeff();
    if (herm > kHermitianTol) {
        throw DomainError("density matrix is not Hermitian (entrywise error " +
                          std::to_string(herm) + ")");
    }
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(entries,
                                                       Eigen::EigenvaluesOnly);
    if (es.eigenvalues().minCoeff() < kPsdFloor) {
        throw DomainError("density matrix has eigenvalue " +
                          std::to_string(es.eigenvalues().minCoeff()) +
                          " below the PSD floor");
    }
    const double tr_err = std::abs(entries.trace().real() - 1.0);
    if (tr_err > kTraceTol) {
        throw DomainError("density matrix trace deviates from 1 by " +
                          std::to_string(tr_err));
    }
    return DensityMatrix{std::move(shape), std::move(entries)};
}

DensityMatrix Ensemble::mixture() const {
    const SystemShape& shape = members.front().state.shape;
    const int n = shape.total();
    Eigen::MatrixXcd rho = Eigen::MatrixXcd::Zero(n, n);
    for (const Member& m : members) {
        rho.noalias() += m.p * (m.state.amplitudes * m.state.amplitudes.adjoint());
    }
    return DensityMatrix{shape, std::move(rho)};
}

Ensemble make_ensemble(std::vector<Ensemble::Member> members) {
    if (members.empty()) throw DomainError("ensemble needs at least one member");
    const SystemShape& shape = members.front().state.shape;
    double total = 0.0;
    for (const Ensemble::Member& m : members) {
        if (m.p < 0.0) throw DomainError("ensemble probability is negative");
        if (!(m.state.shape == shape)) {
            throw ShapeError("ensemble members do not share one shape");
        }
        total += m.p;
    }
    if (std::abs(total - 1.0) > kEnsembleProbTol) {
        throw DomainError("ensemble probabilities sum to " + std::to_string(total));
    }
    return Ensemble{std::move(members)};
}

DensityMatrix density_from_pure(const PureState& state) {
    if (!state.is_normalized()) {
        throw NormalizationError("pure state norm is " + std::to_string(state.norm()));
    }
    Eigen::MatrixXcd rho = state.amplitudes * state.amplitudes.adjoint();
    return DensityMatrix{state.shape, std::move(rho)};
}

DensityMatrix reduced_density(const PureState& state, int keep) {
    const int m = state.shape.factor_count();
    if (keep < 1 || keep > m) {
        throw IndexError("subsystem " + std::to_string(keep) + " out of range for " +
                         std::to_string(m) + " factors");
    }
    const int nk = state.shape.dims[keep - 1];
    // Strides of the fixed flattening: offset advances by `stride` when the
    // kept index advances by one, with `outer` blocks of `inner` positions
    // for the traced-out factors.
    int inner = 1;
    for (int j = keep; j < m; ++j) inner *= state.shape.dims[j];
    int outer = 1;
    for (int j = 0; j < keep - 1; ++j) outer *= state.shape.dims[j];

    Eigen::MatrixXcd rho = Eigen::MatrixXcd::Zero(nk, nk);
    for (int a = 0; a < nk; ++a) {
        for (int b = 0; b < nk; ++b) {
            std::complex<double> sum = 0.0;
            for (int o = 0; o < outer; ++o) {
                const int base_a = (o * nk + a) * inner;
                const int base_b = (o * nk + b) * inner;
                for (int i = 0; i < inner; ++i) {
                    sum += state.amplitudes[base_a + i] *
                           std::conj(state.amplitudes[base_b + i]);
                }
            }
            rho(a, b) = sum;
        }
    }
    return DensityMatrix{make_shape({nk}), std::move(rho)};
}

} // namespace segrescope
