#include "segrescope/json_io.hpp"

#include <cmath>
#include <fstream>
#include <sstream>

namespace segrescope {

namespace {

using nlohmann::json;

double finite_number(const json& j, const std::string& where) {
    if (!j.is_number()) throw FormatError(where + " is not a number");
    const double v = j.get<double>();
    if (!std::isfinite(v)) throw FormatError(where + " is not finite");
    return v;
}

SystemShape shape_from_json(const json& j, const std::string& where) {
    if (!j.contains("dims")) throw FormatError(where + ": missing \"dims\"");
    const json& d = j.at("dims");
    if (!d.is_array() || d.empty()) {
        throw FormatError(where + ".dims must be a nonempty array");
    }
    std::vector<int> dims;
    dims.reserve(d.size());
    for (std::size_t i = 0; i < d.size(); ++i) {
        if (!d[i].is_number_integer()) {
            throw FormatError(where + ".dims[" + std::to_string(i) +
                              "] is not an integer");
        }
        dims.push_back(d[i].get<int>());
    }
    try {
        return make_shape(std::move(dims));
    } catch (const ShapeError& e) {
        throw FormatError(where + ".dims: " + e.what());
    }
}

Eigen::VectorXd vector_from_json(const json& j, const std::string& where,
                                 Eigen::Index expected) {
    if (!j.is_array()) throw FormatError(where + " must be an array");
    if (static_cast<Eigen::Index>(j.size()) != expected) {
        throw FormatError(where + " has " + std::to_string(j.size()) +
                          " entries, expected " + std::to_string(expected));
    }
    Eigen::VectorXd v(expected);
    for (Eigen::Index i = 0; i < expected; ++i) {
        v[i] = finite_number(j[static_cast<std::size_t>(i)],
                             where + "[" + std::to_string(i) + "]");
    }
    return v;
}

Eigen::MatrixXd matrix_from_json(const json& j, const std::string& where,
                                 Eigen::Index n) {
    if (!j.is_array() || static_cast<Eigen::Index>(j.size()) != n) {
        throw FormatError(where + " must be an array of " + std::to_string(n) +
                          " rows");
    }
    Eigen::MatrixXd m(n, n);
    for (Eigen::Index r = 0; r < n; ++r) {
        m.row(r) = vector_from_json(j[static_cast<std::size_t>(r)],
                                    where + "[" + std::to_string(r) + "]", n)
                       .transpose();
    }
    return m;
}

json parse_text(const std::string& text) {
    try {
        return json::parse(text);
    } catch (const json::parse_error& e) {
        throw FormatError(std::string("malformed JSON: ") + e.what());
    }
}

} // namespace

json to_json(const PureState& state) {
    json re = json::array();
    json im = json::array();
    for (Eigen::Index i = 0; i < state.amplitudes.size(); ++i) {
        re.push_back(state.amplitudes[i].real());
        im.push_back(state.amplitudes[i].imag());
    }
    return json{{"dims", state.shape.dims}, {"re", re}, {"im", im}};
}

json to_json(const DensityMatrix& rho) {
    const Eigen::Index n = rho.entries.rows();
    json re = json::array();
    json im = json::array();
    for (Eigen::Index r = 0; r < n; ++r) {
        json row_re = json::array();
        json row_im = json::array();
        for (Eigen::Index c = 0; c < n; ++c) {
            row_re.push_back(rho.entries(r, c).real());
            row_im.push_back(rho.entries(r, c).imag());
        }
        re.push_back(std::move(row_re));
        im.push_back(std::move(row_im));
    }
    return json{{"dims", rho.shape.dims}, {"matrix_re", re}, {"matrix_im", im}};
}

json to_json(const Ensemble& ensemble) {
    json members = json::array();
    for (const Ensemble::Member& m : ensemble.members) {
        members.push_back(json{{"p", m.p}, {"state", to_json(m.state)}});
    }
    return json{{"members", members}};
}

PureState pure_state_from_json(const json& j) {
    if (!j.is_object()) throw FormatError("pure state must be a JSON object");
    SystemShape shape = shape_from_json(j, "state");
    const Eigen::Index n = shape.total();
    if (!j.contains("re")) throw FormatError("state: missing \"re\"");
    if (!j.contains("im")) throw FormatError("state: missing \"im\"");
    const Eigen::VectorXd re = vector_from_json(j.at("re"), "state.re", n);
    const Eigen::VectorXd im = vector_from_json(j.at("im"), "state.im", n);
    Eigen::VectorXcd amps(n);
    amps.real() = re;
    amps.imag() = im;
    return PureState{std::move(shape), std::move(amps)};
}

DensityMatrix density_from_json(const json& j) {
    if (!j.is_object()) throw FormatError("density matrix must be a JSON object");
    SystemShape shape = shape_from_json(j, "rho");
    const Eigen::Index n = shape.total();
    if (!j.contains("matrix_re")) throw FormatError("rho: missing \"matrix_re\"");
    if (!j.contains("matrix_im")) throw FormatError("rho: missing \"matrix_im\"");
    const Eigen::MatrixXd re = matrix_from_json(j.at("matrix_re"), "rho.matrix_re", n);
    const Eigen::MatrixXd im = matrix_from_json(j.at("matrix_im"), "rho.matrix_im", n);
    Eigen::MatrixXcd entries(n, n);
    entries.real() = re;
    entries.imag() = im;
    return make_density_matrix(std::move(shape), std::move(entries));
}

Ensemble ensemble_from_json(const json& j) {
    if (!j.is_object() || !j.contains("members")) {
        throw FormatError("ensemble: missing \"members\"");
    }
    const json& ms = j.at("members");
    if (!ms.is_array() || ms.empty()) {
        throw FormatError("ensemble.members must be a nonempty array");
    }
    std::vector<Ensemble::Member> members;
    members.reserve(ms.size());
    for (std::size_t i = 0; i < ms.size(); ++i) {
        const std::string where = "ensemble.members[" + std::to_string(i) + "]";
        const json& m = ms[i];
        if (!m.is_object() || !m.contains("p") || !m.contains("state")) {
            throw FormatError(where + " needs \"p\" and \"state\"");
        }
        members.push_back(Ensemble::Member{finite_number(m.at("p"), where + ".p"),
                                           pure_state_from_json(m.at("state"))});
    }
    return make_ensemble(std::move(members));
}

PureState load_pure_state(const std::string& text) {
    return pure_state_from_json(parse_text(text));
}

DensityMatrix load_density(const std::string& text) {
    return density_from_json(parse_text(text));
}

Ensemble load_ensemble(const std::string& text) {
    return ensemble_from_json(parse_text(text));
}

StateVariant load_state(const std::string& text) {
    const json j = parse_text(text);
    if (j.is_object() && j.contains("matrix_re")) return density_from_json(j);
    return pure_state_from_json(j);
}

std::string save_pure_state(const PureState& state) { return to_json(state).dump(); }
std::string save_density(const DensityMatrix& rho) { return to_json(rho).dump(); }
std::string save_ensemble(const Ensemble& ensemble) { return to_json(ensemble).dump(); }

std::string read_text_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw FormatError("cannot open " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

namespace {
void write_text_file(const std::string& text, const std::string& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw FormatError("cannot write " + path);
    out << text;
}
} // namespace

PureState load_pure_state_file(const std::string& path) {
    return load_pure_state(read_text_file(path));
}

DensityMatrix load_density_file(const std::string& path) {
    return load_density(read_text_file(path));
}

StateVariant load_state_file(const std::string& path) {
    return load_state(read_text_file(path));
}

void save_pure_state_file(const PureState& state, const std::string& path) {
    write_text_file(save_pure_state(state), path);
}

void save_density_file(const DensityMatrix& rho, const std::string& path) {
    write_text_file(save_density(rho), path);
}

} // namespace segrescope
