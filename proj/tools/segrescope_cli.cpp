// segrescope command-line front end.
//
// Verbs: measure, segre-check, reshape, secant-dim, fill-scan, rank, roof,
// codes. Every run with --json emits exactly one JSON document on stdout.
// Exit codes: 0 success, 2 input error, 3 resource-guard refusal, 4
// numerical non-convergence when --strict is set.

#include <cstdio>
#include <exception>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "segrescope/codes.hpp"
#include "segrescope/json_io.hpp"
#include "segrescope/measures.hpp"
#include "segrescope/roof.hpp"
#include "segrescope/secant.hpp"
#include "segrescope/segre.hpp"
#include "segrescope/serialize.hpp"

namespace {

using namespace segrescope;
using nlohmann::json;

constexpr int kExitOk = 0;
constexpr int kExitInput = 2;
constexpr int kExitResource = 3;
constexpr int kExitNotConverged = 4;

struct Options {
    std::string state_path;
    std::string rho_path;
    std::vector<int> dims;
    std::string kind = "concurrence";
    double norm_const = 1.0;
    int k = 0;
    int k_max = 8;
    int r = 1;
    int length = 0; // roof decomposition length; 0 = rank^2 default
    int restarts = 0;
    int iters = 0;
    std::uint64_t seed = 0;
    double tol = 0.0;
    int trials = 3;
    bool json_out = false;
    bool strict = false;
    bool verify = false;
    std::int64_t q = 2;
    std::int64_t l = 2;
    std::string family = "general";
};

void emit(const json& doc, bool json_out, const std::string& text) {
    if (json_out) {
        std::printf("%s\n", doc.dump().c_str());
    } else {
        std::fputs(text.c_str(), stdout);
    }
}

std::string fixed6(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.6f", v);
    return buf;
}

MeasureSpec measure_spec(const Options& opt) {
    MeasureSpec spec;
    if (opt.kind == "concurrence") {
        spec.kind = MeasureKind::Concurrence;
    } else if (opt.kind == "fmeasure") {
        spec.kind = MeasureKind::FMeasure;
    } else {
        throw DomainError("unknown measure kind '" + opt.kind + "'");
    }
    spec.normalization = opt.norm_const;
    return spec;
}

QuadricKind quadric_kind(const std::string& name) {
    if (name == "segre" || name == "concurrence") return QuadricKind::Segre;
    if (name == "full" || name == "fmeasure") return QuadricKind::Full;
    throw DomainError("unknown quadric kind '" + name + "'");
}

int run_measure(const Options& opt) {
    const PureState state = load_pure_state_file(opt.state_path);
    const MeasureSpec spec = measure_spec(opt);
    const double value = pure_measure(state, spec);
    const char* letter = spec.kind == MeasureKind::Concurrence ? "C" : "F";
    emit(json{{"dims", state.shape.dims},
              {"kind", opt.kind},
              {"norm_const", spec.normalization},
              {"value", value}},
         opt.json_out, std::string(letter) + " = " + fixed6(value) + "\n");
    return kExitOk;
}

int run_segre_check(const Options& opt) {
    const PureState state = load_pure_state_file(opt.state_path);
    const QuadricKind kind = quadric_kind(opt.kind == "concurrence" ? "segre" : opt.kind);
    const double tol = opt.tol > 0.0 ? opt.tol : 1e-8;
    const double residual = separability_residual(state, kind);
    const bool separable = separability_residual(state, QuadricKind::Segre) <= tol;
    emit(json{{"dims", state.shape.dims},
              {"kind", kind == QuadricKind::Segre ? "SEGRE" : "FULL"},
              {"residual", residual},
              {"separable", separable},
              {"tol", tol}},
         opt.json_out,
         "residual = " + fixed6(residual) + "\nseparable = " +
             (separable ? "true" : "false") + "\n");
    return kExitOk;
}

int run_reshape(const Options& opt) {
    const PureState state = load_pure_state_file(opt.state_path);
    const Eigen::MatrixXcd m = partition_reshape(state, opt.k);
    json re = json::array(), im = json::array();
    std::string text;
    for (Eigen::Index r = 0; r < m.rows(); ++r) {
        json row_re = json::array(), row_im = json::array();
        for (Eigen::Index c = 0; c < m.cols(); ++c) {
            row_re.push_back(m(r, c).real());
            row_im.push_back(m(r, c).imag());
            text += (c ? "  " : "") + fixed6(m(r, c).real()) +
                    (m(r, c).imag() < 0 ? "-" : "+") + fixed6(std::abs(m(r, c).imag())) +
                    "i";
        }
        re.push_back(std::move(row_re));
        im.push_back(std::move(row_im));
        text += "\n";
    }
    emit(json{{"dims", state.shape.dims},
              {"split", opt.k},
              {"rows", m.rows()},
              {"cols", m.cols()},
              {"matrix_re", re},
              {"matrix_im", im}},
         opt.json_out, text);
    return kExitOk;
}

std::string report_text(const SecantReport& r) {
    std::string dims;
    for (std::size_t j = 0; j < r.shape.dims.size(); ++j) {
        dims += (j ? "," : "") + std::to_string(r.shape.dims[j]);
    }
    std::string text;
    text += "dims = " + dims + "\n";
    text += "k = " + std::to_string(r.k) + "\n";
    text += "ambient_dim = " + std::to_string(r.ambient_dim) + "\n";
    text += "expected_dim = " + std::to_string(r.expected_dim) + "\n";
    text += "computed_dim = " + std::to_string(r.computed_dim) + "\n";
    text += "defect = " + std::to_string(r.defect) + "\n";
    text += std::string("fills = ") + (r.fills ? "true" : "false") + "\n";
    if (!r.rank_stable) {
        text += "note: trial ranks disagreed before max-taking\n";
    }
    return text;
}

int run_secant_dim(const Options& opt) {
    if (opt.dims.empty()) throw DomainError("--dims is required");
    const double rank_tol = opt.tol > 0.0 ? opt.tol : 1e-8;
    const SecantReport r = secant_dimension(make_shape(opt.dims), opt.k, opt.trials,
                                            opt.seed, rank_tol);
    emit(to_json(r), opt.json_out, report_text(r));
    return kExitOk;
}

int run_fill_scan(const Options& opt) {
    if (opt.dims.empty()) throw DomainError("--dims is required");
    const double rank_tol = opt.tol > 0.0 ? opt.tol : 1e-8;
    const SystemShape shape = make_shape(opt.dims);
    std::optional<int> least;
    try {
        least = least_filling_k(shape, opt.k_max, opt.trials, opt.seed, rank_tol);
    } catch (const NotFilledError&) {
    }
    json doc{{"dims", shape.dims}, {"k_max", opt.k_max}, {"trials", opt.trials},
             {"seed", opt.seed}};
    std::string text;
    if (least) {
        doc["least_k"] = *least;
        text = "least filling k = " + std::to_string(*least) + "\n";
    } else {
        doc["least_k"] = nullptr;
        text = "no fill up to k = " + std::to_string(opt.k_max) + "\n";
    }
    emit(doc, opt.json_out, text);
    if (!least && opt.strict) return kExitNotConverged;
    return kExitOk;
}

int run_rank(const Options& opt) {
    const PureState state = load_pure_state_file(opt.state_path);
    const int restarts = opt.restarts > 0 ? opt.restarts : 10;
    const int iters = opt.iters > 0 ? opt.iters : 500;
    const double stall = opt.tol > 0.0 ? opt.tol : 1e-10;
    const RankEstimate e = best_rank_r(state, opt.r, restarts, iters, opt.seed, stall);
    emit(to_json(e), opt.json_out,
         "r = " + std::to_string(e.r) + "\nresidual = " + fixed6(e.residual) +
             "\nconverged = " + (e.converged ? "true" : "false") + "\n");
    if (opt.strict && !e.converged) return kExitNotConverged;
    return kExitOk;
}

int run_roof(const Options& opt) {
    const DensityMatrix rho = load_density_file(opt.rho_path);
    const MeasureSpec spec = measure_spec(opt);
    int length = opt.length;
    if (length <= 0) {
        // Default decomposition length: rank squared.
        Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(rho.entries,
                                                           Eigen::EigenvaluesOnly);
        int rank = 0;
        const double cut = 1e-12 * es.eigenvalues().maxCoeff();
        for (Eigen::Index a = 0; a < es.eigenvalues().size(); ++a) {
            if (es.eigenvalues()[a] > cut) ++rank;
        }
        length = rank * rank;
    }
    const int restarts = opt.restarts > 0 ? opt.restarts : 20;
    const int iters = opt.iters > 0 ? opt.iters : 6000;
    const RoofResult r =
        convex_roof_upper_bound(rho, spec, length, restarts, iters, opt.seed);
    emit(to_json(r), opt.json_out, "value = " + fixed6(r.value) + "\n");
    return kExitOk;
}

int run_codes(const Options& opt) {
    CodeFamily family;
    if (opt.family == "general") {
        family = CodeFamily::General;
    } else if (opt.family == "multiqubit") {
        family = CodeFamily::MultiQubit;
    } else {
        throw DomainError("unknown family '" + opt.family + "'");
    }
    const CodeParams params = perfect_code_params(opt.q, opt.l, family);
    if (!params.warning.empty()) {
        std::fprintf(stderr, "warning: %s\n", params.warning.c_str());
    }

    json doc = to_json(params);
    // Exact integer geometry of the predicted fill: ambient q^t - 1 and the
    // (k-1)-secant bound k(d+1) - 1 with d = t(q-1).
    long long ambient = 1;
    for (std::int64_t i = 0; i < params.t; ++i) ambient *= params.q;
    ambient -= 1;
    const long long d = params.t * (params.q - 1);
    const long long expected = std::min<long long>(ambient, params.k * (d + 1) - 1);
    doc["ambient_dim"] = ambient;
    doc["expected_dim"] = expected;

    std::string computed = "-";
    std::string fills = "-";
    if (opt.verify) {
        const double rank_tol = opt.tol > 0.0 ? opt.tol : 1e-8;
        const SecantReport r = verify_fill(params, opt.trials, opt.seed, rank_tol);
        doc["computed_dim"] = r.computed_dim;
        doc["defect"] = r.defect;
        doc["fills"] = r.fills;
        doc["trials"] = r.trials;
        doc["seed"] = r.seed;
        computed = std::to_string(r.computed_dim);
        fills = r.fills ? "true" : "false";
        if (r.computed_dim < r.expected_dim) {
            std::fprintf(stderr,
                         "note: computed dimension %d fell short of the expected %d\n",
                         r.computed_dim, r.expected_dim);
        }
    }

    std::string text = "q  l  t  k  ambient  expected  computed  fills\n";
    text += std::to_string(params.q) + "  " + std::to_string(params.l) + "  " +
            std::to_string(params.t) + "  " + std::to_string(params.k) + "  " +
            std::to_string(ambient) + "  " + std::to_string(expected) + "  " +
            computed + "  " + fills + "\n";
    emit(doc, opt.json_out, text);
    return kExitOk;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"segrescope: separability quadrics, entanglement measures, "
                 "secant-variety dimensions, tensor rank, convex roofs"};
    app.require_subcommand(1);
    Options opt;

    auto add_common = [&](CLI::App* sub) {
        sub->add_flag("--json", opt.json_out, "emit one JSON document on stdout");
        sub->add_flag("--strict", opt.strict,
                      "exit 4 on flagged numerical non-convergence");
        sub->add_option("--seed", opt.seed, "random seed (default 0)");
        sub->add_option("--tol", opt.tol, "tolerance (per-verb default)");
    };

    CLI::App* measure = app.add_subcommand("measure", "pure-state entanglement measure");
    measure->add_option("--state", opt.state_path, "pure-state JSON file")->required();
    measure->add_option("--kind", opt.kind, "concurrence|fmeasure");
    measure->add_option("--norm-const", opt.norm_const, "normalization constant");
    add_common(measure);

    CLI::App* check = app.add_subcommand("segre-check", "separability residual and test");
    check->add_option("--state", opt.state_path, "pure-state JSON file")->required();
    check->add_option("--kind", opt.kind, "segre|full")->default_str("segre");
    add_common(check);

    CLI::App* reshape = app.add_subcommand("reshape", "bipartite partition reshape");
    reshape->add_option("--state", opt.state_path, "pure-state JSON file")->required();
    reshape->add_option("--split", opt.k, "cut position l, 1 <= l < m")->required();
    add_common(reshape);

    CLI::App* secant = app.add_subcommand("secant-dim", "secant-variety dimension");
    secant->add_option("--dims", opt.dims, "factor dimensions a,b,c")
        ->required()
        ->delimiter(',');
    secant->add_option("--k", opt.k, "secant index")->required();
    secant->add_option("--trials", opt.trials, "independent samples (default 3)");
    add_common(secant);

    CLI::App* scan = app.add_subcommand("fill-scan", "least k whose secant fills");
    scan->add_option("--dims", opt.dims, "factor dimensions a,b,c")
        ->required()
        ->delimiter(',');
    scan->add_option("--kmax", opt.k_max, "largest k to try (default 8)");
    scan->add_option("--trials", opt.trials, "independent samples (default 3)");
    add_common(scan);

    CLI::App* rank = app.add_subcommand("rank", "best rank-r tensor fit");
    rank->add_option("--state", opt.state_path, "pure-state JSON file")->required();
    rank->add_option("--r", opt.r, "target rank")->required();
    rank->add_option("--restarts", opt.restarts, "restarts (default 10)");
    rank->add_option("--iters", opt.iters, "max ALS cycles (default 500)");
    add_common(rank);

    CLI::App* roof = app.add_subcommand("roof", "convex-roof upper bound");
    roof->add_option("--rho", opt.rho_path, "density-matrix JSON file")->required();
    roof->add_option("--kind", opt.kind, "concurrence|fmeasure");
    roof->add_option("--norm-const", opt.norm_const, "normalization constant");
    roof->add_option("--L", opt.length, "decomposition length (default rank^2)");
    roof->add_option("--restarts", opt.restarts, "restarts (default 20)");
    roof->add_option("--iters", opt.iters, "proposals per restart (default 6000)");
    add_common(roof);

    CLI::App* codes = app.add_subcommand("codes", "perfect-code parameter table");
    codes->add_option("--q", opt.q, "alphabet size, a prime power")->required();
    codes->add_option("--l", opt.l, "family index l >= 1")->required();
    codes->add_option("--family", opt.family, "general|multiqubit");
    codes->add_flag("--verify", opt.verify, "run the numerical fill check");
    codes->add_option("--trials", opt.trials, "independent samples (default 3)");
    add_common(codes);

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        std::fprintf(stderr, "%s\n", e.what());
        std::fprintf(stderr, "run with --help for usage\n");
        return kExitInput;
    }

    try {
        if (measure->parsed()) return run_measure(opt);
        if (check->parsed()) return run_segre_check(opt);
        if (reshape->parsed()) return run_reshape(opt);
        if (secant->parsed()) return run_secant_dim(opt);
        if (scan->parsed()) return run_fill_scan(opt);
        if (rank->parsed()) return run_rank(opt);
        if (roof->parsed()) return run_roof(opt);
        if (codes->parsed()) return run_codes(opt);
    } catch (const ResourceError& e) {
        std::fprintf(stderr, "resource guard: %s\n", e.what());
        return kExitResource;
    } catch (const Error& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return kExitInput;
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return kExitInput;
    }
    return kExitInput;
}
