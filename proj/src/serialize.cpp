#include "segrescope/serialize.hpp"

#include "segrescope/json_io.hpp"

namespace segrescope {

using nlohmann::json;

json to_json(const QuadricSet& set) {
    json items = json::array();
    for (const Quadric& q : set.items) {
        items.push_back(json{{"K", q.left}, {"L", q.right}, {"S", q.swap_set}});
    }
    return json{{"dims", set.shape.dims},
                {"kind", set.kind == QuadricKind::Segre ? "SEGRE" : "FULL"},
                {"items", items}};
}

json to_json(const SecantReport& report) {
    return json{{"dims", report.shape.dims},
                {"k", report.k},
                {"ambient_dim", report.ambient_dim},
                {"expected_dim", report.expected_dim},
                {"computed_dim", report.computed_dim},
                {"defect", report.defect},
                {"fills", report.fills},
                {"trials", report.trials},
                {"seed", report.seed}};
}

json to_json(const RankEstimate& estimate) {
    return json{{"r", estimate.r},
                {"residual", estimate.residual},
                {"iterations", estimate.iterations},
                {"restarts", estimate.restarts},
                {"converged", estimate.converged}};
}

json to_json(const RoofResult& result) {
    return json{{"value", result.value},
                {"best_ensemble", to_json(result.best_ensemble)},
                {"restarts_used", result.restarts_used},
                {"iterations", result.iterations},
                {"history", result.history}};
}

json to_json(const CodeParams& params) {
    json j{{"q", params.q},
           {"l", params.l},
           {"t", params.t},
           {"k", params.k},
           {"family", params.family == CodeFamily::MultiQubit ? "multiqubit"
                                                              : "general"}};
    if (!params.warning.empty()) j["warning"] = params.warning;
    return j;
}

} // namespace segrescope
