#include "aladaen/active/oracle.hpp"

#include "aladaen/errors.hpp"

namespace aladaen::active {

std::string_view to_string(Label label) {
    return label == Label::anomalous ? "anomalous" : "normal";
}

Label label_from_string(std::string_view text) {
    if (text == "normal") return Label::normal;
    if (text == "anomalous") return Label::anomalous;
    throw ArgumentError("label must be \"normal\" or \"anomalous\", got \"" + std::string(text) + "\"");
}

nlohmann::json OracleQuery::to_json() const {
    return {{"query_id", query_id},
            {"record_id", record_id},
            {"anomaly_score", anomaly_score},
            {"uncertainty", uncertainty}};
}

std::vector<OracleLabel> GroundTruthOracle::label(std::span<const OracleQuery> queries) {
    std::vector<OracleLabel> out;
    out.reserve(queries.size());
    for (const auto& q : queries) {
        out.push_back({q.query_id, q.record_id, truth_->contains(q.record_id) ? Label::anomalous : Label::normal});
    }
    return out;
}

}  // namespace aladaen::active
