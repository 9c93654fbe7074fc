#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include <nlohmann/json.hpp>

#include "aladaen/data/dataset.hpp"

namespace aladaen::active {

enum class Label { normal, anomalous };

[[nodiscard]] std::string_view to_string(Label label);
/// Throws ArgumentError for anything but "normal" / "anomalous".
[[nodiscard]] Label label_from_string(std::string_view text);

struct OracleQuery {
    std::string query_id;
    std::string record_id;
    std::size_t row = 0;
    double anomaly_score = 0.0;
    double uncertainty = 0.0;  // |score - tau|

    [[nodiscard]] nlohmann::json to_json() const;
};

struct OracleLabel {
    std::string query_id;
    std::string record_id;
    Label label = Label::normal;
};

/// Label source for queried records. Implementations return exactly one label
/// per query; a session that cannot finish throws SuspendedError.
class Oracle {
public:
    virtual ~Oracle() = default;
    virtual std::vector<OracleLabel> label(std::span<const OracleQuery> queries) = 0;
};

/// Simulated analyst answering from the ground-truth anomaly list.
class GroundTruthOracle final : public Oracle {
public:
    explicit GroundTruthOracle(const data::GroundTruth& truth) : truth_(&truth) {}
    std::vector<OracleLabel> label(std::span<const OracleQuery> queries) override;

private:
    const data::GroundTruth* truth_;
};

}  // namespace aladaen::active
