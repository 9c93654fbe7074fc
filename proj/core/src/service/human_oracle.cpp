#include "aladaen/service/human_oracle.hpp"

#include <chrono>
#include <ctime>

namespace aladaen::service {

namespace {

std::string utc_now() {
    const auto now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
    std::tm tm{};
    gmtime_r(&now, &tm);
    char buf[32];
    std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
    return buf;
}

}  // namespace

std::vector<active::OracleLabel> HumanOracle::label(std::span<const active::OracleQuery> queries) {
    std::vector<PendingQuery> batch;
    batch.reserve(queries.size());
    const auto issued = utc_now();
    for (const auto& q : queries) {
        batch.push_back({q, dataset_->active_attributes(q.row), issued});
    }
    board_->publish(std::move(batch));
    if (on_waiting_) on_waiting_(true);
    auto labels = board_->wait_for_labels();
    if (on_waiting_) on_waiting_(false);
    return labels;
}

}  // namespace aladaen::service
