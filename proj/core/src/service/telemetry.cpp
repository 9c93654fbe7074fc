#include "aladaen/service/telemetry.hpp"

#include <algorithm>
#include <cstdio>

namespace aladaen::service {

namespace {

nlohmann::json pool_sizes(const active::ActiveLearningState& s) {
    return {{"labeled_normal", s.labeled_normals.size()},
            {"synthetic", s.synthetic.rows()},
            {"unlabeled", s.unlabeled_pool.size()},
            {"known_anomalies", s.known_anomalies.size()},
            {"validation", s.validation.size()}};
}

nlohmann::json history_of(const active::ActiveLearningState& s) {
    auto out = nlohmann::json::array();
    for (const auto& r : s.history) {
        out.push_back({{"iteration", r.iteration},
                       {"tau", r.tau},
                       {"ndcg_pool", r.ndcg_pool},
                       {"ndcg_full", r.ndcg_full},
                       {"pool_degenerate", r.pool_degenerate},
                       {"full_degenerate", r.full_degenerate},
                       {"n_labeled_normal", r.n_labeled_normal},
                       {"n_labeled_anomalous", r.n_labeled_anomalous},
                       {"n_synthetic", r.n_synthetic}});
    }
    return out;
}

nlohmann::json state_document(const active::ActiveLearningState& s, const data::BooleanDataset& dataset,
                              std::string status) {
    auto anomalies = nlohmann::json::array();
    for (auto r : s.known_anomalies) anomalies.push_back(dataset.id(r));
    return {
        {"schema_version", kTelemetrySchemaVersion},
        {"status", std::move(status)},
        {"iteration", s.iteration},
        {"tau", s.history.empty() ? nlohmann::json(nullptr) : nlohmann::json(s.history.back().tau)},
        {"pool_sizes", pool_sizes(s)},
        {"known_anomalies", std::move(anomalies)},
        {"last_record", s.history.empty() ? nlohmann::json(nullptr) : s.history.back().to_json()},
        {"history", history_of(s)},
        {"finished", s.finished},
        {"stop_reason", s.stop_reason},
    };
}

}  // namespace

std::uint64_t fnv1a64(std::string_view bytes) {
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (unsigned char c : bytes) {
        h ^= c;
        h *= 0x100000001b3ULL;
    }
    return h;
}

void stamp_checksum(nlohmann::json& doc) {
    doc.erase("checksum");
    char buf[17];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(fnv1a64(doc.dump())));
    doc["checksum"] = buf;
}

bool verify_checksum(const nlohmann::json& doc) {
    if (!doc.is_object() || !doc.contains("checksum") || !doc["checksum"].is_string()) return false;
    auto copy = doc;
    stamp_checksum(copy);
    return copy["checksum"] == doc["checksum"];
}

void TelemetryStore::begin_run(const active::ActiveLearningState& state, const data::BooleanDataset& dataset) {
    std::vector<std::shared_ptr<const Ranking>> rankings;
    publish(state_document(state, dataset, state.finished ? "finished" : "running"), std::move(rankings));
}

void TelemetryStore::on_iteration(const active::IterationContext& ctx) {
    auto ranking = std::make_shared<Ranking>();
    ranking->reserve(ctx.full_ranking.size());
    const auto& known = ctx.state.known_anomalies;
    for (std::size_t i = 0; i < ctx.full_ranking.size(); ++i) {
        const auto& e = ctx.full_ranking[i];
        const auto row = ctx.dataset.index_of(e.id);
        const bool is_known = std::binary_search(known.begin(), known.end(), row);
        ranking->push_back({i + 1, e.id, e.score, is_known});
    }
    std::vector<std::shared_ptr<const Ranking>> rankings;
    {
        std::lock_guard lock(mutex_);
        if (current_) rankings = current_->rankings;
    }
    // A resumed run starts without the rankings of earlier iterations.
    rankings.resize(ctx.record.iteration - 1);
    rankings.push_back(std::move(ranking));
    publish(state_document(ctx.state, ctx.dataset, ctx.state.finished ? "finished" : "running"), std::move(rankings));
}

void TelemetryStore::set_status(const std::string& status) {
    std::lock_guard lock(mutex_);
    if (!current_) return;
    auto next = std::make_shared<TelemetrySnapshot>(*current_);
    next->state["status"] = status;
    stamp_checksum(next->state);
    current_ = std::move(next);
}

std::shared_ptr<const TelemetrySnapshot> TelemetryStore::snapshot() const {
    std::lock_guard lock(mutex_);
    return current_;
}

void TelemetryStore::publish(nlohmann::json state, std::vector<std::shared_ptr<const Ranking>> rankings) {
    auto next = std::make_shared<TelemetrySnapshot>();
    stamp_checksum(state);
    next->state = std::move(state);
    next->rankings = std::move(rankings);
    std::lock_guard lock(mutex_);
    current_ = std::move(next);
}

}  // namespace aladaen::service
