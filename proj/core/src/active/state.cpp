#include "aladaen/active/state.hpp"

#include <algorithm>
#include <cstdio>
#include <set>

#include "aladaen/errors.hpp"

namespace aladaen::active {

namespace {

constexpr int kStateSchemaVersion = 1;

nlohmann::json ids_of(const std::vector<std::size_t>& rows, const data::BooleanDataset& dataset) {
    auto out = nlohmann::json::array();
    for (auto r : rows) out.push_back(dataset.id(r));
    return out;
}

std::vector<std::size_t> rows_of(const nlohmann::json& ids, const data::BooleanDataset& dataset) {
    std::vector<std::size_t> out;
    out.reserve(ids.size());
    for (const auto& id : ids) {
        const auto name = id.get<std::string>();
        const auto row = dataset.find(name);
        if (!row) throw IntegrityError("snapshot names unknown record \"" + name + "\"");
        out.push_back(*row);
    }
    std::sort(out.begin(), out.end());
    return out;
}

std::string hex64(std::uint64_t v) {
    char buf[17];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(v));
    return buf;
}

std::uint64_t parse_hex64(const std::string& s) {
    std::size_t used = 0;
    const auto v = std::stoull(s, &used, 16);
    if (used != s.size()) throw FormatError("bad generator state word \"" + s + "\"");
    return v;
}

nlohmann::json synthetic_to_json(const gan::SyntheticRows& s) {
    auto rows = nlohmann::json::array();
    for (std::size_t r = 0; r < s.rows(); ++r) {
        std::string bits(s.cols, '0');
        for (std::size_t c = 0; c < s.cols; ++c) {
            if (s.cells[r * s.cols + c] != 0) bits[c] = '1';
        }
        rows.push_back(std::move(bits));
    }
    return {{"cols", s.cols}, {"ids", s.ids}, {"rows", std::move(rows)}};
}

gan::SyntheticRows synthetic_from_json(const nlohmann::json& j) {
    gan::SyntheticRows s;
    s.cols = j.at("cols").get<std::size_t>();
    s.ids = j.at("ids").get<std::vector<std::string>>();
    const auto& rows = j.at("rows");
    if (rows.size() != s.ids.size()) throw FormatError("synthetic ids and rows differ in length");
    s.cells.reserve(s.ids.size() * s.cols);
    for (const auto& row : rows) {
        const auto bits = row.get<std::string>();
        if (bits.size() != s.cols) throw FormatError("synthetic row has the wrong width");
        for (char ch : bits) {
            if (ch != '0' && ch != '1') throw FormatError("synthetic row is not binary");
            s.cells.push_back(ch == '1' ? 1 : 0);
        }
    }
    return s;
}

}  // namespace

nlohmann::json IterationRecord::to_json() const {
    return {
        {"iteration", iteration},
        {"tau", tau},
        {"ndcg_pool", ndcg_pool},
        {"ndcg_full", ndcg_full},
        {"pool_degenerate", pool_degenerate},
        {"full_degenerate", full_degenerate},
        {"queried_ids", queried_ids},
        {"n_labeled_normal", n_labeled_normal},
        {"n_labeled_anomalous", n_labeled_anomalous},
        {"n_synthetic", n_synthetic},
        {"augmentation_skipped", augmentation_skipped},
        {"pool_size_before", pool_size_before},
        {"pool_size_after", pool_size_after},
        {"labeled_pool_size", labeled_pool_size},
        {"epochs_trained", epochs_trained},
        {"wall_time", wall_time},
    };
}

IterationRecord IterationRecord::from_json(const nlohmann::json& j) {
    IterationRecord r;
    r.iteration = j.at("iteration").get<std::size_t>();
    r.tau = j.at("tau").get<double>();
    r.ndcg_pool = j.at("ndcg_pool").get<double>();
    r.ndcg_full = j.at("ndcg_full").get<double>();
    r.pool_degenerate = j.at("pool_degenerate").get<bool>();
    r.full_degenerate = j.at("full_degenerate").get<bool>();
    r.queried_ids = j.at("queried_ids").get<std::vector<std::string>>();
    r.n_labeled_normal = j.at("n_labeled_normal").get<std::size_t>();
    r.n_labeled_anomalous = j.at("n_labeled_anomalous").get<std::size_t>();
    r.n_synthetic = j.at("n_synthetic").get<std::size_t>();
    r.augmentation_skipped = j.at("augmentation_skipped").get<bool>();
    r.pool_size_before = j.at("pool_size_before").get<std::size_t>();
    r.pool_size_after = j.at("pool_size_after").get<std::size_t>();
    r.labeled_pool_size = j.at("labeled_pool_size").get<std::size_t>();
    r.epochs_trained = j.at("epochs_trained").get<std::size_t>();
    r.wall_time = j.at("wall_time").get<double>();
    return r;
}

nlohmann::json ActiveLearningState::to_json(const data::BooleanDataset& dataset) const {
    auto rng_words = nlohmann::json::array();
    for (auto w : rng_state) rng_words.push_back(hex64(w));
    auto records = nlohmann::json::array();
    for (const auto& r : history) records.push_back(r.to_json());
    return {
        {"schema_version", kStateSchemaVersion},
        {"iteration", iteration},
        {"seed", seed},
        {"rng_state", std::move(rng_words)},
        {"frozen_tau", frozen_tau ? nlohmann::json(*frozen_tau) : nlohmann::json(nullptr)},
        {"finished", finished},
        {"stop_reason", stop_reason},
        {"labeled_normals", ids_of(labeled_normals, dataset)},
        {"unlabeled_pool", ids_of(unlabeled_pool, dataset)},
        {"known_anomalies", ids_of(known_anomalies, dataset)},
        {"validation", ids_of(validation, dataset)},
        {"evaluation_pool", ids_of(evaluation_pool, dataset)},
        {"synthetic", synthetic_to_json(synthetic)},
        {"history", std::move(records)},
    };
}

ActiveLearningState ActiveLearningState::from_json(const nlohmann::json& j, const data::BooleanDataset& dataset) {
    try {
        if (j.at("schema_version").get<int>() != kStateSchemaVersion) {
            throw FormatError("unsupported run-state schema version");
        }
        ActiveLearningState s;
        s.iteration = j.at("iteration").get<std::size_t>();
        s.seed = j.at("seed").get<std::uint64_t>();
        const auto& words = j.at("rng_state");
        if (words.size() != s.rng_state.size()) throw FormatError("generator state must have four words");
        for (std::size_t i = 0; i < s.rng_state.size(); ++i) s.rng_state[i] = parse_hex64(words[i].get<std::string>());
        if (!j.at("frozen_tau").is_null()) s.frozen_tau = j.at("frozen_tau").get<double>();
        s.finished = j.at("finished").get<bool>();
        s.stop_reason = j.at("stop_reason").get<std::string>();
        s.labeled_normals = rows_of(j.at("labeled_normals"), dataset);
        s.unlabeled_pool = rows_of(j.at("unlabeled_pool"), dataset);
        s.known_anomalies = rows_of(j.at("known_anomalies"), dataset);
        s.validation = rows_of(j.at("validation"), dataset);
        s.evaluation_pool = rows_of(j.at("evaluation_pool"), dataset);
        s.synthetic = synthetic_from_json(j.at("synthetic"));
        if (s.synthetic.rows() > 0 && s.synthetic.cols != dataset.cols()) {
            throw IntegrityError("synthetic rows do not match the dataset width");
        }
        for (const auto& r : j.at("history")) s.history.push_back(IterationRecord::from_json(r));
        check_partition(s);
        return s;
    } catch (const nlohmann::json::exception& e) {
        throw FormatError(std::string("invalid run state: ") + e.what());
    }
}

ActiveLearningState initial_state(const data::Splits& splits, std::uint64_t seed) {
    ActiveLearningState s;
    s.labeled_normals = splits.labeled_normal;
    s.unlabeled_pool = splits.unlabeled_pool;
    s.validation = splits.validation;
    s.evaluation_pool = splits.unlabeled_pool;
    s.seed = seed;
    s.rng_state = numerics::Rng(seed).fork(0xa1).state();
    check_partition(s);
    return s;
}

void check_partition(const ActiveLearningState& state) {
    std::set<std::size_t> seen;
    const auto claim = [&](const std::vector<std::size_t>& rows, const char* what) {
        for (auto r : rows) {
            if (!seen.insert(r).second) {
                throw IntegrityError("row " + std::to_string(r) + " appears twice (found again in " + what + ")");
            }
        }
    };
    claim(state.labeled_normals, "labeled normals");
    claim(state.unlabeled_pool, "unlabeled pool");
    claim(state.known_anomalies, "anomaly ledger");
    claim(state.validation, "validation");
}

}  // namespace aladaen::active
