#include "aladaen/active/loop.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <iterator>

#include "aladaen/active/selection.hpp"
#include "aladaen/adaen/scoring.hpp"
#include "aladaen/adaen/trainer.hpp"
#include "aladaen/errors.hpp"
#include "aladaen/gan/gan.hpp"

namespace aladaen::active {

using numerics::Tensor2D;

namespace {

Tensor2D training_rows(const data::BooleanDataset& dataset, const ActiveLearningState& state) {
    const std::size_t d = dataset.cols();
    Tensor2D out(state.labeled_normals.size() + state.synthetic.rows(), d);
    std::size_t r = 0;
    for (auto row : state.labeled_normals) {
        const auto cells = dataset.row(row);
        for (std::size_t c = 0; c < d; ++c) out(r, c) = cells[c];
        ++r;
    }
    for (std::size_t s = 0; s < state.synthetic.rows(); ++s, ++r) {
        for (std::size_t c = 0; c < d; ++c) out(r, c) = state.synthetic.cells[s * d + c];
    }
    return out;
}

void append_synthetic(gan::SyntheticRows& into, const gan::SyntheticRows& batch) {
    if (batch.rows() == 0) return;
    into.cols = batch.cols;
    into.ids.insert(into.ids.end(), batch.ids.begin(), batch.ids.end());
    into.cells.insert(into.cells.end(), batch.cells.begin(), batch.cells.end());
}

void insert_sorted(std::vector<std::size_t>& into, const std::vector<std::size_t>& rows) {
    into.insert(into.end(), rows.begin(), rows.end());
    std::sort(into.begin(), into.end());
}

std::vector<OracleLabel> checked_labels(Oracle& oracle, const std::vector<OracleQuery>& queries) {
    auto labels = oracle.label(queries);
    if (labels.size() != queries.size()) throw IntegrityError("oracle returned the wrong number of labels");
    for (std::size_t i = 0; i < labels.size(); ++i) {
        if (labels[i].query_id != queries[i].query_id || labels[i].record_id != queries[i].record_id) {
            throw IntegrityError("oracle label " + std::to_string(i) + " does not answer query " +
                                 queries[i].query_id);
        }
    }
    return labels;
}

}  // namespace

RunResult run_active_learning(const data::BooleanDataset& dataset, const data::GroundTruth& truth,
                              ActiveLearningState state, std::optional<adaen::AdaenModel> model, Oracle& oracle,
                              const adaen::Hyperparams& hyperparams, const ALConfig& config,
                              IterationObserver* observer) {
    hyperparams.validate();
    config.validate();
    check_partition(state);
    if (!model) model.emplace(dataset.cols(), hyperparams, state.seed);
    if (model->input_dim() != dataset.cols()) throw ShapeError("model width does not match the dataset");

    numerics::Rng rng;
    rng.set_state(state.rng_state);
    const Tensor2D validation = dataset.to_tensor(state.validation);

    while (!state.finished) {
        if (state.unlabeled_pool.empty()) {
            state.finished = true;
            state.stop_reason = "pool exhausted";
            break;
        }
        const auto started = std::chrono::steady_clock::now();
        IterationRecord record;
        record.iteration = state.iteration + 1;
        record.pool_size_before = state.unlabeled_pool.size();

        // Train on D_L: full budget once, then warm-start retraining.
        const Tensor2D train_rows = training_rows(dataset, state);
        record.labeled_pool_size = train_rows.rows();
        const std::size_t epochs = record.iteration == 1 ? hyperparams.max_epochs : config.retrain_epochs;
        if (epochs > 0) {
            adaen::train(*model, train_rows, validation, rng, epochs);
            record.epochs_trained = model->training_log.epochs.size();
        }

        // Rank the current pool and the original pool.
        std::vector<std::string> pool_ids;
        pool_ids.reserve(state.unlabeled_pool.size());
        for (auto r : state.unlabeled_pool) pool_ids.push_back(dataset.id(r));
        const auto pool_scores = adaen::anomaly_scores(*model, state.unlabeled_pool, dataset);
        const auto pool_ranking = metrics::RankedList::from_scores(pool_ids, pool_scores);
        const auto full_ranking = adaen::score_dataset(*model, state.evaluation_pool, dataset);
        const auto pool_report = metrics::ndcg(pool_ranking, truth);
        const auto full_report = metrics::ndcg(full_ranking, truth);
        record.ndcg_pool = pool_report.ndcg;
        record.pool_degenerate = pool_report.degenerate;
        record.ndcg_full = full_report.ndcg;
        record.full_degenerate = full_report.degenerate;

        double tau = 0.0;
        if (config.recalibrate_threshold || !state.frozen_tau) {
            tau = compute_threshold(pool_scores, config.percentile);
            if (!state.frozen_tau) state.frozen_tau = tau;
        } else {
            tau = *state.frozen_tau;
        }
        record.tau = tau;

        std::vector<OracleQuery> queries;
        for (auto pos : select_uncertain(pool_ids, pool_scores, tau, config.query_budget)) {
            OracleQuery q;
            q.query_id = "q" + std::to_string(record.iteration) + "-" + std::to_string(queries.size());
            q.record_id = pool_ids[pos];
            q.row = state.unlabeled_pool[pos];
            q.anomaly_score = pool_scores[pos];
            q.uncertainty = std::abs(pool_scores[pos] - tau);
            queries.push_back(std::move(q));
        }
        const auto labels = checked_labels(oracle, queries);

        std::vector<std::size_t> normals;
        std::vector<std::size_t> anomalies;
        for (std::size_t i = 0; i < labels.size(); ++i) {
            record.queried_ids.push_back(queries[i].record_id);
            (labels[i].label == Label::normal ? normals : anomalies).push_back(queries[i].row);
        }
        std::sort(normals.begin(), normals.end());
        std::sort(anomalies.begin(), anomalies.end());
        record.n_labeled_normal = normals.size();
        record.n_labeled_anomalous = anomalies.size();

        // Augment with GAN samples modelled on this iteration's confirmed normals.
        const auto n_synthetic =
            static_cast<std::size_t>(std::llround(config.augmentation_ratio * static_cast<double>(normals.size())));
        if (normals.size() >= config.min_augmentation_pool && n_synthetic > 0) {
            const auto gan_model = gan::train_gan(dataset.to_tensor(normals), config.gan, rng);
            const auto batch =
                gan::sample_synthetic(gan_model, n_synthetic, rng, record.iteration, config.gan.binarize_threshold);
            append_synthetic(state.synthetic, batch);
            record.n_synthetic = batch.rows();
        } else {
            record.augmentation_skipped = true;
        }

        insert_sorted(state.labeled_normals, normals);
        insert_sorted(state.known_anomalies, anomalies);
        std::vector<std::size_t> queried_rows;
        for (const auto& q : queries) queried_rows.push_back(q.row);
        std::sort(queried_rows.begin(), queried_rows.end());
        std::vector<std::size_t> remaining;
        std::set_difference(state.unlabeled_pool.begin(), state.unlabeled_pool.end(), queried_rows.begin(),
                            queried_rows.end(), std::back_inserter(remaining));
        state.unlabeled_pool = std::move(remaining);
        record.pool_size_after = state.unlabeled_pool.size();

        state.iteration = record.iteration;
        state.rng_state = rng.state();
        if (config.stop_on_perfect && !pool_report.degenerate && pool_report.ndcg == 1.0) {
            state.finished = true;
            state.stop_reason = "perfect ranking";
        } else if (state.unlabeled_pool.empty()) {
            state.finished = true;
            state.stop_reason = "pool exhausted";
        } else if (state.iteration >= config.n_iterations) {
            state.finished = true;
            state.stop_reason = "iteration limit";
        }
        record.wall_time =
            std::chrono::duration<double>(std::chrono::steady_clock::now() - started).count();
        state.history.push_back(record);

        if (observer) {
            observer->on_iteration(
                IterationContext{dataset, state, *model, state.history.back(), pool_ranking, full_ranking});
        }
    }
    return RunResult{std::move(*model), std::move(state)};
}

}  // namespace aladaen::active
