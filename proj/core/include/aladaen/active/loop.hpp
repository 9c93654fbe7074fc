#pragma once

#include <optional>
#include <vector>

#include "aladaen/active/config.hpp"
#include "aladaen/active/oracle.hpp"
#include "aladaen/active/state.hpp"
#include "aladaen/adaen/model.hpp"
#include "aladaen/metrics/ranking.hpp"

namespace aladaen::active {

struct IterationContext {
    const data::BooleanDataset& dataset;
    const ActiveLearningState& state;  // after the iteration's bookkeeping
    const adaen::AdaenModel& model;    // the model that produced the rankings
    const IterationRecord& record;
    const metrics::RankedList& pool_ranking;
    const metrics::RankedList& full_ranking;
};

/// Notified once per completed iteration, on the loop thread.
class IterationObserver {
public:
    virtual ~IterationObserver() = default;
    virtual void on_iteration(const IterationContext& ctx) = 0;
};

class ObserverList final : public IterationObserver {
public:
    void add(IterationObserver& o) { observers_.push_back(&o); }
    void on_iteration(const IterationContext& ctx) override {
        for (auto* o : observers_) o->on_iteration(ctx);
    }

private:
    std::vector<IterationObserver*> observers_;
};

struct RunResult {
    adaen::AdaenModel model;
    ActiveLearningState state;
};

/// Runs iterations until the state is finished. Each iteration trains (or
/// warm-start retrains) on D_L, ranks D_U and the original pool, recomputes the
/// percentile threshold, queries the Q most uncertain records, moves confirmed
/// normals (plus GAN samples) into D_L and confirmed anomalies into the ledger.
///
/// `model` continues a resumed run; when empty a model is initialized from
/// state.seed. Errors thrown by the oracle (SuspendedError) propagate; the
/// observer has by then seen every completed iteration.
RunResult run_active_learning(const data::BooleanDataset& dataset, const data::GroundTruth& truth,
                              ActiveLearningState state, std::optional<adaen::AdaenModel> model, Oracle& oracle,
                              const adaen::Hyperparams& hyperparams, const ALConfig& config,
                              IterationObserver* observer = nullptr);

}  // namespace aladaen::active
