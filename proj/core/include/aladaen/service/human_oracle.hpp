#pragma once

#include <functional>
#include <span>
#include <vector>

#include "aladaen/active/oracle.hpp"
#include "aladaen/data/dataset.hpp"
#include "aladaen/service/query_board.hpp"

namespace aladaen::service {

/// Oracle backed by a QueryBoard: publishes each batch and waits for a person
/// (or any HTTP client) to label it.
class HumanOracle final : public active::Oracle {
public:
    HumanOracle(QueryBoard& board, const data::BooleanDataset& dataset) : board_(&board), dataset_(&dataset) {}

    /// Called with true when a batch is published and false once it is answered.
    void on_waiting(std::function<void(bool)> callback) { on_waiting_ = std::move(callback); }

    std::vector<active::OracleLabel> label(std::span<const active::OracleQuery> queries) override;

private:
    QueryBoard* board_;
    const data::BooleanDataset* dataset_;
    std::function<void(bool)> on_waiting_;
};

}  // namespace aladaen::service
