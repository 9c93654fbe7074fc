#pragma once

#include <condition_variable>
#include <cstddef>
#include <mutex>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include <nlohmann/json.hpp>

#include "aladaen/active/oracle.hpp"

namespace aladaen::service {

struct PendingQuery {
    active::OracleQuery query;
    std::vector<std::string> top_attributes;  // attributes set to 1 in the record
    std::string issued_at;                    // ISO-8601 UTC

    [[nodiscard]] nlohmann::json to_json() const;
};

enum class SubmitResult { accepted, unknown_query, duplicate, closed };

/// Hand-off point between the loop thread, which publishes a batch and blocks
/// until every query is answered, and request threads submitting labels.
class QueryBoard {
public:
    /// Replaces the board with a new batch. Throws ArgumentError while an
    /// earlier batch is still unanswered.
    void publish(std::vector<PendingQuery> batch);

    SubmitResult submit(std::string_view query_id, active::Label label);

    /// Unanswered queries, most uncertain (smallest |score - tau|) first.
    [[nodiscard]] std::vector<PendingQuery> pending() const;

    /// Blocks until the current batch is fully answered and returns the labels
    /// in batch order. Throws SuspendedError if the board is closed first.
    std::vector<active::OracleLabel> wait_for_labels();

    /// Wakes waiters with SuspendedError; later submissions report closed.
    void close();
    [[nodiscard]] bool closed() const;

    /// Rejected submissions (duplicates, unknown ids), oldest first.
    [[nodiscard]] std::vector<std::string> rejections() const;

private:
    mutable std::mutex mutex_;
    std::condition_variable cv_;
    std::vector<PendingQuery> batch_;
    std::vector<std::optional<active::Label>> answers_;
    std::set<std::string, std::less<>> answered_;
    std::vector<std::string> rejections_;
    std::size_t outstanding_ = 0;
    bool closed_ = false;
};

}  // namespace aladaen::service
