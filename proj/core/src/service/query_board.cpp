#include "aladaen/service/query_board.hpp"

#include <algorithm>

#include "aladaen/errors.hpp"

namespace aladaen::service {

nlohmann::json PendingQuery::to_json() const {
    auto j = query.to_json();
    j["top_attributes"] = top_attributes;
    j["issued_at"] = issued_at;
    return j;
}

void QueryBoard::publish(std::vector<PendingQuery> batch) {
    {
        std::lock_guard lock(mutex_);
        if (closed_) throw SuspendedError("query board is closed");
        if (outstanding_ > 0) throw ArgumentError("previous query batch is still unanswered");
        std::set<std::string, std::less<>> ids;
        for (const auto& q : batch) {
            if (!ids.insert(q.query.query_id).second || answered_.count(q.query.query_id) != 0) {
                throw ArgumentError("query id " + q.query.query_id + " is not unique");
            }
        }
        batch_ = std::move(batch);
        answers_.assign(batch_.size(), std::nullopt);
        outstanding_ = batch_.size();
    }
    cv_.notify_all();
}

SubmitResult QueryBoard::submit(std::string_view query_id, active::Label label) {
    SubmitResult result = SubmitResult::unknown_query;
    {
        std::lock_guard lock(mutex_);
        if (closed_) return SubmitResult::closed;
        const auto it = std::find_if(batch_.begin(), batch_.end(),
                                     [&](const PendingQuery& q) { return q.query.query_id == query_id; });
        if (it != batch_.end()) {
            auto& slot = answers_[static_cast<std::size_t>(it - batch_.begin())];
            if (slot) {
                result = SubmitResult::duplicate;
            } else {
                slot = label;
                answered_.insert(std::string(query_id));
                --outstanding_;
                result = SubmitResult::accepted;
            }
        } else if (answered_.count(query_id) != 0) {
            result = SubmitResult::duplicate;
        }
        if (result == SubmitResult::duplicate) {
            rejections_.push_back("duplicate label for " + std::string(query_id));
        } else if (result == SubmitResult::unknown_query) {
            rejections_.push_back("label for unknown query " + std::string(query_id));
        }
    }
    if (result == SubmitResult::accepted) cv_.notify_all();
    return result;
}

std::vector<PendingQuery> QueryBoard::pending() const {
    std::vector<PendingQuery> out;
    {
        std::lock_guard lock(mutex_);
        for (std::size_t i = 0; i < batch_.size(); ++i) {
            if (!answers_[i]) out.push_back(batch_[i]);
        }
    }
    std::stable_sort(out.begin(), out.end(), [](const PendingQuery& a, const PendingQuery& b) {
        return a.query.uncertainty < b.query.uncertainty;
    });
    return out;
}

std::vector<active::OracleLabel> QueryBoard::wait_for_labels() {
    std::unique_lock lock(mutex_);
    cv_.wait(lock, [&] { return closed_ || outstanding_ == 0; });
    if (outstanding_ > 0) throw SuspendedError("labeling session closed with " + std::to_string(outstanding_) +
                                               " queries unanswered");
    std::vector<active::OracleLabel> out;
    out.reserve(batch_.size());
    for (std::size_t i = 0; i < batch_.size(); ++i) {
        out.push_back({batch_[i].query.query_id, batch_[i].query.record_id, *answers_[i]});
    }
    batch_.clear();
    answers_.clear();
    return out;
}

void QueryBoard::close() {
    {
        std::lock_guard lock(mutex_);
        closed_ = true;
    }
    cv_.notify_all();
}

bool QueryBoard::closed() const {
    std::lock_guard lock(mutex_);
    return closed_;
}

std::vector<std::string> QueryBoard::rejections() const {
    std::lock_guard lock(mutex_);
    return rejections_;
}

}  // namespace aladaen::service
