#include "aladaen/service/server.hpp"

#include <httplib.h>

#include <algorithm>
#include <charconv>
#include <thread>

#include "aladaen/errors.hpp"

namespace aladaen::service {

namespace {

constexpr const char* kJson = "application/json";

void reply(httplib::Response& res, int status, nlohmann::json body) {
    if (!body.contains("schema_version")) body["schema_version"] = kTelemetrySchemaVersion;
    res.status = status;
    res.set_content(body.dump(), kJson);
}

void fail(httplib::Response& res, int status, const std::string& message) {
    reply(res, status, {{"error", message}});
}

bool parse_count(const std::string& text, std::size_t& out) {
    const char* first = text.data();
    const char* last = first + text.size();
    auto [ptr, ec] = std::from_chars(first, last, out);
    return ec == std::errc() && ptr == last && !text.empty();
}

}  // namespace

struct OracleService::Impl {
    QueryBoard* board;
    const TelemetryStore* telemetry;
    ServiceOptions options;
    httplib::Server server;
    std::thread worker;

    void routes();
    void get_state(httplib::Response& res) const;
    void get_queries(httplib::Response& res) const;
    void post_label(const httplib::Request& req, httplib::Response& res) const;
    void get_ranking(const httplib::Request& req, httplib::Response& res) const;
};

void OracleService::Impl::routes() {
    server.Get("/api/state", [this](const httplib::Request&, httplib::Response& res) { get_state(res); });
    server.Get("/api/queries", [this](const httplib::Request&, httplib::Response& res) { get_queries(res); });
    server.Post(R"(/api/queries/([^/]+)/label)",
                [this](const httplib::Request& req, httplib::Response& res) { post_label(req, res); });
    server.Get("/api/ranking", [this](const httplib::Request& req, httplib::Response& res) { get_ranking(req, res); });
}

void OracleService::Impl::get_state(httplib::Response& res) const {
    const auto snap = telemetry->snapshot();
    if (!snap) return fail(res, 404, "no run in progress");
    res.status = 200;
    res.set_content(snap->state.dump(), kJson);
}

void OracleService::Impl::get_queries(httplib::Response& res) const {
    auto queries = nlohmann::json::array();
    for (const auto& q : board->pending()) queries.push_back(q.to_json());
    reply(res, 200, {{"queries", std::move(queries)}});
}

void OracleService::Impl::post_label(const httplib::Request& req, httplib::Response& res) const {
    const std::string query_id = req.matches[1];
    active::Label label{};
    try {
        const auto body = nlohmann::json::parse(req.body);
        if (!body.is_object() || !body.contains("label") || !body["label"].is_string()) {
            return fail(res, 400, "body must be {\"label\": \"normal\" | \"anomalous\"}");
        }
        label = active::label_from_string(body["label"].get<std::string>());
    } catch (const nlohmann::json::exception&) {
        return fail(res, 400, "body is not valid JSON");
    } catch (const ArgumentError& e) {
        return fail(res, 400, e.what());
    }
    switch (board->submit(query_id, label)) {
        case SubmitResult::accepted:
            return reply(res, 200, {{"query_id", query_id},
                                    {"label", std::string(active::to_string(label))},
                                    {"status", "accepted"},
                                    {"remaining", board->pending().size()}});
        case SubmitResult::unknown_query:
            return fail(res, 404, "unknown query " + query_id);
        case SubmitResult::duplicate:
            return fail(res, 409, "query " + query_id + " is already labeled");
        case SubmitResult::closed:
            return fail(res, 409, "labeling session is closed");
    }
}

void OracleService::Impl::get_ranking(const httplib::Request& req, httplib::Response& res) const {
    const auto snap = telemetry->snapshot();
    if (!snap) return fail(res, 404, "no run in progress");
    std::size_t iteration = snap->rankings.size();
    if (req.has_param("iter") && !parse_count(req.get_param_value("iter"), iteration)) {
        return fail(res, 400, "iter must be a non-negative integer");
    }
    std::size_t limit = 0;
    const bool limited = req.has_param("limit");
    if (limited && !parse_count(req.get_param_value("limit"), limit)) {
        return fail(res, 400, "limit must be a non-negative integer");
    }
    if (iteration == 0 || iteration > snap->rankings.size() || !snap->rankings[iteration - 1]) {
        return fail(res, 404, "no ranking for iteration " + std::to_string(iteration));
    }
    const auto& ranking = *snap->rankings[iteration - 1];
    const std::size_t n = limited ? std::min(limit, ranking.size()) : ranking.size();
    auto rows = nlohmann::json::array();
    for (std::size_t i = 0; i < n; ++i) {
        const auto& r = ranking[i];
        rows.push_back({{"rank", r.rank}, {"id", r.id}, {"score", r.score}, {"is_known_anomaly", r.is_known_anomaly}});
    }
    reply(res, 200, {{"iteration", iteration}, {"total", ranking.size()}, {"rows", std::move(rows)}});
}

OracleService::OracleService(QueryBoard& board, const TelemetryStore& telemetry, ServiceOptions options)
    : impl_(std::make_unique<Impl>()) {
    impl_->board = &board;
    impl_->telemetry = &telemetry;
    impl_->options = std::move(options);
    // SO_REUSEADDR without SO_REUSEPORT.
    impl_->server.set_socket_options([](socket_t sock) {
        int yes = 1;
        ::setsockopt(sock, SOL_SOCKET, SO_REUSEADDR, reinterpret_cast<const char*>(&yes), sizeof yes);
    });
    impl_->routes();
}

OracleService::~OracleService() { stop(); }

int OracleService::start() {
    auto& s = impl_->server;
    if (impl_->options.port == 0) {
        port_ = s.bind_to_any_port(impl_->options.host);
        if (port_ < 0) throw IoError("cannot bind " + impl_->options.host);
    } else {
        if (!s.bind_to_port(impl_->options.host, impl_->options.port)) {
            throw IoError("cannot bind " + impl_->options.host + ":" + std::to_string(impl_->options.port));
        }
        port_ = impl_->options.port;
    }
    impl_->worker = std::thread([this] { impl_->server.listen_after_bind(); });
    impl_->server.wait_until_ready();
    return port_;
}

void OracleService::stop() {
    if (!impl_) return;
    impl_->server.stop();
    if (impl_->worker.joinable()) impl_->worker.join();
}

}  // namespace aladaen::service
