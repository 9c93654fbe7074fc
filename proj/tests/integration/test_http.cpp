#include <doctest.h>

#include <atomic>
#include <chrono>
#include <exception>
#include <functional>
#include <sstream>
#include <thread>

#include "aladaen/active/loop.hpp"
#include "aladaen/active/run_directory.hpp"
#include "aladaen/data/splits.hpp"
#include "aladaen/data/synthetic.hpp"
#include "aladaen/errors.hpp"
#include "aladaen/service/human_oracle.hpp"
#include "aladaen/service/server.hpp"
#include "aladaen/service/telemetry.hpp"
#include "test_support.hpp"

// After the Eigen-based headers: the resolver header pulled in here defines _res.
#include <httplib.h>

using namespace aladaen;
using namespace std::chrono_literals;
using nlohmann::json;

namespace {

struct RunFixture {
    data::BooleanDataset dataset;
    data::GroundTruth truth;
    data::Splits splits;
    adaen::Hyperparams hp;
    active::ALConfig config;
};

RunFixture make_fixture() {
    data::SynthConfig sc;
    sc.n_records = 200;
    sc.n_attributes = 12;
    sc.anomaly_rate = 0.05;
    sc.seed = 5;
    auto [ds, truth] = data::generate_synthetic(sc);
    auto splits = data::make_splits(ds, truth, 0.2, 0.1, 5);
    adaen::Hyperparams hp;
    hp.latent_dim = 4;
    hp.attention_tokens = 2;
    hp.batch_size = 32;
    hp.max_epochs = 3;
    active::ALConfig cfg;
    cfg.n_iterations = 2;
    cfg.query_budget = 3;
    cfg.retrain_epochs = 1;
    cfg.stop_on_perfect = false;
    return {std::move(ds), std::move(truth), std::move(splits), hp, cfg};
}

bool wait_until(const std::function<bool()>& pred, std::chrono::milliseconds limit = 20s) {
    const auto deadline = std::chrono::steady_clock::now() + limit;
    while (std::chrono::steady_clock::now() < deadline) {
        if (pred()) return true;
        std::this_thread::sleep_for(5ms);
    }
    return pred();
}

json get_json(httplib::Client& client, const std::string& path, int expected_status = 200) {
    const auto res = client.Get(path);
    REQUIRE(res);
    CHECK(res->status == expected_status);
    return json::parse(res->body);
}

int post_label(httplib::Client& client, const std::string& query_id, const std::string& body) {
    const auto res = client.Post("/api/queries/" + query_id + "/label", body, "application/json");
    REQUIRE(res);
    return res->status;
}

std::string label_for(const RunFixture& fx, const json& query) {
    return fx.truth.contains(query["record_id"].get<std::string>()) ? "anomalous" : "normal";
}

/// Loop thread with telemetry, a run directory and a human oracle.
struct LiveRun {
    RunFixture fx = make_fixture();
    testing::TempDir tmp{"http"};
    service::QueryBoard board;
    service::TelemetryStore telemetry;
    active::RunDirectory directory{tmp.path() / "run"};
    active::ObserverList observers;
    service::OracleService server{board, telemetry, service::ServiceOptions{"127.0.0.1", 0}};
    std::thread loop;
    std::exception_ptr failure;
    std::atomic<bool> done{false};
    int port = 0;

    LiveRun() {
        observers.add(directory);
        observers.add(telemetry);
        port = server.start();
    }

    void start() {
        auto state = active::initial_state(fx.splits, 5);
        telemetry.begin_run(state, fx.dataset);
        loop = std::thread([this, state]() mutable {
            try {
                service::HumanOracle oracle(board, fx.dataset);
                (void)active::run_active_learning(fx.dataset, fx.truth, std::move(state), std::nullopt, oracle, fx.hp,
                                                  fx.config, &observers);
            } catch (...) {
                failure = std::current_exception();
            }
            done = true;
        });
    }

    ~LiveRun() {
        board.close();
        if (loop.joinable()) loop.join();
        server.stop();
    }
};

std::size_t history_size(httplib::Client& client) {
    const auto res = client.Get("/api/state");
    if (!res || res->status != 200) return 0;
    return json::parse(res->body)["history"].size();
}

}  // namespace

TEST_CASE("state is 404 until a run is announced") {
    service::QueryBoard board;
    service::TelemetryStore telemetry;
    service::OracleService server(board, telemetry, {"127.0.0.1", 0});
    const int port = server.start();
    httplib::Client client("127.0.0.1", port);
    const auto body = get_json(client, "/api/state", 404);
    CHECK(body.contains("error"));
    CHECK(body["schema_version"] == 1);
    get_json(client, "/api/ranking", 404);
    const auto queries = get_json(client, "/api/queries");
    CHECK(queries["queries"].empty());
}

TEST_CASE("a second service cannot bind the same port") {
    service::QueryBoard board;
    service::TelemetryStore telemetry;
    service::OracleService first(board, telemetry, {"127.0.0.1", 0});
    const int port = first.start();
    service::OracleService second(board, telemetry, {"127.0.0.1", port});
    CHECK_THROWS_AS(second.start(), IoError);
}

TEST_CASE("human oracle round trip over HTTP") {
    LiveRun run;
    httplib::Client client("127.0.0.1", run.port);

    std::atomic<bool> stop_hammer{false};
    std::atomic<int> torn{0};
    std::atomic<int> polls{0};
    std::thread hammer([&]() {
        httplib::Client poller("127.0.0.1", run.port);
        while (!stop_hammer) {
            const auto res = poller.Get("/api/state");
            if (res && res->status == 200) {
                if (!service::verify_checksum(json::parse(res->body))) ++torn;
                ++polls;
            }
        }
    });

    run.start();
    const auto initial = get_json(client, "/api/state");
    CHECK(initial["iteration"] == 0);
    CHECK(initial["history"].empty());
    get_json(client, "/api/ranking?iter=1", 404);

    for (std::size_t iteration = 1; iteration <= 2; ++iteration) {
        json listed;
        REQUIRE(wait_until([&]() {
            listed = get_json(client, "/api/queries");
            return listed["queries"].size() == 3;
        }));
        CHECK(listed["schema_version"] == 1);
        const auto& queries = listed["queries"];
        for (std::size_t i = 1; i < queries.size(); ++i) {
            CHECK(queries[i - 1]["uncertainty"].get<double>() <= queries[i]["uncertainty"].get<double>());
        }
        for (const auto& q : queries) {
            CHECK(q.contains("top_attributes"));
            CHECK(q.contains("issued_at"));
            CHECK(q.contains("anomaly_score"));
            CHECK(q["query_id"].get<std::string>().rfind("q" + std::to_string(iteration) + "-", 0) == 0);
        }

        const auto first_id = queries[0]["query_id"].get<std::string>();
        CHECK(post_label(client, first_id, R"({"label": "maybe"})") == 400);
        CHECK(post_label(client, first_id, "not json") == 400);
        CHECK(post_label(client, first_id, R"({"tag": "normal"})") == 400);
        CHECK(post_label(client, "q99-0", R"({"label": "normal"})") == 404);

        const auto first_label = label_for(run.fx, queries[0]);
        const auto ack = client.Post("/api/queries/" + first_id + "/label", json{{"label", first_label}}.dump(),
                                     "application/json");
        REQUIRE(ack);
        CHECK(ack->status == 200);
        const auto ack_body = json::parse(ack->body);
        CHECK(ack_body["remaining"] == 2);
        CHECK(ack_body["label"] == first_label);
        const auto flipped = first_label == "normal" ? "anomalous" : "normal";
        CHECK(post_label(client, first_id, json{{"label", flipped}}.dump()) == 409);
        CHECK(get_json(client, "/api/queries")["queries"].size() == 2);
        CHECK(history_size(client) == iteration - 1);

        CHECK(post_label(client, queries[1]["query_id"], json{{"label", label_for(run.fx, queries[1])}}.dump()) ==
              200);
        CHECK(history_size(client) == iteration - 1);
        CHECK(post_label(client, queries[2]["query_id"], json{{"label", label_for(run.fx, queries[2])}}.dump()) ==
              200);
        const auto answered = std::chrono::steady_clock::now();
        REQUIRE(wait_until([&]() { return history_size(client) == iteration; }));
        CHECK(std::chrono::steady_clock::now() - answered < 1s);

        const auto state = get_json(client, "/api/state");
        CHECK(state["iteration"] == iteration);
        CHECK(state["history"].back()["iteration"] == iteration);
        const auto& last = state["last_record"];
        CHECK(last["iteration"] == iteration);
        CHECK(last["queried_ids"].size() == 3);
        if (first_label == "normal") {
            CHECK(std::find(last["queried_ids"].begin(), last["queried_ids"].end(), queries[0]["record_id"]) !=
                  last["queried_ids"].end());
        }
    }

    REQUIRE(wait_until([&]() { return run.done.load(); }));
    run.loop.join();
    if (run.failure) std::rethrow_exception(run.failure);
    stop_hammer = true;
    hammer.join();
    CHECK(polls > 0);
    CHECK(torn == 0);

    const auto final_state = get_json(client, "/api/state");
    CHECK(final_state["finished"] == true);
    CHECK(final_state["history"].size() == 2);
    CHECK(final_state["known_anomalies"].size() == final_state["pool_sizes"]["known_anomalies"]);

    SUBCASE("ranking endpoint mirrors the ranking file") {
        for (std::size_t k = 1; k <= 2; ++k) {
            const auto body = get_json(client, "/api/ranking?iter=" + std::to_string(k));
            const auto lines = testing::read_lines(run.directory.ranking_path(k));
            const auto& rows = body["rows"];
            CHECK(body["total"] == rows.size());
            REQUIRE(lines.size() >= rows.size() + 1);
            for (std::size_t i = 0; i < rows.size(); ++i) {
                std::stringstream line(lines[i + 1]);
                std::string id, score, rank;
                std::getline(line, id, ',');
                std::getline(line, score, ',');
                std::getline(line, rank, ',');
                REQUIRE(rows[i]["id"] == id);
                REQUIRE(rows[i]["rank"] == std::stoul(rank));
                REQUIRE(rows[i]["rank"] == i + 1);
                REQUIRE(rows[i]["score"].get<double>() == std::strtod(score.c_str(), nullptr));
            }
        }
        const auto latest = get_json(client, "/api/ranking");
        CHECK(latest["iteration"] == 2);
        CHECK(get_json(client, "/api/ranking?iter=2&limit=0")["rows"].empty());
        CHECK(get_json(client, "/api/ranking?iter=2&limit=5")["rows"].size() == 5);
        get_json(client, "/api/ranking?iter=3", 404);
        get_json(client, "/api/ranking?iter=0", 404);
        get_json(client, "/api/ranking?iter=abc", 400);
        get_json(client, "/api/ranking?limit=-1", 400);

        std::size_t flagged = 0;
        for (const auto& row : latest["rows"]) flagged += row["is_known_anomaly"].get<bool>() ? 1 : 0;
        CHECK(flagged == final_state["known_anomalies"].size());
    }
}

TEST_CASE("closing the session suspends the loop without advancing") {
    LiveRun run;
    httplib::Client client("127.0.0.1", run.port);
    run.start();
    json listed;
    REQUIRE(wait_until([&]() {
        listed = get_json(client, "/api/queries");
        return listed["queries"].size() == 3;
    }));
    CHECK(post_label(client, listed["queries"][0]["query_id"], R"({"label": "normal"})") == 200);
    run.board.close();
    REQUIRE(wait_until([&]() { return run.done.load(); }));
    run.loop.join();
    REQUIRE(run.failure);
    CHECK_THROWS_AS(std::rethrow_exception(run.failure), SuspendedError);
    CHECK(post_label(client, listed["queries"][1]["query_id"], R"({"label": "normal"})") == 409);
    CHECK(history_size(client) == 0);
    CHECK_FALSE(run.directory.has_snapshot());
}
