#include <doctest.h>

#include <chrono>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <thread>

#include <netinet/in.h>
#include <sys/socket.h>
#include <unistd.h>

#include <nlohmann/json.hpp>

#include "aladaen/active/run_directory.hpp"
#include "aladaen/active/state.hpp"
#include "aladaen/data/dataset.hpp"
#include "commands.hpp"
#include "test_support.hpp"

#include <httplib.h>

using namespace aladaen;
using namespace std::chrono_literals;
using nlohmann::json;

namespace {

struct Outcome {
    int code = -1;
    std::string out;
    std::string err;
};

Outcome run(std::vector<std::string> args) {
    std::ostringstream out;
    std::ostringstream err;
    Outcome o;
    o.code = cli::run_cli(args, out, err);
    o.out = out.str();
    o.err = err.str();
    return o;
}

json read_json(const std::filesystem::path& p) { return json::parse(testing::read_file(p)); }

/// Small synthetic dataset shared by the command tests.
struct SmallData {
    testing::TempDir tmp{"cli"};
    std::string data;
    std::string truth;

    SmallData() {
        const auto o = run({"synth", "--n", "200", "--d", "12", "--rate", "0.05", "--seed", "3", "--out",
                            (tmp / "synth").string()});
        REQUIRE(o.code == 0);
        data = (tmp / "synth" / "dataset.csv").string();
        truth = (tmp / "synth" / "truth.txt").string();
    }
};

std::vector<std::string> model_flags() {
    return {"--latent", "4", "--tokens", "2", "--batch", "32", "--epochs", "3", "--lr", "1e-3"};
}

std::vector<std::string> active_args(const SmallData& d, const std::filesystem::path& out,
                                     std::vector<std::string> extra = {}) {
    std::vector<std::string> args{"active", "--data", d.data, "--truth", d.truth, "--iters", "3", "--Q", "4",
                                  "--retrain-epochs", "1", "--gan-steps", "20", "--out", out.string()};
    for (const auto& f : model_flags()) args.push_back(f);
    for (auto& e : extra) args.push_back(std::move(e));
    return args;
}

std::vector<std::string> history_without_time(const std::filesystem::path& path) {
    std::vector<std::string> out;
    for (const auto& line : testing::read_lines(path)) {
        if (!line.empty()) out.push_back(active::dump_without(json::parse(line), {"wall_time"}));
    }
    return out;
}

int free_port() {
    const int fd = ::socket(AF_INET, SOCK_STREAM, 0);
    REQUIRE(fd >= 0);
    sockaddr_in addr{};
    addr.sin_family = AF_INET;
    addr.sin_addr.s_addr = htonl(INADDR_LOOPBACK);
    addr.sin_port = 0;
    REQUIRE(::bind(fd, reinterpret_cast<sockaddr*>(&addr), sizeof(addr)) == 0);
    socklen_t len = sizeof(addr);
    REQUIRE(::getsockname(fd, reinterpret_cast<sockaddr*>(&addr), &len) == 0);
    ::close(fd);
    return ntohs(addr.sin_port);
}

}  // namespace

TEST_CASE("synth writes the planted anomaly count and is reproducible") {
    testing::TempDir tmp("synth");
    const auto a = run({"synth", "--n", "4000", "--d", "64", "--rate", "0.005", "--seed", "42", "--out",
                        (tmp / "a").string()});
    REQUIRE(a.code == 0);
    CHECK(json::parse(a.out)["n_anomalies"] == 20);
    const auto truth_lines = testing::read_lines(tmp / "a" / "truth.txt");
    CHECK(std::count_if(truth_lines.begin(), truth_lines.end(), [](const std::string& l) { return !l.empty(); }) ==
          20);
    const auto b = run({"synth", "--n", "4000", "--d", "64", "--rate", "0.005", "--seed", "42", "--out",
                        (tmp / "b").string()});
    REQUIRE(b.code == 0);
    CHECK(testing::read_file(tmp / "a" / "dataset.csv") == testing::read_file(tmp / "b" / "dataset.csv"));
    CHECK(testing::read_file(tmp / "a" / "truth.txt") == testing::read_file(tmp / "b" / "truth.txt"));
    const auto ds = data::load_csv(tmp / "a" / "dataset.csv");
    CHECK(ds.rows() == 4000);
    CHECK(ds.cols() == 64);
}

TEST_CASE("synth rejects a zero anomaly rate and bad flags") {
    testing::TempDir tmp("synth-bad");
    CHECK(run({"synth", "--rate", "0", "--out", tmp.path().string()}).code == cli::kExitUsage);
    CHECK(run({"synth", "--n", "many"}).code == cli::kExitUsage);
    CHECK(run({"frobnicate"}).code == cli::kExitUsage);
    CHECK(run({}).code == cli::kExitUsage);
    CHECK(run({"--help"}).code == cli::kExitOk);
}

TEST_CASE("the output root comes from the environment") {
    testing::TempDir tmp("root");
    ::setenv(cli::kOutputRootEnv, tmp.path().c_str(), 1);
    const auto o = run({"synth", "--n", "50", "--d", "8", "--rate", "0.1"});
    ::unsetenv(cli::kOutputRootEnv);
    REQUIRE(o.code == 0);
    CHECK(std::filesystem::exists(tmp / "synth" / "dataset.csv"));
}

TEST_CASE("train writes a checkpoint, a ranking and metrics") {
    SmallData d;
    const auto out = d.tmp / "train";
    std::vector<std::string> args{"train", "--data", d.data, "--truth", d.truth, "--eval", "--out", out.string()};
    for (const auto& f : model_flags()) args.push_back(f);
    const auto o = run(args);
    REQUIRE(o.code == 0);
    const auto metrics = read_json(out / "metrics.json");
    CHECK(metrics["ndcg_full"].get<double>() >= 0.0);
    CHECK(metrics["ndcg_full"].get<double>() <= 1.0);
    CHECK(metrics.contains("ndcg_eval_pool"));
    CHECK(metrics["report"]["n_records"] == 200);
    CHECK(metrics["training"]["epochs"] == 3);
    CHECK(std::filesystem::exists(out / "model.json"));
    CHECK(testing::read_lines(out / "ranking.csv").front() == "id,score,rank");

    const auto scored = run({"score", "--model", (out / "model.json").string(), "--data", d.data, "--truth", d.truth,
                             "--out", (d.tmp / "scored.csv").string()});
    REQUIRE(scored.code == 0);
    CHECK(testing::read_file(d.tmp / "scored.csv") == testing::read_file(out / "ranking.csv"));
    CHECK(json::parse(scored.out)["report"]["ndcg"] == metrics["ndcg_full"]);
}

TEST_CASE("train with zero epochs still scores") {
    SmallData d;
    const auto out = d.tmp / "untrained";
    const auto o = run({"train", "--data", d.data, "--truth", d.truth, "--epochs", "0", "--latent", "4", "--tokens",
                        "2", "--out", out.string()});
    REQUIRE(o.code == 0);
    CHECK(read_json(out / "metrics.json")["training"]["epochs"] == 0);
    CHECK(testing::read_lines(out / "ranking.csv").size() >= 201);
}

TEST_CASE("train reports missing or malformed inputs") {
    SmallData d;
    const auto eval_without_truth = run({"train", "--data", d.data, "--eval"});
    CHECK(eval_without_truth.code == cli::kExitUsage);
    CHECK(eval_without_truth.err.find("truth") != std::string::npos);

    const auto missing = (d.tmp / "nope.txt").string();
    const auto absent = run({"train", "--data", d.data, "--truth", missing, "--eval"});
    CHECK(absent.code == cli::kExitData);
    CHECK(absent.err.find("nope.txt") != std::string::npos);

    {
        std::ofstream bad(d.tmp / "bad.csv");
        bad << "id,a,b\nr1,0,1\nr2,1,7\n";
    }
    const auto malformed = run({"train", "--data", (d.tmp / "bad.csv").string()});
    CHECK(malformed.code == cli::kExitData);
    CHECK(malformed.err.find("line 3") != std::string::npos);
    CHECK(run({"train"}).code == cli::kExitUsage);
}

TEST_CASE("active runs, summarizes and refuses to overwrite") {
    SmallData d;
    const auto baseline_dir = d.tmp / "baseline";
    std::vector<std::string> train_args{"train", "--data", d.data, "--truth", d.truth, "--out", baseline_dir.string()};
    for (const auto& f : model_flags()) train_args.push_back(f);
    REQUIRE(run(train_args).code == 0);

    const auto out = d.tmp / "active";
    const auto o = run(active_args(d, out, {"--baseline", (baseline_dir / "metrics.json").string()}));
    REQUIRE(o.code == 0);
    const auto summary = read_json(out / "summary.json");
    CHECK(summary["iterations"].get<int>() <= 3);
    CHECK(history_without_time(out / "history.jsonl").size() == summary["iterations"].get<std::size_t>());
    for (const char* key : {"max", "mean", "median"}) CHECK(summary["ndcg_full"].contains(key));
    const double baseline = read_json(baseline_dir / "metrics.json")["ndcg_full"];
    CHECK(summary["baseline_ndcg_full"] == baseline);
    const double best = summary["ndcg_full"]["max"];
    CHECK(summary["relative_improvement"].get<double>() ==
          doctest::Approx((best - baseline) / baseline * 100.0).epsilon(1e-12));
    CHECK(std::filesystem::exists(out / "run_config.json"));
    CHECK(std::filesystem::exists(out / "ranking_iter1.csv"));

    CHECK(run(active_args(d, out)).code == cli::kExitUsage);
    const auto again = run({"active", "--resume", out.string()});
    CHECK(again.code == 0);
    CHECK(history_without_time(out / "history.jsonl").size() == summary["iterations"].get<std::size_t>());
    CHECK(run({"active", "--resume", (d.tmp / "nothing").string()}).code == cli::kExitData);
    CHECK(run({"active", "--data", d.data}).code == cli::kExitUsage);
    CHECK(run(active_args(d, d.tmp / "badq", {"--q", "100"})).code == cli::kExitUsage);
}

TEST_CASE("active command histories are identical across invocations") {
    SmallData d;
    REQUIRE(run(active_args(d, d.tmp / "one")).code == 0);
    REQUIRE(run(active_args(d, d.tmp / "two")).code == 0);
    CHECK(history_without_time(d.tmp / "one" / "history.jsonl") ==
          history_without_time(d.tmp / "two" / "history.jsonl"));
    CHECK(testing::read_file(d.tmp / "one" / "model.json") == testing::read_file(d.tmp / "two" / "model.json"));
}

TEST_CASE("an unanswered human session suspends and resumes over HTTP") {
    SmallData d;
    const auto out = d.tmp / "human";
    const int port = free_port();
    const auto suspended = run(active_args(
        d, out, {"--oracle", "human", "--port", std::to_string(port), "--label-timeout", "0.3", "--no-early-stop"}));
    INFO(suspended.err);
    CHECK(suspended.code == cli::kExitSuspended);
    CHECK(suspended.err.find("resume with: aladaen active --resume") != std::string::npos);
    CHECK(read_json(out / "state.json")["iteration"] == 0);

    Outcome resumed;
    std::thread session([&]() { resumed = run({"active", "--resume", out.string(), "--port", std::to_string(port)}); });
    const auto truth = data::load_ground_truth(d.truth);
    std::size_t answered = 0;
    const auto deadline = std::chrono::steady_clock::now() + 60s;
    while (answered < 12 && std::chrono::steady_clock::now() < deadline) {
        httplib::Client client("127.0.0.1", port);
        const auto res = client.Get("/api/queries");
        if (!res || res->status != 200) {
            std::this_thread::sleep_for(10ms);
            continue;
        }
        const auto body = json::parse(res->body);
        for (const auto& q : body["queries"]) {
            const auto label = truth.contains(q["record_id"].get<std::string>()) ? "anomalous" : "normal";
            const auto ack = client.Post("/api/queries/" + q["query_id"].get<std::string>() + "/label",
                                         json{{"label", label}}.dump(), "application/json");
            if (ack && ack->status == 200) ++answered;
        }
        std::this_thread::sleep_for(10ms);
    }
    session.join();
    INFO(resumed.err);
    CHECK(answered == 12);
    REQUIRE(resumed.code == 0);

    // Same labels as the simulated oracle, hence the same history.
    REQUIRE(run(active_args(d, d.tmp / "simulated", {"--no-early-stop"})).code == 0);
    CHECK(history_without_time(out / "history.jsonl") == history_without_time(d.tmp / "simulated" / "history.jsonl"));
}

TEST_CASE("report writes smoothed series and boxplot statistics") {
    testing::TempDir tmp("report");
    {
        std::ofstream history(tmp / "history.jsonl");
        for (std::size_t k = 1; k <= 6; ++k) {
            active::IterationRecord r;
            r.iteration = k;
            r.ndcg_full = 0.8;
            r.ndcg_pool = 0.5;
            history << r.to_json().dump() << "\n";
        }
    }
    const auto o = run({"report", "--run", tmp.path().string()});
    REQUIRE(o.code == 0);
    const auto series = testing::read_lines(tmp / "ndcg_series.csv");
    REQUIRE(series.size() >= 7);
    CHECK(series[0] == "iteration,ndcg_raw,ndcg_smooth");
    for (std::size_t i = 1; i <= 6; ++i) {
        std::stringstream line(series[i]);
        std::string it, raw, smooth;
        std::getline(line, it, ',');
        std::getline(line, raw, ',');
        std::getline(line, smooth, ',');
        CHECK(std::stoul(it) == i);
        CHECK(std::stod(raw) == 0.8);
        CHECK(std::stod(smooth) == doctest::Approx(0.8).epsilon(1e-12));
    }
    const auto box = testing::read_lines(tmp / "boxplot.csv");
    CHECK(box[0] == "min,q1,median,q3,max");
    std::stringstream values(box[1]);
    std::string cell;
    while (std::getline(values, cell, ',')) CHECK(std::stod(cell) == doctest::Approx(0.8).epsilon(1e-12));
}

TEST_CASE("report boxplot agrees with a sorting oracle") {
    testing::TempDir tmp("report-box");
    const std::vector<double> values{0.61, 0.7, 0.55, 0.9, 0.72, 0.64, 0.8};
    {
        std::ofstream history(tmp / "history.jsonl");
        for (std::size_t k = 0; k < values.size(); ++k) {
            active::IterationRecord r;
            r.iteration = k + 1;
            r.ndcg_full = values[k];
            history << r.to_json().dump() << "\n";
        }
    }
    REQUIRE(run({"report", "--run", tmp.path().string(), "--out", (tmp / "plots").string()}).code == 0);
    auto sorted = values;
    std::sort(sorted.begin(), sorted.end());
    // Seven points: quartile positions 1.5, 3 and 4.5 in the sorted sample.
    const std::vector<double> expected{sorted[0], (sorted[1] + sorted[2]) / 2.0, sorted[3],
                                       (sorted[4] + sorted[5]) / 2.0, sorted[6]};
    const auto box = testing::read_lines(tmp / "plots" / "boxplot.csv");
    std::stringstream line(box[1]);
    std::string cell;
    for (double e : expected) {
        REQUIRE(std::getline(line, cell, ','));
        CHECK(std::stod(cell) == doctest::Approx(e).epsilon(1e-12));
    }
}

TEST_CASE("report rejects an empty or missing history") {
    testing::TempDir tmp("report-empty");
    { std::ofstream(tmp / "history.jsonl"); }
    CHECK(run({"report", "--run", tmp.path().string()}).code == cli::kExitData);
    CHECK(run({"report", "--run", (tmp / "missing").string()}).code == cli::kExitData);
}
