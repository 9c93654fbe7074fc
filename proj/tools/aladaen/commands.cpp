#include "commands.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <atomic>
#include <chrono>
#include <csignal>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <iterator>
#include <optional>
#include <thread>

#include <nlohmann/json.hpp>

#include "aladaen/active/loop.hpp"
#include "aladaen/active/run_directory.hpp"
#include "aladaen/active/smoothing.hpp"
#include "aladaen/adaen/checkpoint.hpp"
#include "aladaen/adaen/scoring.hpp"
#include "aladaen/adaen/trainer.hpp"
#include "aladaen/data/splits.hpp"
#include "aladaen/data/synthetic.hpp"
#include "aladaen/errors.hpp"
#include "aladaen/metrics/summary.hpp"
#include "aladaen/service/human_oracle.hpp"
#include "aladaen/service/server.hpp"

namespace aladaen::cli {

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

constexpr int kRunConfigSchemaVersion = 1;
constexpr std::uint64_t kTrainingStream = 0xa1;

std::atomic<bool> g_interrupted{false};

extern "C" void handle_interrupt(int) { g_interrupted = true; }

/// Usage errors detected after flag parsing.
class UsageError : public Error {
public:
    using Error::Error;
};

fs::path output_root() {
    const char* env = std::getenv(kOutputRootEnv);
    return env != nullptr && *env != '\0' ? fs::path(env) : fs::path("runs");
}

fs::path resolve_out(const std::string& flag, const char* subdir) {
    return flag.empty() ? output_root() / subdir : fs::path(flag);
}

void ensure_dir(const fs::path& dir) {
    std::error_code ec;
    fs::create_directories(dir, ec);
    if (ec) throw IoError("cannot create " + dir.string() + ": " + ec.message());
}

void write_json_file(const fs::path& path, const json& j) {
    std::ofstream out(path, std::ios::trunc);
    if (!out) throw IoError("cannot write " + path.string());
    out << j.dump(2) << "\n";
}

json read_json_file(const fs::path& path) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot open " + path.string());
    try {
        return json::parse(in);
    } catch (const json::exception& e) {
        throw FormatError(path.string() + ": " + e.what());
    }
}

std::string fmt(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

std::vector<std::size_t> all_rows(const data::BooleanDataset& ds) {
    std::vector<std::size_t> rows(ds.rows());
    for (std::size_t i = 0; i < rows.size(); ++i) rows[i] = i;
    return rows;
}

void add_model_flags(CLI::App* cmd, adaen::Hyperparams& hp) {
    cmd->add_option("--latent", hp.latent_dim, "Latent width k")->capture_default_str();
    cmd->add_option("--tokens", hp.attention_tokens, "Attention tokens T (must divide k)")->capture_default_str();
    cmd->add_option("--alpha", hp.alpha, "Weight of AE1 in the anomaly score")->capture_default_str();
    cmd->add_option("--lambda", hp.lambda, "Adversarial loss weight")->capture_default_str();
    cmd->add_option("--lr", hp.learning_rate, "Adam learning rate")->capture_default_str();
    cmd->add_option("--batch", hp.batch_size, "Mini-batch size")->capture_default_str();
    cmd->add_option("--epochs", hp.max_epochs, "Epoch cap for the initial training")->capture_default_str();
    cmd->add_option("--patience", hp.patience, "Early-stopping patience in epochs")->capture_default_str();
    cmd->add_option("--dropout", hp.dropout_p, "Dropout rate after the first encoder block")->capture_default_str();
}

// ---------------------------------------------------------------- synth

struct SynthOptions {
    data::SynthConfig config;
    std::string out;
};

int cmd_synth(const SynthOptions& o, std::ostream& out) {
    o.config.validate();
    const auto dir = resolve_out(o.out, "synth");
    ensure_dir(dir);
    const auto [dataset, truth] = data::generate_synthetic(o.config);
    data::write_csv(dir / "dataset.csv", dataset);
    data::write_ground_truth(dir / "truth.txt", truth);
    out << json{{"dataset", (dir / "dataset.csv").string()},
                {"truth", (dir / "truth.txt").string()},
                {"n_records", dataset.rows()},
                {"n_attributes", dataset.cols()},
                {"n_anomalies", truth.size()}}
               .dump(2)
        << "\n";
    return kExitOk;
}

// ---------------------------------------------------------------- train

struct TrainOptions {
    std::string data;
    std::string truth;
    bool eval = false;
    std::uint64_t seed = 42;
    double cold_start = 0.2;
    double validation = 0.1;
    adaen::Hyperparams hp;
    std::string out;
};

int cmd_train(const TrainOptions& o, std::ostream& out) {
    o.hp.validate();
    const auto dataset = data::load_csv(o.data);
    std::optional<data::GroundTruth> truth;
    if (!o.truth.empty()) truth = data::load_ground_truth(o.truth, dataset);
    if (o.eval && !truth) throw UsageError("--eval needs --truth");

    std::vector<std::size_t> train_rows;
    std::vector<std::size_t> validation_rows;
    std::vector<std::size_t> evaluation_pool;
    if (truth) {
        // The no-active-learning baseline sees every normal outside the validation split.
        const auto splits = data::make_splits(dataset, *truth, o.cold_start, o.validation, o.seed);
        train_rows = splits.labeled_normal;
        for (auto r : splits.unlabeled_pool) {
            if (!truth->contains(dataset.id(r))) train_rows.push_back(r);
        }
        std::sort(train_rows.begin(), train_rows.end());
        validation_rows = splits.validation;
        evaluation_pool = splits.unlabeled_pool;
    } else {
        train_rows = all_rows(dataset);
    }

    adaen::AdaenModel model(dataset.cols(), o.hp, o.seed);
    numerics::Rng rng = numerics::Rng(o.seed).fork(kTrainingStream);
    const auto& log = adaen::train(model, train_rows, validation_rows, dataset, rng, o.hp.max_epochs);

    const auto dir = resolve_out(o.out, "train");
    ensure_dir(dir);
    adaen::save_checkpoint(dir / "model.json", model);
    const auto ranking = adaen::score_dataset(model, all_rows(dataset), dataset);
    active::write_ranking_csv(dir / "ranking.csv", ranking);

    json metrics{{"seed", o.seed},
                 {"n_train", train_rows.size()},
                 {"n_validation", validation_rows.size()},
                 {"training",
                  {{"epochs", log.epochs.size()},
                   {"best_epoch", log.best_epoch},
                   {"best_validation", log.epochs.empty() ? json(nullptr) : json(log.best_validation)},
                   {"early_stopped", log.early_stopped}}}};
    if (truth) {
        const auto report = metrics::ndcg(ranking, *truth);
        const auto pool_report =
            metrics::ndcg(adaen::score_dataset(model, evaluation_pool, dataset), *truth);
        metrics["ndcg_full"] = report.ndcg;
        metrics["ndcg_eval_pool"] = pool_report.ndcg;
        metrics["report"] = report.to_json();
    }
    write_json_file(dir / "metrics.json", metrics);
    out << metrics.dump(2) << "\n";
    return kExitOk;
}

// ---------------------------------------------------------------- score

struct ScoreOptions {
    std::string model;
    std::string data;
    std::string truth;
    std::string out;
};

int cmd_score(const ScoreOptions& o, std::ostream& out) {
    const auto model = adaen::load_checkpoint(o.model);
    const auto dataset = data::load_csv(o.data);
    if (model.input_dim() != dataset.cols()) throw ShapeError("model width does not match the dataset");
    const auto ranking = adaen::score_dataset(model, all_rows(dataset), dataset);
    const fs::path path = o.out.empty() ? output_root() / "score" / "ranking.csv" : fs::path(o.out);
    if (path.has_parent_path()) ensure_dir(path.parent_path());
    active::write_ranking_csv(path, ranking);
    json summary{{"ranking", path.string()}, {"n_records", ranking.size()}};
    if (!o.truth.empty()) {
        summary["report"] = metrics::ndcg(ranking, data::load_ground_truth(o.truth, dataset)).to_json();
    }
    out << summary.dump(2) << "\n";
    return kExitOk;
}

// ---------------------------------------------------------------- active

struct ActiveOptions {
    std::string data;
    std::string truth;
    std::string oracle = "ground-truth";
    std::uint64_t seed = 42;
    double cold_start = 0.2;
    double validation = 0.1;
    adaen::Hyperparams hp;
    active::ALConfig al;
    bool no_recalibrate = false;
    bool no_early_stop = false;
    std::string host = "127.0.0.1";
    int port = service::kDefaultPort;
    double label_timeout = 0.0;
    std::string out;
    std::string resume;
    std::string baseline;
};

json run_config_json(const ActiveOptions& o) {
    return {{"schema_version", kRunConfigSchemaVersion},
            {"data", fs::absolute(o.data).string()},
            {"truth", fs::absolute(o.truth).string()},
            {"oracle", o.oracle},
            {"seed", o.seed},
            {"cold_start", o.cold_start},
            {"validation", o.validation},
            {"hyperparams", o.hp.to_json()},
            {"active_learning", o.al.to_json()}};
}

void apply_run_config(const json& j, ActiveOptions& o) {
    try {
        if (j.at("schema_version").get<int>() != kRunConfigSchemaVersion) {
            throw FormatError("unsupported run_config.json schema version");
        }
        o.data = j.at("data").get<std::string>();
        o.truth = j.at("truth").get<std::string>();
        o.oracle = j.at("oracle").get<std::string>();
        o.seed = j.at("seed").get<std::uint64_t>();
        o.cold_start = j.at("cold_start").get<double>();
        o.validation = j.at("validation").get<double>();
        o.hp = adaen::Hyperparams::from_json(j.at("hyperparams"));
        o.al = active::ALConfig::from_json(j.at("active_learning"));
    } catch (const json::exception& e) {
        throw FormatError(std::string("invalid run_config.json: ") + e.what());
    }
}

json series_summary(const std::vector<double>& v) {
    if (v.empty()) return nullptr;
    return {{"max", *std::max_element(v.begin(), v.end())},
            {"mean", metrics::mean(v)},
            {"median", metrics::median(v)}};
}

json run_summary(const active::ActiveLearningState& state, const std::string& baseline_path) {
    std::vector<double> full;
    std::vector<double> pool;
    for (const auto& r : state.history) {
        full.push_back(r.ndcg_full);
        pool.push_back(r.ndcg_pool);
    }
    json s{{"iterations", state.history.size()},
           {"finished", state.finished},
           {"stop_reason", state.stop_reason},
           {"ndcg_full", series_summary(full)},
           {"ndcg_pool", series_summary(pool)},
           {"known_anomalies", state.known_anomalies.size()}};
    if (!full.empty()) {
        const auto best = std::max_element(full.begin(), full.end());
        s["best_iteration"] = state.history[static_cast<std::size_t>(best - full.begin())].iteration;
        s["first_iteration_ndcg_full"] = full.front();
    }
    if (!baseline_path.empty()) {
        const auto baseline = read_json_file(baseline_path);
        if (!baseline.contains("ndcg_full") || !baseline["ndcg_full"].is_number()) {
            throw FormatError(baseline_path + " has no numeric ndcg_full");
        }
        const double b = baseline["ndcg_full"].get<double>();
        s["baseline_ndcg_full"] = b;
        if (!full.empty()) s["relative_improvement"] = metrics::relative_improvement(b, s["ndcg_full"]["max"]);
    }
    return s;
}

int cmd_active(ActiveOptions o, std::ostream& out, std::ostream& err) {
    fs::path dir;
    if (!o.resume.empty()) {
        dir = o.resume;
        if (!fs::exists(dir / "run_config.json")) throw IoError(dir.string() + " holds no resumable run");
        const int port = o.port;
        const std::string baseline = o.baseline;
        const double timeout = o.label_timeout;
        apply_run_config(read_json_file(dir / "run_config.json"), o);
        o.port = port;
        o.baseline = baseline;
        o.label_timeout = timeout;
    } else {
        if (o.data.empty() || o.truth.empty()) throw UsageError("active needs --data and --truth (or --resume)");
        if (o.no_recalibrate) o.al.recalibrate_threshold = false;
        if (o.no_early_stop) o.al.stop_on_perfect = false;
        o.hp.validate();
        o.al.validate();
        dir = resolve_out(o.out, "active");
        if (fs::exists(dir / "state.json")) {
            throw UsageError(dir.string() + " already holds a run; pass --resume to continue it");
        }
    }
    if (o.oracle != "ground-truth" && o.oracle != "human") throw UsageError("unknown oracle kind " + o.oracle);

    const auto dataset = data::load_csv(o.data);
    const auto truth = data::load_ground_truth(o.truth, dataset);
    active::RunDirectory run_dir(dir);
    if (o.resume.empty()) run_dir.write_json("run_config.json", run_config_json(o));

    active::ActiveLearningState state;
    std::optional<adaen::AdaenModel> model;
    if (run_dir.has_snapshot()) {
        std::tie(state, model) = run_dir.load(dataset);
    } else {
        state = active::initial_state(data::make_splits(dataset, truth, o.cold_start, o.validation, o.seed), o.seed);
        run_dir.write_state(state, dataset);
    }

    active::ObserverList observers;
    observers.add(run_dir);
    active::GroundTruthOracle truth_oracle(truth);
    service::QueryBoard board;
    service::TelemetryStore telemetry;
    std::unique_ptr<service::OracleService> server;
    std::unique_ptr<service::HumanOracle> human;
    std::atomic<bool> waiting{false};
    std::atomic<bool> done{false};
    std::thread watcher;
    active::Oracle* oracle = &truth_oracle;

    if (o.oracle == "human") {
        telemetry.begin_run(state, dataset);
        observers.add(telemetry);
        server = std::make_unique<service::OracleService>(board, telemetry, service::ServiceOptions{o.host, o.port});
        const int port = server->start();
        err << "oracle service listening on http://" << o.host << ":" << port << std::endl;
        human = std::make_unique<service::HumanOracle>(board, dataset);
        human->on_waiting([&](bool w) {
            waiting = w;
            telemetry.set_status(w ? "awaiting_labels" : "running");
        });
        oracle = human.get();
        g_interrupted = false;
        std::signal(SIGINT, handle_interrupt);
        std::signal(SIGTERM, handle_interrupt);
        watcher = std::thread([&] {
            auto waiting_since = std::chrono::steady_clock::now();
            bool was_waiting = false;
            while (!done) {
                std::this_thread::sleep_for(std::chrono::milliseconds(20));
                const bool w = waiting;
                if (w && !was_waiting) waiting_since = std::chrono::steady_clock::now();
                was_waiting = w;
                const bool timed_out =
                    w && o.label_timeout > 0.0 &&
                    std::chrono::duration<double>(std::chrono::steady_clock::now() - waiting_since).count() >
                        o.label_timeout;
                if (g_interrupted || timed_out) {
                    board.close();
                    return;
                }
            }
        });
    }
    const auto finish_watcher = [&] {
        done = true;
        if (watcher.joinable()) watcher.join();
        if (server) server->stop();
        if (o.oracle == "human") {
            std::signal(SIGINT, SIG_DFL);
            std::signal(SIGTERM, SIG_DFL);
        }
    };

    try {
        auto result = active::run_active_learning(dataset, truth, state, std::move(model), *oracle, o.hp, o.al,
                                                  &observers);
        finish_watcher();
        const auto summary = run_summary(result.state, o.baseline);
        run_dir.write_json("summary.json", summary);
        out << summary.dump(2) << "\n";
        return kExitOk;
    } catch (const SuspendedError& e) {
        telemetry.set_status("suspended");
        finish_watcher();
        err << "session suspended: " << e.what() << "\n"
            << "resume with: aladaen active --resume " << dir.string() << "\n";
        return kExitSuspended;
    } catch (...) {
        finish_watcher();
        throw;
    }
}

// ---------------------------------------------------------------- report

struct ReportOptions {
    std::string run;
    double sigma = 2.0;
    std::string out;
};

int cmd_report(const ReportOptions& o, std::ostream& out) {
    const fs::path run(o.run);
    std::ifstream in(run / "history.jsonl");
    if (!in) throw IoError("cannot open " + (run / "history.jsonl").string());
    std::vector<std::size_t> iterations;
    std::vector<double> raw;
    std::string line;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        try {
            const auto record = active::IterationRecord::from_json(json::parse(line));
            iterations.push_back(record.iteration);
            raw.push_back(record.ndcg_full);
        } catch (const json::exception& e) {
            throw FormatError("history.jsonl: " + std::string(e.what()));
        }
    }
    if (raw.empty()) throw FormatError("history.jsonl holds no iterations");

    const auto smooth = active::gaussian_smooth(raw, o.sigma);
    const auto five = metrics::five_number_summary(raw);
    const fs::path dir = o.out.empty() ? run : fs::path(o.out);
    ensure_dir(dir);
    {
        std::ofstream series(dir / "ndcg_series.csv", std::ios::trunc);
        if (!series) throw IoError("cannot write " + (dir / "ndcg_series.csv").string());
        series << "iteration,ndcg_raw,ndcg_smooth\n";
        for (std::size_t i = 0; i < raw.size(); ++i) {
            series << iterations[i] << "," << fmt(raw[i]) << "," << fmt(smooth[i]) << "\n";
        }
    }
    {
        std::ofstream box(dir / "boxplot.csv", std::ios::trunc);
        if (!box) throw IoError("cannot write " + (dir / "boxplot.csv").string());
        box << "min,q1,median,q3,max\n"
            << fmt(five.min) << "," << fmt(five.q1) << "," << fmt(five.median) << "," << fmt(five.q3) << ","
            << fmt(five.max) << "\n";
    }
    out << json{{"series", (dir / "ndcg_series.csv").string()},
                {"boxplot", (dir / "boxplot.csv").string()},
                {"iterations", raw.size()},
                {"min", five.min},
                {"q1", five.q1},
                {"median", five.median},
                {"q3", five.q3},
                {"max", five.max}}
               .dump(2)
        << "\n";
    return kExitOk;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Adversarial dual-autoencoder anomaly ranking with active learning", "aladaen"};
    app.require_subcommand(1);

    SynthOptions synth;
    auto* synth_cmd = app.add_subcommand("synth", "Generate a synthetic boolean dataset with planted anomalies");
    synth_cmd->add_option("--n", synth.config.n_records, "Number of records")->capture_default_str();
    synth_cmd->add_option("--d", synth.config.n_attributes, "Number of attributes")->capture_default_str();
    synth_cmd->add_option("--rate", synth.config.anomaly_rate, "Anomaly rate")->capture_default_str();
    synth_cmd->add_option("--density", synth.config.normal_density, "Mean attribute density")->capture_default_str();
    synth_cmd->add_option("--flips", synth.config.anomaly_flip_count, "Rare attributes set per anomaly")
        ->capture_default_str();
    synth_cmd->add_option("--seed", synth.config.seed, "Generator seed")->capture_default_str();
    synth_cmd->add_option("--out", synth.out, "Output directory");

    TrainOptions train;
    auto* train_cmd = app.add_subcommand("train", "Train on every normal record and score the dataset");
    train_cmd->add_option("--data", train.data, "Dataset CSV")->required();
    auto* truth_opt = train_cmd->add_option("--truth", train.truth, "Ground-truth anomaly list");
    train_cmd->add_flag("--eval", train.eval, "Require ground truth and report nDCG")->needs(truth_opt);
    train_cmd->add_option("--seed", train.seed, "Seed for splits, initialization and training")
        ->capture_default_str();
    train_cmd->add_option("--cold-start", train.cold_start, "Cold-start fraction (defines the evaluation pool)")
        ->capture_default_str();
    train_cmd->add_option("--val", train.validation, "Validation fraction of the normals")->capture_default_str();
    add_model_flags(train_cmd, train.hp);
    train_cmd->add_option("--out", train.out, "Output directory");

    ScoreOptions score;
    auto* score_cmd = app.add_subcommand("score", "Rank a dataset with a saved model");
    score_cmd->add_option("--model", score.model, "Model checkpoint")->required();
    score_cmd->add_option("--data", score.data, "Dataset CSV")->required();
    score_cmd->add_option("--truth", score.truth, "Ground-truth anomaly list for an nDCG report");
    score_cmd->add_option("--out", score.out, "Ranking CSV path");

    ActiveOptions act;
    auto* active_cmd = app.add_subcommand("active", "Run the active-learning loop");
    active_cmd->add_option("--data", act.data, "Dataset CSV");
    active_cmd->add_option("--truth", act.truth, "Ground-truth anomaly list");
    active_cmd->add_option("--oracle", act.oracle, "ground-truth or human")
        ->check(CLI::IsMember({"ground-truth", "human"}))
        ->capture_default_str();
    active_cmd->add_option("--seed", act.seed, "Run seed")->capture_default_str();
    active_cmd->add_option("--cold-start", act.cold_start, "Fraction of normals labeled up front")
        ->capture_default_str();
    active_cmd->add_option("--val", act.validation, "Validation fraction of the normals")->capture_default_str();
    add_model_flags(active_cmd, act.hp);
    active_cmd->add_option("--iters", act.al.n_iterations, "Iteration limit")->capture_default_str();
    active_cmd->add_option("--Q", act.al.query_budget, "Queries per iteration")->capture_default_str();
    active_cmd->add_option("--q", act.al.percentile, "Threshold percentile")->capture_default_str();
    active_cmd->add_option("--retrain-epochs", act.al.retrain_epochs, "Epoch cap for warm-start retraining")
        ->capture_default_str();
    active_cmd->add_flag("--no-recalibrate", act.no_recalibrate, "Freeze the threshold from iteration 1");
    active_cmd->add_flag("--no-early-stop", act.no_early_stop, "Keep iterating after a perfect pool ranking");
    active_cmd->add_option("--aug-ratio", act.al.augmentation_ratio, "Synthetic rows per confirmed normal")
        ->capture_default_str();
    active_cmd->add_option("--gan-steps", act.al.gan.steps, "GAN training steps per iteration")
        ->capture_default_str();
    active_cmd->add_option("--gan-lr", act.al.gan.learning_rate, "GAN learning rate")->capture_default_str();
    active_cmd->add_option("--host", act.host, "Service bind address (human oracle)")->capture_default_str();
    active_cmd->add_option("--port", act.port, "Service port (human oracle, 0 picks one)")->capture_default_str();
    active_cmd->add_option("--label-timeout", act.label_timeout,
                           "Suspend when a query batch stays unanswered this many seconds (0 waits forever)")
        ->capture_default_str();
    active_cmd->add_option("--out", act.out, "Run directory");
    active_cmd->add_option("--resume", act.resume, "Continue the run stored in this directory");
    active_cmd->add_option("--baseline", act.baseline, "metrics.json of a baseline train run");

    ReportOptions report;
    auto* report_cmd = app.add_subcommand("report", "Write plot-ready nDCG curves and boxplot statistics");
    report_cmd->add_option("--run", report.run, "Run directory")->required();
    report_cmd->add_option("--sigma", report.sigma, "Gaussian smoothing width")->capture_default_str();
    report_cmd->add_option("--out", report.out, "Output directory (defaults to the run directory)");

    std::vector<const char*> argv{"aladaen"};
    for (const auto& a : args) argv.push_back(a.c_str());
    try {
        app.parse(static_cast<int>(argv.size()), argv.data());
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? kExitOk : kExitUsage;
    }

    try {
        if (*synth_cmd) return cmd_synth(synth, out);
        if (*train_cmd) return cmd_train(train, out);
        if (*score_cmd) return cmd_score(score, out);
        if (*active_cmd) return cmd_active(act, out, err);
        if (*report_cmd) return cmd_report(report, out);
    } catch (const UsageError& e) {
        err << "usage error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const ArgumentError& e) {
        err << "usage error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const SuspendedError& e) {
        err << "session suspended: " << e.what() << "\n";
        return kExitSuspended;
    } catch (const FormatError& e) {
        err << "data error: " << e.what() << "\n";
        return kExitData;
    } catch (const IoError& e) {
        err << "data error: " << e.what() << "\n";
        return kExitData;
    } catch (const IntegrityError& e) {
        err << "data error: " << e.what() << "\n";
        return kExitData;
    } catch (const ShapeError& e) {
        err << "data error: " << e.what() << "\n";
        return kExitData;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        return kExitFailure;
    }
    return kExitUsage;
}

}  // namespace aladaen::cli
