#include "aladaen/active/run_directory.hpp"

#include <cstdio>
#include <fstream>

#include "aladaen/adaen/checkpoint.hpp"
#include "aladaen/errors.hpp"

namespace aladaen::active {

namespace fs = std::filesystem;

namespace {

void write_text(const fs::path& path, const std::string& text) {
    const fs::path tmp = path.string() + ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) throw IoError("cannot write " + tmp.string());
        out << text;
        if (!out) throw IoError("failed writing " + tmp.string());
    }
    fs::rename(tmp, path);
}

}  // namespace

RunDirectory::RunDirectory(fs::path root) : root_(std::move(root)) {
    std::error_code ec;
    fs::create_directories(root_, ec);
    if (ec) throw IoError("cannot create run directory " + root_.string() + ": " + ec.message());
}

fs::path RunDirectory::ranking_path(std::size_t iteration) const {
    return root_ / ("ranking_iter" + std::to_string(iteration) + ".csv");
}

fs::path RunDirectory::checkpoint_path(std::size_t iteration) const {
    return root_ / ("model_iter" + std::to_string(iteration) + ".json");
}

void RunDirectory::write_state(const ActiveLearningState& state, const data::BooleanDataset& dataset) const {
    write_text(state_path(), state.to_json(dataset).dump(1) + "\n");
}

void RunDirectory::write_history(const ActiveLearningState& state) const {
    std::string text;
    for (const auto& r : state.history) text += r.to_json().dump() + "\n";
    write_text(history_path(), text);
}

void RunDirectory::write_json(const std::string& name, const nlohmann::json& j) const {
    write_text(root_ / name, j.dump(2) + "\n");
}

nlohmann::json RunDirectory::read_json(const std::string& name) const {
    const fs::path path = root_ / name;
    std::ifstream in(path);
    if (!in) throw IoError("cannot open " + path.string());
    try {
        return nlohmann::json::parse(in);
    } catch (const nlohmann::json::exception& e) {
        throw FormatError(path.string() + ": " + e.what());
    }
}

void RunDirectory::on_iteration(const IterationContext& ctx) {
    const auto k = ctx.record.iteration;
    write_ranking_csv(ranking_path(k), ctx.full_ranking);
    adaen::save_checkpoint(checkpoint_path(k), ctx.model);
    adaen::save_checkpoint(latest_model_path(), ctx.model);
    write_history(ctx.state);
    // The state file goes last: it is the commit point a resumed run trusts.
    write_state(ctx.state, ctx.dataset);
}

bool RunDirectory::has_snapshot() const {
    return fs::exists(state_path());
}

std::pair<ActiveLearningState, std::optional<adaen::AdaenModel>> RunDirectory::load(
    const data::BooleanDataset& dataset) const {
    auto state = ActiveLearningState::from_json(read_json("state.json"), dataset);
    std::optional<adaen::AdaenModel> model;
    if (state.iteration > 0) model = adaen::load_checkpoint(checkpoint_path(state.iteration));
    return {std::move(state), std::move(model)};
}

void write_ranking_csv(const fs::path& path, const metrics::RankedList& ranking) {
    std::string text = "id,score,rank\n";
    char buf[64];
    for (std::size_t i = 0; i < ranking.size(); ++i) {
        std::snprintf(buf, sizeof buf, ",%.17g,%zu\n", ranking[i].score, i + 1);
        text += ranking[i].id;
        text += buf;
    }
    write_text(path, text);
}

std::string dump_without(nlohmann::json j, std::initializer_list<const char*> keys) {
    for (const char* k : keys) j.erase(k);
    return j.dump();
}

}  // namespace aladaen::active
