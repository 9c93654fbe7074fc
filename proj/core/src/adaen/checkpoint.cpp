#include "aladaen/adaen/checkpoint.hpp"

#include <fstream>

#include "aladaen/errors.hpp"

namespace aladaen::adaen {

void save_checkpoint(const std::filesystem::path& path, const AdaenModel& model) {
    nlohmann::json j = {{"schema_version", kCheckpointSchemaVersion}, {"kind", "adaen"}, {"model", model.to_json()}};
    std::ofstream out(path, std::ios::binary);
    if (!out) throw IoError("cannot write checkpoint '" + path.string() + "'");
    out << j.dump() << '\n';
}

AdaenModel load_checkpoint(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot open checkpoint '" + path.string() + "'");
    nlohmann::json j;
    try {
        in >> j;
    } catch (const nlohmann::json::exception& e) {
        throw FormatError("checkpoint '" + path.string() + "' is not valid JSON: " + e.what());
    }
    if (j.value("kind", "") != "adaen") throw FormatError("'" + path.string() + "' is not an ADAEN checkpoint");
    if (j.value("schema_version", 0) != kCheckpointSchemaVersion) {
        throw FormatError("unsupported checkpoint schema version");
    }
    try {
        return AdaenModel::from_json(j.at("model"));
    } catch (const nlohmann::json::exception& e) {
        throw FormatError("malformed checkpoint: " + std::string(e.what()));
    }
}

}  // namespace aladaen::adaen
