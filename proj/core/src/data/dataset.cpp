#include "aladaen/data/dataset.hpp"

#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>

#include "aladaen/errors.hpp"

namespace aladaen::data {
namespace {

std::vector<std::string> split_commas(const std::string& line) {
    std::vector<std::string> out;
    std::string field;
    std::istringstream in(line);
    while (std::getline(in, field, ',')) out.push_back(field);
    if (!line.empty() && line.back() == ',') out.emplace_back();
    return out;
}

void strip_cr(std::string& line) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
}

std::string trim(const std::string& s) {
    const auto begin = s.find_first_not_of(" \t\r");
    if (begin == std::string::npos) return {};
    const auto end = s.find_last_not_of(" \t\r");
    return s.substr(begin, end - begin + 1);
}

}  // namespace

std::string_view to_string(ViewTag tag) {
    switch (tag) {
        case ViewTag::PE: return "PE";
        case ViewTag::PX: return "PX";
        case ViewTag::PP: return "PP";
        case ViewTag::PN: return "PN";
        case ViewTag::PA: return "PA";
        case ViewTag::SYNTH: return "SYNTH";
    }
    return "SYNTH";
}

ViewTag view_tag_from_string(std::string_view name) {
    for (auto tag : {ViewTag::PE, ViewTag::PX, ViewTag::PP, ViewTag::PN, ViewTag::PA, ViewTag::SYNTH}) {
        if (to_string(tag) == name) return tag;
    }
    throw ArgumentError("unknown view tag '" + std::string(name) + "'");
}

BooleanDataset::BooleanDataset(std::vector<std::string> record_ids, std::vector<std::string> attribute_names,
                               std::vector<std::uint8_t> cells, ViewTag view)
    : record_ids_(std::move(record_ids)), attribute_names_(std::move(attribute_names)),
      cells_(std::move(cells)), view_(view) {
    if (cells_.size() != record_ids_.size() * attribute_names_.size()) {
        throw ShapeError("dataset cell count does not equal rows x attributes");
    }
    for (std::size_t i = 0; i < cells_.size(); ++i) {
        if (cells_[i] > 1) {
            throw FormatError("non-binary cell at row " + std::to_string(i / cols()) + ", column " +
                              std::to_string(i % cols()));
        }
    }
    index_.reserve(record_ids_.size());
    for (std::size_t r = 0; r < record_ids_.size(); ++r) {
        if (!index_.emplace(record_ids_[r], r).second) {
            throw IntegrityError("duplicate record id '" + record_ids_[r] + "'");
        }
    }
}

std::optional<std::size_t> BooleanDataset::find(std::string_view id) const {
    const auto it = index_.find(std::string(id));
    if (it == index_.end()) return std::nullopt;
    return it->second;
}

std::size_t BooleanDataset::index_of(std::string_view id) const {
    if (auto r = find(id)) return *r;
    throw IntegrityError("record id '" + std::string(id) + "' is not in the dataset");
}

std::vector<std::string> BooleanDataset::active_attributes(std::size_t r) const {
    std::vector<std::string> out;
    const auto cells = row(r);
    for (std::size_t c = 0; c < cells.size(); ++c) {
        if (cells[c] != 0) out.push_back(attribute_names_[c]);
    }
    return out;
}

numerics::Tensor2D BooleanDataset::to_tensor(std::span<const std::size_t> rows) const {
    numerics::Tensor2D t(rows.size(), cols());
    for (std::size_t i = 0; i < rows.size(); ++i) {
        const auto src = row(rows[i]);
        auto dst = t.row(i);
        for (std::size_t c = 0; c < src.size(); ++c) dst[c] = src[c];
    }
    return t;
}

numerics::Tensor2D BooleanDataset::to_tensor() const {
    numerics::Tensor2D t(rows(), cols());
    for (std::size_t i = 0; i < cells_.size(); ++i) t.values()[i] = cells_[i];
    return t;
}

BooleanDataset read_csv(std::istream& in, ViewTag view) {
    std::string line;
    if (!std::getline(in, line)) throw FormatError("dataset file is empty; a header row is required");
    strip_cr(line);
    auto header = split_commas(line);
    if (header.empty()) throw FormatError("dataset header row is empty");
    std::vector<std::string> attributes(header.begin() + 1, header.end());

    std::vector<std::string> ids;
    std::vector<std::uint8_t> cells;
    std::size_t line_no = 1;
    while (std::getline(in, line)) {
        ++line_no;
        strip_cr(line);
        if (line.empty()) continue;
        const auto fields = split_commas(line);
        if (fields.size() != header.size()) {
            throw FormatError("line " + std::to_string(line_no) + ": expected " +
                              std::to_string(header.size()) + " fields, found " +
                              std::to_string(fields.size()));
        }
        ids.push_back(fields[0]);
        for (std::size_t c = 1; c < fields.size(); ++c) {
            if (fields[c] == "0") {
                cells.push_back(0);
            } else if (fields[c] == "1") {
                cells.push_back(1);
            } else {
                throw FormatError("line " + std::to_string(line_no) + ", column " + std::to_string(c + 1) +
                                  ": cell '" + fields[c] + "' is not 0 or 1");
            }
        }
    }
    return BooleanDataset(std::move(ids), std::move(attributes), std::move(cells), view);
}

BooleanDataset load_csv(const std::filesystem::path& path, ViewTag view) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot open dataset '" + path.string() + "'");
    return read_csv(in, view);
}

void write_csv(std::ostream& out, const BooleanDataset& dataset) {
    out << "id";
    for (const auto& a : dataset.attribute_names()) out << ',' << a;
    out << '\n';
    std::string line;
    for (std::size_t r = 0; r < dataset.rows(); ++r) {
        line = dataset.id(r);
        for (auto v : dataset.row(r)) {
            line.push_back(',');
            line.push_back(v ? '1' : '0');
        }
        line.push_back('\n');
        out << line;
    }
}

void write_csv(const std::filesystem::path& path, const BooleanDataset& dataset) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw IoError("cannot write dataset '" + path.string() + "'");
    write_csv(out, dataset);
}

GroundTruth read_ground_truth(std::istream& in) {
    GroundTruth truth;
    std::string line;
    while (std::getline(in, line)) {
        const auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        line = trim(line);
        if (!line.empty()) truth.anomalous_ids.insert(line);
    }
    return truth;
}

GroundTruth load_ground_truth(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot open ground-truth file '" + path.string() + "'");
    return read_ground_truth(in);
}

GroundTruth load_ground_truth(const std::filesystem::path& path, const BooleanDataset& dataset) {
    auto truth = load_ground_truth(path);
    validate_ground_truth(truth, dataset);
    return truth;
}

void write_ground_truth(const std::filesystem::path& path, const GroundTruth& truth) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw IoError("cannot write ground-truth file '" + path.string() + "'");
    for (const auto& id : truth.anomalous_ids) out << id << '\n';
}

void validate_ground_truth(const GroundTruth& truth, const BooleanDataset& dataset) {
    for (const auto& id : truth.anomalous_ids) {
        if (!dataset.find(id)) throw IntegrityError("ground-truth id '" + id + "' is not in the dataset");
    }
}

std::vector<std::size_t> normal_rows(const BooleanDataset& dataset, const GroundTruth& truth) {
    std::vector<std::size_t> out;
    for (std::size_t r = 0; r < dataset.rows(); ++r) {
        if (!truth.contains(dataset.id(r))) out.push_back(r);
    }
    return out;
}

}  // namespace aladaen::data
