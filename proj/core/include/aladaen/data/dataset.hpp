#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <set>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "aladaen/numerics/tensor.hpp"

namespace aladaen::data {

/// Behavioral view a boolean matrix was flattened from.
enum class ViewTag { PE, PX, PP, PN, PA, SYNTH };

[[nodiscard]] std::string_view to_string(ViewTag tag);
/// Throws ArgumentError for unknown names.
[[nodiscard]] ViewTag view_tag_from_string(std::string_view name);

/// N records by d boolean attributes, one row per process.
class BooleanDataset {
public:
    BooleanDataset() = default;
    /// Validates shape, unique ids and that every cell is 0 or 1.
    BooleanDataset(std::vector<std::string> record_ids, std::vector<std::string> attribute_names,
                   std::vector<std::uint8_t> cells, ViewTag view = ViewTag::SYNTH);

    [[nodiscard]] std::size_t rows() const { return record_ids_.size(); }
    [[nodiscard]] std::size_t cols() const { return attribute_names_.size(); }
    [[nodiscard]] ViewTag view() const { return view_; }

    [[nodiscard]] const std::vector<std::string>& record_ids() const { return record_ids_; }
    [[nodiscard]] const std::vector<std::string>& attribute_names() const { return attribute_names_; }
    [[nodiscard]] const std::string& id(std::size_t row) const { return record_ids_.at(row); }

    [[nodiscard]] std::span<const std::uint8_t> row(std::size_t r) const {
        return {cells_.data() + r * cols(), cols()};
    }
    [[nodiscard]] std::uint8_t cell(std::size_t r, std::size_t c) const { return cells_[r * cols() + c]; }
    [[nodiscard]] const std::vector<std::uint8_t>& cells() const { return cells_; }

    [[nodiscard]] std::optional<std::size_t> find(std::string_view id) const;
    /// Throws IntegrityError naming the id when it is not present.
    [[nodiscard]] std::size_t index_of(std::string_view id) const;

    /// Names of the attributes set to 1 in a row.
    [[nodiscard]] std::vector<std::string> active_attributes(std::size_t row) const;

    [[nodiscard]] numerics::Tensor2D to_tensor(std::span<const std::size_t> rows) const;
    [[nodiscard]] numerics::Tensor2D to_tensor() const;

    friend bool operator==(const BooleanDataset& a, const BooleanDataset& b) {
        return a.record_ids_ == b.record_ids_ && a.attribute_names_ == b.attribute_names_ &&
               a.cells_ == b.cells_;
    }

private:
    std::vector<std::string> record_ids_;
    std::vector<std::string> attribute_names_;
    std::vector<std::uint8_t> cells_;
    ViewTag view_ = ViewTag::SYNTH;
    std::unordered_map<std::string, std::size_t> index_;
};

/// Record ids known to be anomalous.
struct GroundTruth {
    std::set<std::string> anomalous_ids;

    [[nodiscard]] bool contains(std::string_view id) const {
        return anomalous_ids.find(std::string(id)) != anomalous_ids.end();
    }
    [[nodiscard]] std::size_t size() const { return anomalous_ids.size(); }
};

/// CSV with header "id,attr1,...,attrd" and "0"/"1" cells.
BooleanDataset read_csv(std::istream& in, ViewTag view = ViewTag::SYNTH);
BooleanDataset load_csv(const std::filesystem::path& path, ViewTag view = ViewTag::SYNTH);
void write_csv(std::ostream& out, const BooleanDataset& dataset);
void write_csv(const std::filesystem::path& path, const BooleanDataset& dataset);

/// One id per line; blank lines and '#' comments are ignored.
GroundTruth read_ground_truth(std::istream& in);
GroundTruth load_ground_truth(const std::filesystem::path& path);
/// Also checks every id against `dataset`.
GroundTruth load_ground_truth(const std::filesystem::path& path, const BooleanDataset& dataset);
void write_ground_truth(const std::filesystem::path& path, const GroundTruth& truth);
/// Throws IntegrityError naming the first id that is not in the dataset.
void validate_ground_truth(const GroundTruth& truth, const BooleanDataset& dataset);

/// Row indices of records not listed in `truth`, ascending.
[[nodiscard]] std::vector<std::size_t> normal_rows(const BooleanDataset& dataset, const GroundTruth& truth);

}  // namespace aladaen::data
