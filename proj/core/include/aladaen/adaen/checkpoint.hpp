#pragma once

#include <filesystem>

#include "aladaen/adaen/model.hpp"

namespace aladaen::adaen {

inline constexpr int kCheckpointSchemaVersion = 1;

/// Compact JSON: layer tensors, batch-norm running statistics, hyperparameters
/// and the initialization seed. Identical models serialize to identical bytes.
void save_checkpoint(const std::filesystem::path& path, const AdaenModel& model);
AdaenModel load_checkpoint(const std::filesystem::path& path);

}  // namespace aladaen::adaen
