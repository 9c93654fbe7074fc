#pragma once

#include <cstddef>
#include <optional>
#include <span>

#include "aladaen/adaen/model.hpp"
#include "aladaen/data/dataset.hpp"
#include "aladaen/numerics/rng.hpp"

namespace aladaen::adaen {

/// Alternating discriminator / autoencoder updates with early stopping on the
/// validation combined-reconstruction loss. The best-validation parameters are
/// restored on return and the log is stored in model.training_log.
///
/// `max_epochs` overrides hyperparams.max_epochs when given; 0 leaves the model
/// untouched. When `validation` is empty the training rows are used for
/// early stopping. Throws ArgumentError for fewer than two training rows.
const TrainingLog& train(AdaenModel& model, const numerics::Tensor2D& train_rows,
                         const numerics::Tensor2D& validation, numerics::Rng& rng,
                         std::optional<std::size_t> max_epochs = std::nullopt);

const TrainingLog& train(AdaenModel& model, std::span<const std::size_t> train_ids,
                         std::span<const std::size_t> validation_ids, const data::BooleanDataset& dataset,
                         numerics::Rng& rng, std::optional<std::size_t> max_epochs = std::nullopt);

}  // namespace aladaen::adaen
