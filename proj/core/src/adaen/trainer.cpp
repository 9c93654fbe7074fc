#include "aladaen/adaen/trainer.hpp"

#include <cmath>
#include <limits>
#include <numeric>

#include "aladaen/adaen/losses.hpp"
#include "aladaen/errors.hpp"
#include "aladaen/numerics/adam.hpp"

namespace aladaen::adaen {

using numerics::Tensor2D;

namespace {

struct Snapshot {
    AutoEncoder ae1;
    AutoEncoder ae2;
    numerics::Mlp discriminator;
};

double mean_of(const std::vector<double>& v) {
    if (v.empty()) return 0.0;
    return std::accumulate(v.begin(), v.end(), 0.0) / static_cast<double>(v.size());
}

// Batch boundaries over a permutation of n rows; a trailing batch of one row is
// folded into its predecessor.
std::vector<std::pair<std::size_t, std::size_t>> batch_ranges(std::size_t n, std::size_t batch) {
    std::vector<std::pair<std::size_t, std::size_t>> out;
    for (std::size_t begin = 0; begin < n; begin += batch) out.emplace_back(begin, std::min(batch, n - begin));
    if (out.size() > 1 && out.back().second == 1) {
        out.pop_back();
        out.back().second += 1;
    }
    return out;
}

}  // namespace

const TrainingLog& train(AdaenModel& model, const Tensor2D& train_rows, const Tensor2D& validation, numerics::Rng& rng,
                         std::optional<std::size_t> max_epochs) {
    const auto& hp = model.hyperparams;
    if (train_rows.rows() < 2) throw ArgumentError("training needs at least two records");
    if (train_rows.cols() != model.input_dim()) throw ShapeError("training rows do not match the model width");
    if (!validation.empty() && validation.cols() != model.input_dim()) {
        throw ShapeError("validation rows do not match the model width");
    }
    const std::size_t epochs = max_epochs.value_or(hp.max_epochs);
    TrainingLog log;
    if (epochs == 0) {
        model.training_log = log;
        return model.training_log;
    }

    const numerics::AdamConfig adam_config{hp.learning_rate, hp.beta1, hp.beta2, 1e-8};
    numerics::Adam ae_optimizer(model.autoencoder_params(), adam_config);
    numerics::Adam disc_optimizer(model.discriminator_params(), adam_config);

    const Tensor2D& early_stop_rows = validation.empty() ? train_rows : validation;
    std::vector<std::size_t> order(train_rows.rows());
    std::iota(order.begin(), order.end(), std::size_t{0});

    Snapshot best{model.ae1, model.ae2, model.discriminator};
    double best_loss = std::numeric_limits<double>::infinity();
    std::size_t since_improvement = 0;

    for (std::size_t epoch = 1; epoch <= epochs; ++epoch) {
        rng.shuffle(std::span<std::size_t>(order));
        EpochLog entry;
        entry.epoch = epoch;
        double weight_total = 0.0;
        for (const auto& [begin, count] : batch_ranges(order.size(), hp.batch_size)) {
            const Tensor2D batch = train_rows.gather_rows(std::span<const std::size_t>(order).subspan(begin, count));
            const auto recon = model.forward_train(batch, rng);

            disc_optimizer.zero_grad();
            const double d_loss = discriminator_loss(model, batch, recon.ae1, recon.ae2, true);
            disc_optimizer.step();

            ae_optimizer.zero_grad();
            const auto terms = autoencoder_objective(model, batch, recon, true);
            ae_optimizer.step();

            const auto w = static_cast<double>(count);
            entry.train_discriminator += w * d_loss;
            entry.train_reconstruction += w * terms.reconstruction;
            entry.train_adversarial += w * terms.adversarial;
            entry.train_total += w * terms.total;
            weight_total += w;
        }
        entry.train_discriminator /= weight_total;
        entry.train_reconstruction /= weight_total;
        entry.train_adversarial /= weight_total;
        entry.train_total /= weight_total;
        entry.validation = mean_of(combined_reconstruction(model, early_stop_rows));
        if (!std::isfinite(entry.train_total) || !std::isfinite(entry.validation)) {
            throw NumericError("training diverged at epoch " + std::to_string(epoch));
        }
        log.epochs.push_back(entry);

        if (entry.validation < best_loss) {
            best_loss = entry.validation;
            log.best_epoch = epoch;
            best = Snapshot{model.ae1, model.ae2, model.discriminator};
            since_improvement = 0;
        } else if (++since_improvement >= hp.patience) {
            log.early_stopped = true;
            break;
        }
    }

    model.ae1 = std::move(best.ae1);
    model.ae2 = std::move(best.ae2);
    model.discriminator = std::move(best.discriminator);
    log.best_validation = best_loss;
    model.training_log = std::move(log);
    return model.training_log;
}

const TrainingLog& train(AdaenModel& model, std::span<const std::size_t> train_ids,
                         std::span<const std::size_t> validation_ids, const data::BooleanDataset& dataset,
                         numerics::Rng& rng, std::optional<std::size_t> max_epochs) {
    if (train_ids.empty()) throw ArgumentError("training set is empty");
    for (auto r : train_ids) {
        if (r >= dataset.rows()) throw IntegrityError("training row " + std::to_string(r) + " is out of range");
    }
    for (auto r : validation_ids) {
        if (r >= dataset.rows()) throw IntegrityError("validation row " + std::to_string(r) + " is out of range");
    }
    return train(model, dataset.to_tensor(train_ids), dataset.to_tensor(validation_ids), rng, max_epochs);
}

}  // namespace aladaen::adaen
