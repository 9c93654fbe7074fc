#include "aladaen/gan/gan.hpp"

#include <algorithm>
#include <cmath>

#include "aladaen/errors.hpp"

namespace aladaen::gan {

using numerics::Activation;
using numerics::Tensor2D;

namespace {

constexpr double kClamp = 1e-7;

double clamp_p(double p) { return std::clamp(p, kClamp, 1.0 - kClamp); }
bool clamped(double p) { return p < kClamp || p > 1.0 - kClamp; }

enum Stream : std::uint64_t { kGenerator = 11, kDiscriminator = 12 };

}  // namespace

void GanConfig::validate() const {
    if (steps < 1) throw ArgumentError("GAN training needs at least one step");
    if (max_batch < 1 || noise_dim < 1) throw ArgumentError("GAN batch and noise sizes must be positive");
    if (!(learning_rate > 0.0)) throw ArgumentError("GAN learning rate must be positive");
    if (!(binarize_threshold > 0.0 && binarize_threshold < 1.0)) throw ArgumentError("binarize threshold must lie in (0, 1)");
}

GanModel::GanModel(std::size_t data_dim, const GanConfig& config, numerics::Rng& init)
    : data_dim_(data_dim), noise_dim_(config.noise_dim) {
    if (data_dim == 0) throw ArgumentError("GAN data dimension must be positive");
    const std::size_t half = std::max<std::size_t>((data_dim + 1) / 2, 2);
    const std::size_t quarter = std::max<std::size_t>((data_dim + 3) / 4, 2);
    auto g_init = init.fork(kGenerator);
    auto d_init = init.fork(kDiscriminator);
    generator = numerics::Mlp(noise_dim_,
                              {{half, Activation::leaky_relu, false, 0.0},
                               {half, Activation::leaky_relu, false, 0.0},
                               {data_dim, Activation::sigmoid, false, 0.0}},
                              config.leaky_slope, g_init);
    discriminator = numerics::Mlp(data_dim,
                                  {{half, Activation::leaky_relu, false, 0.0},
                                   {quarter, Activation::leaky_relu, false, 0.0},
                                   {1, Activation::sigmoid, false, 0.0}},
                                  config.leaky_slope, d_init);
}

Tensor2D GanModel::sample_noise(std::size_t count, numerics::Rng& rng) const {
    Tensor2D z(count, noise_dim_);
    for (double& v : z.values()) v = rng.normal();
    return z;
}

Tensor2D GanModel::generate(const Tensor2D& noise) const { return generator.forward_eval(noise); }

double gan_discriminator_loss(GanModel& gan, const Tensor2D& real, const Tensor2D& noise, bool accumulate) {
    numerics::Rng unused(0);
    const Tensor2D fake = gan.generator.forward_train(noise, unused);
    const Tensor2D stacked = Tensor2D::vstack({&real, &fake});
    const Tensor2D p = gan.discriminator.forward_train(stacked, unused);
    const double inv_real = 1.0 / static_cast<double>(std::max<std::size_t>(real.rows(), 1));
    const double inv_fake = 1.0 / static_cast<double>(std::max<std::size_t>(fake.rows(), 1));

    double loss = 0.0;
    Tensor2D grad(stacked.rows(), 1);
    for (std::size_t i = 0; i < stacked.rows(); ++i) {
        const double prob = p(i, 0);
        const double pc = clamp_p(prob);
        if (i < real.rows()) {
            loss -= inv_real * std::log(pc);
            grad(i, 0) = clamped(prob) ? 0.0 : -inv_real / pc;
        } else {
            loss -= inv_fake * std::log(1.0 - pc);
            grad(i, 0) = clamped(prob) ? 0.0 : inv_fake / (1.0 - pc);
        }
    }
    if (accumulate) gan.discriminator.backward(grad, true);
    return loss;
}

double gan_generator_loss(GanModel& gan, const Tensor2D& noise, bool accumulate) {
    numerics::Rng unused(0);
    const Tensor2D fake = gan.generator.forward_train(noise, unused);
    const Tensor2D p = gan.discriminator.forward_train(fake, unused);
    const double inv = 1.0 / static_cast<double>(std::max<std::size_t>(fake.rows(), 1));
    double loss = 0.0;
    Tensor2D grad(fake.rows(), 1);
    for (std::size_t i = 0; i < fake.rows(); ++i) {
        const double prob = p(i, 0);
        const double pc = clamp_p(prob);
        loss -= inv * std::log(pc);
        grad(i, 0) = clamped(prob) ? 0.0 : -inv / pc;
    }
    if (accumulate) {
        const Tensor2D grad_fake = gan.discriminator.backward(grad, false);
        gan.generator.backward(grad_fake, true);
    }
    return loss;
}

GanModel train_gan(const Tensor2D& pool, const GanConfig& config, numerics::Rng& rng, GanTrainLog* log) {
    config.validate();
    if (pool.rows() == 0) throw ArgumentError("GAN pool is empty");
    GanModel gan(pool.cols(), config, rng);
    const numerics::AdamConfig adam{config.learning_rate, config.beta1, config.beta2, 1e-8};
    numerics::Adam g_opt(gan.generator.params("gen"), adam);
    numerics::Adam d_opt(gan.discriminator.params("disc"), adam);
    const std::size_t batch = std::min(config.max_batch, pool.rows());

    std::vector<std::size_t> pick(batch);
    for (std::size_t step = 0; step < config.steps; ++step) {
        for (auto& i : pick) i = static_cast<std::size_t>(rng.below(pool.rows()));
        const Tensor2D real = pool.gather_rows(pick);

        d_opt.zero_grad();
        const double d_loss = gan_discriminator_loss(gan, real, gan.sample_noise(batch, rng), true);
        d_opt.step();

        g_opt.zero_grad();
        const double g_loss = gan_generator_loss(gan, gan.sample_noise(batch, rng), true);
        g_opt.step();

        if (!std::isfinite(d_loss) || !std::isfinite(g_loss)) throw NumericError("GAN losses became non-finite");
        if (log) {
            log->discriminator_loss.push_back(d_loss);
            log->generator_loss.push_back(g_loss);
        }
    }
    return gan;
}

SyntheticRows sample_synthetic(const GanModel& gan, std::size_t count, numerics::Rng& rng, std::size_t iteration,
                               double threshold) {
    SyntheticRows out;
    out.cols = gan.data_dim();
    if (count == 0) return out;
    const Tensor2D probs = gan.generate(gan.sample_noise(count, rng));
    out.cells.reserve(count * out.cols);
    for (double p : probs.values()) out.cells.push_back(p > threshold ? 1 : 0);
    for (std::size_t n = 0; n < count; ++n) {
        out.ids.push_back("synth-" + std::to_string(iteration) + "-" + std::to_string(n));
    }
    return out;
}

}  // namespace aladaen::gan
