#pragma once

#include <span>
#include <vector>

#include "aladaen/adaen/model.hpp"

namespace aladaen::adaen {

/// Probabilities are clamped to [kProbabilityClamp, 1 - kProbabilityClamp] before logs.
inline constexpr double kProbabilityClamp = 1e-7;

/// Per-record squared L2 distance.
[[nodiscard]] std::vector<double> squared_errors(const numerics::Tensor2D& x, const numerics::Tensor2D& xhat);
/// Mean over records of the squared L2 distance.
[[nodiscard]] double reconstruction_loss(const numerics::Tensor2D& x, const numerics::Tensor2D& xhat);

[[nodiscard]] inline double combine_errors(double alpha, double ae1_error, double ae2_error) {
    return alpha * ae1_error + (1.0 - alpha) * ae2_error;
}

/// alpha * ||x - AE1(x)||^2 + (1 - alpha) * ||x - AE2(x)||^2 per record, eval mode.
[[nodiscard]] std::vector<double> combined_reconstruction(const AdaenModel& model, const numerics::Tensor2D& x);

/// -mean log D(x) - mean [log(1 - D(r1)) + log(1 - D(r2))].
/// With accumulate=true the gradient is added to the discriminator buffers.
double discriminator_loss(AdaenModel& model, const numerics::Tensor2D& real, const numerics::Tensor2D& recon1,
                          const numerics::Tensor2D& recon2, bool accumulate = false);

struct AdversarialTerms {
    double loss = 0.0;
    numerics::Tensor2D grad_recon1;
    numerics::Tensor2D grad_recon2;
};

/// Non-saturating generator loss -mean [log D(r1) + log D(r2)] with gradients
/// with respect to the reconstructions. Discriminator buffers are not touched.
AdversarialTerms adversarial_loss(AdaenModel& model, const numerics::Tensor2D& recon1,
                                  const numerics::Tensor2D& recon2);

struct LossBreakdown {
    double reconstruction = 0.0;  // alpha L_rec1 + (1 - alpha) L_rec2
    double adversarial = 0.0;
    double total = 0.0;           // reconstruction + lambda * adversarial
};

/// Autoencoder objective on reconstructions already produced by
/// model.forward_train(batch). With backward=true the gradient is pushed
/// through both autoencoders.
LossBreakdown autoencoder_objective(AdaenModel& model, const numerics::Tensor2D& batch,
                                    const Reconstructions& recon, bool backward);

/// forward_train followed by autoencoder_objective.
LossBreakdown total_loss(AdaenModel& model, const numerics::Tensor2D& batch, numerics::Rng& rng,
                         bool backward = false);

}  // namespace aladaen::adaen
