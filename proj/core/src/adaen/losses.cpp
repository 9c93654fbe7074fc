#include "aladaen/adaen/losses.hpp"

#include <algorithm>
#include <cmath>

#include "aladaen/errors.hpp"

namespace aladaen::adaen {

using numerics::Tensor2D;

namespace {

bool clamped(double p) { return p < kProbabilityClamp || p > 1.0 - kProbabilityClamp; }

double clamp_probability(double p) { return std::clamp(p, kProbabilityClamp, 1.0 - kProbabilityClamp); }

// Discriminator forward with caching; it has no dropout so the stream is unused.
Tensor2D discriminator_forward(AdaenModel& model, const Tensor2D& batch) {
    numerics::Rng unused(0);
    return model.discriminator.forward_train(batch, unused);
}

}  // namespace

std::vector<double> squared_errors(const Tensor2D& x, const Tensor2D& xhat) {
    numerics::require_same_shape(x, xhat, "reconstruction error");
    std::vector<double> out(x.rows());
    for (std::size_t r = 0; r < x.rows(); ++r) {
        const auto a = x.row(r);
        const auto b = xhat.row(r);
        double sum = 0.0;
        for (std::size_t c = 0; c < a.size(); ++c) {
            const double diff = a[c] - b[c];
            sum += diff * diff;
        }
        out[r] = sum;
    }
    return out;
}

double reconstruction_loss(const Tensor2D& x, const Tensor2D& xhat) {
    const auto errors = squared_errors(x, xhat);
    if (errors.empty()) return 0.0;
    double sum = 0.0;
    for (double e : errors) sum += e;
    return sum / static_cast<double>(errors.size());
}

std::vector<double> combined_reconstruction(const AdaenModel& model, const Tensor2D& x) {
    const auto e1 = squared_errors(x, model.reconstruct(Path::ae1, x));
    const auto e2 = squared_errors(x, model.reconstruct(Path::ae2, x));
    std::vector<double> out(e1.size());
    for (std::size_t i = 0; i < out.size(); ++i) out[i] = combine_errors(model.hyperparams.alpha, e1[i], e2[i]);
    return out;
}

double discriminator_loss(AdaenModel& model, const Tensor2D& real, const Tensor2D& recon1, const Tensor2D& recon2,
                          bool accumulate) {
    numerics::require_same_shape(recon1, recon2, "discriminator loss");
    if (real.cols() != recon1.cols()) throw ShapeError("discriminator loss: real and reconstructed widths differ");
    const Tensor2D stacked = Tensor2D::vstack({&real, &recon1, &recon2});
    const Tensor2D p = discriminator_forward(model, stacked);

    const std::size_t n_real = real.rows();
    const std::size_t n_fake = recon1.rows();
    const double inv_real = n_real == 0 ? 0.0 : 1.0 / static_cast<double>(n_real);
    const double inv_fake = n_fake == 0 ? 0.0 : 1.0 / static_cast<double>(n_fake);

    double loss = 0.0;
    Tensor2D grad(stacked.rows(), 1);
    for (std::size_t i = 0; i < stacked.rows(); ++i) {
        const double prob = p(i, 0);
        const double pc = clamp_probability(prob);
        if (i < n_real) {
            loss -= inv_real * std::log(pc);
            grad(i, 0) = clamped(prob) ? 0.0 : -inv_real / pc;
        } else {
            loss -= inv_fake * std::log(1.0 - pc);
            grad(i, 0) = clamped(prob) ? 0.0 : inv_fake / (1.0 - pc);
        }
    }
    if (accumulate) model.discriminator.backward(grad, true);
    return loss;
}

AdversarialTerms adversarial_loss(AdaenModel& model, const Tensor2D& recon1, const Tensor2D& recon2) {
    numerics::require_same_shape(recon1, recon2, "adversarial loss");
    const Tensor2D stacked = Tensor2D::vstack({&recon1, &recon2});
    const Tensor2D p = discriminator_forward(model, stacked);
    const std::size_t n = recon1.rows();
    const double inv = n == 0 ? 0.0 : 1.0 / static_cast<double>(n);

    AdversarialTerms terms;
    Tensor2D grad(stacked.rows(), 1);
    for (std::size_t i = 0; i < stacked.rows(); ++i) {
        const double prob = p(i, 0);
        const double pc = clamp_probability(prob);
        terms.loss -= inv * std::log(pc);
        grad(i, 0) = clamped(prob) ? 0.0 : -inv / pc;
    }
    const Tensor2D grad_in = model.discriminator.backward(grad, false);
    terms.grad_recon1 = grad_in.slice_rows(0, n);
    terms.grad_recon2 = grad_in.slice_rows(n, n);
    return terms;
}

LossBreakdown autoencoder_objective(AdaenModel& model, const Tensor2D& batch, const Reconstructions& recon,
                                    bool backward) {
    const auto& hp = model.hyperparams;
    LossBreakdown out;
    const double rec1 = reconstruction_loss(batch, recon.ae1);
    const double rec2 = reconstruction_loss(batch, recon.ae2);
    out.reconstruction = combine_errors(hp.alpha, rec1, rec2);

    auto adv = adversarial_loss(model, recon.ae1, recon.ae2);
    out.adversarial = adv.loss;
    out.total = out.reconstruction + hp.lambda * out.adversarial;

    if (backward) {
        const double scale = 2.0 / static_cast<double>(batch.rows());
        Tensor2D g1(numerics::Matrix(hp.alpha * scale * (recon.ae1.mat() - batch.mat()) +
                                     hp.lambda * adv.grad_recon1.mat()));
        Tensor2D g2(numerics::Matrix((1.0 - hp.alpha) * scale * (recon.ae2.mat() - batch.mat()) +
                                     hp.lambda * adv.grad_recon2.mat()));
        model.backward_autoencoders(g1, g2);
    }
    return out;
}

LossBreakdown total_loss(AdaenModel& model, const Tensor2D& batch, numerics::Rng& rng, bool backward) {
    const auto recon = model.forward_train(batch, rng);
    return autoencoder_objective(model, batch, recon, backward);
}

}  // namespace aladaen::adaen
