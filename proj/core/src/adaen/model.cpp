#include "aladaen/adaen/model.hpp"

#include <algorithm>

#include "aladaen/errors.hpp"

namespace aladaen::adaen {

using numerics::Activation;
using numerics::BlockSpec;
using numerics::Tensor2D;

namespace {

enum SubModelStream : std::uint64_t { kAe1 = 1, kAe2 = 2, kDiscriminator = 3 };

std::vector<BlockSpec> encoder_blocks(const LayerWidths& w, double dropout) {
    return {{w.hidden1, Activation::leaky_relu, true, dropout},
            {w.hidden2, Activation::leaky_relu, true, 0.0},
            {w.latent, Activation::leaky_relu, true, 0.0}};
}

std::vector<BlockSpec> decoder_blocks(const LayerWidths& w) {
    return {{w.hidden2, Activation::leaky_relu, true, 0.0},
            {w.hidden1, Activation::leaky_relu, true, 0.0},
            {w.input, Activation::sigmoid, false, 0.0}};
}

}  // namespace

AutoEncoder::AutoEncoder(std::size_t input_dim, const Hyperparams& hp, bool with_attention, numerics::Rng& init) {
    const auto widths = autoencoder_widths(input_dim, hp.latent_dim);
    encoder = numerics::Mlp(input_dim, encoder_blocks(widths, hp.dropout_p), hp.leaky_slope, init);
    if (with_attention) attention.emplace(hp.latent_dim, hp.attention_tokens);
    decoder = numerics::Mlp(hp.latent_dim, decoder_blocks(widths), hp.leaky_slope, init);
}

Tensor2D AutoEncoder::forward_train(const Tensor2D& x, numerics::Rng& rng) {
    Tensor2D z = encoder.forward_train(x, rng);
    if (attention) z = attention->forward_train(z);
    return decoder.forward_train(z, rng);
}

Tensor2D AutoEncoder::forward_eval(const Tensor2D& x) const {
    Tensor2D z = encoder.forward_eval(x);
    if (attention) z = attention->apply(z);
    return decoder.forward_eval(z);
}

void AutoEncoder::backward(const Tensor2D& upstream) {
    Tensor2D g = decoder.backward(upstream);
    if (attention) g = attention->backward(g);
    encoder.backward(g);
}

void AutoEncoder::zero_grad() {
    encoder.zero_grad();
    if (attention) attention->zero_grad();
    decoder.zero_grad();
}

std::vector<numerics::ParamRef> AutoEncoder::params(const std::string& prefix) {
    auto out = encoder.params(prefix + ".encoder");
    if (attention) out.push_back(attention->param(prefix + ".attention.v"));
    auto dec = decoder.params(prefix + ".decoder");
    out.insert(out.end(), dec.begin(), dec.end());
    return out;
}

nlohmann::json AutoEncoder::to_json() const {
    nlohmann::json j = {{"encoder", encoder.to_json()}, {"decoder", decoder.to_json()}};
    j["attention"] = attention ? attention->to_json() : nlohmann::json(nullptr);
    return j;
}

AutoEncoder AutoEncoder::from_json(const nlohmann::json& j) {
    AutoEncoder ae;
    ae.encoder = numerics::Mlp::from_json(j.at("encoder"));
    ae.decoder = numerics::Mlp::from_json(j.at("decoder"));
    if (!j.at("attention").is_null()) ae.attention = Attention::from_json(j.at("attention"));
    return ae;
}

nlohmann::json TrainingLog::to_json() const {
    nlohmann::json rows = nlohmann::json::array();
    for (const auto& e : epochs) {
        rows.push_back({{"epoch", e.epoch},
                        {"train_total", e.train_total},
                        {"train_reconstruction", e.train_reconstruction},
                        {"train_adversarial", e.train_adversarial},
                        {"train_discriminator", e.train_discriminator},
                        {"validation", e.validation}});
    }
    return {{"epochs", rows}, {"best_epoch", best_epoch}, {"best_validation", best_validation},
            {"early_stopped", early_stopped}};
}

AdaenModel::AdaenModel(std::size_t input_dim, Hyperparams hp, std::uint64_t seed)
    : hyperparams(hp), input_dim_(input_dim), seed_(seed) {
    hyperparams.validate();
    if (input_dim == 0) throw ArgumentError("input dimension must be positive");
    const numerics::Rng root(seed);
    auto ae1_init = root.fork(kAe1);
    auto ae2_init = root.fork(kAe2);
    auto disc_init = root.fork(kDiscriminator);
    ae1 = AutoEncoder(input_dim, hyperparams, true, ae1_init);
    ae2 = AutoEncoder(input_dim, hyperparams, false, ae2_init);
    const std::size_t d1 = std::max<std::size_t>((input_dim + 1) / 2, 2);
    const std::size_t d2 = std::max<std::size_t>((input_dim + 3) / 4, 2);
    discriminator = numerics::Mlp(input_dim,
                                  {{d1, Activation::leaky_relu, false, 0.0},
                                   {d2, Activation::leaky_relu, false, 0.0},
                                   {1, Activation::sigmoid, false, 0.0}},
                                  hyperparams.leaky_slope, disc_init);
}

Reconstructions AdaenModel::forward_train(const Tensor2D& x, numerics::Rng& rng) {
    if (x.cols() != input_dim_) throw ShapeError("batch width does not match model input dimension");
    Reconstructions r;
    r.ae1 = ae1.forward_train(x, rng);
    r.ae2 = ae2.forward_train(x, rng);
    return r;
}

void AdaenModel::backward_autoencoders(const Tensor2D& grad_ae1, const Tensor2D& grad_ae2) {
    ae1.backward(grad_ae1);
    ae2.backward(grad_ae2);
}

Tensor2D AdaenModel::reconstruct(Path which, const Tensor2D& batch) const {
    if (batch.cols() != input_dim_) throw ShapeError("batch width does not match model input dimension");
    return which == Path::ae1 ? ae1.forward_eval(batch) : ae2.forward_eval(batch);
}

std::vector<double> AdaenModel::discriminate(const Tensor2D& batch) const {
    const auto p = discriminator.forward_eval(batch);
    return {p.values().begin(), p.values().end()};
}

std::vector<numerics::ParamRef> AdaenModel::autoencoder_params() {
    auto out = ae1.params("ae1");
    auto second = ae2.params("ae2");
    out.insert(out.end(), second.begin(), second.end());
    return out;
}

std::vector<numerics::ParamRef> AdaenModel::discriminator_params() { return discriminator.params("disc"); }

void AdaenModel::zero_autoencoder_grads() {
    ae1.zero_grad();
    ae2.zero_grad();
}

void AdaenModel::zero_discriminator_grads() { discriminator.zero_grad(); }

nlohmann::json AdaenModel::to_json() const {
    return {{"input_dim", input_dim_},
            {"seed", seed_},
            {"hyperparams", hyperparams.to_json()},
            {"ae1", ae1.to_json()},
            {"ae2", ae2.to_json()},
            {"discriminator", discriminator.to_json()}};
}

AdaenModel AdaenModel::from_json(const nlohmann::json& j) {
    AdaenModel m;
    m.input_dim_ = j.at("input_dim").get<std::size_t>();
    m.seed_ = j.at("seed").get<std::uint64_t>();
    m.hyperparams = Hyperparams::from_json(j.at("hyperparams"));
    m.ae1 = AutoEncoder::from_json(j.at("ae1"));
    m.ae2 = AutoEncoder::from_json(j.at("ae2"));
    m.discriminator = numerics::Mlp::from_json(j.at("discriminator"));
    if (m.ae1.encoder.input_dim() != m.input_dim_ || m.ae2.encoder.input_dim() != m.input_dim_ ||
        m.discriminator.input_dim() != m.input_dim_) {
        throw FormatError("checkpoint sub-models disagree on the input dimension");
    }
    return m;
}

}  // namespace aladaen::adaen
