#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <fstream>
#include <numeric>

#include "aladaen/adaen/attention.hpp"
#include "aladaen/adaen/checkpoint.hpp"
#include "aladaen/adaen/hyperparams.hpp"
#include "aladaen/adaen/losses.hpp"
#include "aladaen/adaen/model.hpp"
#include "aladaen/adaen/scoring.hpp"
#include "aladaen/adaen/trainer.hpp"
#include "aladaen/data/synthetic.hpp"
#include "aladaen/errors.hpp"
#include "aladaen/numerics/gradcheck.hpp"
#include "test_support.hpp"

using namespace aladaen;
using namespace aladaen::adaen;
using numerics::Rng;
using numerics::Tensor2D;
using testing::Gen;

namespace {

Hyperparams toy_hyperparams() {
    Hyperparams hp;
    hp.latent_dim = 4;
    hp.attention_tokens = 2;
    hp.batch_size = 8;
    return hp;
}

Tensor2D bits_tensor(Gen& gen, std::size_t rows, std::size_t cols, double p = 0.4) {
    const auto bits = testing::random_bits(gen, rows * cols, p);
    Tensor2D t(rows, cols);
    for (std::size_t i = 0; i < bits.size(); ++i) t.values()[i] = bits[i];
    return t;
}

void randomize_attention(AdaenModel& model, Gen& gen) {
    std::uniform_real_distribution<double> dist(-0.8, 0.8);
    for (double& v : model.ae1.attention->score_vector.values()) v = dist(gen);
}

// Sets the discriminator's output layer to a constant pre-activation.
void pin_discriminator(AdaenModel& model, double logit) {
    auto params = model.discriminator_params();
    const auto n = params.size();
    params[n - 2].value->set_zero();
    for (double& b : params[n - 1].value->values()) b = logit;
}

double grad_norm(const std::vector<numerics::ParamRef>& params) {
    double s = 0.0;
    for (const auto& p : params) {
        for (double g : p.grad->values()) s += g * g;
    }
    return s;
}

}  // namespace

TEST_CASE("hyperparameter defaults and validation") {
    const Hyperparams hp;
    CHECK(hp.latent_dim == 32);
    CHECK(hp.attention_tokens == 8);
    CHECK(hp.alpha == 0.5);
    CHECK(hp.lambda == 0.5);
    CHECK(hp.learning_rate == 1e-4);
    CHECK(hp.patience == 10);
    CHECK_NOTHROW(hp.validate());

    auto bad = hp;
    bad.attention_tokens = 5;
    CHECK_THROWS_AS(bad.validate(), ArgumentError);
    bad = hp;
    bad.alpha = 1.5;
    CHECK_THROWS_AS(bad.validate(), ArgumentError);
    bad = hp;
    bad.lambda = 0.0;
    CHECK_THROWS_AS(bad.validate(), ArgumentError);

    const auto back = Hyperparams::from_json(hp.to_json());
    CHECK(back.to_json() == hp.to_json());
}

TEST_CASE("autoencoder widths use ceiling division with a floor") {
    const auto w = autoencoder_widths(64, 32);
    CHECK(w.hidden1 == 32);
    CHECK(w.hidden2 == 32);
    const auto wide = autoencoder_widths(200, 32);
    CHECK(wide.hidden1 == 100);
    CHECK(wide.hidden2 == 50);
    const auto odd = autoencoder_widths(13, 2);
    CHECK(odd.hidden1 == 7);
    CHECK(odd.hidden2 == 4);
}

TEST_CASE("attention with a zero score vector is the identity") {
    Gen gen(40);
    const Attention attn(32, 8);
    for (int trial = 0; trial < 100; ++trial) {
        const auto z = testing::random_tensor(gen, 3, 32, -5.0, 5.0);
        const auto out = attention_apply(z, attn);
        for (std::size_t i = 0; i < z.size(); ++i) REQUIRE(out.values()[i] == z.values()[i]);
    }
}

TEST_CASE("attention two-token example") {
    Attention attn(4, 2);
    attn.score_vector(0, 0) = 1.0;
    // Token 1 is (0, 5) with score 0; token 2 is (ln 2, 3) with score ln 2.
    const std::vector<double> z{0.0, 5.0, std::log(2.0), 3.0};
    const auto xi = attn.weights(z);
    CHECK(xi[0] == doctest::Approx(1.0 / 3.0));
    CHECK(xi[1] == doctest::Approx(2.0 / 3.0));
    const auto out = attn.apply(Tensor2D::row_vector(z));
    CHECK(out(0, 0) == doctest::Approx(0.0));
    CHECK(out(0, 1) == doctest::Approx(5.0 * 2.0 / 3.0));
    CHECK(out(0, 2) == doctest::Approx(std::log(2.0) * 4.0 / 3.0));
    CHECK(out(0, 3) == doctest::Approx(3.0 * 4.0 / 3.0));
}

TEST_CASE("attention rejects indivisible widths") {
    CHECK_THROWS_AS(Attention(6, 4), ShapeError);
    const Attention attn(4, 2);
    CHECK_THROWS_AS((void)attn.apply(Tensor2D(1, 6)), ShapeError);
}

TEST_CASE("attention backward matches finite differences") {
    Gen gen(41);
    Attention attn(8, 2);
    attn.score_vector = testing::random_tensor(gen, 1, 4);
    auto z = testing::random_tensor(gen, 5, 8);
    const auto g = testing::random_tensor(gen, 5, 8);
    const auto loss = [&]() {
        const auto y = attn.apply(z);
        double s = 0.0;
        for (std::size_t i = 0; i < y.size(); ++i) s += y.values()[i] * g.values()[i];
        return s;
    };
    attn.zero_grad();
    (void)attn.forward_train(z);
    const auto dz = attn.backward(g);

    const std::vector<numerics::ParamRef> params{attn.param("v")};
    CHECK(numerics::finite_difference_check(loss, params, 1e-6).max_relative_error < 1e-5);

    Tensor2D zref = dz;
    const std::vector<numerics::ParamRef> input{{&z, &zref, "z"}};
    CHECK(numerics::finite_difference_check(loss, input, 1e-6).max_relative_error < 1e-5);
}

TEST_CASE("untrained reconstructions lie in (0, 1) and the two paths differ") {
    Gen gen(42);
    const AdaenModel model(12, toy_hyperparams(), 3);
    const auto x = bits_tensor(gen, 6, 12);
    const auto r1 = model.reconstruct(Path::ae1, x);
    const auto r2 = model.reconstruct(Path::ae2, x);
    bool differ = false;
    for (std::size_t i = 0; i < r1.size(); ++i) {
        REQUIRE(r1.values()[i] > 0.0);
        REQUIRE(r1.values()[i] < 1.0);
        REQUIRE(r2.values()[i] > 0.0);
        REQUIRE(r2.values()[i] < 1.0);
        differ = differ || r1.values()[i] != r2.values()[i];
    }
    CHECK(differ);
    CHECK_THROWS_AS((void)model.reconstruct(Path::ae1, Tensor2D(2, 5)), ShapeError);
}

TEST_CASE("reconstruction loss examples") {
    const auto x = Tensor2D::from_rows({{1, 0}});
    CHECK(reconstruction_loss(x, x) == 0.0);
    CHECK(reconstruction_loss(x, Tensor2D::from_rows({{0, 1}})) == 2.0);

    Gen gen(43);
    const auto a = testing::random_tensor(gen, 2, 5, 0.0, 1.0);
    const auto b = testing::random_tensor(gen, 2, 5, 0.0, 1.0);
    double sum = 0.0;
    for (std::size_t r = 0; r < 2; ++r) {
        for (std::size_t c = 0; c < 5; ++c) sum += (a(r, c) - b(r, c)) * (a(r, c) - b(r, c));
    }
    CHECK(reconstruction_loss(a, b) == doctest::Approx(sum / 2.0).epsilon(1e-14));
    CHECK_THROWS_AS((void)reconstruction_loss(a, Tensor2D(2, 4)), ShapeError);
}

TEST_CASE("combined reconstruction is the alpha mix of the two paths") {
    CHECK(combine_errors(0.5, 0.2, 0.4) == doctest::Approx(0.3));
    Gen gen(44);
    const auto x = bits_tensor(gen, 7, 12);
    for (double alpha : {0.0, 0.3, 1.0}) {
        auto hp = toy_hyperparams();
        hp.alpha = alpha;
        const AdaenModel model(12, hp, 9);
        const auto e1 = squared_errors(x, model.reconstruct(Path::ae1, x));
        const auto e2 = squared_errors(x, model.reconstruct(Path::ae2, x));
        const auto got = combined_reconstruction(model, x);
        for (std::size_t r = 0; r < x.rows(); ++r) {
            if (alpha == 1.0) REQUIRE(got[r] == e1[r]);
            if (alpha == 0.0) REQUIRE(got[r] == e2[r]);
            REQUIRE(got[r] == doctest::Approx(alpha * e1[r] + (1.0 - alpha) * e2[r]).epsilon(1e-14));
        }
    }
}

TEST_CASE("adversarial losses at the symmetric point") {
    Gen gen(45);
    AdaenModel model(12, toy_hyperparams(), 4);
    pin_discriminator(model, 0.0);
    const auto x = bits_tensor(gen, 5, 12);
    const auto r1 = model.reconstruct(Path::ae1, x);
    const auto r2 = model.reconstruct(Path::ae2, x);
    CHECK(discriminator_loss(model, x, r1, r2) == doctest::Approx(3.0 * std::log(2.0)).epsilon(1e-12));
    CHECK(adversarial_loss(model, r1, r2).loss == doctest::Approx(2.0 * std::log(2.0)).epsilon(1e-12));

    pin_discriminator(model, 60.0);
    CHECK(adversarial_loss(model, r1, r2).loss < 1e-6);
    CHECK(std::isfinite(discriminator_loss(model, x, r1, r2)));
}

TEST_CASE("total loss adds lambda times the adversarial term") {
    Gen gen(46);
    auto hp = toy_hyperparams();
    hp.lambda = 0.5;
    AdaenModel model(12, hp, 5);
    const auto x = bits_tensor(gen, 6, 12);
    Rng rng(1);
    const auto parts = total_loss(model, x, rng);
    CHECK(parts.total == doctest::Approx(parts.reconstruction + 0.5 * parts.adversarial).epsilon(1e-14));
}

TEST_CASE("adversarial loss leaves discriminator gradients untouched") {
    Gen gen(47);
    AdaenModel model(12, toy_hyperparams(), 6);
    const auto x = bits_tensor(gen, 6, 12);
    model.zero_discriminator_grads();
    Rng rng(2);
    const auto recon = model.forward_train(x, rng);
    const auto terms = adversarial_loss(model, recon.ae1, recon.ae2);
    CHECK(grad_norm(model.discriminator_params()) == 0.0);
    CHECK(terms.grad_recon1.rows() == 6);
    (void)total_loss(model, x, rng, true);
    CHECK(grad_norm(model.discriminator_params()) == 0.0);
}

TEST_CASE("total loss gradient matches finite differences on the toy model") {
    Gen gen(48);
    AdaenModel model(12, toy_hyperparams(), 7);
    randomize_attention(model, gen);
    const auto x = bits_tensor(gen, 6, 12);
    const Rng base(11);
    model.zero_autoencoder_grads();
    {
        Rng r = base;
        (void)total_loss(model, x, r, true);
    }
    const auto loss = [&]() {
        Rng r = base;
        return total_loss(model, x, r).total;
    };
    const auto params = model.autoencoder_params();
    const auto report = numerics::finite_difference_check(loss, params, 1e-4);
    INFO("worst " << report.worst_param << "[" << report.worst_index << "] analytic " << report.worst_analytic
                  << " numeric " << report.worst_numeric);
    CHECK(report.max_relative_error < 1e-4);
}

TEST_CASE("discriminator loss gradient matches finite differences on the toy model") {
    Gen gen(49);
    AdaenModel model(12, toy_hyperparams(), 8);
    const auto x = bits_tensor(gen, 6, 12);
    const auto r1 = testing::random_tensor(gen, 6, 12, 0.05, 0.95);
    const auto r2 = testing::random_tensor(gen, 6, 12, 0.05, 0.95);
    model.zero_discriminator_grads();
    (void)discriminator_loss(model, x, r1, r2, true);
    const auto loss = [&]() { return discriminator_loss(model, x, r1, r2); };
    const auto params = model.discriminator_params();
    const auto report = numerics::finite_difference_check(loss, params, 1e-4);
    INFO("worst " << report.worst_param << " analytic " << report.worst_analytic << " numeric "
                  << report.worst_numeric);
    CHECK(report.max_relative_error < 1e-4);
}

TEST_CASE("adversarial loss input gradient matches finite differences") {
    Gen gen(50);
    AdaenModel model(12, toy_hyperparams(), 9);
    auto r1 = testing::random_tensor(gen, 4, 12, 0.05, 0.95);
    auto r2 = testing::random_tensor(gen, 4, 12, 0.05, 0.95);
    auto terms = adversarial_loss(model, r1, r2);
    const auto loss = [&]() { return adversarial_loss(model, r1, r2).loss; };
    const std::vector<numerics::ParamRef> inputs{{&r1, &terms.grad_recon1, "recon1"},
                                                 {&r2, &terms.grad_recon2, "recon2"}};
    CHECK(numerics::finite_difference_check(loss, inputs, 1e-4).max_relative_error < 1e-4);
}

TEST_CASE("training on a constant dataset drives the reconstruction error down") {
    Gen gen(51);
    const auto row = testing::random_bits(gen, 12, 0.5);
    Tensor2D data(64, 12);
    for (std::size_t r = 0; r < 64; ++r) {
        for (std::size_t c = 0; c < 12; ++c) data(r, c) = row[c];
    }
    auto hp = toy_hyperparams();
    hp.learning_rate = 1e-2;
    hp.batch_size = 16;
    hp.patience = 50;
    AdaenModel model(12, hp, 10);
    Rng rng(3);
    const auto& log = train(model, data, data.slice_rows(0, 8), rng, 50);
    CHECK(log.epochs.size() <= 50);
    CHECK(log.best_validation < 0.01 * 12);
    const std::vector<double> record(row.begin(), row.end());
    CHECK(anomaly_score(model, record) / 12.0 < 0.01);
}

TEST_CASE("early stopping fires after patience non-improving epochs and restores the best") {
    Gen gen(52);
    const auto data = bits_tensor(gen, 40, 12);
    auto hp = toy_hyperparams();
    hp.patience = 2;
    hp.learning_rate = 5e-2;
    AdaenModel model(12, hp, 11);
    Rng rng(4);
    const auto& log = train(model, data, bits_tensor(gen, 10, 12), rng, 200);
    REQUIRE(log.early_stopped);
    CHECK(log.epochs.size() == log.best_epoch + hp.patience);
    for (std::size_t i = log.best_epoch; i < log.epochs.size(); ++i) {
        CHECK(log.epochs[i].validation >= log.best_validation);
    }
    CHECK(log.best_validation == log.epochs[log.best_epoch - 1].validation);
}

TEST_CASE("training with zero epochs leaves the model unchanged") {
    Gen gen(53);
    const auto data = bits_tensor(gen, 10, 12);
    AdaenModel model(12, toy_hyperparams(), 12);
    const auto before = model.to_json();
    Rng rng(5);
    (void)train(model, data, Tensor2D(), rng, 0);
    CHECK(model.to_json() == before);
}

TEST_CASE("training rejects tiny training sets") {
    AdaenModel model(12, toy_hyperparams(), 13);
    Rng rng(6);
    CHECK_THROWS_AS(train(model, Tensor2D(1, 12), Tensor2D(), rng), ArgumentError);
    std::vector<std::string> attrs;
    for (int c = 0; c < 12; ++c) attrs.push_back("a" + std::to_string(c));
    const data::BooleanDataset ds({"a"}, attrs, std::vector<std::uint8_t>(12, 0));
    CHECK_THROWS_AS(train(model, std::vector<std::size_t>{}, std::vector<std::size_t>{}, ds, rng), ArgumentError);
}

TEST_CASE("reconstruction training loss trends downward on synthetic data") {
    data::SynthConfig cfg;
    cfg.n_records = 400;
    cfg.n_attributes = 16;
    cfg.anomaly_rate = 0.01;
    cfg.seed = 42;
    const auto [ds, truth] = data::generate_synthetic(cfg);
    const auto normals = data::normal_rows(ds, truth);
    auto hp = toy_hyperparams();
    hp.latent_dim = 8;
    hp.attention_tokens = 2;
    hp.batch_size = 64;
    hp.patience = 1000;
    AdaenModel model(16, hp, 42);
    Rng rng(42);
    const auto& log = train(model, normals, {}, ds, rng, 60);
    REQUIRE(log.epochs.size() == 60);
    std::vector<double> smoothed;
    for (std::size_t start = 0; start + 10 <= log.epochs.size(); start += 10) {
        double s = 0.0;
        for (std::size_t i = start; i < start + 10; ++i) s += log.epochs[i].train_reconstruction;
        smoothed.push_back(s / 10.0);
    }
    for (std::size_t i = 1; i < smoothed.size(); ++i) CHECK(smoothed[i] <= smoothed[i - 1]);
}

TEST_CASE("anomaly score equals the combined reconstruction error") {
    Gen gen(54);
    const AdaenModel model(12, toy_hyperparams(), 14);
    const auto x = bits_tensor(gen, 5, 12);
    const auto combined = combined_reconstruction(model, x);
    for (std::size_t r = 0; r < x.rows(); ++r) CHECK(anomaly_score(model, x.row(r)) == combined[r]);
    CHECK(anomaly_scores(model, x) == combined);
}

TEST_CASE("scores do not depend on the batch a record is scored in") {
    Gen gen(55);
    AdaenModel model(12, toy_hyperparams(), 15);
    Rng rng(7);
    (void)train(model, bits_tensor(gen, 32, 12), Tensor2D(), rng, 3);
    const auto x = bits_tensor(gen, 9, 12);
    const auto all = anomaly_scores(model, x);
    std::vector<std::size_t> idx{4, 0, 7};
    const auto sub = anomaly_scores(model, x.gather_rows(idx));
    for (std::size_t i = 0; i < idx.size(); ++i) CHECK(sub[i] == all[idx[i]]);
}

TEST_CASE("a dense probe scores above the typical sparse record after training") {
    data::SynthConfig cfg;
    cfg.n_records = 300;
    cfg.n_attributes = 16;
    cfg.anomaly_rate = 0.01;
    cfg.normal_density = 0.15;
    cfg.seed = 42;
    const auto [ds, truth] = data::generate_synthetic(cfg);
    auto hp = toy_hyperparams();
    hp.latent_dim = 8;
    hp.learning_rate = 1e-3;
    AdaenModel model(16, hp, 42);
    Rng rng(42);
    (void)train(model, data::normal_rows(ds, truth), {}, ds, rng, 40);
    std::vector<double> mode(16, 0.0);
    for (std::size_t c = 0; c < 16; ++c) {
        std::size_t ones = 0;
        for (std::size_t r = 0; r < ds.rows(); ++r) ones += ds.cell(r, c);
        mode[c] = 2 * ones > ds.rows() ? 1.0 : 0.0;
    }
    const std::vector<double> probe(16, 1.0);
    CHECK(anomaly_score(model, probe) > anomaly_score(model, mode));
}

TEST_CASE("classify is a strict threshold test") {
    CHECK(classify(0.9, 0.5) == 1);
    CHECK(classify(0.5, 0.5) == 0);
    CHECK(classify(0.1, 0.5) == 0);
    Gen gen(56);
    std::uniform_real_distribution<double> dist(0.0, 1.0);
    for (int i = 0; i < 200; ++i) {
        const double s = dist(gen);
        const double t1 = dist(gen);
        const double t2 = t1 + dist(gen);
        REQUIRE(classify(s, t2) <= classify(s, t1));
    }
}

TEST_CASE("score_dataset ranks descending with id tie-break, independent of input order") {
    Gen gen(57);
    const auto ds = testing::random_dataset(gen, 30, 12);
    const AdaenModel model(12, toy_hyperparams(), 16);
    std::vector<std::size_t> rows(ds.rows());
    std::iota(rows.begin(), rows.end(), std::size_t{0});
    const auto ranked = score_dataset(model, rows, ds);
    REQUIRE(ranked.size() == rows.size());
    for (std::size_t i = 1; i < ranked.size(); ++i) {
        const auto& a = ranked[i - 1];
        const auto& b = ranked[i];
        REQUIRE((a.score > b.score || (a.score == b.score && a.id < b.id)));
    }
    for (int trial = 0; trial < 5; ++trial) {
        auto shuffled = rows;
        std::shuffle(shuffled.begin(), shuffled.end(), gen);
        REQUIRE(score_dataset(model, shuffled, ds) == ranked);
    }

    const data::BooleanDataset twins({"b", "a"}, {"x0", "x1", "x2", "x3", "x4", "x5", "x6", "x7", "x8", "x9", "x10", "x11"},
                                     std::vector<std::uint8_t>(24, 1));
    const std::vector<std::size_t> both{0, 1};
    CHECK(score_dataset(model, both, twins).ids() == std::vector<std::string>{"a", "b"});
}

TEST_CASE("checkpoints round-trip to identical bytes and scores") {
    Gen gen(58);
    AdaenModel model(12, toy_hyperparams(), 17);
    Rng rng(8);
    (void)train(model, bits_tensor(gen, 20, 12), Tensor2D(), rng, 2);
    testing::TempDir dir;
    save_checkpoint(dir / "a.json", model);
    const auto loaded = load_checkpoint(dir / "a.json");
    save_checkpoint(dir / "b.json", loaded);
    CHECK(testing::read_file(dir / "a.json") == testing::read_file(dir / "b.json"));
    const auto x = bits_tensor(gen, 5, 12);
    CHECK(anomaly_scores(loaded, x) == anomaly_scores(model, x));
    CHECK(loaded.seed() == 17);

    CHECK_THROWS_AS(load_checkpoint(dir / "missing.json"), IoError);
    {
        std::ofstream(dir / "junk.json") << "{not json";
    }
    CHECK_THROWS_AS(load_checkpoint(dir / "junk.json"), FormatError);
}
