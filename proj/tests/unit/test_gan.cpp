#include <doctest.h>

#include <cmath>
#include <set>

#include "aladaen/errors.hpp"
#include "aladaen/gan/gan.hpp"
#include "aladaen/numerics/gradcheck.hpp"
#include "test_support.hpp"

using namespace aladaen;
using namespace aladaen::gan;
using numerics::Rng;
using numerics::Tensor2D;

namespace {

Tensor2D repeated_row(const std::vector<std::uint8_t>& row, std::size_t copies) {
    Tensor2D t(copies, row.size());
    for (std::size_t r = 0; r < copies; ++r) {
        for (std::size_t c = 0; c < row.size(); ++c) t(r, c) = row[c];
    }
    return t;
}

std::vector<std::uint8_t> fixed_row() {
    return {1, 0, 0, 1, 0, 1, 0, 0, 0, 1, 1, 0, 0, 0, 1, 0, 0, 0, 1, 0, 0, 0, 0, 1};
}

}  // namespace

TEST_CASE("gan config validation") {
    GanConfig cfg;
    CHECK_NOTHROW(cfg.validate());
    cfg.steps = 0;
    CHECK_THROWS_AS(cfg.validate(), ArgumentError);
}

TEST_CASE("generator outputs probabilities of the data width") {
    GanConfig cfg;
    Rng init(1);
    const GanModel gan(10, cfg, init);
    Rng rng(2);
    const auto p = gan.generate(gan.sample_noise(7, rng));
    CHECK(p.rows() == 7);
    CHECK(p.cols() == 10);
    for (double v : p.values()) {
        REQUIRE(v > 0.0);
        REQUIRE(v < 1.0);
    }
}

TEST_CASE("gan loss gradients match finite differences") {
    testing::Gen gen(60);
    GanConfig cfg;
    cfg.noise_dim = 4;
    Rng init(3);
    GanModel gan(12, cfg, init);
    Rng rng(4);
    const auto noise = gan.sample_noise(5, rng);
    const auto real = testing::random_tensor(gen, 5, 12, 0.0, 1.0);

    auto dparams = gan.discriminator.params("d");
    gan.discriminator.zero_grad();
    (void)gan_discriminator_loss(gan, real, noise, true);
    const auto d_report = numerics::finite_difference_check(
        [&]() { return gan_discriminator_loss(gan, real, noise); }, dparams, 1e-4);
    CHECK(d_report.max_relative_error < 1e-4);

    auto gparams = gan.generator.params("g");
    gan.generator.zero_grad();
    gan.discriminator.zero_grad();
    (void)gan_generator_loss(gan, noise, true);
    for (const auto& p : dparams) {
        for (double g : p.grad->values()) REQUIRE(g == 0.0);
    }
    const auto g_report =
        numerics::finite_difference_check([&]() { return gan_generator_loss(gan, noise); }, gparams, 1e-4);
    CHECK(g_report.max_relative_error < 1e-4);
}

TEST_CASE("a gan trained on a degenerate pool reproduces the pool row") {
    const auto row = fixed_row();
    Rng rng(42);
    GanConfig cfg;
    const auto gan = train_gan(repeated_row(row, 32), cfg, rng);
    const auto samples = sample_synthetic(gan, 100, rng, 1);
    REQUIRE(samples.rows() == 100);
    std::size_t exact = 0;
    std::size_t agree = 0;
    for (std::size_t s = 0; s < samples.rows(); ++s) {
        bool same = true;
        for (std::size_t c = 0; c < row.size(); ++c) {
            const bool hit = samples.cells[s * row.size() + c] == row[c];
            agree += hit ? 1 : 0;
            same = same && hit;
        }
        exact += same ? 1 : 0;
    }
    CHECK(exact >= 80);
    CHECK(static_cast<double>(agree) / (100.0 * static_cast<double>(row.size())) >= 0.9);
}

TEST_CASE("gan losses stay finite over 200 steps") {
    testing::Gen gen(61);
    const auto pool = testing::random_dataset(gen, 40, 16, 0.2).to_tensor();
    GanConfig cfg;
    cfg.steps = 200;
    Rng rng(5);
    GanTrainLog log;
    (void)train_gan(pool, cfg, rng, &log);
    REQUIRE(log.discriminator_loss.size() == 200);
    REQUIRE(log.generator_loss.size() == 200);
    for (std::size_t i = 0; i < 200; ++i) {
        REQUIRE(std::isfinite(log.discriminator_loss[i]));
        REQUIRE(std::isfinite(log.generator_loss[i]));
    }
}

TEST_CASE("gan training and sampling are deterministic per seed") {
    testing::Gen gen(62);
    const auto pool = testing::random_dataset(gen, 12, 10, 0.3).to_tensor();
    GanConfig cfg;
    cfg.steps = 40;
    Rng a(77);
    Rng b(77);
    const auto ga = train_gan(pool, cfg, a);
    const auto gb = train_gan(pool, cfg, b);
    CHECK(ga.generator.to_json() == gb.generator.to_json());
    CHECK(ga.discriminator.to_json() == gb.discriminator.to_json());
    CHECK(sample_synthetic(ga, 20, a, 3).cells == sample_synthetic(gb, 20, b, 3).cells);
}

TEST_CASE("synthetic samples are binary, correctly sized and uniquely named") {
    testing::Gen gen(63);
    const auto pool = testing::random_dataset(gen, 8, 9, 0.4).to_tensor();
    GanConfig cfg;
    cfg.steps = 10;
    Rng rng(6);
    const auto gan = train_gan(pool, cfg, rng);
    CHECK(sample_synthetic(gan, 0, rng, 1).rows() == 0);
    const auto rows = sample_synthetic(gan, 25, rng, 4);
    CHECK(rows.cols == 9);
    CHECK(rows.cells.size() == 25 * 9);
    for (auto v : rows.cells) REQUIRE(v <= 1);
    const std::set<std::string> ids(rows.ids.begin(), rows.ids.end());
    CHECK(ids.size() == 25);
    CHECK(rows.ids.front() == "synth-4-0");
    CHECK(rows.ids.back() == "synth-4-24");
}

TEST_CASE("gan training rejects an empty pool") {
    Rng rng(7);
    CHECK_THROWS_AS(train_gan(Tensor2D(0, 5), GanConfig{}, rng), ArgumentError);
}
