#include <benchmark/benchmark.h>

#include <numeric>
#include <random>

#include "aladaen/adaen/losses.hpp"
#include "aladaen/adaen/model.hpp"
#include "aladaen/adaen/scoring.hpp"
#include "aladaen/data/synthetic.hpp"
#include "aladaen/metrics/avf.hpp"
#include "aladaen/metrics/ranking.hpp"
#include "aladaen/numerics/layers.hpp"

using namespace aladaen;
using numerics::Rng;
using numerics::Tensor2D;

namespace {

Tensor2D random_tensor(std::size_t rows, std::size_t cols, std::uint64_t seed) {
    Rng rng(seed);
    Tensor2D t(rows, cols);
    for (double& v : t.values()) v = rng.uniform(-1.0, 1.0);
    return t;
}

data::BooleanDataset bench_dataset(std::size_t n, std::size_t d) {
    data::SynthConfig cfg;
    cfg.n_records = n;
    cfg.n_attributes = d;
    cfg.anomaly_rate = 0.01;
    cfg.seed = 42;
    return data::generate_synthetic(cfg).first;
}

adaen::Hyperparams bench_hyperparams() {
    adaen::Hyperparams hp;
    hp.batch_size = 128;
    return hp;
}

void bm_linear_forward(benchmark::State& state) {
    const auto n = static_cast<std::size_t>(state.range(0));
    Rng init(1);
    const numerics::LinearLayer layer(64, 32, init);
    const auto x = random_tensor(n, 64, 2);
    for (auto _ : state) benchmark::DoNotOptimize(layer.forward(x));
    state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(n));
}
BENCHMARK(bm_linear_forward)->Arg(128)->Arg(1024);

void bm_linear_forward_rowwise(benchmark::State& state) {
    const auto n = static_cast<std::size_t>(state.range(0));
    Rng init(1);
    const numerics::LinearLayer layer(64, 32, init);
    const auto x = random_tensor(n, 64, 2);
    for (auto _ : state) benchmark::DoNotOptimize(layer.forward_rowwise(x));
    state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(n));
}
BENCHMARK(bm_linear_forward_rowwise)->Arg(128)->Arg(1024);

void bm_linear_backward(benchmark::State& state) {
    Rng init(1);
    numerics::LinearLayer layer(64, 32, init);
    const auto x = random_tensor(128, 64, 2);
    const auto g = random_tensor(128, 32, 3);
    for (auto _ : state) {
        layer.zero_grad();
        benchmark::DoNotOptimize(layer.backward(x, g));
    }
}
BENCHMARK(bm_linear_backward);

void bm_batchnorm_train(benchmark::State& state) {
    numerics::BatchNorm bn(32);
    const auto x = random_tensor(128, 32, 4);
    const auto g = random_tensor(128, 32, 5);
    for (auto _ : state) {
        benchmark::DoNotOptimize(bn.forward_train(x));
        benchmark::DoNotOptimize(bn.backward(g));
    }
}
BENCHMARK(bm_batchnorm_train);

void bm_total_loss_step(benchmark::State& state) {
    adaen::AdaenModel model(64, bench_hyperparams(), 7);
    const auto ds = bench_dataset(128, 64);
    const auto x = ds.to_tensor();
    Rng rng(8);
    for (auto _ : state) {
        model.zero_autoencoder_grads();
        benchmark::DoNotOptimize(adaen::total_loss(model, x, rng, true));
    }
}
BENCHMARK(bm_total_loss_step);

void bm_anomaly_scores(benchmark::State& state) {
    const auto n = static_cast<std::size_t>(state.range(0));
    const adaen::AdaenModel model(64, bench_hyperparams(), 7);
    const auto x = bench_dataset(n, 64).to_tensor();
    for (auto _ : state) benchmark::DoNotOptimize(adaen::anomaly_scores(model, x));
    state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(n));
}
BENCHMARK(bm_anomaly_scores)->Arg(1000)->Arg(4000);

void bm_ndcg(benchmark::State& state) {
    const auto n = static_cast<std::size_t>(state.range(0));
    std::vector<std::string> ids(n);
    std::vector<double> scores(n);
    data::GroundTruth truth;
    std::mt19937_64 gen(9);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    for (std::size_t i = 0; i < n; ++i) {
        ids[i] = "r" + std::to_string(i);
        scores[i] = u(gen);
        if (i % 200 == 0) truth.anomalous_ids.insert(ids[i]);
    }
    for (auto _ : state) {
        const auto ranking = metrics::RankedList::from_scores(ids, scores);
        benchmark::DoNotOptimize(metrics::ndcg(ranking, truth));
    }
}
BENCHMARK(bm_ndcg)->Arg(4000)->Arg(40000);

void bm_avf(benchmark::State& state) {
    const auto ds = bench_dataset(static_cast<std::size_t>(state.range(0)), 64);
    for (auto _ : state) benchmark::DoNotOptimize(metrics::avf_scores(ds));
}
BENCHMARK(bm_avf)->Arg(4000);

}  // namespace

BENCHMARK_MAIN();
