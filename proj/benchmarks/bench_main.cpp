#include <benchmark/benchmark.h>

#include "client/model/client_model.hpp"
#include "client/random.hpp"
#include "client/tensor/ops.hpp"
#include "client/train/adam.hpp"

namespace {

using namespace client;

Tensor random_tensor(Shape shape, std::uint64_t seed) {
  Rng rng(seed);
  Tensor t = Tensor::zeros(std::move(shape));
  for (double& v : t.mutable_data()) v = rng.normal();
  return t;
}

ClientConfig etth_config() {
  ClientConfig cfg;
  cfg.task = {96, 7, 96};
  cfg.d_ff = 32;
  return cfg;
}

void BM_Matmul(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  const Tensor a = random_tensor({32, n, n}, 1), b = random_tensor({n, n}, 2);
  for (auto _ : state) benchmark::DoNotOptimize(matmul(a, b));
  state.SetItemsProcessed(state.iterations() * 32 * static_cast<std::int64_t>(n * n * n));
}
BENCHMARK(BM_Matmul)->Arg(7)->Arg(32)->Arg(96);

void BM_Forward(benchmark::State& state) {
  const ClientModel model(etth_config(), 1);
  const Tensor x = random_tensor({static_cast<std::size_t>(state.range(0)), 96, 7}, 3);
  NoGradGuard guard;
  for (auto _ : state) benchmark::DoNotOptimize(model.forward(x));
}
BENCHMARK(BM_Forward)->Arg(1)->Arg(32);

void BM_TrainingStep(benchmark::State& state) {
  ClientModel model(etth_config(), 1);
  const Tensor x = random_tensor({32, 96, 7}, 4), y = random_tensor({32, 96, 7}, 5);
  Adam opt(model.parameters(), {});
  for (auto _ : state) {
    model.zero_grad();
    const Tensor loss = mse_reduce(model.forward(x), y);
    backward(loss);
    opt.step();
  }
}
BENCHMARK(BM_TrainingStep)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
