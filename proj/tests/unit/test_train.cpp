#include <gtest/gtest.h>

#include <cmath>
#include <limits>
#include <sstream>

#include "client/data/fixture.hpp"
#include "client/data/split.hpp"
#include "client/errors.hpp"
#include "client/random.hpp"
#include "client/tensor/ops.hpp"
#include "client/train/adam.hpp"
#include "client/train/metrics.hpp"
#include "client/train/trainer.hpp"
#include "oracles.hpp"

namespace client {
namespace {

ClientConfig tiny(std::size_t l, std::size_t c, std::size_t t) {
  ClientConfig cfg;
  cfg.task = {l, c, t};
  cfg.layers = 1;
  cfg.d_ff = 16;
  return cfg;
}

TEST(Metrics, HandComputed) {
  const std::vector<double> p{1, 2, 3, 4}, t{2, 2, 1, 3};
  EXPECT_DOUBLE_EQ(mse(p, t), (1 + 0 + 4 + 1) / 4.0);
  EXPECT_DOUBLE_EQ(mae(p, t), (1 + 0 + 2 + 1) / 4.0);
  const std::vector<double> a{0, 0}, b{2, -2};
  EXPECT_DOUBLE_EQ(mse(a, b), 4.0);
  EXPECT_DOUBLE_EQ(mae(a, b), 2.0);
  EXPECT_THROW(mse(std::vector<double>{1}, t), DimensionError);
  EXPECT_THROW(mae(Tensor::zeros({2, 2}), Tensor::zeros({4})), DimensionError);
}

TEST(Adam, MatchesReferenceOnQuadratic) {
  // f(theta) = theta^2 from theta = 1 with lr 0.1.
  Tensor theta = Tensor::scalar(1.0, true);
  Adam opt({{"theta", theta}}, {.learning_rate = 0.1});
  oracle::ReferenceAdam ref(1, 0.1);
  std::vector<double> expected{1.0};
  for (int step = 0; step < 3; ++step) {
    theta.zero_grad();
    backward(sum_all(mul(theta, theta)));
    ref.step(expected, {2.0 * expected[0]});
    opt.step();
    EXPECT_NEAR(theta.item(), expected[0], 1e-12);
  }
  EXPECT_EQ(opt.steps(), 3u);
}

TEST(Adam, FirstStepMovesByLearningRate) {
  Rng rng(8);
  std::vector<double> theta(16), grad(16);
  for (std::size_t i = 0; i < 16; ++i) {
    theta[i] = rng.normal();
    grad[i] = rng.uniform(0.1, 10.0) * (rng.bernoulli(0.5) ? 1 : -1);
  }
  const std::vector<double> before = theta;
  AdamMoments state;
  adam_update(theta, grad, state, 1, {.learning_rate = 0.01});
  for (std::size_t i = 0; i < 16; ++i) {
    EXPECT_NEAR(std::abs(theta[i] - before[i]), 0.01, 1e-8);
    EXPECT_EQ(theta[i] < before[i], grad[i] > 0);
  }
}

TEST(Adam, ZeroGradientLeavesParameters) {
  std::vector<double> theta{1.0, -2.0, 3.0};
  const std::vector<double> grad(3, 0.0);
  AdamMoments state;
  for (std::size_t t = 1; t <= 5; ++t) adam_update(theta, grad, state, t, {});
  EXPECT_EQ(theta, (std::vector<double>{1.0, -2.0, 3.0}));
}

TEST(Adam, RandomTraceAgainstReference) {
  Rng rng(100);
  const std::size_t n = 7;
  std::vector<double> theta(n);
  for (auto& v : theta) v = rng.normal();
  std::vector<double> expected = theta;
  AdamMoments state;
  const AdamOptions opts{.learning_rate = 3e-3, .beta1 = 0.85, .beta2 = 0.99, .eps = 1e-7};
  oracle::ReferenceAdam ref(n, opts.learning_rate, opts.beta1, opts.beta2, opts.eps);
  for (std::size_t t = 1; t <= 100; ++t) {
    std::vector<double> g(n);
    for (auto& v : g) v = rng.normal() * 5.0;
    adam_update(theta, g, state, t, opts);
    ref.step(expected, g);
    for (std::size_t i = 0; i < n; ++i) ASSERT_NEAR(theta[i], expected[i], 1e-12) << "step " << t;
  }
}

TEST(Adam, NonFiniteGradientIsRejectedWithoutUpdating) {
  Tensor a = Tensor::from({2}, {1.0, 2.0}, true);
  Tensor b = Tensor::from({1}, {3.0}, true);
  Adam opt({{"a", a}, {"b", b}}, {});
  a.mutable_grad()[0] = 1.0;
  b.mutable_grad()[0] = std::numeric_limits<double>::quiet_NaN();
  try {
    opt.step();
    FAIL() << "expected NumericError";
  } catch (const NumericError& e) {
    EXPECT_NE(std::string(e.what()).find("b"), std::string::npos);
  }
  EXPECT_EQ(a.at(0), 1.0);
  EXPECT_EQ(b.at(0), 3.0);
}

TEST(EarlyStopping, FollowsTrace) {
  EarlyStopping es(3);
  const double losses[] = {5, 4, 4.1, 4.2, 4.3};
  std::size_t stopped_after = 0;
  for (std::size_t i = 0; i < 5; ++i) {
    es.update(losses[i]);
    if (es.should_stop()) {
      stopped_after = i + 1;
      break;
    }
  }
  EXPECT_EQ(stopped_after, 5u);
  EXPECT_EQ(es.best_epoch(), 2u);
  EXPECT_EQ(es.best_loss(), 4.0);
}

TEST(EarlyStopping, EqualLossIsNotImprovement) {
  EarlyStopping es(1);
  EXPECT_TRUE(es.update(1.0));
  EXPECT_FALSE(es.update(1.0));
  EXPECT_TRUE(es.should_stop());
  EXPECT_EQ(es.best_epoch(), 1u);
}

TEST(Evaluate, PerfectModelScoresZero) {
  // Period-12 series with L = T = 12: the target window equals the input window.
  const std::size_t period = 12, c = 2;
  auto m = std::make_shared<Matrix>(Matrix{120, c, std::vector<double>(120 * c)});
  for (std::size_t r = 0; r < 120; ++r)
    for (std::size_t j = 0; j < c; ++j)
      m->values[r * c + j] = std::sin(2 * M_PI * static_cast<double>(r % period) / period + j) * (j + 1) + 3.0 * j;
  const WindowedDataset windows(m, 0, 120, period, period);
  ClientModel model(tiny(period, c, period), 1);
  for (const char* name : {"head.weight", "head.bias", "linear.bias"}) {
    for (double& v : model.parameter(name).mutable_data()) v = 0.0;
  }
  Tensor lin = model.parameter("linear.weight");
  for (std::size_t i = 0; i < period; ++i)
    for (std::size_t j = 0; j < period; ++j) lin.mutable_data()[i * period + j] = i == j ? 1.0 : 0.0;
  model.parameter("linear.w_lin").mutable_data()[0] = 1.0;
  const Metrics metrics = evaluate(model, windows, 7);
  EXPECT_NEAR(metrics.mse, 0.0, 1e-20);
  EXPECT_NEAR(metrics.mae, 0.0, 1e-10);
}

TEST(Evaluate, RejectsMismatchedTask) {
  auto m = std::make_shared<const Matrix>(Matrix{40, 3, std::vector<double>(120, 1.0)});
  const ClientModel model(tiny(8, 2, 4), 1);
  EXPECT_THROW(evaluate(model, WindowedDataset(m, 0, 40, 8, 4)), DimensionError);
}

TEST(Evaluate, MatchesMetricOverAllWindows) {
  const MultivariateSeries fx = make_fixture(400, 3, 5);
  const PreparedData data = prepare_dataset(fx, SplitProfile::ratio, 16, 8);
  const ClientModel model(tiny(16, 3, 8), 2);
  double sq = 0, ab = 0;
  std::size_t n = 0;
  for (std::size_t i = 0; i < data.test.size(); ++i) {
    const Tensor p = model.forward(data.test.input(i)), t = data.test.target(i);
    for (std::size_t k = 0; k < p.numel(); ++k, ++n) {
      sq += (p.at(k) - t.at(k)) * (p.at(k) - t.at(k));
      ab += std::abs(p.at(k) - t.at(k));
    }
  }
  const Metrics m = evaluate(model, data.test, 5);
  EXPECT_NEAR(m.mse, sq / n, 1e-12);
  EXPECT_NEAR(m.mae, ab / n, 1e-12);
}

class TrainingRun : public ::testing::Test {
 protected:
  static void SetUpTestSuite() {
    fixture_ = new MultivariateSeries(make_fixture(600, 3, 3));
    data_ = new PreparedData(prepare_dataset(*fixture_, SplitProfile::ratio, 24, 12));
  }
  static void TearDownTestSuite() {
    delete data_;
    delete fixture_;
  }
  static TrainConfig config() {
    TrainConfig tc;
    tc.max_epochs = 4;
    tc.patience = 2;
    tc.batch_size = 16;
    tc.learning_rate = 3e-3;
    return tc;
  }
  static inline MultivariateSeries* fixture_ = nullptr;
  static inline PreparedData* data_ = nullptr;
};

TEST_F(TrainingRun, RestoresBestValidationParameters) {
  ClientModel model(tiny(24, 3, 12), 4);
  const TrainResult r = train(model, data_->train, data_->val, config());
  ASSERT_FALSE(r.history.empty());
  double best = r.history[0].val_mse;
  for (const auto& e : r.history) best = std::min(best, e.val_mse);
  EXPECT_EQ(r.best_val_mse, best);
  EXPECT_EQ(r.history[r.best_epoch - 1].val_mse, best);
  EXPECT_DOUBLE_EQ(evaluate(model, data_->val, config().batch_size).mse, best);
  const std::size_t batches = (data_->train.size() + 15) / 16;
  EXPECT_EQ(r.steps, batches * r.history.size());
}

TEST_F(TrainingRun, SameSeedSameParameters) {
  ClientModel a(tiny(24, 3, 12), 4), b(tiny(24, 3, 12), 4);
  train(a, data_->train, data_->val, config());
  train(b, data_->train, data_->val, config());
  EXPECT_EQ(a.snapshot(), b.snapshot());
  TrainConfig other = config();
  other.seed = 7;
  ClientModel c(tiny(24, 3, 12), 4);
  train(c, data_->train, data_->val, other);
  EXPECT_NE(a.snapshot(), c.snapshot());
}

TEST_F(TrainingRun, LossImproves) {
  ClientModel model(tiny(24, 3, 12), 4);
  const double before = evaluate(model, data_->val).mse;
  const TrainResult r = train(model, data_->train, data_->val, config());
  EXPECT_LT(r.best_val_mse, before);
}

TEST_F(TrainingRun, DivergenceNamesEpochAndBatch) {
  auto bad = std::make_shared<Matrix>(*data_->normalized);
  bad->values[30 * 3] = std::numeric_limits<double>::quiet_NaN();
  const WindowedDataset windows(bad, 0, data_->borders.train_end, 24, 12);
  ClientModel model(tiny(24, 3, 12), 4);
  try {
    train(model, windows, data_->val, config());
    FAIL() << "expected NumericError";
  } catch (const NumericError& e) {
    const std::string msg = e.what();
    EXPECT_NE(msg.find("epoch 1"), std::string::npos) << msg;
    EXPECT_NE(msg.find("batch"), std::string::npos) << msg;
  }
}

TEST(TrainConfigValidation, RejectsBadValues) {
  TrainConfig tc;
  tc.validate();
  tc.patience = 20;
  EXPECT_THROW(tc.validate(), ConfigError);
  tc = {};
  tc.learning_rate = 0;
  EXPECT_THROW(tc.validate(), ConfigError);
  tc = {};
  tc.batch_size = 0;
  EXPECT_THROW(tc.validate(), ConfigError);
}

TEST(FitBatch, LossDecreases) {
  const MultivariateSeries fx = make_fixture(300, 3, 5);
  const PreparedData data = prepare_dataset(fx, SplitProfile::ratio, 16, 8);
  const std::vector<std::size_t> idx{0, 5, 10, 15};
  const auto [x, y] = data.train.batch(idx);
  ClientModel model(tiny(16, 3, 8), 6);
  const std::vector<double> losses = fit_batch(model, x, y, 60, {.learning_rate = 5e-3});
  ASSERT_EQ(losses.size(), 60u);
  EXPECT_LT(losses.back(), 0.5 * losses.front());
}

TEST(History, CsvRoundTripsValues) {
  const std::vector<EpochRecord> h{{1, 0.1, 0.30000000000000004, 1.5}, {2, 1.0 / 3.0, 0.25, 2.0}};
  std::ostringstream out;
  write_history_csv(h, out);
  std::istringstream in(out.str());
  std::string line;
  std::getline(in, line);
  EXPECT_EQ(line, "epoch,train_mse,val_mse,seconds");
  std::getline(in, line);
  EXPECT_EQ(line, "1,0.1,0.30000000000000004,1.5");
  std::getline(in, line);
  EXPECT_EQ(std::stod(line.substr(2)), 1.0 / 3.0);
}

}  // namespace
}  // namespace client
