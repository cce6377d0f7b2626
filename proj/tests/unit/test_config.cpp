#include <gtest/gtest.h>

#include "client/config/run_config.hpp"
#include "client/errors.hpp"
#include "client/random.hpp"

namespace client {
namespace {

TEST(RunConfig, DefaultsSurviveEmptyText) {
  const RunConfig rc = parse_run_config("");
  EXPECT_EQ(rc, RunConfig{});
  EXPECT_EQ(rc.model.task.variables, 0u);
  EXPECT_EQ(rc.model.w_lin_init, 0.75);
}

TEST(RunConfig, ParsesSections) {
  const RunConfig rc = parse_run_config(R"(
; comment
[data]
path = data/ETTh1.csv
profile = ett_hourly
[task]
lookback = 96
horizon = 192
[model]
attention = mlp
linear_branch = no
scaling = sqrt_dk
[train]
learning_rate = 5e-3
[run]
seed = 7
)");
  EXPECT_EQ(rc.data.path, "data/ETTh1.csv");
  EXPECT_EQ(rc.data.profile, SplitProfile::ett_hourly);
  EXPECT_EQ(rc.model.task.horizon, 192u);
  EXPECT_EQ(rc.model.attention, AttentionKind::mlp);
  EXPECT_FALSE(rc.model.linear_branch);
  EXPECT_EQ(rc.model.scaling, ScalingMode::sqrt_dk);
  EXPECT_EQ(rc.train.learning_rate, 5e-3);
  EXPECT_EQ(rc.seed, 7u);
}

TEST(RunConfig, StrictAboutUnknowns) {
  EXPECT_THROW(parse_run_config("[model]\ndropout = 0.1\n"), ConfigError);
  EXPECT_THROW(parse_run_config("[optim]\nlr = 1\n"), ConfigError);
  EXPECT_THROW(parse_run_config("seed = 1\n"), ConfigError);
  EXPECT_THROW(parse_run_config("[task]\nlookback = 96x\n"), ConfigError);
  EXPECT_THROW(parse_run_config("[task]\nlookback = -4\n"), ConfigError);
  EXPECT_THROW(parse_run_config("[model]\nrevin = maybe\n"), ConfigError);
  EXPECT_THROW(parse_run_config("[model]\nattention = sparse\n"), ConfigError);
}

TEST(RunConfig, ErrorsNameTheSource) {
  try {
    parse_run_config("[model]\nlayerz = 2\n", "my.ini");
    FAIL();
  } catch (const ConfigError& e) {
    EXPECT_NE(std::string(e.what()).find("my.ini"), std::string::npos);
    EXPECT_NE(std::string(e.what()).find("layerz"), std::string::npos);
  }
}

TEST(RunConfig, Overrides) {
  RunConfig rc;
  apply_override(rc, "model.d_ff=64");
  apply_override(rc, "train.clip_norm = 1.5");
  apply_override(rc, "model.revin_affine=on");
  EXPECT_EQ(rc.model.d_ff, 64u);
  EXPECT_EQ(rc.train.clip_norm, 1.5);
  EXPECT_TRUE(rc.model.revin_affine);
  EXPECT_THROW(apply_override(rc, "model.d_ff"), ConfigError);
  EXPECT_THROW(apply_override(rc, "d_ff=3"), ConfigError);
  EXPECT_THROW(apply_override(rc, "model.nope=3"), ConfigError);
}

TEST(RunConfig, IniRoundTripOverRandomConfigs) {
  Rng rng(12);
  const char* kinds[] = {"full", "linear", "mlp", "none"};
  const char* profiles[] = {"ett_hourly", "ett_minute", "ratio"};
  for (int trial = 0; trial < 25; ++trial) {
    RunConfig rc;
    rc.data.path = "data/x" + std::to_string(trial) + ".csv";
    apply_setting(rc, "data", "profile", profiles[rng.below(3)]);
    rc.model.task = {1 + rng.below(200), rng.below(10), 1 + rng.below(300)};
    rc.model.layers = 1 + rng.below(4);
    rc.model.d_ff = 1 + rng.below(512);
    apply_setting(rc, "model", "attention", kinds[rng.below(4)]);
    rc.model.w_lin_init = rng.uniform(-1.0, 1.0);
    rc.model.revin_eps = rng.uniform(1e-9, 1e-3);
    rc.model.decoder_head = rng.bernoulli(0.5);
    rc.train.learning_rate = rng.uniform(1e-5, 1e-1);
    rc.train.train_mask_fraction = rng.uniform();
    rc.seed = rng.next_u64();
    EXPECT_EQ(parse_run_config(to_ini(rc)), rc) << to_ini(rc);
  }
}

TEST(RunConfig, ModelIniCarriesTaskModelAndSeed) {
  RunConfig rc;
  rc.model.task = {36, 7, 24};
  rc.model.d_ff = 64;
  rc.seed = 99;
  const RunConfig back = parse_run_config(model_ini(rc.model, rc.seed));
  EXPECT_EQ(back.model, rc.model);
  EXPECT_EQ(back.seed, 99u);
  EXPECT_EQ(back.train, TrainConfig{});
}

TEST(RunConfig, ShippedConfigsLoad) {
  for (const char* name : {"etth1", "ettm1", "ili", "exchange", "fixture"}) {
    const auto path = std::filesystem::path(CLIENT_SOURCE_DIR) / "configs" / (std::string(name) + ".ini");
    const RunConfig rc = load_run_config(path);
    EXPECT_FALSE(rc.data.path.empty()) << name;
    rc.train.validate();
  }
  EXPECT_THROW(load_run_config("/nonexistent.ini"), ConfigError);
}

}  // namespace
}  // namespace client
