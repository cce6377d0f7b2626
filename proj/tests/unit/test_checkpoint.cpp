#include <gtest/gtest.h>

#include <filesystem>
#include <sstream>

#include "client/errors.hpp"
#include "client/random.hpp"
#include "client/train/checkpoint.hpp"

namespace client {
namespace {

ClientConfig config_for(Variant v) {
  ClientConfig cfg;
  cfg.task = {8, 3, 4};
  cfg.layers = 2;
  cfg.d_ff = 12;
  cfg = apply_variant(cfg, v);
  if (v == Variant::embed) cfg.embed_dim = 8;
  return cfg;
}

Checkpoint sample_checkpoint(Variant v = Variant::client) {
  const ClientModel model(config_for(v), 17);
  const ZScoreScaler scaler{{1.5, -2.0, 0.1}, {2.0, 0.5, 1e-8}};
  const std::vector<EpochRecord> history{{1, 0.9, 0.8, 3.2}, {2, 0.7, 0.75, 3.1}};
  return make_checkpoint(model, 17, scaler, history);
}

std::string serialise(const Checkpoint& ck) {
  std::ostringstream out;
  save_checkpoint(ck, out);
  return out.str();
}

Checkpoint deserialise(const std::string& bytes) {
  std::istringstream in(bytes);
  return load_checkpoint(in);
}

std::string error_of(const std::string& bytes) {
  try {
    deserialise(bytes);
  } catch (const CheckpointError& e) {
    return e.what();
  }
  return {};
}

TEST(Checkpoint, RoundTripReproducesForwardBitwise) {
  Rng rng(3);
  Tensor x = Tensor::zeros({2, 8, 3});
  for (double& v : x.mutable_data()) v = rng.normal();
  for (Variant v : {Variant::client, Variant::no_linear, Variant::no_revin, Variant::embed, Variant::decoder}) {
    const Checkpoint ck = sample_checkpoint(v);
    const Checkpoint back = deserialise(serialise(ck));
    EXPECT_EQ(back.config, ck.config);
    EXPECT_EQ(back.seed, 17u);
    EXPECT_EQ(back.parameters, ck.parameters);
    EXPECT_EQ(back.scaler, ck.scaler);
    const ClientModel original(config_for(v), 17);
    const ClientModel restored = restore_model(back);
    const Tensor a = original.forward(x), b = restored.forward(x);
    for (std::size_t i = 0; i < a.numel(); ++i) ASSERT_EQ(a.at(i), b.at(i));
  }
}

TEST(Checkpoint, HistoryKeepsLossesButNotTime) {
  const Checkpoint back = deserialise(serialise(sample_checkpoint()));
  ASSERT_EQ(back.history.size(), 2u);
  EXPECT_EQ(back.history[1].epoch, 2u);
  EXPECT_EQ(back.history[1].val_mse, 0.75);
  EXPECT_EQ(back.history[1].seconds, 0.0);
}

TEST(Checkpoint, SerialisationIsDeterministic) {
  EXPECT_EQ(serialise(sample_checkpoint()), serialise(sample_checkpoint()));
}

TEST(Checkpoint, BadMagic) {
  std::string bytes = serialise(sample_checkpoint());
  bytes[0] = 'X';
  EXPECT_NE(error_of(bytes).find("bad magic"), std::string::npos);
  EXPECT_NE(error_of("").find("truncated"), std::string::npos);
}

TEST(Checkpoint, VersionMismatch) {
  std::string bytes = serialise(sample_checkpoint());
  bytes[4] = static_cast<char>(kCheckpointVersion + 1);
  EXPECT_NE(error_of(bytes).find("version"), std::string::npos);
}

TEST(Checkpoint, TruncationAtEveryLengthIsReported) {
  const std::string bytes = serialise(sample_checkpoint());
  for (std::size_t cut = 0; cut < bytes.size(); cut += 1 + cut / 7) {
    const std::string msg = error_of(bytes.substr(0, cut));
    EXPECT_FALSE(msg.empty()) << "cut at " << cut;
  }
}

TEST(Checkpoint, ShapeMismatchOnRestore) {
  Checkpoint ck = sample_checkpoint();
  ck.parameters[0].shape = {1, ck.parameters[0].values.size()};
  EXPECT_THROW(restore_model(ck), CheckpointError);
  Checkpoint missing = sample_checkpoint();
  missing.parameters.pop_back();
  EXPECT_THROW(restore_model(missing), CheckpointError);
}

TEST(Checkpoint, TaskMismatchNamesBothSides) {
  const Checkpoint ck = sample_checkpoint();
  EXPECT_NO_THROW(require_task(ck, {8, 3, 4}));
  try {
    require_task(ck, {8, 5, 4});
    FAIL() << "expected CheckpointError";
  } catch (const CheckpointError& e) {
    const std::string msg = e.what();
    EXPECT_NE(msg.find("config mismatch"), std::string::npos);
    EXPECT_NE(msg.find("C=3"), std::string::npos) << msg;
    EXPECT_NE(msg.find("C=5"), std::string::npos) << msg;
  }
}

TEST(Checkpoint, FileRoundTrip) {
  const auto path = std::filesystem::temp_directory_path() / "client_unit_checkpoint.clnt";
  save_checkpoint(sample_checkpoint(), path);
  EXPECT_EQ(load_checkpoint(path).parameters, sample_checkpoint().parameters);
  std::filesystem::remove(path);
  EXPECT_THROW(load_checkpoint(path), CheckpointError);
}

}  // namespace
}  // namespace client
