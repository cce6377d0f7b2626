#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <string>
#include <vector>

#include "client/data/scaler.hpp"
#include "client/model/client_model.hpp"
#include "client/train/trainer.hpp"

namespace client {

inline constexpr std::uint32_t kCheckpointVersion = 1;

struct ParameterRecord {
  std::string name;
  Shape shape;
  std::vector<double> values;
  bool operator==(const ParameterRecord&) const = default;
};

// A trained model plus what is needed to use and audit it. History keeps
// epoch, train and validation MSE only; wall-clock time is left out so that
// identical runs produce identical files.
struct Checkpoint {
  ClientConfig config;
  std::uint64_t seed = 0;
  std::vector<ParameterRecord> parameters;
  ZScoreScaler scaler;
  std::vector<EpochRecord> history;
};

Checkpoint make_checkpoint(const ClientModel& model, std::uint64_t seed, const ZScoreScaler& scaler,
                           const std::vector<EpochRecord>& history);

// Rebuilds the model and loads the stored values. Throws CheckpointError if a
// record is missing, unexpected or has the wrong shape.
ClientModel restore_model(const Checkpoint& checkpoint);

// Throws CheckpointError ("config mismatch ...") when L, T or C differ.
void require_task(const Checkpoint& checkpoint, const ForecastTask& task);

// Layout, all little-endian:
//   "CLNT" | u32 version | u32 n, n bytes INI config text | u32 record count |
//   per record: u32 name length, name, u32 rank, rank x u64 extents, f64 values
// Scaler and history are stored as records named "@scaler.mean",
// "@scaler.stdev" and "@history" (rows of epoch, train_mse, val_mse).
void save_checkpoint(const Checkpoint& checkpoint, std::ostream& out);
void save_checkpoint(const Checkpoint& checkpoint, const std::filesystem::path& path);
Checkpoint load_checkpoint(std::istream& in);
Checkpoint load_checkpoint(const std::filesystem::path& path);

}  // namespace client
