#include "client/train/checkpoint.hpp"

#include <array>
#include <bit>
#include <fstream>
#include <istream>
#include <ostream>

#include "client/config/run_config.hpp"
#include "client/errors.hpp"

namespace client {

namespace {

constexpr std::array<char, 4> kMagic{'C', 'L', 'N', 'T'};
constexpr std::uint32_t kMaxRank = 8;

template <typename U>
void put(std::ostream& out, U v) {
  std::array<char, sizeof(U)> bytes;
  for (std::size_t i = 0; i < sizeof(U); ++i) bytes[i] = static_cast<char>((v >> (8 * i)) & 0xFF);
  out.write(bytes.data(), bytes.size());
}

void put_f64(std::ostream& out, double v) { put(out, std::bit_cast<std::uint64_t>(v)); }

void put_string(std::ostream& out, const std::string& s) {
  put(out, static_cast<std::uint32_t>(s.size()));
  out.write(s.data(), static_cast<std::streamsize>(s.size()));
}

void put_record(std::ostream& out, const ParameterRecord& r) {
  put_string(out, r.name);
  put(out, static_cast<std::uint32_t>(r.shape.size()));
  for (const auto e : r.shape) put(out, static_cast<std::uint64_t>(e));
  for (const double v : r.values) put_f64(out, v);
}

class Reader {
 public:
  explicit Reader(std::istream& in) : in_(in) {}

  void bytes(char* dst, std::size_t n, const char* what) {
    in_.read(dst, static_cast<std::streamsize>(n));
    if (static_cast<std::size_t>(in_.gcount()) != n) {
      throw CheckpointError(std::string("checkpoint truncated while reading ") + what);
    }
  }

  template <typename U>
  U get(const char* what) {
    std::array<char, sizeof(U)> b;
    bytes(b.data(), b.size(), what);
    U v = 0;
    for (std::size_t i = 0; i < sizeof(U); ++i) v |= static_cast<U>(static_cast<unsigned char>(b[i])) << (8 * i);
    return v;
  }

  std::string string(const char* what, std::size_t limit) {
    const auto n = get<std::uint32_t>(what);
    if (n > limit) throw CheckpointError(std::string("checkpoint ") + what + " length " + std::to_string(n) + " is implausible");
    std::string s(n, '\0');
    bytes(s.data(), n, what);
    return s;
  }

 private:
  std::istream& in_;
};

ParameterRecord read_record(Reader& r) {
  ParameterRecord rec;
  rec.name = r.string("record name", 4096);
  const auto rank = r.get<std::uint32_t>("record rank");
  if (rank > kMaxRank) throw CheckpointError("checkpoint record " + rec.name + " has implausible rank");
  std::size_t n = 1;
  for (std::uint32_t i = 0; i < rank; ++i) {
    const auto e = r.get<std::uint64_t>("record extents");
    if (e > (std::uint64_t{1} << 32)) throw CheckpointError("checkpoint record " + rec.name + " has implausible extent");
    rec.shape.push_back(static_cast<std::size_t>(e));
    n *= static_cast<std::size_t>(e);
  }
  if (n > (std::size_t{1} << 32)) throw CheckpointError("checkpoint record " + rec.name + " is implausibly large");
  rec.values.resize(n);
  for (auto& v : rec.values) v = std::bit_cast<double>(r.get<std::uint64_t>("record values"));
  return rec;
}

}  // namespace

Checkpoint make_checkpoint(const ClientModel& model, std::uint64_t seed, const ZScoreScaler& scaler,
                           const std::vector<EpochRecord>& history) {
  Checkpoint ck;
  ck.config = model.config();
  ck.seed = seed;
  ck.scaler = scaler;
  ck.history = history;
  for (auto& h : ck.history) h.seconds = 0.0;
  for (const auto& p : model.parameters()) {
    ck.parameters.push_back({p.name, p.tensor.shape(), {p.tensor.data().begin(), p.tensor.data().end()}});
  }
  return ck;
}

ClientModel restore_model(const Checkpoint& ck) {
  ClientModel model(ck.config, ck.seed);
  const auto& params = model.parameters();
  if (params.size() != ck.parameters.size()) {
    throw CheckpointError("checkpoint holds " + std::to_string(ck.parameters.size()) + " parameters, config builds " +
                          std::to_string(params.size()));
  }
  for (const auto& rec : ck.parameters) {
    if (!model.has_parameter(rec.name)) throw CheckpointError("checkpoint parameter " + rec.name + " is not in the model");
    Tensor t = model.parameter(rec.name);
    if (t.shape() != rec.shape) {
      throw CheckpointError("checkpoint parameter " + rec.name + " has shape " + shape_to_string(rec.shape) +
                            ", model expects " + shape_to_string(t.shape()));
    }
    std::copy(rec.values.begin(), rec.values.end(), t.mutable_data().begin());
  }
  return model;
}

void require_task(const Checkpoint& ck, const ForecastTask& task) {
  const auto& have = ck.config.task;
  if (have == task) return;
  throw CheckpointError("config mismatch: checkpoint has L=" + std::to_string(have.lookback) + " T=" +
                        std::to_string(have.horizon) + " C=" + std::to_string(have.variables) + ", data has L=" +
                        std::to_string(task.lookback) + " T=" + std::to_string(task.horizon) +
                        " C=" + std::to_string(task.variables));
}

void save_checkpoint(const Checkpoint& ck, std::ostream& out) {
  out.write(kMagic.data(), kMagic.size());
  put(out, kCheckpointVersion);
  put_string(out, model_ini(ck.config, ck.seed));

  std::vector<ParameterRecord> extra;
  extra.push_back({"@scaler.mean", {ck.scaler.mean.size()}, ck.scaler.mean});
  extra.push_back({"@scaler.stdev", {ck.scaler.stdev.size()}, ck.scaler.stdev});
  ParameterRecord hist{"@history", {ck.history.size(), 3}, {}};
  for (const auto& h : ck.history) {
    hist.values.insert(hist.values.end(), {static_cast<double>(h.epoch), h.train_mse, h.val_mse});
  }
  extra.push_back(std::move(hist));

  put(out, static_cast<std::uint32_t>(ck.parameters.size() + extra.size()));
  for (const auto& r : ck.parameters) put_record(out, r);
  for (const auto& r : extra) put_record(out, r);
  if (!out) throw CheckpointError("failed writing checkpoint");
}

void save_checkpoint(const Checkpoint& ck, const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw CheckpointError("cannot write checkpoint " + path.string());
  save_checkpoint(ck, out);
}

Checkpoint load_checkpoint(std::istream& in) {
  Reader r(in);
  std::array<char, 4> magic{};
  r.bytes(magic.data(), magic.size(), "magic");
  if (magic != kMagic) throw CheckpointError("not a checkpoint (bad magic bytes)");
  const auto version = r.get<std::uint32_t>("version");
  if (version != kCheckpointVersion) {
    throw CheckpointError("unsupported checkpoint version " + std::to_string(version) + " (expected " +
                          std::to_string(kCheckpointVersion) + ")");
  }
  Checkpoint ck;
  RunConfig rc;
  try {
    rc = parse_run_config(r.string("config", 1 << 20), "checkpoint config");
  } catch (const ConfigError& e) {
    throw CheckpointError(e.what());
  }
  ck.config = rc.model;
  ck.seed = rc.seed;

  const auto count = r.get<std::uint32_t>("record count");
  for (std::uint32_t i = 0; i < count; ++i) {
    ParameterRecord rec = read_record(r);
    if (rec.name == "@scaler.mean") {
      ck.scaler.mean = std::move(rec.values);
    } else if (rec.name == "@scaler.stdev") {
      ck.scaler.stdev = std::move(rec.values);
    } else if (rec.name == "@history") {
      if (rec.shape.size() != 2 || rec.shape[1] != 3) throw CheckpointError("checkpoint history has the wrong shape");
      for (std::size_t e = 0; e < rec.shape[0]; ++e) {
        ck.history.push_back({static_cast<std::size_t>(rec.values[3 * e]), rec.values[3 * e + 1],
                              rec.values[3 * e + 2], 0.0});
      }
    } else {
      ck.parameters.push_back(std::move(rec));
    }
  }
  return ck;
}

Checkpoint load_checkpoint(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw CheckpointError("cannot open checkpoint " + path.string());
  return load_checkpoint(in);
}

}  // namespace client
