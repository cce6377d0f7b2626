#include "client/config/run_config.hpp"

#include <boost/algorithm/string/trim.hpp>
#include <boost/property_tree/ini_parser.hpp>
#include <boost/property_tree/ptree.hpp>
#include <charconv>
#include <fstream>
#include <sstream>

#include "client/errors.hpp"

namespace client {

namespace {

std::string where(std::string_view section, std::string_view key) {
  return std::string(section) + "." + std::string(key);
}

template <typename T>
T parse_number(std::string_view section, std::string_view key, std::string_view value) {
  T out{};
  const auto res = std::from_chars(value.data(), value.data() + value.size(), out);
  if (res.ec != std::errc{} || res.ptr != value.data() + value.size()) {
    throw ConfigError(where(section, key) + ": cannot parse '" + std::string(value) + "'");
  }
  return out;
}

bool parse_bool(std::string_view section, std::string_view key, std::string_view v) {
  if (v == "true" || v == "1" || v == "yes" || v == "on") return true;
  if (v == "false" || v == "0" || v == "no" || v == "off") return false;
  throw ConfigError(where(section, key) + ": expected a boolean, got '" + std::string(v) + "'");
}

std::string fmt(double v) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, res.ptr);
}

}  // namespace

void apply_setting(RunConfig& c, std::string_view s, std::string_view k, std::string_view v) {
  const auto size = [&] { return parse_number<std::size_t>(s, k, v); };
  const auto real = [&] { return parse_number<double>(s, k, v); };
  const auto flag = [&] { return parse_bool(s, k, v); };
  auto& m = c.model;
  auto& t = c.train;

  if (s == "data") {
    if (k == "path") return void(c.data.path = std::string(v));
    if (k == "name") return void(c.data.name = std::string(v));
    if (k == "profile") return void(c.data.profile = parse_split_profile(v));
  } else if (s == "task") {
    if (k == "lookback") return void(m.task.lookback = size());
    if (k == "variables") return void(m.task.variables = size());
    if (k == "horizon") return void(m.task.horizon = size());
  } else if (s == "model") {
    if (k == "layers") return void(m.layers = size());
    if (k == "d_ff") return void(m.d_ff = size());
    if (k == "heads") return void(m.heads = size());
    if (k == "activation") return void(m.activation = parse_activation(v));
    if (k == "attention") return void(m.attention = parse_attention_kind(v));
    if (k == "scaling") return void(m.scaling = parse_scaling_mode(v));
    if (k == "linear_branch") return void(m.linear_branch = flag());
    if (k == "blend") return void(m.blend = parse_blend_mode(v));
    if (k == "w_lin_init") return void(m.w_lin_init = real());
    if (k == "revin") return void(m.revin = flag());
    if (k == "revin_affine") return void(m.revin_affine = flag());
    if (k == "revin_eps") return void(m.revin_eps = real());
    if (k == "input_embedding") return void(m.input_embedding = flag());
    if (k == "embed_dim") return void(m.embed_dim = size());
    if (k == "decoder_head") return void(m.decoder_head = flag());
    if (k == "layer_norm_eps") return void(m.layer_norm_eps = real());
  } else if (s == "train") {
    if (k == "learning_rate") return void(t.learning_rate = real());
    if (k == "batch_size") return void(t.batch_size = size());
    if (k == "max_epochs") return void(t.max_epochs = size());
    if (k == "patience") return void(t.patience = size());
    if (k == "beta1") return void(t.beta1 = real());
    if (k == "beta2") return void(t.beta2 = real());
    if (k == "adam_eps") return void(t.adam_eps = real());
    if (k == "clip_norm") return void(t.clip_norm = real());
    if (k == "train_mask_fraction") return void(t.train_mask_fraction = real());
  } else if (s == "run") {
    if (k == "seed") return void(c.seed = parse_number<std::uint64_t>(s, k, v));
    if (k == "out") return void(c.out = std::string(v));
  } else {
    throw ConfigError("unknown config section [" + std::string(s) + "]");
  }
  throw ConfigError("unknown config key " + where(s, k));
}

void apply_override(RunConfig& config, std::string_view assignment) {
  const auto dot = assignment.find('.');
  const auto eq = assignment.find('=');
  if (dot == std::string_view::npos || eq == std::string_view::npos || dot > eq) {
    throw ConfigError("override '" + std::string(assignment) + "' is not of the form section.key=value");
  }
  auto trimmed = [](std::string_view s) {
    std::string t(s);
    boost::algorithm::trim(t);
    return t;
  };
  apply_setting(config, trimmed(assignment.substr(0, dot)), trimmed(assignment.substr(dot + 1, eq - dot - 1)),
                trimmed(assignment.substr(eq + 1)));
}

RunConfig parse_run_config(std::string_view text, std::string_view source) {
  namespace pt = boost::property_tree;
  pt::ptree tree;
  std::istringstream in{std::string(text)};
  try {
    pt::read_ini(in, tree);
  } catch (const pt::ini_parser_error& e) {
    throw ConfigError(std::string(source) + ": " + e.message() + " (line " + std::to_string(e.line()) + ")");
  }
  RunConfig config;
  for (const auto& [section, body] : tree) {
    if (!body.data().empty()) throw ConfigError(std::string(source) + ": key '" + section + "' outside a section");
    if (section != "data" && section != "task" && section != "model" && section != "train" && section != "run") {
      throw ConfigError(std::string(source) + ": unknown config section [" + section + "]");
    }
    for (const auto& [key, value] : body) {
      try {
        apply_setting(config, section, key, value.data());
      } catch (const ConfigError& e) {
        throw ConfigError(std::string(source) + ": " + e.what());
      }
    }
  }
  return config;
}

RunConfig load_run_config(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_run_config(ss.str(), path.string());
}

namespace {

void write_task_model(std::ostream& o, const ClientConfig& m) {
  o << "[task]\n"
    << "lookback = " << m.task.lookback << '\n'
    << "variables = " << m.task.variables << '\n'
    << "horizon = " << m.task.horizon << "\n\n"
    << "[model]\n"
    << "layers = " << m.layers << '\n'
    << "d_ff = " << m.d_ff << '\n'
    << "heads = " << m.heads << '\n'
    << "activation = " << to_string(m.activation) << '\n'
    << "attention = " << to_string(m.attention) << '\n'
    << "scaling = " << to_string(m.scaling) << '\n'
    << "linear_branch = " << (m.linear_branch ? "true" : "false") << '\n'
    << "blend = " << to_string(m.blend) << '\n'
    << "w_lin_init = " << fmt(m.w_lin_init) << '\n'
    << "revin = " << (m.revin ? "true" : "false") << '\n'
    << "revin_affine = " << (m.revin_affine ? "true" : "false") << '\n'
    << "revin_eps = " << fmt(m.revin_eps) << '\n'
    << "input_embedding = " << (m.input_embedding ? "true" : "false") << '\n'
    << "embed_dim = " << m.embed_dim << '\n'
    << "decoder_head = " << (m.decoder_head ? "true" : "false") << '\n'
    << "layer_norm_eps = " << fmt(m.layer_norm_eps) << "\n\n";
}

}  // namespace

std::string to_ini(const RunConfig& c) {
  std::ostringstream o;
  o << "[data]\n"
    << "path = " << c.data.path << '\n'
    << "name = " << c.data.name << '\n'
    << "profile = " << to_string(c.data.profile) << "\n\n";
  write_task_model(o, c.model);
  const auto& t = c.train;
  o << "[train]\n"
    << "learning_rate = " << fmt(t.learning_rate) << '\n'
    << "batch_size = " << t.batch_size << '\n'
    << "max_epochs = " << t.max_epochs << '\n'
    << "patience = " << t.patience << '\n'
    << "beta1 = " << fmt(t.beta1) << '\n'
    << "beta2 = " << fmt(t.beta2) << '\n'
    << "adam_eps = " << fmt(t.adam_eps) << '\n'
    << "clip_norm = " << fmt(t.clip_norm) << '\n'
    << "train_mask_fraction = " << fmt(t.train_mask_fraction) << "\n\n"
    << "[run]\n"
    << "seed = " << c.seed << '\n'
    << "out = " << c.out << '\n';
  return o.str();
}

std::string model_ini(const ClientConfig& model, std::uint64_t seed) {
  std::ostringstream o;
  write_task_model(o, model);
  o << "[run]\nseed = " << seed << '\n';
  return o.str();
}

}  // namespace client
