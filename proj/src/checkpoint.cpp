#include "mcpde/checkpoint.hpp"

#include <bit>
#include <cstring>
#include <fstream>

static_assert(std::endian::native == std::endian::little,
              "checkpoint payloads are written little-endian");

namespace mcpde {

namespace {

constexpr char kMagic[8] = {'M', 'C', 'P', 'D', 'E', 'C', 'K', '1'};

template <typename T>
void write_raw(std::ostream& out, const T* data, std::size_t count) {
  out.write(reinterpret_cast<const char*>(data), static_cast<std::streamsize>(count * sizeof(T)));
}

template <typename T>
void read_raw(std::istream& in, T* data, std::size_t count) {
  in.read(reinterpret_cast<char*>(data), static_cast<std::streamsize>(count * sizeof(T)));
  if (!in) throw std::runtime_error("checkpoint: truncated payload");
}

std::vector<std::uint64_t> pack_rngs(const std::vector<Rng>& streams) {
  std::vector<std::uint64_t> out;
  out.reserve(streams.size() * 2);
  for (const Rng& r : streams) {
    out.push_back(r.key());
    out.push_back(r.counter());
  }
  return out;
}

std::vector<Rng> unpack_rngs(const std::vector<std::uint64_t>& words) {
  std::vector<Rng> out;
  out.reserve(words.size() / 2);
  for (std::size_t i = 0; i + 1 < words.size(); i += 2) out.emplace_back(words[i], words[i + 1]);
  return out;
}

}  // namespace

Checkpoint Checkpoint::from_state(const ExperimentConfig& cfg, const TrainState& st) {
  Checkpoint ck;
  ck.config = cfg;
  ck.step = st.step;
  ck.theta = st.theta;
  ck.has_state = true;
  ck.adam_m = st.adam_m;
  ck.adam_v = st.adam_v;
  ck.walker_positions = st.walkers.positions;
  ck.walker_categories = st.walkers.categories;
  ck.walker_streams = st.walkers.streams;
  ck.walker_params = st.walkers.params;
  ck.param_streams = st.walkers.param_streams;
  ck.boundary_rng = st.boundary_rng;
  ck.clamp_events = st.stats.clamp_events;
  ck.best_metric = st.best_metric;
  if (st.best_theta.size() > 0) ck.best_theta = st.best_theta;
  return ck;
}

Checkpoint Checkpoint::model_only(const ExperimentConfig& cfg, long step, const ParamVector& theta) {
  Checkpoint ck;
  ck.config = cfg;
  ck.step = step;
  ck.theta = theta;
  return ck;
}

TrainState Checkpoint::restore_state(const Network& net) const {
  if (!has_state) throw std::runtime_error("checkpoint holds a model only, not a training state");
  if (theta.size() != net.layout()->total())
    throw std::runtime_error("checkpoint parameters do not match the network layout");
  TrainState st;
  st.theta = theta;
  st.adam_m = adam_m;
  st.adam_v = adam_v;
  st.step = step;
  st.walkers.positions = walker_positions;
  st.walkers.categories = walker_categories;
  st.walkers.streams = walker_streams;
  st.walkers.params = walker_params;
  st.walkers.param_streams = param_streams;
  st.boundary_rng = boundary_rng;
  st.stats.clamp_events = clamp_events;
  st.best_metric = best_metric;
  st.best_theta = best_theta.size() > 0 ? best_theta : ParamVector();
  return st;
}

void save_checkpoint(const Checkpoint& ck, const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot open " + path + " for writing");

  nlohmann::json meta;
  meta["format_version"] = 1;
  meta["config"] = ck.config.to_json();
  meta["step"] = ck.step;
  meta["has_state"] = ck.has_state;
  meta["param_count"] = ck.theta.size();
  meta["walker_count"] = ck.walker_positions.size();
  meta["has_params"] = !ck.walker_params.empty();
  meta["has_best"] = ck.best_theta.size() > 0;
  meta["best_metric"] = std::isfinite(ck.best_metric) ? ck.best_metric : -1.0;
  meta["clamp_events"] = ck.clamp_events;
  const std::string header = meta.dump();

  out.write(kMagic, sizeof(kMagic));
  const std::uint64_t hlen = header.size();
  write_raw(out, &hlen, 1);
  out.write(header.data(), static_cast<std::streamsize>(header.size()));

  write_raw(out, ck.theta.data(), ck.theta.size());
  if (ck.has_state) {
    write_raw(out, ck.adam_m.data(), ck.adam_m.size());
    write_raw(out, ck.adam_v.data(), ck.adam_v.size());
    const std::size_t n = ck.walker_positions.size();
    std::vector<double> coords(2 * n);
    for (std::size_t i = 0; i < n; ++i) {
      coords[2 * i] = ck.walker_positions[i].x();
      coords[2 * i + 1] = ck.walker_positions[i].y();
    }
    write_raw(out, coords.data(), coords.size());
    std::vector<std::int32_t> cats(ck.walker_categories.begin(), ck.walker_categories.end());
    write_raw(out, cats.data(), cats.size());
    const auto wrng = pack_rngs(ck.walker_streams);
    write_raw(out, wrng.data(), wrng.size());
    if (!ck.walker_params.empty()) {
      write_raw(out, ck.walker_params.data(), ck.walker_params.size());
      const auto prng = pack_rngs(ck.param_streams);
      write_raw(out, prng.data(), prng.size());
    }
    const std::uint64_t brng[2] = {ck.boundary_rng.key(), ck.boundary_rng.counter()};
    write_raw(out, brng, 2);
    if (ck.best_theta.size() > 0) write_raw(out, ck.best_theta.data(), ck.best_theta.size());
  }
  if (!out) throw std::runtime_error("checkpoint write failed: " + path);
}

Checkpoint load_checkpoint(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open checkpoint: " + path);

  char magic[8];
  in.read(magic, sizeof(magic));
  if (!in || std::memcmp(magic, kMagic, sizeof(kMagic)) != 0)
    throw std::runtime_error("not a checkpoint file: " + path);
  std::uint64_t hlen = 0;
  read_raw(in, &hlen, 1);
  std::string header(hlen, '\0');
  in.read(header.data(), static_cast<std::streamsize>(hlen));
  if (!in) throw std::runtime_error("checkpoint: truncated header");
  const nlohmann::json meta = nlohmann::json::parse(header);
  if (meta.at("format_version").get<int>() != 1)
    throw std::runtime_error("unsupported checkpoint version");

  Checkpoint ck;
  ck.config = ExperimentConfig::from_json(meta.at("config"));
  ck.step = meta.at("step").get<long>();
  ck.has_state = meta.at("has_state").get<bool>();
  ck.clamp_events = meta.at("clamp_events").get<long long>();
  const double bm = meta.at("best_metric").get<double>();
  ck.best_metric = bm < 0 ? std::numeric_limits<double>::infinity() : bm;

  Network net(ck.config.network);
  const std::size_t p = meta.at("param_count").get<std::size_t>();
  if (p != net.layout()->total())
    throw std::runtime_error("checkpoint parameters do not match the recorded network spec");
  ck.theta = ParamVector(net.layout());
  read_raw(in, ck.theta.data(), p);

  if (ck.has_state) {
    ck.adam_m = ParamVector(net.layout());
    ck.adam_v = ParamVector(net.layout());
    read_raw(in, ck.adam_m.data(), p);
    read_raw(in, ck.adam_v.data(), p);
    const std::size_t n = meta.at("walker_count").get<std::size_t>();
    std::vector<double> coords(2 * n);
    read_raw(in, coords.data(), coords.size());
    ck.walker_positions.resize(n);
    for (std::size_t i = 0; i < n; ++i)
      ck.walker_positions[i] = Vec2{coords[2 * i], coords[2 * i + 1]};
    std::vector<std::int32_t> cats(n);
    read_raw(in, cats.data(), n);
    ck.walker_categories.assign(cats.begin(), cats.end());
    std::vector<std::uint64_t> wrng(2 * n);
    read_raw(in, wrng.data(), wrng.size());
    ck.walker_streams = unpack_rngs(wrng);
    if (meta.at("has_params").get<bool>()) {
      ck.walker_params.resize(n);
      read_raw(in, ck.walker_params.data(), n);
      std::vector<std::uint64_t> prng(2 * n);
      read_raw(in, prng.data(), prng.size());
      ck.param_streams = unpack_rngs(prng);
    }
    std::uint64_t brng[2];
    read_raw(in, brng, 2);
    ck.boundary_rng = Rng(brng[0], brng[1]);
    if (meta.at("has_best").get<bool>()) {
      ck.best_theta = ParamVector(net.layout());
      read_raw(in, ck.best_theta.data(), p);
    }
  }
  return ck;
}

}  // namespace mcpde
