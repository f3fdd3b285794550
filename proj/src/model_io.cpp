#include "ueba/model_io.hpp"

#include <cstring>
#include <fstream>
#include <stdexcept>

namespace ueba {

namespace {

constexpr char kMagic[8] = {'U', 'E', 'B', 'A', 'R', 'F', '0', '1'};

void put_u64(std::ostream& out, uint64_t v) {
  char b[8];
  for (int i = 0; i < 8; ++i) b[i] = static_cast<char>((v >> (8 * i)) & 0xff);
  out.write(b, 8);
}

uint64_t get_u64(std::istream& in) {
  char b[8];
  in.read(b, 8);
  if (!in) throw std::runtime_error("model file truncated");
  uint64_t v = 0;
  for (int i = 0; i < 8; ++i)
    v |= static_cast<uint64_t>(static_cast<unsigned char>(b[i])) << (8 * i);
  return v;
}

void put_f64(std::ostream& out, double v) {
  uint64_t bits;
  std::memcpy(&bits, &v, 8);
  put_u64(out, bits);
}

double get_f64(std::istream& in) {
  uint64_t bits = get_u64(in);
  double v;
  std::memcpy(&v, &bits, 8);
  return v;
}

void put_string(std::ostream& out, const std::string& s) {
  put_u64(out, s.size());
  out.write(s.data(), static_cast<std::streamsize>(s.size()));
}

std::string get_string(std::istream& in) {
  uint64_t n = get_u64(in);
  std::string s(n, '\0');
  in.read(s.data(), static_cast<std::streamsize>(n));
  if (!in) throw std::runtime_error("model file truncated");
  return s;
}

void put_doubles(std::ostream& out, const std::vector<double>& v) {
  put_u64(out, v.size());
  for (double x : v) put_f64(out, x);
}

std::vector<double> get_doubles(std::istream& in) {
  uint64_t n = get_u64(in);
  std::vector<double> v(n);
  for (auto& x : v) x = get_f64(in);
  return v;
}

}  // namespace

void save_model(const TrainedModel& model, const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot open for writing: " + path);
  out.write(kMagic, 8);
  put_string(out, model.selector);

  put_u64(out, model.feature_names.size());
  for (const auto& n : model.feature_names) put_string(out, n);

  put_doubles(out, model.standardizer.means());
  put_doubles(out, model.standardizer.stds());

  put_f64(out, model.forest.class_weight(0));
  put_f64(out, model.forest.class_weight(1));
  put_u64(out, model.forest.n_features());
  put_doubles(out, model.forest.feature_importances());
  put_u64(out, model.forest.trees().size());
  for (const auto& t : model.forest.trees()) {
    put_u64(out, t.nodes.size());
    for (const auto& n : t.nodes) {
      put_u64(out, static_cast<uint64_t>(static_cast<uint32_t>(n.feature)) |
                       (static_cast<uint64_t>(static_cast<uint32_t>(n.left)) << 32));
      put_u64(out, static_cast<uint64_t>(static_cast<uint32_t>(n.right)));
      put_f64(out, n.threshold);
      put_f64(out, n.pos_fraction);
    }
  }
  if (!out) throw std::runtime_error("write failed: " + path);
}

TrainedModel load_model(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open for reading: " + path);
  char magic[8];
  in.read(magic, 8);
  if (!in || std::memcmp(magic, kMagic, 8) != 0)
    throw std::runtime_error("not a model file (bad magic): " + path);

  TrainedModel model;
  model.selector = get_string(in);
  uint64_t n_names = get_u64(in);
  for (uint64_t i = 0; i < n_names; ++i) model.feature_names.push_back(get_string(in));

  std::vector<double> means = get_doubles(in);
  std::vector<double> stds = get_doubles(in);
  model.standardizer.restore(std::move(means), std::move(stds));

  double w_neg = get_f64(in);
  double w_pos = get_f64(in);
  uint64_t n_features = get_u64(in);
  std::vector<double> importances = get_doubles(in);
  uint64_t n_trees = get_u64(in);
  std::vector<Tree> trees(n_trees);
  for (auto& t : trees) {
    uint64_t n_nodes = get_u64(in);
    t.nodes.resize(n_nodes);
    for (auto& n : t.nodes) {
      uint64_t packed = get_u64(in);
      n.feature = static_cast<int32_t>(static_cast<uint32_t>(packed & 0xffffffffULL));
      n.left = static_cast<int32_t>(static_cast<uint32_t>(packed >> 32));
      n.right = static_cast<int32_t>(static_cast<uint32_t>(get_u64(in) & 0xffffffffULL));
      n.threshold = get_f64(in);
      n.pos_fraction = get_f64(in);
    }
  }
  model.forest.restore(std::move(trees), std::move(importances), n_features, w_neg, w_pos);
  return model;
}

}  // namespace ueba
