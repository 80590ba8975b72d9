#include "smell/checkpoint.hpp"

#include <cstring>
#include <fstream>
#include <map>
#include <vector>

#include <nlohmann/json.hpp>

#include "smell/config_io.hpp"

namespace smell {
namespace {

constexpr char kMagic[8] = {'S', 'M', 'E', 'L', 'C', 'K', 'P', '\0'};
constexpr std::uint32_t kVersion = 1;

struct TensorRef {
  std::string name;
  const Matrix* matrix = nullptr;
  Matrix row; // bias storage when copying from RowVector
};

void collect_mlp(const std::string& prefix, const Mlp& net, std::vector<TensorRef>& out) {
  for (std::size_t l = 0; l < net.layers.size(); ++l) {
    TensorRef w;
    w.name = prefix + ".w" + std::to_string(l);
    w.matrix = &net.layers[l].weight;
    out.push_back(std::move(w));
    TensorRef b;
    b.name = prefix + ".b" + std::to_string(l);
    b.row = net.layers[l].bias;
    out.push_back(std::move(b));
  }
}

} // namespace

void save_checkpoint(const TrainedModel& model, const std::string& path) {
  std::vector<TensorRef> tensors;
  collect_mlp("encoder", model.params.encoder, tensors);
  collect_mlp("decoder", model.params.decoder, tensors);
  TensorRef pos;
  pos.name = "markers.positive";
  pos.matrix = &model.markers.positive;
  tensors.push_back(std::move(pos));
  TensorRef neg;
  neg.name = "markers.negative";
  neg.matrix = &model.markers.negative;
  tensors.push_back(std::move(neg));

  nlohmann::json header;
  header["config"] = config_to_json(model.config);
  auto& list = header["tensors"] = nlohmann::json::array();
  for (const auto& t : tensors) {
    const Matrix& m = t.matrix ? *t.matrix : t.row;
    list.push_back({{"name", t.name}, {"rows", m.rows()}, {"cols", m.cols()}});
  }
  const std::string header_str = header.dump();

  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write checkpoint: " + path);
  out.write(kMagic, sizeof(kMagic));
  const std::uint32_t version = kVersion;
  out.write(reinterpret_cast<const char*>(&version), sizeof(version));
  const auto header_len = static_cast<std::uint64_t>(header_str.size());
  out.write(reinterpret_cast<const char*>(&header_len), sizeof(header_len));
  out.write(header_str.data(), static_cast<std::streamsize>(header_str.size()));
  for (const auto& t : tensors) {
    const Matrix& m = t.matrix ? *t.matrix : t.row;
    // row-major serialization, independent of Eigen's storage order
    for (Eigen::Index r = 0; r < m.rows(); ++r) {
      for (Eigen::Index c = 0; c < m.cols(); ++c) {
        const double v = m(r, c);
        out.write(reinterpret_cast<const char*>(&v), sizeof(v));
      }
    }
  }
}

TrainedModel load_checkpoint(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw UserError("cannot open checkpoint: " + path);

  char magic[8];
  in.read(magic, sizeof(magic));
  if (!in || std::memcmp(magic, kMagic, sizeof(kMagic)) != 0) {
    throw UserError("not a checkpoint file: " + path);
  }
  std::uint32_t version = 0;
  in.read(reinterpret_cast<char*>(&version), sizeof(version));
  if (version != kVersion) {
    throw UserError("unsupported checkpoint version " + std::to_string(version));
  }
  std::uint64_t header_len = 0;
  in.read(reinterpret_cast<char*>(&header_len), sizeof(header_len));
  std::string header_str(header_len, '\0');
  in.read(header_str.data(), static_cast<std::streamsize>(header_len));
  if (!in) throw UserError("truncated checkpoint: " + path);

  const nlohmann::json header = nlohmann::json::parse(header_str);
  std::map<std::string, Matrix> tensors;
  for (const auto& t : header.at("tensors")) {
    Matrix m(t.at("rows").get<Eigen::Index>(), t.at("cols").get<Eigen::Index>());
    for (Eigen::Index r = 0; r < m.rows(); ++r) {
      for (Eigen::Index c = 0; c < m.cols(); ++c) {
        double v = 0;
        in.read(reinterpret_cast<char*>(&v), sizeof(v));
        m(r, c) = v;
      }
    }
    tensors[t.at("name").get<std::string>()] = std::move(m);
  }
  if (!in) throw UserError("truncated checkpoint: " + path);

  TrainedModel model;
  model.config = config_from_json(header.at("config"));

  auto load_mlp = [&tensors](const std::string& prefix) {
    Mlp net;
    for (std::size_t l = 0;; ++l) {
      const auto wk = prefix + ".w" + std::to_string(l);
      const auto bk = prefix + ".b" + std::to_string(l);
      const auto wit = tensors.find(wk);
      if (wit == tensors.end()) break;
      Layer layer;
      layer.weight = wit->second;
      layer.bias = tensors.at(bk).row(0);
      net.layers.push_back(std::move(layer));
    }
    if (net.layers.empty()) throw UserError("checkpoint missing tensors for " + prefix);
    return net;
  };
  model.params.encoder = load_mlp("encoder");
  model.params.decoder = load_mlp("decoder");
  model.markers.positive = tensors.at("markers.positive");
  model.markers.negative = tensors.at("markers.negative");
  return model;
}

} // namespace smell
