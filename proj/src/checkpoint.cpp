#include "relumap/checkpoint.hpp"

#include <json.hpp>

#include "relumap/io_util.hpp"

namespace relumap {

using nlohmann::json;

std::string checkpoint_to_json(const NetworkParams& params, const std::optional<InitScheme>& init) {
  params.validate();
  json doc;
  doc["format"] = "relumap-checkpoint-v1";
  doc["spec"] = {{"input_dim", params.spec.input_dim},
                 {"hidden", params.spec.hidden},
                 {"output_dim", params.spec.output_dim}};
  if (init) doc["init"] = {{"variant", to_string(init->variant)}, {"seed", init->seed}};
  json layers = json::array();
  for (std::size_t m = 0; m < params.weights.size(); ++m) {
    json rows = json::array();
    const Eigen::MatrixXd& w = params.weights[m];
    for (Eigen::Index r = 0; r < w.rows(); ++r) {
      json row = json::array();
      for (Eigen::Index c = 0; c < w.cols(); ++c) row.push_back(w(r, c));
      rows.push_back(std::move(row));
    }
    json bias = json::array();
    for (Eigen::Index r = 0; r < params.biases[m].size(); ++r)
      bias.push_back(params.biases[m](r));
    layers.push_back(json{{"weights", std::move(rows)}, {"bias", std::move(bias)}});
  }
  doc["layers"] = std::move(layers);
  return doc.dump(2) + "\n";
}

Checkpoint checkpoint_from_json(const std::string& json_text) {
  const json doc = json::parse(json_text);
  Checkpoint ck;
  ck.params.spec.input_dim = doc.at("spec").at("input_dim").get<int>();
  ck.params.spec.hidden = doc.at("spec").at("hidden").get<std::vector<int>>();
  ck.params.spec.output_dim = doc.at("spec").at("output_dim").get<int>();
  if (doc.contains("init")) {
    InitScheme scheme;
    scheme.variant = init_variant_from_string(doc.at("init").at("variant").get<std::string>());
    scheme.seed = doc.at("init").at("seed").get<std::uint64_t>();
    ck.init = scheme;
  }
  for (const json& layer : doc.at("layers")) {
    const auto& rows = layer.at("weights");
    const Eigen::Index out = static_cast<Eigen::Index>(rows.size());
    const Eigen::Index in = out > 0 ? static_cast<Eigen::Index>(rows[0].size()) : 0;
    Eigen::MatrixXd w(out, in);
    for (Eigen::Index r = 0; r < out; ++r)
      for (Eigen::Index c = 0; c < in; ++c) w(r, c) = rows[r][c].get<double>();
    const auto& bias = layer.at("bias");
    Eigen::VectorXd b(static_cast<Eigen::Index>(bias.size()));
    for (Eigen::Index r = 0; r < b.size(); ++r) b(r) = bias[r].get<double>();
    ck.params.weights.push_back(std::move(w));
    ck.params.biases.push_back(std::move(b));
  }
  ck.params.validate();
  return ck;
}

void save_checkpoint(const std::filesystem::path& path, const NetworkParams& params,
                     const std::optional<InitScheme>& init) {
  write_file_atomic(path, checkpoint_to_json(params, init));
}

Checkpoint load_checkpoint(const std::filesystem::path& path) {
  return checkpoint_from_json(read_file(path));
}

}  // namespace relumap
