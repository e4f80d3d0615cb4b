#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "relumap/network.hpp"

namespace relumap {

struct TrainConfig {
  int batch_size = 32;
  double learning_rate = 1e-3;
  int epochs = 100;
  double adam_beta1 = 0.9;
  double adam_beta2 = 0.999;
  double adam_eps = 1e-8;
  std::uint64_t shuffle_seed = 0;
  std::vector<int> record_epochs;  // sorted, within [0, epochs]

  void validate() const;
};

struct Gradients {
  std::vector<Eigen::MatrixXd> weights;
  std::vector<Eigen::VectorXd> biases;
};

struct AdamState {
  std::vector<Eigen::MatrixXd> m_weights, v_weights;
  std::vector<Eigen::VectorXd> m_biases, v_biases;
  long step = 0;

  static AdamState zeros_like(const NetworkParams& params);
};

struct TrainRecord {
  int epoch = 0;
  double accuracy = 0.0;
  double loss = 0.0;
  std::optional<long> region_count;
  std::optional<double> line_count;
};

struct TrainLog {
  std::vector<TrainRecord> records;

  // header: epoch,accuracy,loss,region_count,line_count
  std::string to_csv() const;
};

// -log softmax(logits)[label], computed with max subtraction.
double cross_entropy_loss(const Eigen::Ref<const Eigen::VectorXd>& logits, int label);

// Mean cross-entropy over the batch (columns of x).
double batch_loss(const NetworkParams& params, const Eigen::Ref<const Eigen::MatrixXd>& x,
                  const std::vector<int>& labels);

// Argmax accuracy; ties go to the lowest class index.
double batch_accuracy(const NetworkParams& params, const Eigen::Ref<const Eigen::MatrixXd>& x,
                      const std::vector<int>& labels);

// Mean gradient of the cross-entropy loss over the batch.
Gradients backward(const NetworkParams& params, const Eigen::Ref<const Eigen::MatrixXd>& x,
                   const std::vector<int>& labels);

// Standard Adam update with bias correction; increments state.step.
void adam_step(NetworkParams& params, const Gradients& grads, AdamState& state,
               const TrainConfig& config);

// Invoked at every epoch listed in record_epochs; epoch 0 means the untouched
// initialization. The hook may fill the optional fields of the record.
using RecordHook = std::function<void(int epoch, const NetworkParams& params, TrainRecord& rec)>;

// Shuffled mini-batch Adam over the full dataset; the last incomplete batch
// is kept. Deterministic for fixed seeds.
TrainLog train_run(NetworkParams& params, const Eigen::Ref<const Eigen::MatrixXd>& x,
                   const std::vector<int>& labels, const TrainConfig& config,
                   const RecordHook& hook = {});

}  // namespace relumap
