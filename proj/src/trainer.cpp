#include "relumap/trainer.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <numeric>
#include <stdexcept>

#include "relumap/rng.hpp"

namespace relumap {

namespace {

void check_labels(const NetworkParams& params, const Eigen::Ref<const Eigen::MatrixXd>& x,
                  const std::vector<int>& labels) {
  if (x.cols() != static_cast<Eigen::Index>(labels.size()))
    throw std::invalid_argument("labels size does not match batch");
  for (int label : labels)
    if (label < 0 || label >= params.spec.output_dim)
      throw std::invalid_argument("label out of range");
}

Eigen::MatrixXd softmax_columns(const Eigen::MatrixXd& logits) {
  Eigen::MatrixXd p = logits;
  for (Eigen::Index j = 0; j < p.cols(); ++j) {
    p.col(j).array() -= p.col(j).maxCoeff();
    p.col(j) = p.col(j).array().exp();
    p.col(j) /= p.col(j).sum();
  }
  return p;
}

int argmax_first(const Eigen::Ref<const Eigen::VectorXd>& v) {
  int best = 0;
  for (Eigen::Index i = 1; i < v.size(); ++i)
    if (v(i) > v(best)) best = static_cast<int>(i);
  return best;
}

}  // namespace

void TrainConfig::validate() const {
  if (batch_size < 1) throw std::invalid_argument("TrainConfig: batch_size must be >= 1");
  if (!(learning_rate > 0.0)) throw std::invalid_argument("TrainConfig: learning_rate must be > 0");
  if (epochs < 0) throw std::invalid_argument("TrainConfig: epochs must be >= 0");
  if (!(adam_beta1 > 0.0 && adam_beta1 < 1.0 && adam_beta2 > 0.0 && adam_beta2 < 1.0))
    throw std::invalid_argument("TrainConfig: betas must lie in (0,1)");
  if (!(adam_eps > 0.0)) throw std::invalid_argument("TrainConfig: eps must be > 0");
  for (int e : record_epochs)
    if (e < 0 || e > epochs)
      throw std::invalid_argument("TrainConfig: record epoch outside [0, epochs]");
  if (!std::is_sorted(record_epochs.begin(), record_epochs.end()))
    throw std::invalid_argument("TrainConfig: record_epochs must be sorted");
}

AdamState AdamState::zeros_like(const NetworkParams& params) {
  AdamState state;
  for (const Eigen::MatrixXd& w : params.weights) {
    state.m_weights.push_back(Eigen::MatrixXd::Zero(w.rows(), w.cols()));
    state.v_weights.push_back(Eigen::MatrixXd::Zero(w.rows(), w.cols()));
  }
  for (const Eigen::VectorXd& b : params.biases) {
    state.m_biases.push_back(Eigen::VectorXd::Zero(b.size()));
    state.v_biases.push_back(Eigen::VectorXd::Zero(b.size()));
  }
  return state;
}

std::string TrainLog::to_csv() const {
  std::string out = "epoch,accuracy,loss,region_count,line_count\n";
  char buf[160];
  for (const TrainRecord& r : records) {
    std::string regions = r.region_count ? std::to_string(*r.region_count) : "";
    std::string lines;
    if (r.line_count) {
      std::snprintf(buf, sizeof(buf), "%.17g", *r.line_count);
      lines = buf;
    }
    std::snprintf(buf, sizeof(buf), "%d,%.17g,%.17g,%s,%s\n", r.epoch, r.accuracy, r.loss,
                  regions.c_str(), lines.c_str());
    out += buf;
  }
  return out;
}

double cross_entropy_loss(const Eigen::Ref<const Eigen::VectorXd>& logits, int label) {
  if (label < 0 || label >= logits.size())
    throw std::invalid_argument("cross_entropy_loss: label out of range");
  const double top = logits.maxCoeff();
  const double lse = top + std::log((logits.array() - top).exp().sum());
  return lse - logits(label);
}

double batch_loss(const NetworkParams& params, const Eigen::Ref<const Eigen::MatrixXd>& x,
                  const std::vector<int>& labels) {
  check_labels(params, x, labels);
  const Eigen::MatrixXd logits = forward_batch(params, x);
  double total = 0.0;
  for (Eigen::Index j = 0; j < logits.cols(); ++j)
    total += cross_entropy_loss(logits.col(j), labels[static_cast<std::size_t>(j)]);
  return total / static_cast<double>(logits.cols());
}

double batch_accuracy(const NetworkParams& params, const Eigen::Ref<const Eigen::MatrixXd>& x,
                      const std::vector<int>& labels) {
  check_labels(params, x, labels);
  const Eigen::MatrixXd logits = forward_batch(params, x);
  long hits = 0;
  for (Eigen::Index j = 0; j < logits.cols(); ++j)
    if (argmax_first(logits.col(j)) == labels[static_cast<std::size_t>(j)]) ++hits;
  return static_cast<double>(hits) / static_cast<double>(logits.cols());
}

Gradients backward(const NetworkParams& params, const Eigen::Ref<const Eigen::MatrixXd>& x,
                   const std::vector<int>& labels) {
  check_labels(params, x, labels);
  if (x.cols() == 0) throw std::invalid_argument("backward: empty batch");
  const int hidden = params.spec.hidden_layer_count();
  const Eigen::Index batch = x.cols();

  ForwardCache cache;
  const Eigen::MatrixXd logits = forward_batch(params, x, &cache);

  Eigen::MatrixXd delta = softmax_columns(logits);
  for (Eigen::Index j = 0; j < batch; ++j) delta(labels[static_cast<std::size_t>(j)], j) -= 1.0;
  delta /= static_cast<double>(batch);

  Gradients grads;
  grads.weights.resize(hidden + 1);
  grads.biases.resize(hidden + 1);

  for (int m = hidden; m >= 0; --m) {
    const Eigen::MatrixXd& below = m == 0 ? static_cast<const Eigen::MatrixXd&>(x) : cache.post[m - 1];
    grads.weights[m] = delta * below.transpose();
    grads.biases[m] = delta.rowwise().sum();
    if (m > 0) {
      delta = params.weights[m].transpose() * delta;
      // ReLU mask: gradient is 1 strictly above zero, 0 otherwise.
      delta = delta.cwiseProduct((cache.pre[m - 1].array() > 0.0).cast<double>().matrix());
    }
  }
  return grads;
}

void adam_step(NetworkParams& params, const Gradients& grads, AdamState& state,
               const TrainConfig& config) {
  config.validate();
  state.step += 1;
  const double b1 = config.adam_beta1;
  const double b2 = config.adam_beta2;
  const double corr1 = 1.0 - std::pow(b1, static_cast<double>(state.step));
  const double corr2 = 1.0 - std::pow(b2, static_cast<double>(state.step));

  const auto update = [&](auto& value, auto& m, auto& v, const auto& g) {
    m = b1 * m + (1.0 - b1) * g;
    v = b2 * v + (1.0 - b2) * g.cwiseProduct(g);
    value -= (config.learning_rate * (m / corr1).array() /
              ((v / corr2).array().sqrt() + config.adam_eps))
                 .matrix();
  };
  for (std::size_t m = 0; m < params.weights.size(); ++m) {
    update(params.weights[m], state.m_weights[m], state.v_weights[m], grads.weights[m]);
    update(params.biases[m], state.m_biases[m], state.v_biases[m], grads.biases[m]);
  }
}

TrainLog train_run(NetworkParams& params, const Eigen::Ref<const Eigen::MatrixXd>& x,
                   const std::vector<int>& labels, const TrainConfig& config,
                   const RecordHook& hook) {
  params.validate();
  config.validate();
  check_labels(params, x, labels);
  const Eigen::Index n = x.cols();
  if (n == 0) throw std::invalid_argument("train_run: empty dataset");

  TrainLog log;
  const auto record = [&](int epoch) {
    TrainRecord rec;
    rec.epoch = epoch;
    rec.accuracy = batch_accuracy(params, x, labels);
    rec.loss = batch_loss(params, x, labels);
    if (hook) hook(epoch, params, rec);
    log.records.push_back(std::move(rec));
  };
  const auto should_record = [&](int epoch) {
    return std::binary_search(config.record_epochs.begin(), config.record_epochs.end(), epoch);
  };

  if (should_record(0)) record(0);

  AdamState state = AdamState::zeros_like(params);
  Rng shuffle_rng(config.shuffle_seed);
  std::vector<Eigen::Index> order(static_cast<std::size_t>(n));
  std::iota(order.begin(), order.end(), 0);

  for (int epoch = 1; epoch <= config.epochs; ++epoch) {
    shuffle_rng.shuffle(order);
    for (Eigen::Index start = 0; start < n; start += config.batch_size) {
      const Eigen::Index count = std::min<Eigen::Index>(config.batch_size, n - start);
      Eigen::MatrixXd xb(x.rows(), count);
      std::vector<int> yb(static_cast<std::size_t>(count));
      for (Eigen::Index k = 0; k < count; ++k) {
        xb.col(k) = x.col(order[static_cast<std::size_t>(start + k)]);
        yb[static_cast<std::size_t>(k)] = labels[static_cast<std::size_t>(order[static_cast<std::size_t>(start + k)])];
      }
      const Gradients grads = backward(params, xb, yb);
      adam_step(params, grads, state, config);
    }
    if (should_record(epoch)) record(epoch);
  }
  return log;
}

}  // namespace relumap
