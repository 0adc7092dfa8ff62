#include "qsar/train/metrics.hpp"

#include <cmath>
#include <cstdlib>
#include <sstream>
#include <thread>

#include "json.hpp"
#include "qsar/models/bundle.hpp"

namespace qsar::train {

std::string run_record_to_json(const RunRecord& record) {
  nlohmann::json j;
  j["epoch"] = record.epoch;
  j["train_loss"] = record.train_loss;
  j["train_accuracy"] = record.train_accuracy;
  j["test_accuracy"] = record.test_accuracy;
  j["lr"] = record.lr;
  j["grad_norms"] = record.grad_norms;
  j["wall_time_sec"] = record.wall_time_sec;
  return j.dump();
}

int worker_count() {
  if (const char* env = std::getenv("QSAR_THREADS")) {
    const int n = std::atoi(env);
    if (n >= 1) return n;
  }
  const unsigned hw = std::thread::hardware_concurrency();
  return hw == 0 ? 1 : static_cast<int>(hw);
}

EvalResult evaluate(const models::ModelBundle& bundle,
                    const std::vector<data::ComplexChip>& chips,
                    data::Split split, bool ablate_phase) {
  std::vector<const data::ComplexChip*> subset;
  for (const auto& c : chips) {
    if (c.split == split) subset.push_back(&c);
  }
  if (subset.empty()) {
    throw std::invalid_argument("evaluate: split is empty");
  }

  std::vector<int> predictions(subset.size(), -1);
  auto run_range = [&](std::size_t begin, std::size_t end) {
    for (std::size_t i = begin; i < end; ++i) {
      models::ForwardOptions opts;
      opts.ablate_phase = ablate_phase;
      auto scores = models::forward(bundle, *subset[i], opts);
      predictions[i] = models::predict(scores.values());
    }
  };

  const int workers =
      std::min<int>(worker_count(), static_cast<int>(subset.size()));
  if (workers <= 1) {
    run_range(0, subset.size());
  } else {
    std::vector<std::thread> pool;
    const std::size_t chunk = (subset.size() + workers - 1) / workers;
    for (int w = 0; w < workers; ++w) {
      const std::size_t begin = w * chunk;
      const std::size_t end = std::min(subset.size(), begin + chunk);
      if (begin < end) pool.emplace_back(run_range, begin, end);
    }
    for (auto& t : pool) t.join();
  }

  EvalResult result;
  result.confusion.assign(bundle.n_classes,
                          std::vector<long>(bundle.n_classes, 0));
  long correct = 0;
  for (std::size_t i = 0; i < subset.size(); ++i) {
    result.confusion[subset[i]->label][predictions[i]] += 1;
    if (predictions[i] == subset[i]->label) ++correct;
  }
  result.accuracy = static_cast<double>(correct) / subset.size();
  return result;
}

std::string confusion_to_csv(const std::vector<std::vector<long>>& confusion) {
  std::ostringstream out;
  out << "truth";
  for (std::size_t c = 0; c < confusion.size(); ++c) out << ",pred_" << c;
  out << '\n';
  for (std::size_t r = 0; r < confusion.size(); ++r) {
    out << r;
    for (long v : confusion[r]) out << ',' << v;
    out << '\n';
  }
  return out.str();
}

std::map<std::string, double> grad_norms(const nn::ParamRegistry& registry) {
  std::map<std::string, double> sq;
  for (const auto& e : registry.entries()) {
    const std::string component = e.name.substr(0, e.name.find('/'));
    double s = sq.count(component) ? sq[component] : 0.0;
    for (double g : e.tensor.grad()) s += g * g;
    sq[component] = s;
  }
  for (auto& [k, v] : sq) v = std::sqrt(v);
  return sq;
}

}  // namespace qsar::train
