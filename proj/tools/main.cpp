// qsar command-line workbench: data generation, training, evaluation,
// phase ablation, gradient verification, and parameter census.

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <string>

#include "CLI11.hpp"
#include "json.hpp"

#include "qsar/data/manifest.hpp"
#include "qsar/data/sarc.hpp"
#include "qsar/data/synth.hpp"
#include "qsar/models/bundle.hpp"
#include "qsar/nn/checkpoint.hpp"
#include "qsar/nn/optim.hpp"
#include "qsar/train/ablation.hpp"
#include "qsar/train/gradcheck.hpp"
#include "qsar/train/loop.hpp"
#include "qsar/train/metrics.hpp"

namespace fs = std::filesystem;
using nlohmann::json;
using namespace qsar;

namespace {

data::SynthMode parse_mode(const std::string& s) {
  if (s == "mag") return data::SynthMode::MagDiscriminative;
  if (s == "phase-only") return data::SynthMode::PhaseOnlyDiscriminative;
  if (s == "both") return data::SynthMode::Both;
  throw CLI::ValidationError("--mode", "expected mag|phase-only|both");
}

models::EncodingStrategy parse_strategy(const std::string& s) {
  if (s == "s1") return models::EncodingStrategy::S1_MagnitudeOnly;
  if (s == "s2") return models::EncodingStrategy::S2_JointComplex;
  if (s == "s3") return models::EncodingStrategy::S3_IQ;
  if (s == "s4") return models::EncodingStrategy::S4_DualPath;
  if (s == "s5") return models::EncodingStrategy::S5_PureQuantum;
  throw CLI::ValidationError("--strategy", "expected s1|s2|s3|s4|s5");
}

void check_model_strategy(const std::string& model, const std::string& strategy) {
  const bool ok = (model == "magqt" && (strategy == "s1" || strategy == "s2" ||
                                        strategy == "s3")) ||
                  (model == "dualpath" && strategy == "s4") ||
                  (model == "pure" && strategy == "s5");
  if (!ok) {
    throw CLI::ValidationError(
        "--model/--strategy",
        "valid pairs: magqt+s1/s2/s3, dualpath+s4, pure+s5");
  }
}

models::ModelBundle build_bundle(const std::string& model,
                                 const std::string& strategy, int n_classes,
                                 std::uint64_t seed) {
  check_model_strategy(model, strategy);
  if (model == "magqt") {
    return models::build_hybrid(parse_strategy(strategy), n_classes, seed);
  }
  if (model == "dualpath") return models::build_dualpath(n_classes, seed);
  return models::build_pure(n_classes, seed);
}

// Options shared by train/eval/ablate for obtaining a dataset.
struct DataOpts {
  std::string data_dir;       // manifest.csv + chips on disk
  std::string synth_mode = "mag";
  int classes = 3;
  int n_train = 90;
  int n_test = 60;
  std::uint64_t data_seed = 7;
};

void add_data_opts(CLI::App* cmd, DataOpts& d) {
  cmd->add_option("--data", d.data_dir,
                  "Dataset directory containing manifest.csv (overrides synth)");
  cmd->add_option("--synth-mode", d.synth_mode, "Synthetic cue: mag|phase-only|both");
  cmd->add_option("--classes", d.classes, "Number of classes");
  cmd->add_option("--train-n", d.n_train, "Synthetic train chip count");
  cmd->add_option("--test-n", d.n_test, "Synthetic test chip count");
  cmd->add_option("--data-seed", d.data_seed, "Synthetic data seed");
}

std::vector<data::ComplexChip> load_dataset(const DataOpts& d, int* n_classes) {
  if (!d.data_dir.empty()) {
    auto manifest = data::load_manifest((fs::path(d.data_dir) / "manifest.csv").string());
    manifest.validate();
    *n_classes = manifest.n_classes;
    return data::load_chips(manifest, d.data_dir);
  }
  data::SynthSpec spec;
  spec.mode = parse_mode(d.synth_mode);
  spec.n_classes = d.classes;
  spec.n_train = d.n_train;
  spec.n_test = d.n_test;
  spec.seed = d.data_seed;
  *n_classes = d.classes;
  return data::synth_generate(spec);
}

void write_text(const fs::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  out << text;
}

json confusion_json(const std::vector<std::vector<long>>& confusion) {
  json j = json::array();
  for (const auto& row : confusion) j.push_back(row);
  return j;
}

json census_json(const models::ModelBundle& bundle) {
  const auto counts = models::census(bundle);
  return {{"quantum", counts.quantum},
          {"classical", counts.classical},
          {"total", counts.quantum + counts.classical}};
}

json ablation_json(const train::AblationReport& report) {
  return {{"accuracy_with_phase", report.accuracy_with_phase},
          {"accuracy_phase_zeroed", report.accuracy_phase_zeroed},
          {"delta_points", report.delta_points},
          {"confusion_with_phase", confusion_json(report.confusion_with)},
          {"confusion_phase_zeroed", confusion_json(report.confusion_zeroed)}};
}

// summary.json + confusion.csv for a trained/loaded bundle on a dataset.
void write_summary(const fs::path& out_dir, const models::ModelBundle& bundle,
                   const std::vector<data::ComplexChip>& chips) {
  const auto eval = train::evaluate(bundle, chips, data::Split::Test);
  const auto ablation = train::ablate_phase(bundle, chips);
  json summary = {{"accuracy", eval.accuracy},
                  {"confusion", confusion_json(eval.confusion)},
                  {"ablation", ablation_json(ablation)},
                  {"census", census_json(bundle)}};
  write_text(out_dir / "summary.json", summary.dump(2) + "\n");
  write_text(out_dir / "confusion.csv", train::confusion_to_csv(eval.confusion));
  std::cout << summary.dump(2) << std::endl;
}

std::map<std::string, std::string> bundle_meta(const std::string& model,
                                               const std::string& strategy,
                                               int n_classes,
                                               std::uint64_t seed) {
  return {{"model", model},
          {"strategy", strategy},
          {"n_classes", std::to_string(n_classes)},
          {"seed", std::to_string(seed)}};
}

models::ModelBundle bundle_from_checkpoint(const std::string& path) {
  const auto ckpt = nn::load_checkpoint(path);
  const auto& meta = ckpt.meta;
  auto bundle = build_bundle(meta.at("model"), meta.at("strategy"),
                             std::stoi(meta.at("n_classes")),
                             std::stoull(meta.at("seed")));
  nn::restore_into(ckpt, bundle.registry);
  return bundle;
}

// ---------------------------------------------------------------------------

int cmd_gen_data(const DataOpts& d, const std::string& out_dir) {
  if (d.classes < 2) throw CLI::ValidationError("--classes", "need at least 2");
  data::SynthSpec spec;
  spec.mode = parse_mode(d.synth_mode);
  spec.n_classes = d.classes;
  spec.n_train = d.n_train;
  spec.n_test = d.n_test;
  spec.seed = d.data_seed;
  const auto chips = data::synth_generate(spec);

  fs::create_directories(fs::path(out_dir) / "chips");
  data::Manifest manifest;
  manifest.n_classes = d.classes;
  for (std::size_t i = 0; i < chips.size(); ++i) {
    char name[32];
    std::snprintf(name, sizeof name, "chips/chip_%05zu.sarc", i);
    data::save_sarc((fs::path(out_dir) / name).string(), chips[i]);
    manifest.entries.push_back({name, chips[i].label, chips[i].split});
  }
  manifest.validate();
  data::save_manifest((fs::path(out_dir) / "manifest.csv").string(), manifest);
  std::cout << "wrote " << chips.size() << " chips + manifest to " << out_dir
            << std::endl;
  return 0;
}

int cmd_train(const std::string& model, const std::string& strategy,
              const DataOpts& d, const nn::TrainConfig& cfg,
              const std::string& out_dir, const std::string& init_from) {
  int n_classes = d.classes;
  const auto chips = load_dataset(d, &n_classes);
  auto bundle = build_bundle(model, strategy, n_classes, cfg.seed);
  if (!init_from.empty()) {
    nn::restore_into(nn::load_checkpoint(init_from), bundle.registry);
  }

  fs::create_directories(out_dir);
  std::ofstream metrics(fs::path(out_dir) / "metrics.jsonl", std::ios::binary);
  if (!metrics) throw std::runtime_error("cannot write metrics.jsonl");

  const auto result = train::fit(
      bundle, chips, cfg, [&](const train::RunRecord& record) {
        metrics << train::run_record_to_json(record) << '\n';
        metrics.flush();
        std::cerr << "epoch " << record.epoch
                  << "  loss " << record.train_loss
                  << "  train_acc " << record.train_accuracy
                  << "  test_acc " << record.test_accuracy << std::endl;
      });

  nn::save_checkpoint((fs::path(out_dir) / "model.ckpt").string(),
                      bundle.registry,
                      bundle_meta(model, strategy, n_classes, cfg.seed));
  if (result.diverged) {
    std::cerr << "training aborted: " << result.diagnostic << std::endl;
    return 1;
  }
  write_summary(out_dir, bundle, chips);
  return 0;
}

int cmd_eval(const std::string& ckpt, const DataOpts& d,
             const std::string& out_dir) {
  const auto bundle = bundle_from_checkpoint(ckpt);
  int n_classes = 0;
  const auto chips = load_dataset(d, &n_classes);
  fs::create_directories(out_dir);
  write_summary(out_dir, bundle, chips);
  return 0;
}

int cmd_ablate(const std::string& ckpt, const DataOpts& d,
               const std::string& out_dir) {
  const auto bundle = bundle_from_checkpoint(ckpt);
  int n_classes = 0;
  const auto chips = load_dataset(d, &n_classes);
  const auto report = train::ablate_phase(bundle, chips);
  fs::create_directories(out_dir);
  json summary = {{"ablation", ablation_json(report)},
                  {"census", census_json(bundle)}};
  write_text(fs::path(out_dir) / "summary.json", summary.dump(2) + "\n");
  write_text(fs::path(out_dir) / "confusion.csv",
             train::confusion_to_csv(report.confusion_with));
  std::cout << summary.dump(2) << std::endl;
  return 0;
}

int cmd_gradcheck(std::uint64_t seed, int circuits, const std::string& fault) {
  const auto report = train::run_gradcheck(seed, circuits, fault);
  std::cout << train::gradcheck_report_text(report);
  return report.pass ? 0 : 1;
}

int cmd_census(const std::string& model, const std::string& strategy,
               int classes, std::uint64_t seed) {
  const auto bundle = build_bundle(model, strategy, classes, seed);
  std::cout << census_json(bundle).dump(2) << std::endl;
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Quantum-encoding workbench for complex-valued SAR chips"};
  app.require_subcommand(1);
  app.set_config("--config")->configurable(false);

  DataOpts d;
  nn::TrainConfig cfg;
  std::string model = "magqt", strategy = "s1";
  std::string out_dir = "out", ckpt_path, init_from, fault_op;
  std::uint64_t gc_seed = 0;
  int gc_circuits = 100;

  auto* gen = app.add_subcommand("gen-data", "Generate a synthetic SAR dataset");
  gen->add_option("--mode", d.synth_mode, "mag|phase-only|both");
  gen->add_option("--classes", d.classes, "Number of classes");
  gen->add_option("--train", d.n_train, "Train chip count");
  gen->add_option("--test", d.n_test, "Test chip count");
  gen->add_option("--seed", d.data_seed, "Data seed")->required();
  gen->add_option("--out", out_dir, "Output directory")->required();

  auto add_model_opts = [&](CLI::App* cmd) {
    cmd->add_option("--model", model, "magqt|dualpath|pure");
    cmd->add_option("--strategy", strategy, "s1|s2|s3|s4|s5");
  };
  auto* tr = app.add_subcommand("train", "Train a model");
  add_model_opts(tr);
  add_data_opts(tr, d);
  tr->add_option("--lr", cfg.learning_rate, "Peak learning rate");
  tr->add_option("--eta-min", cfg.eta_min, "Cosine schedule floor");
  tr->add_option("--epochs", cfg.epochs, "Training epochs");
  tr->add_option("--batch", cfg.batch_size, "Batch size");
  tr->add_option("--dropout", cfg.dropout_p, "Dropout probability");
  tr->add_flag("--class-weighted", cfg.class_weighted,
               "Inverse-frequency class weights");
  tr->add_option("--seed", cfg.seed, "Run seed")->required();
  tr->add_option("--init-from", init_from, "Checkpoint to resume from");
  tr->add_option("--out", out_dir, "Output directory")->required();

  auto* ev = app.add_subcommand("eval", "Evaluate a checkpoint");
  ev->add_option("--ckpt", ckpt_path, "Checkpoint path")->required();
  add_data_opts(ev, d);
  ev->add_option("--out", out_dir, "Output directory")->required();

  auto* ab = app.add_subcommand("ablate", "Phase-ablation study on a checkpoint");
  ab->add_option("--ckpt", ckpt_path, "Checkpoint path")->required();
  add_data_opts(ab, d);
  ab->add_option("--out", out_dir, "Output directory")->required();

  auto* gc = app.add_subcommand("gradcheck", "Gradient verification suite");
  gc->add_option("--seed", gc_seed, "Seed")->required();
  gc->add_option("--circuits", gc_circuits, "Random circuit count");
  gc->add_option("--fault-op", fault_op,
                 "Inject a sign-flip fault into the named check");

  auto* cs = app.add_subcommand("census", "Print exact parameter counts");
  add_model_opts(cs);
  cs->add_option("--classes", d.classes, "Number of classes");
  cs->add_option("--seed", cfg.seed, "Init seed");

  CLI11_PARSE(app, argc, argv);

  try {
    if (gen->parsed()) return cmd_gen_data(d, out_dir);
    if (tr->parsed()) return cmd_train(model, strategy, d, cfg, out_dir, init_from);
    if (ev->parsed()) return cmd_eval(ckpt_path, d, out_dir);
    if (ab->parsed()) return cmd_ablate(ckpt_path, d, out_dir);
    if (gc->parsed()) return cmd_gradcheck(gc_seed, gc_circuits, fault_op);
    if (cs->parsed()) return cmd_census(model, strategy, d.classes, cfg.seed);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << std::endl;
    return 1;
  }
  return 1;
}
