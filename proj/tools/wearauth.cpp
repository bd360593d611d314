#include <algorithm>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <string>
#include <utility>
#include <vector>

#include <CLI11.hpp>

#include "wearauth/augment.hpp"
#include "wearauth/config.hpp"
#include "wearauth/dataset.hpp"
#include "wearauth/ingest.hpp"
#include "wearauth/model.hpp"
#include "wearauth/pipeline.hpp"

namespace fs = std::filesystem;
using namespace wearauth;

namespace {

ModelKind parse_kind(const std::string& name) {
  if (name == "hr") return ModelKind::HR;
  if (name == "hrg") return ModelKind::HRG;
  if (name == "hrb") return ModelKind::HRB;
  throw UsageError("unknown model \"" + name + "\" (expected hr, hrg, or hrb)");
}

Route parse_route(const std::string& name) {
  if (name == "hr") return Route::HR;
  if (name == "hrg") return Route::HRG;
  if (name == "hrb") return Route::HRB;
  throw UsageError("unknown route \"" + name + "\" (expected hr, hrg, or hrb)");
}

std::vector<std::string> sorted_wavs(const std::string& dir) {
  if (!fs::is_directory(dir)) throw DataError(dir + " is not a directory");
  std::vector<std::string> paths;
  for (const auto& entry : fs::directory_iterator(dir))
    if (entry.is_regular_file() && entry.path().extension() == ".wav")
      paths.push_back(entry.path().string());
  std::sort(paths.begin(), paths.end());
  return paths;
}

std::vector<AudioClip> load_noise_dir(const std::string& dir, int rate) {
  std::vector<AudioClip> bank;
  for (const auto& path : sorted_wavs(dir))
    bank.push_back(
        load_audio(path, SubjectId{fs::path(path).stem().string()}, rate));
  if (bank.size() != 10)
    throw DataError("noise bank " + dir + " holds " +
                    std::to_string(bank.size()) + " wav files, need exactly 10");
  return bank;
}

Dataset load_input_dataset(const Config& config) {
  if (config.data_dir.empty())
    throw UsageError("no data directory (pass --data or set data_dir)");
  Dataset dataset = load_dataset(config.data_dir, config.sample_rate);
  if (!config.noise_dir.empty())
    dataset.noise_bank = load_noise_dir(config.noise_dir, config.sample_rate);
  return dataset;
}

// Either a featurize output (--features) or raw data plus --model.
InstanceSet load_instances(const std::string& features_path,
                           const std::string& model_name, const Config& config) {
  if (!features_path.empty()) {
    InstanceSet instances = read_features_csv(features_path);
    if (!model_name.empty() && parse_kind(model_name) != instances.kind)
      throw UsageError("--model " + model_name + " does not match " +
                       features_path);
    return instances;
  }
  if (model_name.empty())
    throw UsageError("need --model (hr, hrg, or hrb) to featurize raw data");
  return build_instances(load_input_dataset(config), parse_kind(model_name),
                         config);
}

void describe_spec(const ClassifierSpec& spec) {
  std::printf("classifier %s", spec.name.c_str());
  if (spec.name == "svm-rbf")
    std::printf(" gamma=%g c=%g", spec.gamma, spec.c);
  else if (spec.name == "svm-poly")
    std::printf(" degree=%d c=%g", spec.degree, spec.c);
  else if (spec.name == "ocsvm")
    std::printf(" nu=%g gamma=%g", spec.nu, spec.gamma);
  else if (spec.name == "knn")
    std::printf(" k=%d", spec.k);
  else if (spec.name == "rf")
    std::printf(" trees=%d", spec.trees);
  std::printf("\n");
}

void print_summary_table(const ProtocolResult& result) {
  std::printf("%s %s over %d folds\n", to_string(result.kind),
              result.classifier.c_str(), result.summary.count);
  std::printf("%-6s %8s %8s %8s %8s %8s\n", "metric", "mean", "std", "min",
              "median", "max");
  const std::pair<const char*, const MetricSummary*> rows[] = {
      {"acc", &result.summary.acc}, {"rmse", &result.summary.rmse},
      {"far", &result.summary.far}, {"frr", &result.summary.frr},
      {"f1", &result.summary.f1},   {"auc", &result.summary.auc}};
  for (const auto& [name, s] : rows)
    std::printf("%-6s %8.4f %8.4f %8.4f %8.4f %8.4f\n", name, s->mean,
                s->stdev, s->min, s->median, s->max);
  if (result.crossover.crossed)
    std::printf("eer %.4f at theta %.2f (pooled)\n", result.crossover.rate,
                result.crossover.theta);
  else
    std::printf("no far/frr crossing; closest gap %.4f at theta %.2f\n",
                result.crossover.rate, result.crossover.theta);
}

std::string artifact_path(const Config& config, const std::string& name) {
  fs::create_directories(config.out_dir);
  return (fs::path(config.out_dir) / name).string();
}

}  // namespace

int main(int argc, char** argv) {
  Config config;
  try {
    config = load_config_from_env();
    for (int i = 1; i + 1 < argc; ++i)
      if (std::string(argv[i]) == "--config")
        config = load_config_file(argv[i + 1]);
  } catch (const UsageError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const DataError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  }

  CLI::App app{
      "wearauth: implicit wearable-user authentication from heart rate, "
      "gait, and breathing acoustics.\n"
      "Config file keys (--config FILE or WEARAUTH_CONFIG, key=value lines): "
      "data_dir, out_dir, noise_dir,\nsample_rate, window_len, window_step, "
      "k_best, nu, theta, tau_move, seed, subjects, separation, grid_folds."};
  app.require_subcommand(1);
  std::string config_path;
  app.add_option("--config", config_path, "config file (pre-parsed)");

  std::string synth_out = "data";
  auto* synth = app.add_subcommand("synth", "generate a synthetic cohort");
  synth->add_option("--out", synth_out, "dataset directory to create");
  synth->add_option("--subjects", config.subjects, "cohort size");
  synth->add_option("--seed", config.seed, "master seed");
  synth->add_option("--separation", config.separation,
                    "between-subject parameter spread");

  std::string events_dir, aug_noise_dir, aug_out = "augmented";
  auto* augment_cmd =
      app.add_subcommand("augment", "expand breathing events 102-fold");
  augment_cmd->add_option("--events", events_dir, "directory of event wavs")
      ->required();
  augment_cmd->add_option("--noise", aug_noise_dir,
                          "directory with the 10 noise wavs");
  augment_cmd->add_option("--out", aug_out, "output directory");
  augment_cmd->add_option("--sample-rate", config.sample_rate, "analysis rate");

  std::string feat_model, feat_out;
  auto* featurize = app.add_subcommand("featurize", "dataset to feature rows");
  featurize->add_option("--data", config.data_dir, "dataset directory");
  featurize->add_option("--model", feat_model, "hr | hrg | hrb")->required();
  featurize->add_option("--out-file", feat_out, "features csv path");
  featurize->add_option("--out-dir", config.out_dir, "artifact directory");
  featurize->add_option("--noise", config.noise_dir, "noise bank override");
  featurize->add_option("--seed", config.seed, "master seed");

  std::string train_features, train_model, train_subject,
      train_classifier = "svm-rbf", train_out;
  bool train_grid = false;
  auto* train = app.add_subcommand("train", "fit one deployable model");
  train->add_option("--features", train_features, "featurize output csv");
  train->add_option("--data", config.data_dir, "dataset directory");
  train->add_option("--model", train_model, "hr | hrg | hrb");
  train->add_option("--subject", train_subject, "valid user id")->required();
  train->add_option("--classifier", train_classifier,
                    "svm-rbf | svm-poly | ocsvm | knn | nb | rf");
  train->add_flag("--grid", train_grid, "re-derive hyperparameters by search");
  train->add_option("--out-file", train_out, "model json path");
  train->add_option("--out-dir", config.out_dir, "artifact directory");
  train->add_option("--seed", config.seed, "master seed");
  train->add_option("--k-best", config.k_best, "features kept by selection");

  std::string eval_features, eval_model, eval_classifier = "svm-rbf";
  auto* evaluate = app.add_subcommand("evaluate", "leave-one-group-out report");
  evaluate->add_option("--features", eval_features, "featurize output csv");
  evaluate->add_option("--data", config.data_dir, "dataset directory");
  evaluate->add_option("--model", eval_model, "hr | hrg | hrb");
  evaluate->add_option("--classifier", eval_classifier,
                       "svm-rbf | svm-poly | ocsvm | knn | nb | rf");
  evaluate->add_option("--out-dir", config.out_dir, "artifact directory");
  evaluate->add_option("--seed", config.seed, "master seed");
  evaluate->add_option("--k-best", config.k_best, "features kept by selection");

  std::string curve_features, curve_model, curve_classifier = "svm-rbf";
  auto* curves = app.add_subcommand("curves", "FAR/FRR sweep artifacts");
  curves->add_option("--features", curve_features, "featurize output csv");
  curves->add_option("--data", config.data_dir, "dataset directory");
  curves->add_option("--model", curve_model, "hr | hrg | hrb");
  curves->add_option("--classifier", curve_classifier,
                     "svm-rbf | svm-poly | ocsvm | knn | nb | rf");
  curves->add_option("--out-dir", config.out_dir, "artifact directory");
  curves->add_option("--seed", config.seed, "master seed");
  curves->add_option("--k-best", config.k_best, "features kept by selection");

  std::string sim_subject, sim_classifier = "svm-rbf";
  auto* simulate_cmd =
      app.add_subcommand("simulate", "replay a subject through the router");
  simulate_cmd->add_option("--data", config.data_dir, "dataset directory");
  simulate_cmd->add_option("--subject", sim_subject, "valid user id")
      ->required();
  simulate_cmd->add_option("--classifier", sim_classifier,
                           "classifier for all three models");
  simulate_cmd->add_option("--theta", config.theta, "confidence threshold");
  simulate_cmd->add_option("--tau-move", config.tau_move,
                           "movement detector threshold");
  simulate_cmd->add_option("--out-dir", config.out_dir, "artifact directory");
  simulate_cmd->add_option("--seed", config.seed, "master seed");

  double latency_x = 0.0;
  std::string latency_route;
  auto* latency = app.add_subcommand("latency", "decision latency for a route");
  latency->add_option("--x", latency_x, "seconds per heart rate sample")
      ->required();
  latency->add_option("--route", latency_route, "hr | hrg | hrb")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  try {
    if (*synth) {
      const Dataset dataset =
          synth_dataset(config.seed, config.subjects, config.separation);
      write_dataset(dataset, synth_out);
      std::printf("wrote %zu subjects and %zu noise clips to %s\n",
                  dataset.subjects.size(), dataset.noise_bank.size(),
                  synth_out.c_str());
    } else if (*augment_cmd) {
      std::vector<BreathingEvent> events;
      for (const auto& path : sorted_wavs(events_dir)) {
        const AudioClip clip = load_audio(
            path, SubjectId{fs::path(path).stem().string()}, config.sample_rate);
        BreathingEvent event;
        event.subject = clip.subject;
        event.pcm = clip.pcm;
        event.sample_rate = clip.sample_rate;
        event.origin.clip_ordinal = static_cast<int>(events.size());
        events.push_back(std::move(event));
      }
      if (events.empty()) throw DataError("no wav files in " + events_dir);
      std::vector<AudioClip> bank;
      if (!aug_noise_dir.empty())
        bank = load_noise_dir(aug_noise_dir, config.sample_rate);
      else if (!config.noise_dir.empty())
        bank = load_noise_dir(config.noise_dir, config.sample_rate);
      else
        throw UsageError("augment needs a noise bank (--noise)");
      fs::create_directories(aug_out);
      const auto& specs = enumerate_specs();
      long written = 0;
      for (const auto& event : events) {
        for (std::size_t v = 0; v < specs.size(); ++v) {
          const BreathingEvent variant = apply(event, specs[v], bank);
          char name[160];
          std::snprintf(name, sizeof name, "%s_%03zu_%s.wav",
                        event.subject.id.c_str(), v,
                        describe(specs[v]).c_str());
          AudioClip out_clip;
          out_clip.subject = variant.subject;
          out_clip.pcm = variant.pcm;
          out_clip.sample_rate = variant.sample_rate;
          write_audio(out_clip, (fs::path(aug_out) / name).string());
          ++written;
        }
      }
      std::printf("wrote %ld wav files to %s\n", written, aug_out.c_str());
    } else if (*featurize) {
      const InstanceSet instances = load_instances("", feat_model, config);
      const std::string path =
          feat_out.empty()
              ? artifact_path(config,
                              "features_" + std::string(to_string(instances.kind)) +
                                  ".csv")
              : feat_out;
      write_features_csv(instances, path);
      std::printf("wrote %ld rows x %ld features to %s\n",
                  static_cast<long>(instances.x.rows()),
                  static_cast<long>(instances.x.cols()), path.c_str());
    } else if (*train) {
      const InstanceSet instances =
          load_instances(train_features, train_model, config);
      ClassifierSpec spec = default_spec(instances.kind, train_classifier);
      if (train_grid)
        spec = tune_spec(instances, SubjectId{train_subject}, spec, config);
      const TrainedModel model =
          train_single(instances, SubjectId{train_subject}, spec, config);
      const std::string path =
          train_out.empty()
              ? artifact_path(config,
                              "model_" + std::string(to_string(model.kind)) + "_" +
                                  train_subject + "_" + spec.name + ".json")
              : train_out;
      save_model(model, path);
      describe_spec(spec);
      std::printf("wrote %s\n", path.c_str());
    } else if (*evaluate) {
      const InstanceSet instances =
          load_instances(eval_features, eval_model, config);
      const ClassifierSpec spec = default_spec(instances.kind, eval_classifier);
      const ProtocolResult result = evaluate_protocol(instances, spec, config);
      const std::string stem =
          std::string(to_string(result.kind)) + "_" + spec.name;
      const std::string report_path =
          artifact_path(config, "report_" + stem + ".csv");
      write_report_csv(result, report_path);
      write_aggregate_csv(result,
                          artifact_path(config, "aggregate_" + stem + ".csv"));
      print_summary_table(result);
      std::printf("wrote %s\n", report_path.c_str());
    } else if (*curves) {
      const InstanceSet instances =
          load_instances(curve_features, curve_model, config);
      const ClassifierSpec spec = default_spec(instances.kind, curve_classifier);
      const ProtocolResult result = evaluate_protocol(instances, spec, config);
      const std::string stem =
          std::string(to_string(result.kind)) + "_" + spec.name;
      write_curve_csv(result.curve,
                      artifact_path(config, "curve_" + stem + ".csv"));
      write_curve_svg(result.curve, result.crossover,
                      stem + " error rates vs threshold",
                      artifact_path(config, "curve_" + stem + ".svg"));
      if (result.crossover.crossed)
        std::printf("eer %.4f at theta %.2f\n", result.crossover.rate,
                    result.crossover.theta);
      else
        std::printf("no far/frr crossing; closest gap %.4f at theta %.2f\n",
                    result.crossover.rate, result.crossover.theta);
      std::printf("wrote %s\n",
                  artifact_path(config, "curve_" + stem + ".csv").c_str());
    } else if (*simulate_cmd) {
      const Dataset dataset = load_input_dataset(config);
      const SubjectRecord* record = nullptr;
      for (const auto& subject : dataset.subjects)
        if (subject.id.id == sim_subject) record = &subject;
      if (!record) throw DataError("unknown subject \"" + sim_subject + "\"");

      ModelSet models;
      for (ModelKind kind : {ModelKind::HR, ModelKind::HRG, ModelKind::HRB}) {
        const InstanceSet instances = build_instances(dataset, kind, config);
        const ClassifierSpec spec = default_spec(kind, sim_classifier);
        TrainedModel model =
            train_single(instances, SubjectId{sim_subject}, spec, config);
        if (kind == ModelKind::HR)
          models.hr = std::move(model);
        else if (kind == ModelKind::HRG)
          models.hrg = std::move(model);
        else
          models.hrb = std::move(model);
      }

      const SimulationResult result = simulate(*record, models, config);
      const std::string path =
          artifact_path(config, "session_" + sim_subject + ".jsonl");
      std::ofstream log(path, std::ios::binary);
      if (!log) throw DataError("cannot write " + path);
      for (const auto& line : result.log_lines) log << line << '\n';
      std::printf("%lld accepted, %lld revoked (routes: hr %lld, hrg %lld, "
                  "hrb %lld)\n",
                  result.accepts, result.revokes, result.by_route[0],
                  result.by_route[1], result.by_route[2]);
      std::printf("wrote %s\n", path.c_str());
    } else if (*latency) {
      std::printf("%g\n",
                  estimate_latency(latency_x, parse_route(latency_route)));
    }
  } catch (const UsageError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const ConvergenceError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 4;
  } catch (const DataError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  }
  return 0;
}
