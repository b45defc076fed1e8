#include "esran/cli.hpp"

#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"

#include "esran/experiment.hpp"
#include "esran/simulator.hpp"

namespace esran::harness {

namespace {

std::string slurp(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IniError("cannot open file: " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

ExperimentConfig profile_for(bool paperScale, const std::string& configPath,
                             const std::string& intentPath,
                             const std::string& sigPath,
                             const std::string& outDir) {
  ExperimentConfig config = paperScale ? paper_profile() : desk_profile();
  if (!configPath.empty()) apply_ini_overrides(config, IniFile::load(configPath));
  if (!intentPath.empty()) config.intentPath = intentPath;
  if (!sigPath.empty()) config.sigModelPath = sigPath;
  if (!outDir.empty()) config.outputDir = outDir;
  return config;
}

int run_decompose(const std::string& intentPath, const std::string& sigPath,
                  double threshold, bool noConflict,
                  const std::string& reportPath) {
  intent::IntentDocument doc = intent::load_intent_file(intentPath);
  ontology::NetworkOntology kb =
      ontology::build_knowledge_base(doc, ontology::default_conflict_rules());
  sig::SigModel model = sig::load_sig_file(sigPath);

  sig::DecomposeOptions opts;
  opts.threshold = threshold;
  opts.conflictAnalysis = !noConflict;
  sig::DecompositionResult result = sig::decompose(doc, kb, model, opts);

  std::cout << sig::report_to_text(result);
  if (!reportPath.empty())
    write_file(reportPath, sig::report_to_json(result));
  return result.satisfied ? 0 : 1;
}

int run_bench(const std::string& intentPath, const std::string& sigPath,
              std::vector<int> bsCounts, int reps, const std::string& mode,
              const std::string& outPath) {
  const std::string intentText = slurp(intentPath);
  const std::string sigText = slurp(sigPath);
  std::vector<BenchRow> rows;
  if (mode == "conflict" || mode == "both") {
    auto r = bench_decomposition(intentText, sigText, bsCounts, reps, true);
    rows.insert(rows.end(), r.begin(), r.end());
  }
  if (mode == "no-conflict" || mode == "both") {
    auto r = bench_decomposition(intentText, sigText, bsCounts, reps, false);
    rows.insert(rows.end(), r.begin(), r.end());
  }
  if (rows.empty()) throw IniError("unknown bench mode: " + mode);
  std::string csv = bench_to_csv(rows);
  if (outPath.empty())
    std::cout << csv;
  else
    write_file(outPath, csv);
  return 0;
}

int run_simulate(ExperimentConfig config, uint64_t seed, double durationMs) {
  config.scenario.rngSeed = seed;
  sim::Simulator simulator(config.scenario);
  simulator.set_record_ticks(true);

  std::vector<sim::TickRow> ticks;
  double remaining = durationMs;
  const double chunk = 1000.0;
  while (remaining > 0.0) {
    double dt = std::min(chunk, remaining);
    sim::StepMetrics m = simulator.step(dt);
    ticks.insert(ticks.end(), m.ticks.begin(), m.ticks.end());
    remaining -= dt;
  }

  const std::string dir = resolve_output_dir(config);
  std::filesystem::create_directories(dir);
  write_file(dir + "/simulate_metrics.csv", ticks_to_csv(ticks));
  write_file(dir + "/simulate_snapshot.json", simulator.snapshot_json());
  std::cout << "wrote " << dir << "/simulate_metrics.csv and snapshot\n";
  return 0;
}

int run_train(const ExperimentConfig& config, const std::string& schemeName) {
  std::vector<RunSummary> summaries =
      run_experiment(config, scheme_from_string(schemeName));
  for (const auto& s : summaries) std::cout << summary_to_json(s);
  return 0;
}

int run_evaluate(ExperimentConfig config, const std::string& checkpointPath,
                 uint64_t seed, int steps) {
  auto [shape, params] = checkpoint_from_json(slurp(checkpointPath));

  intent::IntentDocument doc = intent::load_intent_file(config.intentPath);
  intent::ObjectiveBounds bounds = intent::extract_bounds(doc);
  ontology::NetworkOntology kb =
      ontology::build_knowledge_base(doc, config.conflictRules);
  sig::SigModel model = sig::load_sig_file(config.sigModelPath);
  sig::DecompositionResult result = sig::decompose(doc, kb, model, {});

  rl::TrainingSetup setup;
  setup.scenario = config.scenario;
  for (const auto& op : result.prunedOps)
    setup.ops.push_back(ontology::op_from_label(op.label));
  setup.hp = config.hp;
  setup.hp.exploitProb = 1.0;  // greedy rollout
  setup.hp.episodes = 1;
  setup.hp.stepsPerEpisode = steps;
  setup.weights = rl::reward_weights_from_bounds(bounds, config.scenario);
  setup.seed = seed;
  setup.warmStartParams = params;
  setup.trainEnabled = false;

  const int expectedActions =
      int(setup.ops.size()) + (setup.hp.appendNoop ? 1 : 0);
  if (shape.empty() || shape.back() != expectedActions)
    throw IniError("checkpoint action count does not match the decomposition");

  rl::TrainingOutput out = rl::run_training(setup, rl::AgentKind::Dqn);

  RunSummary s;
  s.scheme = "evaluate";
  s.seed = seed;
  s.meanEnergyW = out.meanEnergyW;
  s.meanThptBps = out.meanThptBps;
  s.meanLatencyMs = out.meanLatencyMs;
  s.cumulativeReward = out.cumulativeReward;
  s.satisfied = result.satisfied;
  std::cout << summary_to_json(s);
  return 0;
}

}  // namespace

int cli_main(int argc, const char* const* argv) {
  CLI::App app{"intent decomposition and energy-aware RAN optimization"};
  app.require_subcommand(1);

  std::string intentPath = "data/intent_energy_saving.yaml";
  std::string sigPath = "data/sig_model.json";
  std::string configPath;
  std::string outDir;
  std::string reportPath;
  std::string schemeName = "dqn";
  std::string benchMode = "both";
  std::vector<int> bsCounts = {5, 10, 20, 40};
  bool noConflict = false;
  bool paperScale = false;
  double threshold = 0.5;
  double durationMs = 1000.0;
  uint64_t seed = 1;
  int reps = 7;
  int steps = 100;
  int episodes = -1;
  double learningRate = -1.0;
  std::string checkpointPath;

  CLI::App* decompose = app.add_subcommand(
      "decompose", "decompose an intent into energy-saving operations");
  decompose->add_option("--intent", intentPath, "intent file (.yaml/.json)");
  decompose->add_option("--sig", sigPath, "SIG model file (.json)");
  decompose->add_option("--threshold", threshold, "satisfaction threshold");
  decompose->add_flag("--no-conflict", noConflict,
                      "skip conflict analysis (baseline mode)");
  decompose->add_option("--report", reportPath, "write the JSON report here");

  CLI::App* bench = app.add_subcommand(
      "bench", "time the per-BS decomposition loop across BS counts");
  bench->add_option("--intent", intentPath, "intent file");
  bench->add_option("--sig", sigPath, "SIG model file");
  bench->add_option("--bs", bsCounts, "BS counts to sweep");
  bench->add_option("--reps", reps, "timed repetitions per count");
  bench->add_option("--mode", benchMode, "conflict | no-conflict | both");
  bench->add_option("--out", outDir, "CSV output path (stdout if omitted)");

  CLI::App* simulate =
      app.add_subcommand("simulate", "run the simulator without an agent");
  simulate->add_option("--config", configPath, "INI overrides");
  simulate->add_flag("--paper-scale", paperScale, "40 BS / 320 UE profile");
  simulate->add_option("--seed", seed, "RNG seed");
  simulate->add_option("--duration-ms", durationMs, "simulated time");
  simulate->add_option("--out", outDir, "output directory");

  CLI::App* train = app.add_subcommand("train", "train or replay a scheme");
  train->add_option("--scheme", schemeName,
                    "dqn | dqn_no_conflict | q_learning | static");
  train->add_option("--config", configPath, "INI overrides");
  train->add_flag("--paper-scale", paperScale, "40 BS / 320 UE profile");
  train->add_option("--seed", seed, "RNG seed (single-seed run)");
  train->add_option("--episodes", episodes, "episode count override");
  train->add_option("--lr", learningRate, "learning rate override");
  train->add_option("--intent", intentPath, "intent file");
  train->add_option("--sig", sigPath, "SIG model file");
  train->add_option("--out", outDir, "output directory");
  train->add_flag("--no-conflict", noConflict,
                  "shortcut for --scheme dqn_no_conflict");

  CLI::App* evaluate =
      app.add_subcommand("evaluate", "greedy rollout of a saved checkpoint");
  evaluate->add_option("--checkpoint", checkpointPath, "checkpoint JSON")
      ->required();
  evaluate->add_option("--config", configPath, "INI overrides");
  evaluate->add_flag("--paper-scale", paperScale, "40 BS / 320 UE profile");
  evaluate->add_option("--seed", seed, "RNG seed");
  evaluate->add_option("--steps", steps, "rollout length in decision steps");
  evaluate->add_option("--intent", intentPath, "intent file");
  evaluate->add_option("--sig", sigPath, "SIG model file");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    if (decompose->parsed())
      return run_decompose(intentPath, sigPath, threshold, noConflict,
                           reportPath);
    if (bench->parsed())
      return run_bench(intentPath, sigPath, bsCounts, reps, benchMode, outDir);
    if (simulate->parsed())
      return run_simulate(
          profile_for(paperScale, configPath, intentPath, sigPath, outDir),
          seed, durationMs);
    if (train->parsed()) {
      ExperimentConfig config =
          profile_for(paperScale, configPath, intentPath, sigPath, outDir);
      config.seeds = {seed};
      if (episodes >= 0) config.hp.episodes = episodes;
      if (learningRate > 0.0) config.hp.learningRate = learningRate;
      if (noConflict) schemeName = "dqn_no_conflict";
      return run_train(config, schemeName);
    }
    if (evaluate->parsed())
      return run_evaluate(
          profile_for(paperScale, configPath, intentPath, sigPath, outDir),
          checkpointPath, seed, steps);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 2;
}

int cli_main(const std::vector<std::string>& args) {
  std::vector<const char*> argv;
  argv.push_back("esran");
  for (const auto& a : args) argv.push_back(a.c_str());
  return cli_main(static_cast<int>(argv.size()), argv.data());
}

}  // namespace esran::harness
