#include "esran/experiment.hpp"

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "json.hpp"

namespace esran::harness {

using nlohmann::json;

std::string to_string(Scheme scheme) {
  switch (scheme) {
    case Scheme::Dqn:
      return "dqn";
    case Scheme::DqnNoConflict:
      return "dqn_no_conflict";
    case Scheme::QLearning:
      return "q_learning";
    case Scheme::Static:
      return "static";
  }
  return "?";
}

Scheme scheme_from_string(const std::string& name) {
  if (name == "dqn") return Scheme::Dqn;
  if (name == "dqn_no_conflict") return Scheme::DqnNoConflict;
  if (name == "q_learning") return Scheme::QLearning;
  if (name == "static") return Scheme::Static;
  throw IniError("unknown scheme: " + name);
}

ExperimentConfig desk_profile() {
  ExperimentConfig c;
  c.scenario.numBs = 4;
  c.scenario.numUe = 32;
  c.scenario.bandwidthMhz = 20.0;
  c.scenario.interSiteDistanceM = 250.0;
  c.scenario.minRxPowerDbm = -80.0;
  c.scenario.initialTxPowerDbm = 52.0;
  c.scenario.arrivalRatesPerSec = {30.0, 45.0, 60.0, 90.0};
  c.scenario.burstBits = 16000.0;
  c.scenario.sleepStandbyWatts = 1250.0;
  c.hp.episodes = 200;
  c.hp.stepsPerEpisode = 100;
  c.hp.learningRate = 0.005;
  // physics-driven reward spans: standby..full-power for energy, zero..cell
  // capacity for throughput, queue-scale latency
  c.rewardOverrides["thpt_min_bps"] = 0.0;
  c.rewardOverrides["thpt_max_bps"] = 6e5;
  c.rewardOverrides["energy_max_w"] = 4700.0;
  c.rewardOverrides["latency_min_ms"] = 0.0;
  c.rewardOverrides["latency_max_ms"] = 10.0;
  return c;
}

ExperimentConfig paper_profile() {
  ExperimentConfig c;
  c.hp.episodes = 10;
  c.hp.stepsPerEpisode = 1000;
  return c;
}

namespace {

void apply_scenario_ini(sim::ScenarioConfig& s, const IniFile& ini) {
  const std::string sec = "scenario";
  if (ini.has(sec, "num_bs")) s.numBs = int(ini.get_int(sec, "num_bs"));
  if (ini.has(sec, "num_ue")) s.numUe = int(ini.get_int(sec, "num_ue"));
  if (ini.has(sec, "bs_altitude_m")) s.bsAltitudeM = ini.get_double(sec, "bs_altitude_m");
  if (ini.has(sec, "bandwidth_mhz")) s.bandwidthMhz = ini.get_double(sec, "bandwidth_mhz");
  if (ini.has(sec, "rb_khz")) s.rbKhz = ini.get_double(sec, "rb_khz");
  if (ini.has(sec, "tx_power_levels_dbm")) s.txPowerLevelsDbm = ini.get_list(sec, "tx_power_levels_dbm");
  if (ini.has(sec, "initial_tx_power_dbm")) s.initialTxPowerDbm = ini.get_double(sec, "initial_tx_power_dbm");
  if (ini.has(sec, "power_slope")) s.powerSlope = ini.get_double(sec, "power_slope");
  if (ini.has(sec, "power_offset_watts")) s.powerOffsetWatts = ini.get_double(sec, "power_offset_watts");
  if (ini.has(sec, "energy_mix")) s.energyMix = ini.get_double(sec, "energy_mix");
  if (ini.has(sec, "carrier_ghz")) s.carrierGhz = ini.get_double(sec, "carrier_ghz");
  if (ini.has(sec, "antenna_angles_deg")) s.antennaAnglesDeg = ini.get_list(sec, "antenna_angles_deg");
  if (ini.has(sec, "initial_angle_deg")) s.initialAngleDeg = ini.get_double(sec, "initial_angle_deg");
  if (ini.has(sec, "shadow_min_db")) s.shadowMinDb = ini.get_double(sec, "shadow_min_db");
  if (ini.has(sec, "shadow_max_db")) s.shadowMaxDb = ini.get_double(sec, "shadow_max_db");
  if (ini.has(sec, "noise_dbm_per_hz")) s.noiseDbmPerHz = ini.get_double(sec, "noise_dbm_per_hz");
  if (ini.has(sec, "min_rx_power_dbm")) s.minRxPowerDbm = ini.get_double(sec, "min_rx_power_dbm");
  if (ini.has(sec, "arrival_rates_per_sec")) s.arrivalRatesPerSec = ini.get_list(sec, "arrival_rates_per_sec");
  if (ini.has(sec, "packet_bits")) s.packetBits = ini.get_double(sec, "packet_bits");
  if (ini.has(sec, "burst_bits")) s.burstBits = ini.get_double(sec, "burst_bits");
  if (ini.has(sec, "ue_speed_mean_mps")) s.ueSpeedMeanMps = ini.get_double(sec, "ue_speed_mean_mps");
  if (ini.has(sec, "ue_speed_stddev")) s.ueSpeedStddev = ini.get_double(sec, "ue_speed_stddev");
  if (ini.has(sec, "tti_ms")) s.ttiMs = ini.get_double(sec, "tti_ms");
  if (ini.has(sec, "inter_site_distance_m")) s.interSiteDistanceM = ini.get_double(sec, "inter_site_distance_m");
  if (ini.has(sec, "sleep_standby_watts")) s.sleepStandbyWatts = ini.get_double(sec, "sleep_standby_watts");
  if (ini.has(sec, "shadow_coherence_ms")) s.shadowCoherenceMs = ini.get_double(sec, "shadow_coherence_ms");
  if (ini.has(sec, "heading_redraw_ms")) s.headingRedrawMs = ini.get_double(sec, "heading_redraw_ms");
  if (ini.has(sec, "parallel_kernel")) s.parallelKernel = ini.get_bool(sec, "parallel_kernel");
  if (ini.has(sec, "rng_seed")) s.rngSeed = uint64_t(ini.get_int(sec, "rng_seed"));
}

void apply_hyperparams_ini(rl::Hyperparams& hp, const IniFile& ini) {
  const std::string sec = "hyperparams";
  if (ini.has(sec, "gamma")) hp.gamma = ini.get_double(sec, "gamma");
  if (ini.has(sec, "exploit_prob")) hp.exploitProb = ini.get_double(sec, "exploit_prob");
  if (ini.has(sec, "target_sync_period")) hp.targetSyncPeriod = int(ini.get_int(sec, "target_sync_period"));
  if (ini.has(sec, "learning_rate")) hp.learningRate = ini.get_double(sec, "learning_rate");
  if (ini.has(sec, "batch_size")) hp.batchSize = int(ini.get_int(sec, "batch_size"));
  if (ini.has(sec, "steps_per_episode")) hp.stepsPerEpisode = int(ini.get_int(sec, "steps_per_episode"));
  if (ini.has(sec, "step_ms")) hp.stepMs = ini.get_double(sec, "step_ms");
  if (ini.has(sec, "episodes")) hp.episodes = int(ini.get_int(sec, "episodes"));
  if (ini.has(sec, "replay_capacity")) hp.replayCapacity = size_t(ini.get_int(sec, "replay_capacity"));
  if (ini.has(sec, "append_noop")) hp.appendNoop = ini.get_bool(sec, "append_noop");
  if (ini.has(sec, "hidden_layers")) {
    hp.hiddenLayers.clear();
    for (double v : ini.get_list(sec, "hidden_layers"))
      hp.hiddenLayers.push_back(int(v));
  }
}

ontology::ObjectiveKind objective_token(const std::string& token) {
  return ontology::objective_from_string(token);
}

void apply_conflict_rules_ini(ExperimentConfig& c, const IniFile& ini) {
  if (!ini.has_section("conflict_rules")) return;
  std::vector<ontology::ObjectiveKind> priority = {
      ontology::ObjectiveKind::TotalEnergyConsumption,
      ontology::ObjectiveKind::FirstPacketLatency,
      ontology::ObjectiveKind::DownlinkThroughput,
  };
  if (ini.has("conflict_rules", "priority")) {
    priority.clear();
    std::istringstream in(ini.get("conflict_rules", "priority"));
    std::string token;
    while (in >> token) priority.push_back(objective_token(token));
  }
  std::vector<ontology::ConflictRule> rules;
  for (const auto& key : ini.keys("conflict_rules")) {
    if (key.rfind("rule", 0) != 0) continue;
    std::istringstream in(ini.get("conflict_rules", key));
    std::string a, b;
    int level = 1;
    if (!(in >> a >> b)) throw IniError("conflict rule needs two objectives");
    in >> level;
    rules.push_back({objective_token(a), objective_token(b), priority, level});
  }
  c.conflictRules = rules;
}

}  // namespace

void apply_ini_overrides(ExperimentConfig& c, const IniFile& ini) {
  apply_scenario_ini(c.scenario, ini);
  apply_hyperparams_ini(c.hp, ini);

  for (const auto& key : ini.keys("reward"))
    c.rewardOverrides[key] = ini.get_double("reward", key);

  const std::string sec = "experiment";
  if (ini.has(sec, "intent_path")) c.intentPath = ini.get(sec, "intent_path");
  if (ini.has(sec, "sig_model_path")) c.sigModelPath = ini.get(sec, "sig_model_path");
  if (ini.has(sec, "output_dir")) c.outputDir = ini.get(sec, "output_dir");
  if (ini.has(sec, "sig_threshold")) c.sigThreshold = ini.get_double(sec, "sig_threshold");
  if (ini.has(sec, "harm_threshold")) c.harmThreshold = ini.get_double(sec, "harm_threshold");
  if (ini.has(sec, "seeds")) {
    c.seeds.clear();
    for (double v : ini.get_list(sec, "seeds")) c.seeds.push_back(uint64_t(v));
  }
  apply_conflict_rules_ini(c, ini);
}

std::string resolve_output_dir(const ExperimentConfig& config) {
  if (const char* env = std::getenv("INTENT_RAN_OUT"); env && *env)
    return env;
  return config.outputDir;
}

namespace {

rl::RewardWeights build_weights(const ExperimentConfig& config,
                                const intent::ObjectiveBounds& bounds) {
  rl::RewardWeights w =
      rl::reward_weights_from_bounds(bounds, config.scenario);
  for (const auto& [key, value] : config.rewardOverrides) {
    if (key == "delta1") w.delta1 = value;
    else if (key == "delta2") w.delta2 = value;
    else if (key == "delta3") w.delta3 = value;
    else if (key == "thpt_min_bps") w.thptMinBps = value;
    else if (key == "thpt_max_bps") w.thptMaxBps = value;
    else if (key == "energy_min_w") w.energyMinW = value;
    else if (key == "energy_max_w") w.energyMaxW = value;
    else if (key == "latency_min_ms") w.latencyMinMs = value;
    else if (key == "latency_max_ms") w.latencyMaxMs = value;
    else throw IniError("unknown reward key: " + key);
  }
  w.validate();
  return w;
}

std::string fmt(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.10g", v);
  return buf;
}

}  // namespace

SchemeRun run_scheme(const ExperimentConfig& config, Scheme scheme,
                     uint64_t seed) {
  SchemeRun run;

  intent::IntentDocument doc = intent::load_intent_file(config.intentPath);
  intent::ObjectiveBounds bounds = intent::extract_bounds(doc);
  ontology::NetworkOntology kb =
      ontology::build_knowledge_base(doc, config.conflictRules);
  sig::SigModel model = sig::load_sig_file(config.sigModelPath);

  sig::DecomposeOptions opts;
  opts.threshold = config.sigThreshold;
  opts.harmThreshold = config.harmThreshold;
  opts.conflictAnalysis = scheme != Scheme::DqnNoConflict;

  auto t0 = std::chrono::steady_clock::now();
  run.decomposition = sig::decompose(doc, kb, model, opts);
  auto t1 = std::chrono::steady_clock::now();
  double decompMs =
      std::chrono::duration<double, std::milli>(t1 - t0).count();

  for (const auto& op : run.decomposition.prunedOps)
    run.ops.push_back(ontology::op_from_label(op.label));

  run.weights = build_weights(config, bounds);

  rl::TrainingSetup setup;
  setup.scenario = config.scenario;
  setup.ops = run.ops;
  setup.hp = config.hp;
  setup.weights = run.weights;
  setup.seed = seed;

  rl::AgentKind kind = rl::AgentKind::None;
  if (scheme == Scheme::Dqn || scheme == Scheme::DqnNoConflict)
    kind = rl::AgentKind::Dqn;
  else if (scheme == Scheme::QLearning)
    kind = rl::AgentKind::Tabular;

  run.output = rl::run_training(setup, kind);

  run.summary.scheme = to_string(scheme);
  run.summary.seed = seed;
  run.summary.meanEnergyW = run.output.meanEnergyW;
  run.summary.meanThptBps = run.output.meanThptBps;
  run.summary.meanLatencyMs = run.output.meanLatencyMs;
  run.summary.cumulativeReward = run.output.cumulativeReward;
  run.summary.decompositionMs = decompMs;
  run.summary.satisfied = run.decomposition.satisfied;
  return run;
}

std::string summary_to_json(const RunSummary& s) {
  json j;
  j["scheme"] = s.scheme;
  j["seed"] = s.seed;
  j["mean_energy_w"] = s.meanEnergyW;
  j["mean_thpt_bps"] = s.meanThptBps;
  j["mean_latency_ms"] = s.meanLatencyMs;
  j["cumulative_reward"] = s.cumulativeReward;
  j["decomposition_ms"] = s.decompositionMs;
  j["satisfied"] = s.satisfied;
  j["files"] = s.files;
  return j.dump(2) + "\n";
}

std::string trace_to_csv(const std::vector<rl::TraceRow>& rows) {
  std::string out = "step,episode,reward,loss,epsilon,action\n";
  for (const auto& r : rows) {
    out += std::to_string(r.step) + "," + std::to_string(r.episode) + "," +
           fmt(r.reward) + ",";
    if (r.loss >= 0.0) out += fmt(r.loss);
    out += "," + fmt(r.epsilon) + "," + std::to_string(r.action) + "\n";
  }
  return out;
}

std::string metrics_to_csv(const std::vector<rl::StepMetricsRow>& rows) {
  std::string out =
      "tick,bs_id,load,energy_w,avg_thpt_bps,avg_latency_ms,attached_ues\n";
  for (const auto& r : rows) {
    out += std::to_string(r.tick) + "," + std::to_string(r.bsId) + "," +
           fmt(r.load) + "," + fmt(r.energyW) + "," + fmt(r.thptBps) + "," +
           fmt(r.latencyMs) + "," + std::to_string(r.attachedUes) + "\n";
  }
  return out;
}

std::string ticks_to_csv(const std::vector<sim::TickRow>& rows) {
  std::string out =
      "tick,bs_id,load,energy_w,avg_thpt_bps,avg_latency_ms,attached_ues\n";
  for (const auto& r : rows) {
    out += std::to_string(r.tick) + "," + std::to_string(r.bsId) + "," +
           fmt(r.load) + "," + fmt(r.energyW) + "," + fmt(r.thptBps) + "," +
           fmt(r.latencyMs) + "," + std::to_string(r.attachedUes) + "\n";
  }
  return out;
}

std::string bench_to_csv(const std::vector<BenchRow>& rows) {
  std::string out = "m,mode,median_ms\n";
  for (const auto& r : rows)
    out += std::to_string(r.numBs) + "," + r.mode + "," + fmt(r.medianMs) + "\n";
  return out;
}

std::string checkpoint_to_json(const std::vector<int>& layerSizes,
                               const std::vector<double>& params) {
  json j;
  j["layer_sizes"] = layerSizes;
  j["params"] = params;
  return j.dump() + "\n";
}

std::pair<std::vector<int>, std::vector<double>> checkpoint_from_json(
    const std::string& text) {
  json j = json::parse(text);
  return {j.at("layer_sizes").get<std::vector<int>>(),
          j.at("params").get<std::vector<double>>()};
}

void write_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IniError("cannot write file: " + path);
  out << content;
}

std::vector<RunSummary> run_experiment(const ExperimentConfig& config,
                                       Scheme scheme) {
  const std::string dir = resolve_output_dir(config);
  std::filesystem::create_directories(dir);

  std::vector<RunSummary> summaries;
  bool reportWritten = false;
  for (uint64_t seed : config.seeds) {
    SchemeRun run = run_scheme(config, scheme, seed);
    const std::string prefix =
        dir + "/" + to_string(scheme) + "_seed" + std::to_string(seed);

    if (!reportWritten) {
      write_file(dir + "/decomposition_report.json",
                 sig::report_to_json(run.decomposition));
      reportWritten = true;
    }
    if (scheme != Scheme::Static) {
      write_file(prefix + "_trace.csv", trace_to_csv(run.output.trace));
      run.summary.files.push_back(prefix + "_trace.csv");
    }
    write_file(prefix + "_metrics.csv", metrics_to_csv(run.output.metrics));
    run.summary.files.push_back(prefix + "_metrics.csv");
    if (!run.output.checkpointParams.empty()) {
      write_file(prefix + "_checkpoint.json",
                 checkpoint_to_json(run.output.checkpointShape,
                                    run.output.checkpointParams));
      run.summary.files.push_back(prefix + "_checkpoint.json");
    }
    write_file(prefix + "_summary.json", summary_to_json(run.summary));
    run.summary.files.push_back(prefix + "_summary.json");
    summaries.push_back(run.summary);
  }
  return summaries;
}

std::vector<BenchRow> bench_decomposition(const std::string& intentText,
                                          const std::string& sigText,
                                          const std::vector<int>& bsCounts,
                                          int repetitions, bool withConflict) {
  if (repetitions < 1) throw IniError("repetitions must be >= 1");
  for (int m : bsCounts)
    if (m < 1) throw IniError("BS counts must be >= 1");

  auto one_pass = [&](int m, bool conflict) {
    sig::DecomposeOptions opts;
    opts.conflictAnalysis = conflict;
    auto t0 = std::chrono::steady_clock::now();
    for (int i = 0; i < m; ++i) {
      intent::IntentDocument doc = intent::parse_intent_yaml(intentText);
      ontology::NetworkOntology kb = ontology::build_knowledge_base(
          doc, ontology::default_conflict_rules());
      sig::SigModel model = sig::load_sig_json(sigText);
      sig::DecompositionResult result = sig::decompose(doc, kb, model, opts);
      (void)result;
    }
    auto t1 = std::chrono::steady_clock::now();
    return std::chrono::duration<double, std::milli>(t1 - t0).count();
  };

  std::vector<BenchRow> rows;
  for (int m : bsCounts) {
    // two warm-up passes before timing
    one_pass(m, withConflict);
    one_pass(m, withConflict);
    std::vector<double> times;
    for (int r = 0; r < repetitions; ++r)
      times.push_back(one_pass(m, withConflict));
    std::sort(times.begin(), times.end());
    double median = times[times.size() / 2];
    if (times.size() % 2 == 0)
      median = 0.5 * (times[times.size() / 2 - 1] + times[times.size() / 2]);
    rows.push_back({m, withConflict ? "conflict" : "no_conflict", median});
  }
  return rows;
}

}  // namespace esran::harness
