// Acceptance suite: runs every gate criterion end to end and prints one
// PASS/FAIL line per criterion. Exit code is the number of failures.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <functional>
#include <random>
#include <string>
#include <vector>

#include "esran/experiment.hpp"
#include "esran/intent.hpp"
#include "esran/mlp.hpp"
#include "esran/ontology.hpp"
#include "esran/physics.hpp"
#include "esran/reward.hpp"
#include "esran/rng.hpp"
#include "esran/sig.hpp"
#include "esran/trainer.hpp"

using namespace esran;

namespace {

const char* kIntentYaml = R"(userLabel: Energy Saving
intentExpectation:
  expectationId: "1"
  expectationVerb: ENSURE
  expectationObjects:
    - objectInstance: DN of the RAN SubNetwork
      objectContexts:
        - contextAttribute: CoverageAreaPolygon
          contextCondition: IS_ALL_OF
          contextValueRange:
            - Downtown
        - contextAttribute: RAT
          contextCondition: IS_ALL_OF
          contextValueRange:
            - NR
  expectationTargets:
    - targetName: PowerConsumer(KWh)
      targetCondition: IS_LESS_THAN
      targetValueRange: 0.6
    - targetName: aveDLRANUEThpt(Gbps)
      targetCondition: IS_GREATER_THAN
      targetValueRange: 0.5
    - targetName: DLFirstPacketLatency(ms)
      targetCondition: IS_LESS_THAN
      targetValueRange: 1
)";

const char* kSigJson = R"({
  "softgoal": "EnergySavingIntent",
  "objectives": ["TotalEnergyConsumption", "DownlinkThroughput", "FirstPacketLatency"],
  "operations": ["TxPowerPlus1dBm", "TxPowerMinus1dBm", "AntennaAngle5deg", "AntennaAngle15deg", "BsSleep"],
  "sg_weights": [0.80, 0.50, 0.60],
  "op_weights": [
    [-0.85, 0.60, 1.0],
    [0.60, -0.30, -0.10],
    [-0.50, 1.0, 0.90],
    [0.65, -0.25, -0.10],
    [1.0, -1.0, -1.0]
  ]
})";

struct Criterion {
  int id;
  std::string label;
  double limitSeconds;
  std::function<bool(std::string&)> body;
};

bool close(double a, double b, double tol) { return std::abs(a - b) <= tol; }

// ---- shared state for the training-based criteria -------------------------

struct TrainingRuns {
  harness::SchemeRun dqn;
  harness::SchemeRun dqnRepeat;
  harness::SchemeRun noConflict;
  harness::SchemeRun staticRun;
  harness::SchemeRun lrFast;  // 0.01, short
  harness::SchemeRun lrSlow;  // 0.001, short
};

harness::ExperimentConfig desk_config(const std::string& intentPath,
                                      const std::string& sigPath) {
  harness::ExperimentConfig c = harness::desk_profile();
  c.intentPath = intentPath;
  c.sigModelPath = sigPath;
  return c;
}

double mean_of(const std::vector<rl::TraceRow>& rows, size_t begin,
               size_t end) {
  double sum = 0.0;
  for (size_t i = begin; i < end; ++i) sum += rows[i].reward;
  return sum / double(end - begin);
}

double smoothed_loss_at(const std::vector<rl::TraceRow>& rows, long long step,
                        long long halfWindow) {
  double sum = 0.0;
  int count = 0;
  for (const auto& r : rows) {
    if (r.loss < 0.0) continue;
    if (r.step < step - halfWindow || r.step > step + halfWindow) continue;
    sum += r.loss;
    ++count;
  }
  return count > 0 ? sum / count : std::nan("");
}

}  // namespace

int main() {
  namespace fs = std::filesystem;
  fs::path tmp = fs::temp_directory_path() / "esran_acceptance";
  fs::create_directories(tmp);
  const std::string intentPath = (tmp / "intent.yaml").string();
  const std::string sigPath = (tmp / "sig.json").string();
  harness::write_file(intentPath, kIntentYaml);
  harness::write_file(sigPath, kSigJson);

  TrainingRuns runs;
  bool runsReady = false;
  auto ensure_runs = [&]() {
    if (runsReady) return;
    harness::ExperimentConfig c = desk_config(intentPath, sigPath);
    const uint64_t seed = 1;
    runs.dqn = harness::run_scheme(c, harness::Scheme::Dqn, seed);
    runs.dqnRepeat = harness::run_scheme(c, harness::Scheme::Dqn, seed);
    runs.noConflict =
        harness::run_scheme(c, harness::Scheme::DqnNoConflict, seed);
    runs.staticRun = harness::run_scheme(c, harness::Scheme::Static, seed);

    harness::ExperimentConfig shortC = c;
    shortC.hp.episodes = 15;
    shortC.hp.learningRate = 0.01;
    runs.lrFast = harness::run_scheme(shortC, harness::Scheme::Dqn, seed);
    shortC.hp.learningRate = 0.001;
    runs.lrSlow = harness::run_scheme(shortC, harness::Scheme::Dqn, seed);
    runsReady = true;
  };

  std::vector<Criterion> criteria;

  criteria.push_back({1, "SIG golden scores on the reference model", 1.0,
                      [&](std::string& why) {
    sig::SigModel model = sig::load_sig_json(kSigJson);
    std::vector<double> ops = sig::score_operations(model);
    const std::vector<double> expectedOps = {0.22, 0.27, 0.64, 0.335, -0.30};
    if (ops.size() != expectedOps.size()) {
      why = "op score count mismatch";
      return false;
    }
    for (size_t i = 0; i < ops.size(); ++i) {
      if (!close(ops[i], expectedOps[i], 1e-9)) {
        why = "op score " + std::to_string(i + 1) + " = " +
              std::to_string(ops[i]);
        return false;
      }
    }
    std::vector<double> objectives = sig::score_objectives(model);
    const std::vector<double> expectedObjectives = {0.90, 0.05, 0.70};
    for (size_t i = 0; i < objectives.size(); ++i) {
      if (!close(objectives[i], expectedObjectives[i], 1e-9)) {
        why = "objective score " + std::to_string(i + 1) + " = " +
              std::to_string(objectives[i]);
        return false;
      }
    }
    // The reference objective vector rounds its softgoal mean to 0.68.
    double softgoal = sig::score_softgoal({0.90, 0.45, 0.70});
    if (!close(softgoal, 0.68333333333333333, 1e-9)) {
      why = "softgoal mean = " + std::to_string(softgoal);
      return false;
    }
    return true;
  }});

  criteria.push_back({2, "conflict detection finds exactly the two pairs", 1.0,
                      [&](std::string& why) {
    intent::IntentDocument doc = intent::parse_intent_yaml(kIntentYaml);
    ontology::ConflictSet cs = ontology::detect_target_conflicts(doc);
    if (cs.pairs.size() != 2) {
      why = "got " + std::to_string(cs.pairs.size()) + " conflicts";
      return false;
    }
    bool first = cs.pairs[0].targetA == "PowerConsumer(KWh)" &&
                 cs.pairs[0].targetB == "aveDLRANUEThpt(Gbps)";
    bool second = cs.pairs[1].targetA == "aveDLRANUEThpt(Gbps)" &&
                  cs.pairs[1].targetB == "DLFirstPacketLatency(ms)";
    if (!first || !second) {
      why = "unexpected pair members";
      return false;
    }
    return true;
  }});

  criteria.push_back({3, "codec round trip and bound extraction", 1.0,
                      [&](std::string& why) {
    intent::IntentDocument doc = intent::parse_intent_yaml(kIntentYaml);
    std::string canonical = intent::intent_to_json(doc);
    intent::IntentDocument back = intent::parse_intent_json(canonical);
    if (!(back == doc)) {
      why = "round trip changed the document";
      return false;
    }
    if (intent::intent_to_json(back) != canonical) {
      why = "canonical form not stable";
      return false;
    }
    intent::ObjectiveBounds b = intent::extract_bounds(back);
    if (!close(b.energyMaxKwh, 0.6, 1e-12) ||
        !close(b.throughputMinGbps, 0.5, 1e-12) ||
        !close(b.latencyMaxMs, 1.0, 1e-12)) {
      why = "bounds mismatch";
      return false;
    }
    return true;
  }});

  criteria.push_back({4, "physics property suite (1000 cases each)", 30.0,
                      [&](std::string& why) {
    std::mt19937 rng(20240818);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    const double doubling = 22.0 * std::log10(2.0);

    for (int i = 0; i < 1000; ++i) {
      double d = 0.5 + u(rng) * 4000.0;
      double f = 0.5 + u(rng) * 29.5;
      if (!(sim::path_loss_db(d * 1.25, f) > sim::path_loss_db(d, f))) {
        why = "path loss not monotone";
        return false;
      }
      double gap = sim::path_loss_db(2.0 * d, f) - sim::path_loss_db(d, f);
      if (!close(gap, doubling, 1e-9)) {
        why = "doubling identity off: " + std::to_string(gap);
        return false;
      }
    }

    for (int i = 0; i < 1000; ++i) {
      double eta = u(rng);
      double pmax = 100.0 + u(rng) * 5000.0;
      double e0 = sim::bs_energy_watts(0.0, eta, pmax, false, 0.0);
      double eHalf = sim::bs_energy_watts(0.5, eta, pmax, false, 0.0);
      double e1 = sim::bs_energy_watts(1.0, eta, pmax, false, 0.0);
      if (!close(eHalf, 0.5 * (e0 + e1), 1e-9 * pmax) ||
          !close(e1 - e0, (1.0 - eta) * pmax, 1e-9 * pmax)) {
        why = "energy not affine in load";
        return false;
      }
    }

    for (int i = 0; i < 1000; ++i) {
      double signal = 1e-9 + u(rng);
      double interference = 1e-9 + u(rng) * 0.1;
      double noise = 1e-12 + u(rng) * 1e-6;
      int rbs = 1 + int(u(rng) * 200);
      double base =
          sim::shannon_rate_bps(rbs, 180e3, signal / (interference + noise));
      double more = sim::shannon_rate_bps(
          rbs, 180e3, signal / (2.0 * interference + noise));
      if (!(more < base)) {
        why = "rate not decreasing in interference";
        return false;
      }
      double oracle =
          rbs * 180e3 * std::log2(1.0 + signal / (interference + noise));
      if (std::abs(base - oracle) > 1e-9 * std::abs(oracle)) {
        why = "throughput oracle mismatch";
        return false;
      }
    }

    for (int i = 0; i < 1000; ++i) {
      double wait = u(rng) * 10.0;
      double bits = 64.0 + u(rng) * 8000.0;
      double coding = 0.076 + u(rng) * 0.85;
      int rbs = 1 + int(u(rng) * 100);
      double rbRate = 336.0 * (1 + int(u(rng) * 3));
      double got = sim::first_packet_latency_ms(wait, bits, true, coding, rbs,
                                                rbRate, 1.0);
      double oracle = wait + bits / (coding * rbs * rbRate);
      if (std::abs(got - oracle) > 1e-9 * std::abs(oracle)) {
        why = "latency oracle mismatch";
        return false;
      }
    }
    return true;
  }});

  criteria.push_back({5, "reward bounded in [-0.8, 0.8] over 1e5 inputs", 5.0,
                      [&](std::string& why) {
    rl::RewardWeights w;
    w.delta1 = 0.8;
    w.delta2 = 0.6;
    w.delta3 = 0.2;
    w.thptMinBps = 1e5;
    w.thptMaxBps = 4e6;
    w.energyMinW = 50.0;
    w.energyMaxW = 4000.0;
    w.latencyMinMs = 0.1;
    w.latencyMaxMs = 8.0;

    const double lo = -(0.6 + 0.2);
    const double hi = 0.8;
    Rng rng(424242);
    for (int i = 0; i < 100000; ++i) {
      double r = rl::reward(rng.uniform(-1e7, 1e7), rng.uniform(-1e4, 1e4),
                            rng.uniform(-100.0, 100.0), w);
      if (r < lo || r > hi) {
        why = "reward escaped envelope: " + std::to_string(r);
        return false;
      }
    }
    double top = rl::reward(w.thptMaxBps, w.energyMinW, w.latencyMinMs, w);
    double bottom = rl::reward(w.thptMinBps, w.energyMaxW, w.latencyMaxMs, w);
    if (top != hi) {
      why = "upper boundary not exact: " + std::to_string(top);
      return false;
    }
    if (bottom != lo) {
      why = "lower boundary not exact: " + std::to_string(bottom);
      return false;
    }
    return true;
  }});

  criteria.push_back({6, "DQN learning at desk scale (M=4, K=32, 200 episodes)",
                      600.0, [&](std::string& why) {
    ensure_runs();
    const auto& trace = runs.dqn.output.trace;
    size_t n = trace.size();
    if (n == 0) {
      why = "empty trace";
      return false;
    }
    double first = mean_of(trace, 0, n / 10);
    double last = mean_of(trace, n - n / 10, n);
    if (!(last > first)) {
      why = "reward not rising: " + std::to_string(first) + " -> " +
            std::to_string(last);
      return false;
    }
    if (!(runs.dqn.summary.meanEnergyW <= runs.staticRun.summary.meanEnergyW)) {
      why = "DQN energy above the static baseline";
      return false;
    }
    if (!(runs.dqn.output.cumulativeReward >=
          runs.noConflict.output.cumulativeReward)) {
      why = "conflict-pruned run below the no-conflict variant";
      return false;
    }
    if (runs.dqn.ops.size() != 4 || runs.noConflict.ops.size() != 5) {
      why = "unexpected action-space sizes";
      return false;
    }
    return true;
  }});

  criteria.push_back({7, "gradients match central finite differences", 10.0,
                      [&](std::string& why) {
    Rng rng(777);
    for (int trial = 0; trial < 20; ++trial) {
      std::vector<int> sizes = {2 + int(rng.below(3)), 3 + int(rng.below(4)),
                                2 + int(rng.below(3))};
      rl::Mlp net(sizes, rng);
      std::vector<std::vector<double>> inputs;
      std::vector<int> actions;
      std::vector<double> targets;
      for (int b = 0; b < 3; ++b) {
        std::vector<double> x(sizes.front());
        for (double& v : x) v = rng.uniform(-1.0, 1.0);
        inputs.push_back(x);
        actions.push_back(int(rng.below(uint64_t(sizes.back()))));
        targets.push_back(rng.uniform(-1.0, 1.0));
      }
      std::vector<double> grad;
      net.batch_loss_and_grad(inputs, actions, targets, grad);
      const double h = 1e-5;
      std::vector<double> params = net.params();
      for (size_t p = 0; p < params.size(); ++p) {
        std::vector<double> up = params, down = params;
        up[p] += h;
        down[p] -= h;
        double numeric = (rl::Mlp(sizes, up).batch_loss(inputs, actions, targets) -
                          rl::Mlp(sizes, down).batch_loss(inputs, actions, targets)) /
                         (2.0 * h);
        double denom = std::max({std::abs(grad[p]), std::abs(numeric), 1e-6});
        if (std::abs(grad[p] - numeric) / denom >= 1e-4) {
          why = "gradient mismatch at trial " + std::to_string(trial);
          return false;
        }
      }
    }
    return true;
  }});

  criteria.push_back({8, "training loss trends downward for all three rates",
                      600.0, [&](std::string& why) {
    ensure_runs();
    struct Entry {
      const char* name;
      const std::vector<rl::TraceRow>* trace;
    };
    const Entry entries[] = {{"0.01", &runs.lrFast.output.trace},
                             {"0.005", &runs.dqn.output.trace},
                             {"0.001", &runs.lrSlow.output.trace}};
    for (const auto& e : entries) {
      double early = smoothed_loss_at(*e.trace, 100, 50);
      double late = smoothed_loss_at(*e.trace, 1400, 50);
      if (std::isnan(early) || std::isnan(late) || !(late < early)) {
        why = std::string("lr ") + e.name + ": " + std::to_string(early) +
              " -> " + std::to_string(late);
        return false;
      }
    }
    return true;
  }});

  criteria.push_back({9, "byte-identical traces on repeated seeded runs", 600.0,
                      [&](std::string& why) {
    ensure_runs();
    std::string a = harness::trace_to_csv(runs.dqn.output.trace);
    std::string b = harness::trace_to_csv(runs.dqnRepeat.output.trace);
    if (a != b) {
      why = "trace CSVs differ";
      return false;
    }
    std::string ma = harness::metrics_to_csv(runs.dqn.output.metrics);
    std::string mb = harness::metrics_to_csv(runs.dqnRepeat.output.metrics);
    if (ma != mb) {
      why = "metrics CSVs differ";
      return false;
    }
    return true;
  }});

  criteria.push_back({10, "decomposition time non-decreasing in BS count",
                      120.0, [&](std::string& why) {
    for (bool conflict : {true, false}) {
      auto rows = harness::bench_decomposition(kIntentYaml, kSigJson,
                                               {5, 10, 20, 40}, 9, conflict);
      for (size_t i = 1; i < rows.size(); ++i) {
        if (rows[i].medianMs < rows[i - 1].medianMs) {
          why = std::string(conflict ? "conflict" : "no-conflict") +
                " mode decreases from M=" + std::to_string(rows[i - 1].numBs) +
                " to M=" + std::to_string(rows[i].numBs);
          return false;
        }
      }
    }
    return true;
  }});

  int failures = 0;
  for (auto& c : criteria) {
    auto t0 = std::chrono::steady_clock::now();
    std::string why;
    bool ok = false;
    try {
      ok = c.body(why);
    } catch (const std::exception& e) {
      why = std::string("exception: ") + e.what();
    }
    double seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0)
            .count();
    bool inTime = seconds < c.limitSeconds;
    bool pass = ok && inTime;
    if (!pass) ++failures;
    std::printf("criterion %2d: %s  (%6.2f s, limit %g s)  %s%s%s\n", c.id,
                pass ? "PASS" : "FAIL", seconds, c.limitSeconds,
                c.label.c_str(), why.empty() ? "" : " -- ", why.c_str());
    std::fflush(stdout);
  }

  std::printf("%d/%zu criteria passed\n", int(criteria.size()) - failures,
              criteria.size());
  std::filesystem::remove_all(tmp);
  return failures;
}
