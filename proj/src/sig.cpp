#include "esran/sig.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <iomanip>
#include <set>
#include <sstream>

#include "json.hpp"

namespace esran::sig {

using nlohmann::json;

namespace {

void validate_model(const SigModel& model) {
  if (model.objectives.empty())
    throw DimensionError("model must declare at least one objective");
  if (model.sgWeights.size() != model.objectives.size())
    throw DimensionError("sg_weights length (" +
                         std::to_string(model.sgWeights.size()) +
                         ") must match objective count (" +
                         std::to_string(model.objectives.size()) + ")");
  if (model.opWeights.size() != model.operations.size())
    throw DimensionError("op_weights row count (" +
                         std::to_string(model.opWeights.size()) +
                         ") must match operation count (" +
                         std::to_string(model.operations.size()) + ")");
  for (size_t r = 0; r < model.opWeights.size(); ++r) {
    if (model.opWeights[r].size() != model.objectives.size())
      throw DimensionError("op_weights row " + std::to_string(r) +
                           " has length " +
                           std::to_string(model.opWeights[r].size()) +
                           ", expected " +
                           std::to_string(model.objectives.size()));
  }
  auto check_range = [](double w) {
    if (!(w >= -1.0 && w <= 1.0))
      throw RangeError("weight " + std::to_string(w) +
                       " outside [-1, 1]");
  };
  for (double w : model.sgWeights) check_range(w);
  for (const auto& row : model.opWeights)
    for (double w : row) check_range(w);
}

double get_weight(const json& v, const char* where) {
  if (!v.is_number())
    throw SyntaxError(std::string(where) + ": expected a number");
  return v.get<double>();
}

}  // namespace

SigModel load_sig_json(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    throw SyntaxError(std::string("JSON parse error: ") + e.what());
  }
  if (!j.is_object()) throw SyntaxError("model must be a JSON object");
  const std::set<std::string> known = {"softgoal", "objectives", "operations",
                                       "sg_weights", "op_weights"};
  for (const auto& [key, value] : j.items()) {
    (void)value;
    if (!known.count(key)) throw SyntaxError("unknown member '" + key + "'");
  }
  for (const auto& key : known) {
    if (!j.contains(key)) throw SyntaxError("missing member '" + key + "'");
  }

  SigModel model;
  if (!j["softgoal"].is_string())
    throw SyntaxError("softgoal: expected a string");
  model.softgoal = j["softgoal"].get<std::string>();
  for (const auto& v : j["objectives"]) {
    if (!v.is_string()) throw SyntaxError("objectives: expected strings");
    model.objectives.push_back(v.get<std::string>());
  }
  for (const auto& v : j["operations"]) {
    if (!v.is_string()) throw SyntaxError("operations: expected strings");
    model.operations.push_back(v.get<std::string>());
  }
  for (const auto& v : j["sg_weights"])
    model.sgWeights.push_back(get_weight(v, "sg_weights"));
  for (const auto& row : j["op_weights"]) {
    if (!row.is_array()) throw SyntaxError("op_weights: expected rows");
    std::vector<double> r;
    for (const auto& v : row) r.push_back(get_weight(v, "op_weights"));
    model.opWeights.push_back(std::move(r));
  }
  validate_model(model);
  return model;
}

SigModel load_sig_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw SyntaxError("cannot open SIG model file: " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return load_sig_json(ss.str());
}

std::string sig_to_json(const SigModel& model) {
  json j;
  j["softgoal"] = model.softgoal;
  j["objectives"] = model.objectives;
  j["operations"] = model.operations;
  j["sg_weights"] = model.sgWeights;
  j["op_weights"] = model.opWeights;
  return j.dump(2) + "\n";
}

std::vector<double> score_operations(const SigModel& model) {
  validate_model(model);
  std::vector<double> scores(model.operations.size(), 0.0);
  for (size_t op = 0; op < model.operations.size(); ++op) {
    double s = 0.0;
    for (size_t l = 0; l < model.objectives.size(); ++l)
      s += model.opWeights[op][l] * model.sgWeights[l];
    scores[op] = s;
  }
  return scores;
}

std::vector<double> score_objectives(const SigModel& model) {
  validate_model(model);
  std::vector<double> scores(model.objectives.size(), 0.0);
  for (size_t l = 0; l < model.objectives.size(); ++l) {
    double s = 0.0;
    for (size_t op = 0; op < model.operations.size(); ++op)
      s += model.opWeights[op][l];
    scores[l] = s;
  }
  return scores;
}

double score_softgoal(const std::vector<double>& objectiveScores) {
  if (objectiveScores.empty())
    throw EmptyInput("softgoal score needs at least one objective score");
  double sum = 0.0;
  for (double s : objectiveScores) sum += s;
  return sum / static_cast<double>(objectiveScores.size());
}

bool check_satisfaction(double softgoalScore, double threshold) {
  return softgoalScore >= threshold;
}

std::optional<ontology::ObjectiveKind> objective_for_target(
    const std::string& targetName) {
  using ontology::ObjectiveKind;
  if (targetName == intent::kEnergyTargetName)
    return ObjectiveKind::TotalEnergyConsumption;
  if (targetName == intent::kThroughputTargetName)
    return ObjectiveKind::DownlinkThroughput;
  if (targetName == intent::kLatencyTargetName)
    return ObjectiveKind::FirstPacketLatency;
  return std::nullopt;
}

namespace {

// Index of an objective label inside the SIG model, if present.
std::optional<size_t> objective_column(const SigModel& model,
                                       ontology::ObjectiveKind kind) {
  const std::string label = ontology::to_string(kind);
  for (size_t l = 0; l < model.objectives.size(); ++l)
    if (model.objectives[l] == label) return l;
  return std::nullopt;
}

// The dominant objective of a conflicting pair: whichever of the two comes
// first in the matched rule's priority order.
std::optional<ontology::ObjectiveKind> dominant_objective(
    ontology::ObjectiveKind a, ontology::ObjectiveKind b,
    const std::vector<ontology::ConflictRule>& rules) {
  for (const auto& rule : rules) {
    bool match = (rule.objectiveA == a && rule.objectiveB == b) ||
                 (rule.objectiveA == b && rule.objectiveB == a);
    if (!match) continue;
    for (const auto& kind : rule.priorityOrder) {
      if (kind == a || kind == b) return kind;
    }
  }
  return std::nullopt;
}

}  // namespace

std::vector<size_t> prune_conflicting_ops(
    const SigModel& model, const ontology::ConflictSet& conflicts,
    const std::vector<ontology::ConflictRule>& rules, double harmThreshold) {
  std::vector<double> scores = score_operations(model);
  std::vector<size_t> kept;
  for (size_t op = 0; op < model.operations.size(); ++op) {
    if (scores[op] < 0.0) continue;
    bool harmful = false;
    for (const auto& pair : conflicts.pairs) {
      auto a = objective_for_target(pair.targetA);
      auto b = objective_for_target(pair.targetB);
      if (!a || !b) continue;
      auto dominant = dominant_objective(*a, *b, rules);
      if (!dominant) continue;
      auto col = objective_column(model, *dominant);
      if (!col) continue;
      if (model.opWeights[op][*col] <= harmThreshold) {
        harmful = true;
        break;
      }
    }
    if (!harmful) kept.push_back(op);
  }
  return kept;
}

DecompositionResult decompose(const intent::IntentDocument& doc,
                              const ontology::NetworkOntology& kb,
                              const SigModel& model,
                              const DecomposeOptions& options) {
  if (model.objectives.size() != kb.objectives.size())
    throw InconsistentModel("objective count differs between ontology and model");
  for (size_t l = 0; l < kb.objectives.size(); ++l) {
    const std::string label = ontology::to_string(kb.objectives[l].kind);
    if (model.objectives[l] != label)
      throw InconsistentModel("objective label mismatch at position " +
                              std::to_string(l) + ": ontology has '" + label +
                              "', model has '" + model.objectives[l] + "'");
  }

  DecompositionResult result;
  result.scores.opScores = score_operations(model);
  result.scores.objectiveScores = score_objectives(model);
  result.scores.softgoalScore = score_softgoal(result.scores.objectiveScores);
  result.threshold = options.threshold;
  result.satisfied =
      check_satisfaction(result.scores.softgoalScore, options.threshold);

  if (options.conflictAnalysis) {
    result.conflicts = ontology::detect_target_conflicts(doc);
    std::vector<size_t> kept = prune_conflicting_ops(
        model, result.conflicts, kb.conflictRules, options.harmThreshold);
    for (size_t op : kept)
      result.prunedOps.push_back(
          {model.operations[op], result.scores.opScores[op]});
  } else {
    for (size_t op = 0; op < model.operations.size(); ++op)
      result.prunedOps.push_back(
          {model.operations[op], result.scores.opScores[op]});
  }
  return result;
}

std::string report_to_json(const DecompositionResult& result) {
  json j;
  j["softgoal_score"] = result.scores.softgoalScore;
  j["objective_scores"] = result.scores.objectiveScores;
  j["op_scores"] = result.scores.opScores;
  j["threshold"] = result.threshold;
  j["satisfied"] = result.satisfied;
  json ops = json::array();
  for (const auto& op : result.prunedOps)
    ops.push_back({{"label", op.label}, {"score", op.score}});
  j["pruned_ops"] = std::move(ops);
  json conflicts = json::array();
  for (const auto& p : result.conflicts.pairs)
    conflicts.push_back(
        {{"target_a", p.targetA}, {"target_b", p.targetB}, {"reason", p.reason}});
  j["conflicts"] = std::move(conflicts);
  return j.dump(2) + "\n";
}

std::string report_to_text(const DecompositionResult& result) {
  std::ostringstream out;
  out << std::fixed << std::setprecision(2);
  out << "softgoal score " << result.scores.softgoalScore << " (threshold "
      << result.threshold << ") -> "
      << (result.satisfied ? "satisfied" : "not satisfied") << "\n";
  out << "conflicts (" << result.conflicts.pairs.size() << "):\n";
  for (const auto& p : result.conflicts.pairs)
    out << "  " << p.targetA << " <> " << p.targetB << " [" << p.reason
        << "]\n";
  out << "operations kept (" << result.prunedOps.size() << "):\n";
  for (const auto& op : result.prunedOps)
    out << "  " << op.label << " score " << op.score << "\n";
  return out.str();
}

}  // namespace esran::sig
