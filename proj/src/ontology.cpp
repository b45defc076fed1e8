#include "esran/ontology.hpp"

#include <algorithm>
#include <set>
#include <sstream>

namespace esran::ontology {

std::string to_string(ObjectiveKind kind) {
  switch (kind) {
    case ObjectiveKind::TotalEnergyConsumption:
      return "TotalEnergyConsumption";
    case ObjectiveKind::DownlinkThroughput:
      return "DownlinkThroughput";
    case ObjectiveKind::FirstPacketLatency:
      return "FirstPacketLatency";
  }
  return "?";
}

ObjectiveKind objective_from_string(const std::string& label) {
  if (label == "TotalEnergyConsumption")
    return ObjectiveKind::TotalEnergyConsumption;
  if (label == "DownlinkThroughput") return ObjectiveKind::DownlinkThroughput;
  if (label == "FirstPacketLatency") return ObjectiveKind::FirstPacketLatency;
  throw OntologyError("unknown objective label: " + label);
}

std::string op_label(const EnergySavingOp& op) {
  std::ostringstream out;
  switch (op.kind) {
    case OpKind::PowerDelta:
      out << "TxPower" << (op.parameter >= 0 ? "Plus" : "Minus")
          << std::abs(static_cast<int>(op.parameter)) << "dBm";
      break;
    case OpKind::AntennaAngleSet:
      out << "AntennaAngle" << static_cast<int>(op.parameter) << "deg";
      break;
    case OpKind::Sleep:
      out << "BsSleep";
      break;
  }
  return out.str();
}

EnergySavingOp op_from_label(const std::string& label) {
  for (const auto& op : default_energy_saving_ops()) {
    if (op_label(op) == label) return op;
  }
  throw OntologyError("unknown operation label: " + label);
}

std::vector<EnergySavingOp> default_energy_saving_ops() {
  return {
      {OpKind::PowerDelta, +1.0},
      {OpKind::PowerDelta, -1.0},
      {OpKind::AntennaAngleSet, 5.0},
      {OpKind::AntennaAngleSet, 15.0},
      {OpKind::Sleep, 0.0},
  };
}

std::vector<ConflictRule> default_conflict_rules() {
  // Priority follows the softgoal edge weights: energy ahead of latency
  // ahead of throughput.
  std::vector<ObjectiveKind> priority = {
      ObjectiveKind::TotalEnergyConsumption,
      ObjectiveKind::FirstPacketLatency,
      ObjectiveKind::DownlinkThroughput,
  };
  return {
      {ObjectiveKind::TotalEnergyConsumption, ObjectiveKind::DownlinkThroughput,
       priority, 1},
      {ObjectiveKind::DownlinkThroughput, ObjectiveKind::FirstPacketLatency,
       priority, 1},
  };
}

namespace {

void validate_rules(const std::vector<ConflictRule>& rules) {
  const std::set<ObjectiveKind> all = {
      ObjectiveKind::TotalEnergyConsumption,
      ObjectiveKind::DownlinkThroughput,
      ObjectiveKind::FirstPacketLatency,
  };
  for (const auto& rule : rules) {
    if (rule.objectiveA == rule.objectiveB)
      throw OntologyError("conflict rule references the same objective twice");
    if (rule.level < 1) throw OntologyError("conflict level must be >= 1");
    std::set<ObjectiveKind> order(rule.priorityOrder.begin(),
                                  rule.priorityOrder.end());
    if (order != all || rule.priorityOrder.size() != all.size())
      throw OntologyError(
          "priorityOrder must be a permutation of all objectives");
  }
}

std::string format_number(double v) {
  std::ostringstream out;
  out << v;
  return out.str();
}

}  // namespace

NetworkOntology build_knowledge_base(const intent::IntentDocument& doc,
                                     const std::vector<ConflictRule>& rules) {
  validate_rules(rules);
  intent::ObjectiveBounds bounds = intent::extract_bounds(doc);

  NetworkOntology kb;
  kb.objectives = {
      {ObjectiveKind::TotalEnergyConsumption, Direction::Minimize,
       bounds.energyMaxKwh, "kWh"},
      {ObjectiveKind::DownlinkThroughput, Direction::Maximize,
       bounds.throughputMinGbps, "Gbps"},
      {ObjectiveKind::FirstPacketLatency, Direction::Minimize,
       bounds.latencyMaxMs, "ms"},
  };
  kb.domainProperties = {
      "Maximum transmit power of each BS is fixed",
      "BS locations are fixed",
  };
  kb.ranRequirements = {
      "BSs meet service demand with the lowest energy consumption and first "
      "packet latency",
      "Downlink throughput of at least " +
          format_number(bounds.throughputMinGbps) + " Gbps",
  };
  kb.energySavingOps = default_energy_saving_ops();
  kb.bsAgents = {"BSAgent"};
  kb.conflictRules = rules;
  return kb;
}

ConflictSet detect_target_conflicts(const intent::IntentDocument& doc) {
  ConflictSet out;
  const auto& targets = doc.expectation.targets;
  for (size_t i = 0; i < targets.size(); ++i) {
    for (size_t j = i + 1; j < targets.size(); ++j) {
      if (targets[i].targetCondition != targets[j].targetCondition) {
        out.pairs.push_back({targets[i].targetName, targets[j].targetName,
                             to_string(targets[i].targetCondition) + " vs " +
                                 to_string(targets[j].targetCondition)});
      }
    }
  }
  return out;
}

}  // namespace esran::ontology
