#pragma once

#include <stdexcept>
#include <string>
#include <vector>

#include "esran/intent.hpp"

namespace esran::ontology {

struct OntologyError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

enum class ObjectiveKind {
  TotalEnergyConsumption,
  DownlinkThroughput,
  FirstPacketLatency,
};

enum class Direction { Minimize, Maximize };

std::string to_string(ObjectiveKind kind);
ObjectiveKind objective_from_string(const std::string& label);

struct Objective {
  ObjectiveKind kind = ObjectiveKind::TotalEnergyConsumption;
  Direction direction = Direction::Minimize;
  double bound = 0.0;
  std::string unit;

  bool operator==(const Objective&) const = default;
};

enum class OpKind { PowerDelta, AntennaAngleSet, Sleep };

// One actuation a BS agent can perform. parameter is the dBm delta for
// PowerDelta, the target angle in degrees for AntennaAngleSet, unused for
// Sleep.
struct EnergySavingOp {
  OpKind kind = OpKind::Sleep;
  double parameter = 0.0;

  bool operator==(const EnergySavingOp&) const = default;
};

std::string op_label(const EnergySavingOp& op);
EnergySavingOp op_from_label(const std::string& label);

// The five parameterized operations of the energy-saving scenario.
std::vector<EnergySavingOp> default_energy_saving_ops();

struct ConflictRule {
  ObjectiveKind objectiveA = ObjectiveKind::TotalEnergyConsumption;
  ObjectiveKind objectiveB = ObjectiveKind::DownlinkThroughput;
  std::vector<ObjectiveKind> priorityOrder;
  int level = 1;

  bool operator==(const ConflictRule&) const = default;
};

std::vector<ConflictRule> default_conflict_rules();

struct ConflictPair {
  std::string targetA;
  std::string targetB;
  std::string reason;

  bool operator==(const ConflictPair&) const = default;
};

struct ConflictSet {
  std::vector<ConflictPair> pairs;

  bool operator==(const ConflictSet&) const = default;
};

struct NetworkOntology {
  std::vector<Objective> objectives;
  std::vector<std::string> domainProperties;
  std::vector<std::string> ranRequirements;
  std::vector<EnergySavingOp> energySavingOps;
  std::vector<std::string> bsAgents;
  std::vector<ConflictRule> conflictRules;

  bool operator==(const NetworkOntology&) const = default;
};

// Builds the knowledge base for one intent: objectives carry the bounds
// extracted from the document, the operation set is the fixed five, and the
// descriptive records are derived from the intent numbers.
NetworkOntology build_knowledge_base(const intent::IntentDocument& doc,
                                     const std::vector<ConflictRule>& rules);

// Two targets conflict when their conditions oppose each other (one
// IS_LESS_THAN against one IS_GREATER_THAN). Pairs are reported in document
// order, each unordered pair once.
ConflictSet detect_target_conflicts(const intent::IntentDocument& doc);

}  // namespace esran::ontology
