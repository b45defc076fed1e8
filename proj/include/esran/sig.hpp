#pragma once

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "esran/intent.hpp"
#include "esran/ontology.hpp"

namespace esran::sig {

struct SyntaxError : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct DimensionError : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct RangeError : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct EmptyInput : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct InconsistentModel : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Two-level weighted decomposition graph: one softgoal, objective labels
// beneath it, operation labels beneath those. sgWeights holds the
// softgoal-objective edge weights (one per objective); opWeights holds the
// operation-objective edge weights, one row per operation.
struct SigModel {
  std::string softgoal;
  std::vector<std::string> objectives;
  std::vector<std::string> operations;
  std::vector<double> sgWeights;
  std::vector<std::vector<double>> opWeights;

  bool operator==(const SigModel&) const = default;
};

struct SigScores {
  std::vector<double> opScores;
  std::vector<double> objectiveScores;
  double softgoalScore = 0.0;

  bool operator==(const SigScores&) const = default;
};

struct ScoredOp {
  std::string label;
  double score = 0.0;

  bool operator==(const ScoredOp&) const = default;
};

struct DecompositionResult {
  std::vector<ScoredOp> prunedOps;
  SigScores scores;
  ontology::ConflictSet conflicts;
  bool satisfied = false;
  double threshold = 0.0;
};

struct DecomposeOptions {
  double threshold = 0.5;
  // Operations whose weight toward the dominant objective of a conflicting
  // pair is <= harmThreshold get dropped. At -1.0 only fully opposed edges
  // qualify.
  double harmThreshold = -1.0;
  // When false, conflict detection and pruning are skipped entirely and the
  // whole operation set is retained (baseline mode).
  bool conflictAnalysis = true;
};

SigModel load_sig_json(const std::string& text);
SigModel load_sig_file(const std::string& path);
std::string sig_to_json(const SigModel& model);

// score(op) = opWeights[op] . sgWeights
std::vector<double> score_operations(const SigModel& model);

// score(objective) = column sum of opWeights
std::vector<double> score_objectives(const SigModel& model);

// arithmetic mean of the objective scores
double score_softgoal(const std::vector<double>& objectiveScores);

bool check_satisfaction(double softgoalScore, double threshold);

// Drops operations with negative overall score, then applies the harm rule
// against each conflicting pair's dominant objective. Returns the kept
// operation indices in model order.
std::vector<size_t> prune_conflicting_ops(
    const SigModel& model, const ontology::ConflictSet& conflicts,
    const std::vector<ontology::ConflictRule>& rules,
    double harmThreshold = -1.0);

DecompositionResult decompose(const intent::IntentDocument& doc,
                              const ontology::NetworkOntology& kb,
                              const SigModel& model,
                              const DecomposeOptions& options = {});

// JSON report with scores, conflicts, kept operations, and the verdict.
std::string report_to_json(const DecompositionResult& result);
// Console rendering; scores rounded to two decimals.
std::string report_to_text(const DecompositionResult& result);

// Maps an expectation target name onto the objective it measures, when the
// name belongs to the fixed table.
std::optional<ontology::ObjectiveKind> objective_for_target(
    const std::string& targetName);

}  // namespace esran::sig
