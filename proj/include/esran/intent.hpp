#pragma once

#include <stdexcept>
#include <string>
#include <vector>

namespace esran::intent {

// Errors raised by the codec. SyntaxError means the document is not
// well-formed YAML/JSON at all; SchemaError means it is well-formed but
// does not match the closed intent template (missing field, unknown
// field, bad enum value, violated invariant).
struct SyntaxError : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct SchemaError : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct MissingTarget : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct ConditionMismatch : std::runtime_error {
  using std::runtime_error::runtime_error;
};

enum class ExpectationVerb { Ensure };
enum class ContextCondition { IsAllOf };
enum class TargetCondition { IsLessThan, IsGreaterThan };

std::string to_string(ExpectationVerb v);
std::string to_string(ContextCondition c);
std::string to_string(TargetCondition c);

struct ObjectContext {
  std::string contextAttribute;
  ContextCondition contextCondition = ContextCondition::IsAllOf;
  std::vector<std::string> contextValueRange;

  bool operator==(const ObjectContext&) const = default;
};

struct ExpectationObject {
  std::string objectInstance;
  std::vector<ObjectContext> contexts;

  bool operator==(const ExpectationObject&) const = default;
};

// targetName keeps its unit suffix as written, e.g. "PowerConsumer(KWh)".
struct ExpectationTarget {
  std::string targetName;
  TargetCondition targetCondition = TargetCondition::IsLessThan;
  double targetValueRange = 0.0;

  bool operator==(const ExpectationTarget&) const = default;
};

struct IntentExpectation {
  std::string expectationId;
  ExpectationVerb expectationVerb = ExpectationVerb::Ensure;
  std::vector<ExpectationObject> objects;
  std::vector<ExpectationTarget> targets;

  bool operator==(const IntentExpectation&) const = default;
};

struct IntentDocument {
  std::string userLabel;
  IntentExpectation expectation;

  bool operator==(const IntentDocument&) const = default;
};

// Numeric bounds pulled out of the three expectation targets; these feed
// the optimization constraints downstream.
struct ObjectiveBounds {
  double energyMaxKwh = 0.0;
  double throughputMinGbps = 0.0;
  double latencyMaxMs = 0.0;

  bool operator==(const ObjectiveBounds&) const = default;
};

// Target names recognized by extract_bounds.
inline constexpr const char* kEnergyTargetName = "PowerConsumer(KWh)";
inline constexpr const char* kThroughputTargetName = "aveDLRANUEThpt(Gbps)";
inline constexpr const char* kLatencyTargetName = "DLFirstPacketLatency(ms)";

IntentDocument parse_intent_yaml(const std::string& text);
IntentDocument parse_intent_json(const std::string& text);

// Canonical JSON: lexicographically sorted keys, two-space indent, minimal
// number representation, LF line endings, trailing newline. Equal documents
// serialize to byte-identical output.
std::string intent_to_json(const IntentDocument& doc);

ObjectiveBounds extract_bounds(const IntentDocument& doc);

// Loads an intent from a file, sniffing the format from the extension
// (.yaml/.yml vs .json).
IntentDocument load_intent_file(const std::string& path);

}  // namespace esran::intent
