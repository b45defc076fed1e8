#include "esran/intent.hpp"

#include <yaml-cpp/yaml.h>

#include <cmath>
#include <fstream>
#include <set>
#include <sstream>

#include "json.hpp"

namespace esran::intent {

using nlohmann::json;

std::string to_string(ExpectationVerb) { return "ENSURE"; }

std::string to_string(ContextCondition) { return "IS_ALL_OF"; }

std::string to_string(TargetCondition c) {
  return c == TargetCondition::IsLessThan ? "IS_LESS_THAN" : "IS_GREATER_THAN";
}

namespace {

ExpectationVerb parse_verb(const std::string& s) {
  if (s == "ENSURE") return ExpectationVerb::Ensure;
  throw SchemaError("unknown expectationVerb: " + s);
}

ContextCondition parse_context_condition(const std::string& s) {
  if (s == "IS_ALL_OF") return ContextCondition::IsAllOf;
  throw SchemaError("unknown contextCondition: " + s);
}

TargetCondition parse_target_condition(const std::string& s) {
  if (s == "IS_LESS_THAN") return TargetCondition::IsLessThan;
  if (s == "IS_GREATER_THAN") return TargetCondition::IsGreaterThan;
  throw SchemaError("unknown targetCondition: " + s);
}

// The template is a closed schema: every object must carry exactly the keys
// we know about (minus those marked optional).
void check_keys(const json& obj, const std::string& where,
                const std::set<std::string>& required,
                const std::set<std::string>& optional = {}) {
  if (!obj.is_object())
    throw SchemaError(where + ": expected a mapping");
  for (const auto& [key, value] : obj.items()) {
    (void)value;
    if (!required.count(key) && !optional.count(key))
      throw SchemaError(where + ": unknown field '" + key + "'");
  }
  for (const auto& key : required) {
    if (!obj.contains(key))
      throw SchemaError(where + ": missing field '" + key + "'");
  }
}

std::string get_string(const json& obj, const std::string& key,
                       const std::string& where) {
  const json& v = obj.at(key);
  if (!v.is_string())
    throw SchemaError(where + "." + key + ": expected a string");
  return v.get<std::string>();
}

double get_number(const json& obj, const std::string& key,
                  const std::string& where) {
  const json& v = obj.at(key);
  if (!v.is_number())
    throw SchemaError(where + "." + key + ": expected a number");
  double d = v.get<double>();
  if (!std::isfinite(d))
    throw SchemaError(where + "." + key + ": value must be finite");
  return d;
}

ObjectContext context_from_json(const json& j, const std::string& where) {
  check_keys(j, where,
             {"contextAttribute", "contextCondition", "contextValueRange"});
  ObjectContext ctx;
  ctx.contextAttribute = get_string(j, "contextAttribute", where);
  ctx.contextCondition =
      parse_context_condition(get_string(j, "contextCondition", where));
  const json& range = j.at("contextValueRange");
  if (!range.is_array() || range.empty())
    throw SchemaError(where + ".contextValueRange: expected a non-empty list");
  for (const auto& v : range) {
    if (!v.is_string())
      throw SchemaError(where + ".contextValueRange: expected string entries");
    ctx.contextValueRange.push_back(v.get<std::string>());
  }
  return ctx;
}

ExpectationObject object_from_json(const json& j, const std::string& where) {
  check_keys(j, where, {"objectInstance"}, {"objectContexts"});
  ExpectationObject obj;
  obj.objectInstance = get_string(j, "objectInstance", where);
  if (obj.objectInstance.empty())
    throw SchemaError(where + ".objectInstance: must be non-empty");
  if (j.contains("objectContexts")) {
    const json& ctxs = j.at("objectContexts");
    if (!ctxs.is_array())
      throw SchemaError(where + ".objectContexts: expected a list");
    for (size_t i = 0; i < ctxs.size(); ++i)
      obj.contexts.push_back(context_from_json(
          ctxs[i], where + ".objectContexts[" + std::to_string(i) + "]"));
  }
  return obj;
}

ExpectationTarget target_from_json(const json& j, const std::string& where) {
  check_keys(j, where, {"targetName", "targetCondition", "targetValueRange"});
  ExpectationTarget t;
  t.targetName = get_string(j, "targetName", where);
  if (t.targetName.empty())
    throw SchemaError(where + ".targetName: must be non-empty");
  t.targetCondition =
      parse_target_condition(get_string(j, "targetCondition", where));
  t.targetValueRange = get_number(j, "targetValueRange", where);
  return t;
}

IntentDocument document_from_json(const json& j) {
  check_keys(j, "document", {"userLabel", "intentExpectation"});
  IntentDocument doc;
  doc.userLabel = get_string(j, "userLabel", "document");
  if (doc.userLabel.empty())
    throw SchemaError("document.userLabel: must be non-empty");

  const json& exp = j.at("intentExpectation");
  check_keys(exp, "intentExpectation",
             {"expectationId", "expectationVerb", "expectationTargets"},
             {"expectationObjects"});
  doc.expectation.expectationId =
      get_string(exp, "expectationId", "intentExpectation");
  doc.expectation.expectationVerb =
      parse_verb(get_string(exp, "expectationVerb", "intentExpectation"));

  if (exp.contains("expectationObjects")) {
    const json& objs = exp.at("expectationObjects");
    if (!objs.is_array())
      throw SchemaError("intentExpectation.expectationObjects: expected a list");
    for (size_t i = 0; i < objs.size(); ++i)
      doc.expectation.objects.push_back(object_from_json(
          objs[i], "expectationObjects[" + std::to_string(i) + "]"));
  }

  const json& targets = exp.at("expectationTargets");
  if (!targets.is_array() || targets.empty())
    throw SchemaError(
        "intentExpectation.expectationTargets: expected a non-empty list");
  std::set<std::string> seen;
  for (size_t i = 0; i < targets.size(); ++i) {
    ExpectationTarget t = target_from_json(
        targets[i], "expectationTargets[" + std::to_string(i) + "]");
    if (!seen.insert(t.targetName).second)
      throw SchemaError("duplicate targetName: " + t.targetName);
    doc.expectation.targets.push_back(std::move(t));
  }
  return doc;
}

// yaml-cpp hands back untyped scalars; resolve them the way a JSON reader
// would. Quoted scalars (tag "!") always stay strings.
json yaml_to_json(const YAML::Node& node) {
  switch (node.Type()) {
    case YAML::NodeType::Null:
      return nullptr;
    case YAML::NodeType::Scalar: {
      if (node.Tag() != "!") {
        try {
          const std::string& raw = node.Scalar();
          if (raw.find_first_not_of("+-0123456789") == std::string::npos &&
              !raw.empty()) {
            return json(node.as<int64_t>());
          }
          if (raw.find_first_not_of("+-0123456789.eE") == std::string::npos &&
              !raw.empty() && raw.find_first_of("0123456789") != std::string::npos) {
            return json(node.as<double>());
          }
          if (raw == "true" || raw == "false") return json(node.as<bool>());
        } catch (const YAML::Exception&) {
          // fall through to string
        }
      }
      return json(node.as<std::string>());
    }
    case YAML::NodeType::Sequence: {
      json arr = json::array();
      for (const auto& elem : node) arr.push_back(yaml_to_json(elem));
      return arr;
    }
    case YAML::NodeType::Map: {
      json obj = json::object();
      for (const auto& kv : node) {
        std::string key = kv.first.as<std::string>();
        if (obj.contains(key)) throw SchemaError("duplicate key: " + key);
        obj[key] = yaml_to_json(kv.second);
      }
      return obj;
    }
    default:
      throw SchemaError("unsupported YAML node type");
  }
}

json document_to_json_value(const IntentDocument& doc) {
  json exp = json::object();
  exp["expectationId"] = doc.expectation.expectationId;
  exp["expectationVerb"] = to_string(doc.expectation.expectationVerb);
  json objs = json::array();
  for (const auto& o : doc.expectation.objects) {
    json jo = json::object();
    jo["objectInstance"] = o.objectInstance;
    json ctxs = json::array();
    for (const auto& c : o.contexts) {
      json jc = json::object();
      jc["contextAttribute"] = c.contextAttribute;
      jc["contextCondition"] = to_string(c.contextCondition);
      jc["contextValueRange"] = c.contextValueRange;
      ctxs.push_back(std::move(jc));
    }
    jo["objectContexts"] = std::move(ctxs);
    objs.push_back(std::move(jo));
  }
  exp["expectationObjects"] = std::move(objs);
  json targets = json::array();
  for (const auto& t : doc.expectation.targets) {
    json jt = json::object();
    jt["targetName"] = t.targetName;
    jt["targetCondition"] = to_string(t.targetCondition);
    jt["targetValueRange"] = t.targetValueRange;
    targets.push_back(std::move(jt));
  }
  exp["expectationTargets"] = std::move(targets);

  json root = json::object();
  root["userLabel"] = doc.userLabel;
  root["intentExpectation"] = std::move(exp);
  return root;
}

}  // namespace

IntentDocument parse_intent_yaml(const std::string& text) {
  YAML::Node root;
  try {
    root = YAML::Load(text);
  } catch (const YAML::Exception& e) {
    throw SyntaxError(std::string("YAML parse error: ") + e.what());
  }
  return document_from_json(yaml_to_json(root));
}

IntentDocument parse_intent_json(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    throw SyntaxError(std::string("JSON parse error: ") + e.what());
  }
  return document_from_json(j);
}

std::string intent_to_json(const IntentDocument& doc) {
  // nlohmann::json keeps object keys in std::map order, which gives the
  // lexicographic canonical form; dump() emits minimal number text.
  return document_to_json_value(doc).dump(2) + "\n";
}

ObjectiveBounds extract_bounds(const IntentDocument& doc) {
  const ExpectationTarget* energy = nullptr;
  const ExpectationTarget* throughput = nullptr;
  const ExpectationTarget* latency = nullptr;
  for (const auto& t : doc.expectation.targets) {
    if (t.targetName == kEnergyTargetName) energy = &t;
    if (t.targetName == kThroughputTargetName) throughput = &t;
    if (t.targetName == kLatencyTargetName) latency = &t;
  }
  if (!energy) throw MissingTarget(std::string(kEnergyTargetName) + " absent");
  if (!throughput)
    throw MissingTarget(std::string(kThroughputTargetName) + " absent");
  if (!latency)
    throw MissingTarget(std::string(kLatencyTargetName) + " absent");

  // Upper bounds must arrive as IS_LESS_THAN, the lower bound as
  // IS_GREATER_THAN; anything else flips the constraint's meaning.
  if (energy->targetCondition != TargetCondition::IsLessThan)
    throw ConditionMismatch(std::string(kEnergyTargetName) +
                            " must use IS_LESS_THAN");
  if (throughput->targetCondition != TargetCondition::IsGreaterThan)
    throw ConditionMismatch(std::string(kThroughputTargetName) +
                            " must use IS_GREATER_THAN");
  if (latency->targetCondition != TargetCondition::IsLessThan)
    throw ConditionMismatch(std::string(kLatencyTargetName) +
                            " must use IS_LESS_THAN");

  ObjectiveBounds b;
  b.energyMaxKwh = energy->targetValueRange;
  b.throughputMinGbps = throughput->targetValueRange;
  b.latencyMaxMs = latency->targetValueRange;
  if (b.energyMaxKwh <= 0 || b.throughputMinGbps <= 0 || b.latencyMaxMs <= 0)
    throw SchemaError("objective bounds must be strictly positive");
  return b;
}

IntentDocument load_intent_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw SyntaxError("cannot open intent file: " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  auto ends_with = [&](const std::string& suffix) {
    return path.size() >= suffix.size() &&
           path.compare(path.size() - suffix.size(), suffix.size(), suffix) == 0;
  };
  if (ends_with(".json")) return parse_intent_json(ss.str());
  if (ends_with(".yaml") || ends_with(".yml")) return parse_intent_yaml(ss.str());
  throw SyntaxError("unrecognized intent file extension: " + path);
}

}  // namespace esran::intent
