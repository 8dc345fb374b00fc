/*
 * Copyright 2026 The PMSR Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *      http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */
#include "pmsr/proposal/authoring.h"

#include <yaml-cpp/yaml.h>

#include <algorithm>
#include <cstdio>
#include <set>
#include <string>

#include "pmsr/common/strings.h"
#include "pmsr/common/status.h"

namespace pmsr::proposal {
namespace {

absl::Status ParseFail(std::string_view field, std::string_view why) {
  return MakeError(ErrorCode::kParseError, StrCat(field, ": ", why));
}

absl::Status CheckKeys(const YAML::Node& node, std::string_view where,
                       const std::set<std::string>& allowed) {
  if (!node.IsMap()) return ParseFail(where, "expected a mapping");
  for (const auto& kv : node) {
    const std::string key = kv.first.as<std::string>();
    if (!allowed.contains(key)) return ParseFail(where, "unknown key " + key);
  }
  return absl::OkStatus();
}

template <typename T>
absl::StatusOr<T> Scalar(const YAML::Node& node, std::string_view field) {
  try {
    return node.as<T>();
  } catch (const YAML::Exception&) {
    return ParseFail(field, "bad value");
  }
}

template <typename T>
absl::StatusOr<std::vector<T>> List(const YAML::Node& node,
                                    std::string_view field) {
  if (!node) return std::vector<T>{};
  if (!node.IsSequence()) return ParseFail(field, "expected a list");
  std::vector<T> out;
  for (const auto& item : node) {
    PMSR_ASSIGN_OR_RETURN(T value, Scalar<T>(item, field));
    out.push_back(value);
  }
  return out;
}

std::string FormatDouble(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

YAML::Node DoubleList(const std::vector<double>& values) {
  YAML::Node node(YAML::NodeType::Sequence);
  for (double v : values) node.push_back(FormatDouble(v));
  node.SetStyle(YAML::EmitterStyle::Flow);
  return node;
}

absl::StatusOr<MapFnSpec> ParseMapSpec(const YAML::Node& node) {
  PMSR_RETURN_IF_ERROR(CheckKeys(
      node, "map_spec",
      {"name", "field", "bin_edges", "window", "item_id", "bounds"}));
  MapFnSpec spec;
  PMSR_ASSIGN_OR_RETURN(std::string name,
                        Scalar<std::string>(node["name"], "map_spec.name"));
  auto fn = ParseMapFn(name);
  if (!fn) return ParseFail("map_spec.name", "unregistered function " + name);
  spec.fn = *fn;
  if (node["field"]) {
    PMSR_ASSIGN_OR_RETURN(spec.field,
                          Scalar<std::string>(node["field"], "map_spec.field"));
  }
  PMSR_ASSIGN_OR_RETURN(spec.bin_edges,
                        List<double>(node["bin_edges"], "map_spec.bin_edges"));
  if (node["window"]) {
    PMSR_ASSIGN_OR_RETURN(spec.window,
                          Scalar<uint32_t>(node["window"], "map_spec.window"));
  }
  if (node["item_id"]) {
    PMSR_ASSIGN_OR_RETURN(
        spec.item_id, Scalar<uint32_t>(node["item_id"], "map_spec.item_id"));
  }
  if (node["bounds"]) {
    PMSR_ASSIGN_OR_RETURN(std::vector<double> b,
                          List<double>(node["bounds"], "map_spec.bounds"));
    if (b.size() != 2) return ParseFail("map_spec.bounds", "expected [lo, hi]");
    spec.bounds = std::make_pair(b[0], b[1]);
  }
  return spec;
}

absl::StatusOr<OutputSchema> ParseSchema(const YAML::Node& node) {
  if (!node || !node.IsSequence()) {
    return ParseFail("output_schema", "expected a list of fields");
  }
  OutputSchema schema;
  for (const auto& item : node) {
    PMSR_RETURN_IF_ERROR(CheckKeys(item, "output_schema",
                                   {"name", "kind", "length", "bin_edges"}));
    SchemaField field;
    PMSR_ASSIGN_OR_RETURN(
        field.name, Scalar<std::string>(item["name"], "output_schema.name"));
    PMSR_ASSIGN_OR_RETURN(
        std::string kind,
        Scalar<std::string>(item["kind"], "output_schema.kind"));
    auto parsed = ParseFieldKind(kind);
    if (!parsed) return ParseFail("output_schema.kind", "unknown kind " + kind);
    field.kind = *parsed;
    if (item["length"]) {
      PMSR_ASSIGN_OR_RETURN(
          field.length,
          Scalar<uint32_t>(item["length"], "output_schema.length"));
    }
    PMSR_ASSIGN_OR_RETURN(
        field.bin_edges,
        List<double>(item["bin_edges"], "output_schema.bin_edges"));
    schema.fields.push_back(std::move(field));
  }
  return schema;
}

absl::StatusOr<ReduceFnSpec> ParseReduceSpec(const YAML::Node& node) {
  PMSR_RETURN_IF_ERROR(
      CheckKeys(node, "reduce_spec", {"name", "weights", "compatibility"}));
  ReduceFnSpec spec;
  PMSR_ASSIGN_OR_RETURN(std::string name,
                        Scalar<std::string>(node["name"], "reduce_spec.name"));
  auto fn = ParseReduceFn(name);
  if (!fn) {
    return ParseFail("reduce_spec.name", "unregistered function " + name);
  }
  spec.fn = *fn;
  PMSR_ASSIGN_OR_RETURN(spec.weights,
                        List<double>(node["weights"], "reduce_spec.weights"));
  if (node["compatibility"]) {
    PMSR_ASSIGN_OR_RETURN(
        std::vector<std::string> kinds,
        List<std::string>(node["compatibility"], "reduce_spec.compatibility"));
    for (const std::string& k : kinds) {
      auto kind = ParseThreatKind(k);
      if (!kind) {
        return ParseFail("reduce_spec.compatibility", "unknown variant " + k);
      }
      spec.compatibility |= ThreatBit(*kind);
    }
  } else {
    spec.compatibility = SupportedCompatibility(spec.fn);
  }
  return spec;
}

absl::StatusOr<ThreatModel> ParseThreat(const YAML::Node& node) {
  PMSR_RETURN_IF_ERROR(CheckKeys(node, "threat_model", {"variant", "t", "n"}));
  PMSR_ASSIGN_OR_RETURN(
      std::string variant,
      Scalar<std::string>(node["variant"], "threat_model.variant"));
  auto kind = ParseThreatKind(variant);
  if (!kind) return ParseFail("threat_model.variant", "unknown " + variant);
  ThreatModel model{*kind};
  if (node["t"]) {
    PMSR_ASSIGN_OR_RETURN(model.threshold,
                          Scalar<uint32_t>(node["t"], "threat_model.t"));
  }
  if (node["n"]) {
    PMSR_ASSIGN_OR_RETURN(model.parties,
                          Scalar<uint32_t>(node["n"], "threat_model.n"));
  }
  return model;
}

absl::StatusOr<ComputationProposal> ParseRoot(const YAML::Node& root,
                                              bool allow_missing_proposer) {
  PMSR_RETURN_IF_ERROR(CheckKeys(
      root, "proposal",
      {"id", "deadline", "min_participants", "budget", "targets", "quorum",
       "map_spec", "map_post", "output_schema", "reduce_spec", "reduce_post",
       "threat_model", "proposer", "epsilon"}));
  for (const char* required :
       {"id", "deadline", "min_participants", "map_spec", "output_schema",
        "reduce_spec", "threat_model"}) {
    if (!root[required]) return ParseFail(required, "missing");
  }
  ComputationProposal p;
  PMSR_ASSIGN_OR_RETURN(std::string id_hex,
                        Scalar<std::string>(root["id"], "id"));
  auto id = ComputationId::FromHex(id_hex);
  if (!id) return ParseFail("id", "expected 32 hex characters");
  p.id = *id;
  PMSR_ASSIGN_OR_RETURN(p.deadline, Scalar<Tick>(root["deadline"], "deadline"));
  PMSR_ASSIGN_OR_RETURN(
      int64_t min_participants,
      Scalar<int64_t>(root["min_participants"], "min_participants"));
  if (min_participants < 0 || min_participants > UINT32_MAX) {
    return MakeError(ErrorCode::kInvalidProposal,
                     "min_participants: out of range");
  }
  p.min_participants = static_cast<uint32_t>(min_participants);
  if (root["budget"]) {
    PMSR_ASSIGN_OR_RETURN(p.budget, Scalar<uint64_t>(root["budget"], "budget"));
  }
  PMSR_ASSIGN_OR_RETURN(p.targets, List<NodeId>(root["targets"], "targets"));
  std::sort(p.targets.begin(), p.targets.end());
  p.targets.erase(std::unique(p.targets.begin(), p.targets.end()),
                  p.targets.end());
  PMSR_ASSIGN_OR_RETURN(p.quorum, List<NodeId>(root["quorum"], "quorum"));
  PMSR_ASSIGN_OR_RETURN(p.map_spec, ParseMapSpec(root["map_spec"]));
  if (root["map_post"]) {
    PMSR_ASSIGN_OR_RETURN(p.map_post,
                          Scalar<std::string>(root["map_post"], "map_post"));
  }
  PMSR_ASSIGN_OR_RETURN(p.output_schema, ParseSchema(root["output_schema"]));
  PMSR_ASSIGN_OR_RETURN(p.reduce_spec, ParseReduceSpec(root["reduce_spec"]));
  if (root["reduce_post"]) {
    PMSR_ASSIGN_OR_RETURN(
        p.reduce_post, Scalar<std::string>(root["reduce_post"], "reduce_post"));
  }
  PMSR_ASSIGN_OR_RETURN(p.threat_model, ParseThreat(root["threat_model"]));
  if (root["proposer"]) {
    PMSR_ASSIGN_OR_RETURN(std::string hex,
                          Scalar<std::string>(root["proposer"], "proposer"));
    auto key = FromHex(hex);
    if (!key) return ParseFail("proposer", "expected hex");
    p.proposer = *key;
  } else if (!allow_missing_proposer) {
    return ParseFail("proposer", "missing");
  } else {
    // Placeholder so validation can run; the caller overwrites it.
    p.proposer = Bytes(32, 0);
  }
  if (root["epsilon"]) {
    PMSR_ASSIGN_OR_RETURN(double eps, Scalar<double>(root["epsilon"], "epsilon"));
    p.epsilon = eps;
  }
  PMSR_RETURN_IF_ERROR(p.Validate());
  return p;
}

}  // namespace

absl::StatusOr<ComputationProposal> ParseProposalText(
    std::string_view text, bool allow_missing_proposer) {
  YAML::Node root;
  try {
    root = YAML::Load(std::string(text));
  } catch (const YAML::Exception& e) {
    return MakeError(ErrorCode::kParseError, e.what());
  }
  return ParseRoot(root, allow_missing_proposer);
}

std::string FormatProposalText(const ComputationProposal& p) {
  YAML::Emitter out;
  out << YAML::BeginMap;
  out << YAML::Key << "id" << YAML::Value << p.id.Hex();
  out << YAML::Key << "deadline" << YAML::Value << p.deadline;
  out << YAML::Key << "min_participants" << YAML::Value << p.min_participants;
  out << YAML::Key << "budget" << YAML::Value << p.budget;
  out << YAML::Key << "targets" << YAML::Value << YAML::Flow << p.targets;
  out << YAML::Key << "quorum" << YAML::Value << YAML::Flow << p.quorum;

  out << YAML::Key << "map_spec" << YAML::Value << YAML::BeginMap;
  out << YAML::Key << "name" << YAML::Value
      << std::string(MapFnName(p.map_spec.fn));
  if (!p.map_spec.field.empty()) {
    out << YAML::Key << "field" << YAML::Value << p.map_spec.field;
  }
  if (!p.map_spec.bin_edges.empty()) {
    out << YAML::Key << "bin_edges" << YAML::Value
        << DoubleList(p.map_spec.bin_edges);
  }
  if (p.map_spec.window != 0) {
    out << YAML::Key << "window" << YAML::Value << p.map_spec.window;
  }
  if (p.map_spec.item_id != 0) {
    out << YAML::Key << "item_id" << YAML::Value << p.map_spec.item_id;
  }
  if (p.map_spec.bounds.has_value()) {
    out << YAML::Key << "bounds" << YAML::Value
        << DoubleList({p.map_spec.bounds->first, p.map_spec.bounds->second});
  }
  out << YAML::EndMap;
  if (p.map_post.has_value()) {
    out << YAML::Key << "map_post" << YAML::Value << *p.map_post;
  }

  out << YAML::Key << "output_schema" << YAML::Value << YAML::BeginSeq;
  for (const SchemaField& f : p.output_schema.fields) {
    out << YAML::Flow << YAML::BeginMap;
    out << YAML::Key << "name" << YAML::Value << f.name;
    out << YAML::Key << "kind" << YAML::Value
        << std::string(FieldKindName(f.kind));
    if (f.length != 0) out << YAML::Key << "length" << YAML::Value << f.length;
    if (!f.bin_edges.empty()) {
      out << YAML::Key << "bin_edges" << YAML::Value << DoubleList(f.bin_edges);
    }
    out << YAML::EndMap;
  }
  out << YAML::EndSeq;

  out << YAML::Key << "reduce_spec" << YAML::Value << YAML::BeginMap;
  out << YAML::Key << "name" << YAML::Value
      << std::string(ReduceFnName(p.reduce_spec.fn));
  if (!p.reduce_spec.weights.empty()) {
    out << YAML::Key << "weights" << YAML::Value
        << DoubleList(p.reduce_spec.weights);
  }
  out << YAML::Key << "compatibility" << YAML::Value << YAML::Flow
      << YAML::BeginSeq;
  for (int k = 0; k < kNumThreatKinds; ++k) {
    auto kind = static_cast<ThreatKind>(k);
    if (p.reduce_spec.Supports(kind)) out << std::string(ThreatKindName(kind));
  }
  out << YAML::EndSeq << YAML::EndMap;
  if (p.reduce_post.has_value()) {
    out << YAML::Key << "reduce_post" << YAML::Value << *p.reduce_post;
  }

  out << YAML::Key << "threat_model" << YAML::Value << YAML::Flow
      << YAML::BeginMap;
  out << YAML::Key << "variant" << YAML::Value
      << std::string(ThreatKindName(p.threat_model.kind));
  if (p.threat_model.kind == ThreatKind::kShamirThreshold) {
    out << YAML::Key << "t" << YAML::Value << p.threat_model.threshold;
    out << YAML::Key << "n" << YAML::Value << p.threat_model.parties;
  }
  out << YAML::EndMap;
  out << YAML::Key << "proposer" << YAML::Value << ToHex(p.proposer);
  if (p.epsilon.has_value()) {
    out << YAML::Key << "epsilon" << YAML::Value << FormatDouble(*p.epsilon);
  }
  out << YAML::EndMap;
  return std::string(out.c_str()) + "\n";
}

}  // namespace pmsr::proposal
