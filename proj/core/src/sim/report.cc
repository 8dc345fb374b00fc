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
#include "pmsr/sim/report.h"

#include <charconv>
#include <cstdio>
#include <filesystem>
#include <fstream>

#include "json.hpp"
#include "pmsr/common/status.h"
#include "pmsr/common/strings.h"

namespace pmsr::sim {
namespace {

using Json = nlohmann::ordered_json;

std::string CsvQuote(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char ch : s) {
    if (ch == '"') out += '"';
    out += ch;
  }
  return out + "\"";
}

Json Numbers(const std::vector<double>& values) {
  Json out = Json::array();
  for (double v : values) out.push_back(v);
  return out;
}

}  // namespace

std::string FormatDouble(double v) {
  char buf[64];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), v);
  return ec == std::errc() ? std::string(buf, ptr) : std::string("nan");
}

size_t ScenarioReport::released() const {
  size_t n = 0;
  for (const auto& c : computations) n += c.phase == runtime::Phase::kReleased;
  return n;
}

size_t ScenarioReport::aborted() const {
  size_t n = 0;
  for (const auto& c : computations) n += c.phase == runtime::Phase::kAborted;
  return n;
}

std::string ScenarioReport::ToJson() const {
  Json j;
  j["scenario"] = scenario;
  j["seed"] = seed;
  j["summary"] = {{"released", released()},
                  {"aborted", aborted()},
                  {"mean_latency_ticks", mean_latency()}};
  if (latency.has_value()) {
    j["latency_ticks"] = {{"n", latency->n},           {"mean", latency->mean},
                          {"median", latency->median}, {"p95", latency->p95},
                          {"min", latency->min},       {"max", latency->max}};
  } else {
    j["latency_ticks"] = nullptr;
  }
  if (latency.has_value() && ms_per_tick.has_value()) {
    const double f = *ms_per_tick;
    j["latency_ms"] = {{"ms_per_tick", f},
                       {"mean", latency->mean * f},
                       {"median", latency->median * f},
                       {"p95", latency->p95 * f}};
  }
  Json hist = Json::object();
  for (const auto& [participants, count] : participation) {
    hist[std::to_string(participants)] = count;
  }
  j["participation_histogram"] = hist;
  Json metric_obj = Json::object();
  for (const auto& [name, value] : metrics) metric_obj[name] = value;
  j["metrics"] = metric_obj;
  Json cats = Json::array();
  for (const CategoryRow& row : categories) {
    cats.push_back({{"category", row.name},
                    {"observed", row.observed},
                    {"baseline", row.baseline},
                    {"ratio", row.ratio}});
  }
  j["categories"] = cats;
  j["ledger_trajectory"] = Numbers(ledger_trajectory);
  j["network"] = {{"sent", envelopes_sent},
                  {"delivered", envelopes_delivered},
                  {"dropped", envelopes_dropped},
                  {"trace_sha256", trace_hash}};
  j["invariant_violations"] = invariant_violations;
  Json comps = Json::array();
  for (const ComputationSummary& c : computations) {
    Json entry = {{"id", c.id},
                  {"label", c.label},
                  {"phase", std::string(runtime::PhaseName(c.phase))},
                  {"participants", c.participants},
                  {"start_tick", c.start_tick},
                  {"end_tick", c.end_tick}};
    if (c.phase == runtime::Phase::kReleased) {
      entry["aggregate"] = Numbers(c.aggregate);
    } else {
      entry["reason"] = c.abort_reason;
    }
    comps.push_back(std::move(entry));
  }
  j["computations"] = comps;
  return j.dump(2) + "\n";
}

std::string ScenarioReport::ComputationsCsv() const {
  std::string out =
      "computation_id,phase,participants,start_tick,end_tick,"
      "aggregate_json_or_reason\n";
  for (const ComputationSummary& c : computations) {
    std::string tail = c.phase == runtime::Phase::kReleased
                           ? Numbers(c.aggregate).dump()
                           : c.abort_reason;
    out += StrCat(c.id, ",", runtime::PhaseName(c.phase), ",", c.participants,
                  ",", c.start_tick, ",", c.end_tick, ",", CsvQuote(tail),
                  "\n");
  }
  return out;
}

std::string ScenarioReport::CategoriesCsv() const {
  std::string out = "category,observed,baseline,ratio\n";
  for (const CategoryRow& row : categories) {
    out += StrCat(CsvQuote(row.name), ",", FormatDouble(row.observed), ",",
                  FormatDouble(row.baseline), ",", FormatDouble(row.ratio),
                  "\n");
  }
  return out;
}

std::string ScenarioReport::SummaryLine() const {
  return StrCat("scenario=", scenario, " released=", released(),
                " aborted=", aborted(),
                " mean_latency_ticks=", FormatDouble(mean_latency()));
}

absl::Status WriteFileAtomic(const std::string& path,
                             const std::string& contents) {
  const std::string tmp = path + ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) return MakeError(ErrorCode::kIoError, StrCat("open ", tmp));
    out.write(contents.data(), static_cast<std::streamsize>(contents.size()));
    out.flush();
    if (!out) {
      std::remove(tmp.c_str());
      return MakeError(ErrorCode::kIoError, StrCat("write ", tmp));
    }
  }
  std::error_code ec;
  std::filesystem::rename(tmp, path, ec);
  if (ec) {
    std::remove(tmp.c_str());
    return MakeError(ErrorCode::kIoError,
                     StrCat("rename ", tmp, ": ", ec.message()));
  }
  return absl::OkStatus();
}

absl::Status WriteReport(const ScenarioReport& report,
                         const std::string& trace_csv,
                         const std::string& dir) {
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  if (ec) {
    return MakeError(ErrorCode::kIoError, StrCat(dir, ": ", ec.message()));
  }
  const std::filesystem::path base(dir);
  PMSR_RETURN_IF_ERROR(
      WriteFileAtomic((base / "report.json").string(), report.ToJson()));
  PMSR_RETURN_IF_ERROR(WriteFileAtomic((base / "computations.csv").string(),
                                       report.ComputationsCsv()));
  PMSR_RETURN_IF_ERROR(WriteFileAtomic((base / "categories.csv").string(),
                                       report.CategoriesCsv()));
  PMSR_RETURN_IF_ERROR(WriteFileAtomic(
      (base / "trace.csv").string(),
      "tick,from,to,payload_kind,computation_id\n" + trace_csv));
  return absl::OkStatus();
}

}  // namespace pmsr::sim
