// Copyright 2026 The Evofuzz Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      https://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef EVOFUZZ_CAMPAIGN_H_
#define EVOFUZZ_CAMPAIGN_H_

#include <chrono>
#include <cstdint>
#include <filesystem>
#include <optional>
#include <span>
#include <string>
#include <unordered_set>
#include <vector>

#include <nlohmann/json.hpp>

#include "evofuzz/config.h"
#include "evofuzz/coverage.h"
#include "evofuzz/harness.h"
#include "evofuzz/service.h"

namespace evofuzz {

// One executed test. `fitness` is absent for black-box campaigns, whose
// results also carry no coverage.
struct TestRecord {
  Individual individual;
  int generation = 0;
  ExecutionResult result;
  std::optional<double> fitness;
};

struct FailureRecord {
  TestId id = 0;
  Outcome outcome = Outcome::kCrash;
  std::string log_excerpt;
};

struct CampaignState {
  CampaignConfig config;  // effective configuration
  Community community;
  GlobalCoverageState coverage;
  int generation = 0;  // completed loop iterations
  uint64_t tests_executed = 0;
  std::vector<FailureRecord> failures;
  // Target size of every population (descriptor order) at the start of
  // each generation.
  std::vector<std::vector<int>> target_size_history;
  std::chrono::steady_clock::time_point started_at;
  std::chrono::milliseconds elapsed{0};
};

// Receives the records of each generation, in execution order, once the
// generation has been scored.
class RecordSink {
 public:
  virtual ~RecordSink() = default;
  virtual void OnGeneration(int generation,
                            std::span<const TestRecord> records) = 0;
};

// Keeps every record in memory.
class MemorySink : public RecordSink {
 public:
  void OnGeneration(int, std::span<const TestRecord> records) override {
    records_.insert(records_.end(), records.begin(), records.end());
  }
  const std::vector<TestRecord>& records() const { return records_; }

 private:
  std::vector<TestRecord> records_;
};

// Runs the evolutionary loop: seed every population with random
// individuals, then per generation execute, score, resize and breed until
// the stop condition holds. Harness exceptions other than
// ContractViolation count as crashing tests.
CampaignState RunCampaign(Harness& harness, const CampaignConfig& config,
                          RecordSink* sink = nullptr);

// ---------------------------------------------------------------------------
// Coverage accounting.

struct CurvePoint {
  int generation = 0;
  uint64_t tests = 0;            // cumulative
  uint64_t distinct_blocks = 0;  // cumulative union
  uint64_t distinct_branches = 0;
};

struct CoverageSummary {
  uint64_t distinct_blocks = 0;
  uint64_t distinct_branches = 0;
  std::vector<CurvePoint> curve;
};

CoverageSummary SummarizeCoverage(std::span<const TestRecord> records);

// Incremental form of SummarizeCoverage, usable as a sink.
class CoverageTracker : public RecordSink {
 public:
  void OnGeneration(int generation,
                    std::span<const TestRecord> records) override;
  void Add(int generation, const ExecutionResult& result);
  const CoverageSummary& summary() const { return summary_; }

 private:
  std::unordered_set<std::string> blocks_;
  std::unordered_set<std::string> branches_;
  CoverageSummary summary_;
};

// ---------------------------------------------------------------------------
// Persistence.
//
// A campaign directory holds config.json, target.json (the target document
// or, for external targets, the descriptor), gen-NNNN.jsonl with one record
// per line, and summary.json.

nlohmann::json EncodeConfig(const CampaignConfig& config);
CampaignConfig DecodeConfig(const nlohmann::json& j);

nlohmann::json EncodeRecord(const TestRecord& record);
// Throws ValidationError on malformed records.
TestRecord DecodeRecord(const nlohmann::json& j,
                        const ServiceDescriptor& service);

std::string GenerationFileName(int generation);

class CampaignWriter : public RecordSink {
 public:
  // Creates `dir` and writes config.json and target.json. Throws IoError.
  CampaignWriter(std::filesystem::path dir, const CampaignConfig& config,
                 const nlohmann::json& target);

  void OnGeneration(int generation,
                    std::span<const TestRecord> records) override;
  // Writes summary.json.
  void Finish(const CampaignState& state, const CoverageSummary& coverage);

  const std::filesystem::path& dir() const { return dir_; }

 private:
  std::filesystem::path dir_;
};

struct LoadedCampaign {
  CampaignConfig config;
  nlohmann::json target;
  ServiceDescriptor service;
  std::vector<TestRecord> records;
};

// Throws IoError or ValidationError (with file and line) on missing or
// corrupt files.
LoadedCampaign LoadCampaign(const std::filesystem::path& dir);

// ---------------------------------------------------------------------------
// Replay.

struct ReplayReport {
  CoverageSummary coverage;
  uint64_t tests = 0;
  // Tests whose recorded coverage or outcome differs from the replay.
  // Records without coverage (black-box) are only compared on outcome.
  uint64_t mismatches = 0;
  std::vector<TestRecord> replayed;
};

// Re-executes every record in order with coverage enabled.
ReplayReport Replay(std::span<const TestRecord> records, Harness& harness);
// Loads a campaign directory and replays it. Throws ValidationError if the
// harness's descriptor differs from the recorded one.
ReplayReport ReplayCampaign(const std::filesystem::path& dir, Harness& harness);

nlohmann::json EncodeCurve(const CoverageSummary& summary);

}  // namespace evofuzz

#endif  // EVOFUZZ_CAMPAIGN_H_
