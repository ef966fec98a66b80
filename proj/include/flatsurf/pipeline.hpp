#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "flatsurf/census.hpp"
#include "flatsurf/io.hpp"

namespace flatsurf {

inline constexpr const char* kCodeVersion = "flatsurf 0.1.0";

struct PipelineConfig {
  std::vector<std::string> stages;  // subset of enumerate, census, diagrams, reports, in this order
  CensusOptions census;
  std::vector<std::vector<int>> diagram_strata;
  bool reflection = true;
  std::string output_dir = "out";
};

// key = value lines, '#' comments. ConfigError on unknown keys, bad values or unknown stages.
PipelineConfig parse_config(const std::string& text);
PipelineConfig load_config(const std::string& path);
// canonical rendering used for the input hash; jobs is left out since it cannot change outputs
std::string canonical_config(const PipelineConfig& c);

std::string sha256_hex(const std::string& data);
std::string sha256_file(const std::string& path);

struct RunControl {
  std::optional<int> max_units;  // stop after this many new units, as if interrupted
};

struct RunManifest {
  Json config;
  std::string code_version;
  std::string input_hash;
  std::map<std::string, std::string> outputs;  // artifact file name -> sha256
  bool complete = false;
  long units_run = 0, units_resumed = 0;
  long inconclusive = 0;
  Json to_json() const;
};

// Runs the stages with one checkpointed unit per census level and per diagram stratum.
// Rerunning on the same output directory resumes: finished units are verified and reused.
// ResumeMismatch when the checkpoint belongs to another config or a unit file was altered.
RunManifest run_pipeline(const PipelineConfig& config, const RunControl& control = {});

}  // namespace flatsurf
