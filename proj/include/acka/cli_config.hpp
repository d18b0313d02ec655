#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "acka/anonymity.hpp"
#include "acka/orchestrator.hpp"

namespace acka {

enum class ReportFormat : std::uint8_t { Lines, Csv };

/// Resolved batch front-end configuration. Every flag can also be set in a
/// flat `key = value` config file; flags override file values. The seed is
/// mandatory for simulation commands: there is no wall-clock default.
struct CliConfig {
  std::string command;  // run | anonymity | oracle-suite
  int n = 0;
  int m = 0;
  int alice = 0;
  std::vector<int> bobs;
  long l_states = 1;
  int d_param = 1;
  std::optional<std::uint64_t> seed;
  long runs = 1;
  int jobs = 1;
  int max_qubits = kDefaultMaxQubits;
  std::string output_path;
  ReportFormat format = ReportFormat::Lines;
  std::string transcript_path;
  bool exact = false;
  long runs_per_partition = 10000;

  std::string eve_spec;        // e.g. "honest-np:2" or "colluders:2,3"
  std::string adversary_spec;  // e.g. "source=eq2-orthogonal,skip=3:random"
  bool leaky_variant = false;  // harness sensitivity switch

  AckaConfig to_acka_config() const;
  EveType eve_type() const;
  std::vector<int> eve_parties() const;
};

/// Flat key = value file, '#' comments, dotted adversary keys.
std::map<std::string, std::string> parse_config_file(const std::string& path);

/// Applies file values underneath already-set flags (flags win).
void apply_config_entries(CliConfig& config, const std::map<std::string, std::string>& entries,
                          const std::map<std::string, bool>& flag_was_set);

/// Parses "source=...,skip=id:policy,pre=GATE@id,colluders=i|j" into a spec.
AdversarySpec parse_adversary_spec(const std::string& text);

std::vector<int> parse_id_list(const std::string& text, char separator = ',');

/// Writes via a temp file in the target directory, then renames.
void atomic_write_file(const std::string& path, const std::string& content);

}  // namespace acka
