#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace qlb::harness {

enum class ScenarioKind : uint8_t {
  Consensus,     // list distribution -> classification -> round -> commit
  Distributor,   // same pipeline, distributor classification in focus
  Bribery,       // forger with a leaked fraction of the composed list
  ForgeryCurve,  // index-forgery Monte Carlo across list lengths
  Qbc,           // commitment sessions with punishment bonds
};

const char* to_string(ScenarioKind kind);
std::optional<ScenarioKind> scenario_kind_from_string(const std::string& name);

struct ScenarioConfig {
  std::string name = "unnamed";
  ScenarioKind kind = ScenarioKind::Consensus;
  uint64_t seed = 1;
  uint64_t batch = 1;

  // Roles.
  size_t receivers = 5;     // consensus receivers; they hold the replicas
  size_t distributors = 2;
  size_t miners = 4;        // commit quorum for the qbc scenarios

  // Parameters.
  size_t list_length = 60;  // positions per distributor list, multiple of 6
  double theta = 0.3;       // distributor-classification report threshold
  size_t digest_bits = 128;
  int64_t reward = 1;
  size_t qbc_qubits = 40;       // multiple of 4
  size_t qbc_sequences = 5;
  size_t qbc_min_relevant = 0;  // 0 derives qubits/8
  bool quantum_bond_atoms = false;
  size_t bond_deposit_group = 4;
  std::string certificate_mode = "designated";  // or "per-miner"

  // Adversaries.
  std::string sender_strategy = "honest";
  size_t tamper_count = 0;
  std::string tamper_strategy = "tamper-forge";
  std::vector<std::string> distributor_strategies;  // defaults to honest
  std::string alice_strategy = "honest";
  std::string bob_strategy = "honest";
  double bribery_fraction = 0.0;

  // Forgery curve.
  std::vector<size_t> curve_lengths = {30, 60, 90};
  uint64_t curve_attempts = 100000;

  int commit_value = -1;  // -1 cycles 0..3 over the batch
};

struct ConfigIssue {
  std::string path;     // e.g. "params.list_length"
  std::string message;  // names the module rule that was violated
};

struct LoadResult {
  std::optional<ScenarioConfig> config;  // set iff no parse error and no issues
  std::vector<ConfigIssue> issues;
  std::string parse_error;  // non-empty on malformed input, with line:column
  bool ok() const { return config.has_value(); }
};

LoadResult load_config_text(const std::string& text);
LoadResult load_config_file(const std::string& path);

/// Canonical JSON with sorted keys; load(serialize(c)) == c.
std::string serialize_config(const ScenarioConfig& config);

/// Every constraint check, shared by load and by direct construction.
std::vector<ConfigIssue> validate_config(const ScenarioConfig& config);

}  // namespace qlb::harness
