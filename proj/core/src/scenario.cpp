#include "qlb/scenario.hpp"

#include <fstream>
#include <sstream>

#include <json.hpp>

#include "qlb/correlated_lists.hpp"

namespace qlb::harness {

using nlohmann::json;

const char* to_string(ScenarioKind kind) {
  switch (kind) {
    case ScenarioKind::Consensus: return "consensus";
    case ScenarioKind::Distributor: return "distributor";
    case ScenarioKind::Bribery: return "bribery";
    case ScenarioKind::ForgeryCurve: return "forgery-curve";
    case ScenarioKind::Qbc: return "qbc";
  }
  return "?";
}

std::optional<ScenarioKind> scenario_kind_from_string(const std::string& name) {
  for (ScenarioKind k : {ScenarioKind::Consensus, ScenarioKind::Distributor,
                         ScenarioKind::Bribery, ScenarioKind::ForgeryCurve,
                         ScenarioKind::Qbc})
    if (name == to_string(k)) return k;
  return std::nullopt;
}

std::vector<ConfigIssue> validate_config(const ScenarioConfig& c) {
  std::vector<ConfigIssue> issues;
  auto bad = [&](std::string path, std::string message) {
    issues.push_back({std::move(path), std::move(message)});
  };

  if (c.batch == 0) bad("batch", "batch must be at least 1");
  if (c.receivers < 2)
    bad("roles.receivers", "consensus needs at least 2 receivers");
  if (c.miners == 0) bad("roles.miners", "need at least one miner");
  if (c.kind != ScenarioKind::Qbc && c.distributors == 0)
    bad("roles.distributors", "need at least one list distributor");

  if (c.list_length == 0 || c.list_length % 6 != 0)
    bad("params.list_length", "m must be a multiple of 6");
  if (c.theta < 0.0 || c.theta > 0.5)
    bad("params.theta", "theta must lie in [0, 1/2]");
  if (c.digest_bits == 0) bad("params.digest_bits", "digest length must be positive");
  if (c.reward < 0) bad("params.reward", "reward cannot be negative");
  if (c.qbc_qubits == 0 || c.qbc_qubits % 4 != 0)
    bad("params.qbc_qubits", "sequence length must be a multiple of 4");
  if (c.qbc_sequences < 2)
    bad("params.qbc_sequences", "need at least 2 balanced-uniform sequences");
  if (c.certificate_mode != "designated" && c.certificate_mode != "per-miner")
    bad("params.certificate_mode", "must be 'designated' or 'per-miner'");
  if (c.bond_deposit_group == 0)
    bad("params.bond_deposit_group", "deposit group must be positive");

  if (c.sender_strategy != "honest" && c.sender_strategy != "double-spend" &&
      c.sender_strategy != "random-equivocate")
    bad("adversaries.sender", "unknown sender strategy '" + c.sender_strategy + "'");
  if (c.tamper_count > c.receivers)
    bad("adversaries.tamper_count", "more tampering receivers than receivers");
  if (c.tamper_strategy != "tamper-forge" && c.tamper_strategy != "silent-abort")
    bad("adversaries.tamper_strategy",
        "unknown receiver strategy '" + c.tamper_strategy + "'");
  for (size_t d = 0; d < c.distributor_strategies.size(); ++d)
    if (!lists::distributor_strategy_from_string(c.distributor_strategies[d]))
      bad("adversaries.distributors[" + std::to_string(d) + "]",
          "unknown distributor strategy '" + c.distributor_strategies[d] + "'");
  if (c.distributor_strategies.size() > c.distributors)
    bad("adversaries.distributors", "more strategies than distributors");
  if (c.alice_strategy != "honest" && c.alice_strategy != "wrong-cs" &&
      c.alice_strategy != "gate-mismatch")
    bad("adversaries.alice", "unknown alice strategy '" + c.alice_strategy + "'");
  if (c.bob_strategy != "honest" && c.bob_strategy != "sequence-skew")
    bad("adversaries.bob", "unknown bob strategy '" + c.bob_strategy + "'");
  if (c.bribery_fraction < 0.0 || c.bribery_fraction > 1.0)
    bad("adversaries.bribery_fraction", "fraction must lie in [0, 1]");

  if (c.curve_lengths.empty())
    bad("curve.lengths", "need at least one list length");
  for (size_t m : c.curve_lengths)
    if (m == 0 || m % 6 != 0)
      bad("curve.lengths", "m must be a multiple of 6");
  if (c.curve_attempts == 0) bad("curve.attempts", "need at least one attempt");
  if (c.commit_value < -1 || c.commit_value > 3)
    bad("params.commit_value", "commit value must be -1 (cycle) or 0..3");

  return issues;
}

namespace {

struct Reader {
  const json& root;
  std::vector<ConfigIssue>& issues;

  const json* section(const char* key) const {
    auto it = root.find(key);
    if (it == root.end()) return nullptr;
    if (!it->is_object()) {
      issues.push_back({key, "must be an object"});
      return nullptr;
    }
    return &*it;
  }
};

template <typename T>
void read_scalar(const json& obj, const char* key, const std::string& path, T& out,
                 std::vector<ConfigIssue>& issues) {
  auto it = obj.find(key);
  if (it == obj.end()) return;
  try {
    out = it->get<T>();
  } catch (const json::exception&) {
    issues.push_back({path, "has the wrong type"});
  }
}

}  // namespace

LoadResult load_config_text(const std::string& text) {
  LoadResult result;
  json root;
  try {
    root = json::parse(text);
  } catch (const json::parse_error& e) {
    // Convert the byte offset into line:column for the message.
    size_t line = 1, col = 1;
    for (size_t i = 0; i + 1 < e.byte && i < text.size(); ++i) {
      if (text[i] == '\n') {
        ++line;
        col = 1;
      } else {
        ++col;
      }
    }
    std::ostringstream os;
    os << "parse error at line " << line << ", column " << col << ": " << e.what();
    result.parse_error = os.str();
    return result;
  }
  if (!root.is_object()) {
    result.parse_error = "top level must be an object";
    return result;
  }

  ScenarioConfig c;
  Reader reader{root, result.issues};

  read_scalar(root, "name", "name", c.name, result.issues);
  std::string kind = to_string(c.kind);
  read_scalar(root, "kind", "kind", kind, result.issues);
  if (auto parsed = scenario_kind_from_string(kind))
    c.kind = *parsed;
  else
    result.issues.push_back({"kind", "unknown scenario kind '" + kind + "'"});
  read_scalar(root, "seed", "seed", c.seed, result.issues);
  read_scalar(root, "batch", "batch", c.batch, result.issues);

  if (const json* roles = reader.section("roles")) {
    read_scalar(*roles, "receivers", "roles.receivers", c.receivers, result.issues);
    read_scalar(*roles, "distributors", "roles.distributors", c.distributors,
                result.issues);
    read_scalar(*roles, "miners", "roles.miners", c.miners, result.issues);
  }
  if (const json* params = reader.section("params")) {
    read_scalar(*params, "list_length", "params.list_length", c.list_length,
                result.issues);
    read_scalar(*params, "theta", "params.theta", c.theta, result.issues);
    read_scalar(*params, "digest_bits", "params.digest_bits", c.digest_bits,
                result.issues);
    read_scalar(*params, "reward", "params.reward", c.reward, result.issues);
    read_scalar(*params, "qbc_qubits", "params.qbc_qubits", c.qbc_qubits,
                result.issues);
    read_scalar(*params, "qbc_sequences", "params.qbc_sequences", c.qbc_sequences,
                result.issues);
    read_scalar(*params, "qbc_min_relevant", "params.qbc_min_relevant",
                c.qbc_min_relevant, result.issues);
    read_scalar(*params, "quantum_bond_atoms", "params.quantum_bond_atoms",
                c.quantum_bond_atoms, result.issues);
    read_scalar(*params, "bond_deposit_group", "params.bond_deposit_group",
                c.bond_deposit_group, result.issues);
    read_scalar(*params, "certificate_mode", "params.certificate_mode",
                c.certificate_mode, result.issues);
    read_scalar(*params, "commit_value", "params.commit_value", c.commit_value,
                result.issues);
  }
  if (const json* adv = reader.section("adversaries")) {
    read_scalar(*adv, "sender", "adversaries.sender", c.sender_strategy,
                result.issues);
    read_scalar(*adv, "tamper_count", "adversaries.tamper_count", c.tamper_count,
                result.issues);
    read_scalar(*adv, "tamper_strategy", "adversaries.tamper_strategy",
                c.tamper_strategy, result.issues);
    read_scalar(*adv, "alice", "adversaries.alice", c.alice_strategy, result.issues);
    read_scalar(*adv, "bob", "adversaries.bob", c.bob_strategy, result.issues);
    read_scalar(*adv, "bribery_fraction", "adversaries.bribery_fraction",
                c.bribery_fraction, result.issues);
    auto it = adv->find("distributors");
    if (it != adv->end()) {
      if (!it->is_array()) {
        result.issues.push_back({"adversaries.distributors", "must be an array"});
      } else {
        c.distributor_strategies.clear();
        for (const auto& entry : *it)
          c.distributor_strategies.push_back(entry.is_string() ? entry.get<std::string>()
                                                               : "?");
      }
    }
  }
  if (const json* curve = reader.section("curve")) {
    auto it = curve->find("lengths");
    if (it != curve->end()) {
      if (!it->is_array()) {
        result.issues.push_back({"curve.lengths", "must be an array"});
      } else {
        c.curve_lengths.clear();
        for (const auto& entry : *it)
          c.curve_lengths.push_back(entry.is_number_unsigned() ? entry.get<size_t>() : 0);
      }
    }
    read_scalar(*curve, "attempts", "curve.attempts", c.curve_attempts, result.issues);
  }

  auto more = validate_config(c);
  result.issues.insert(result.issues.end(), more.begin(), more.end());
  if (result.issues.empty()) result.config = c;
  return result;
}

LoadResult load_config_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    LoadResult result;
    result.parse_error = "cannot open " + path;
    return result;
  }
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return load_config_text(buffer.str());
}

std::string serialize_config(const ScenarioConfig& c) {
  json root;
  root["name"] = c.name;
  root["kind"] = to_string(c.kind);
  root["seed"] = c.seed;
  root["batch"] = c.batch;
  root["roles"] = {{"receivers", c.receivers},
                   {"distributors", c.distributors},
                   {"miners", c.miners}};
  root["params"] = {{"list_length", c.list_length},
                    {"theta", c.theta},
                    {"digest_bits", c.digest_bits},
                    {"reward", c.reward},
                    {"qbc_qubits", c.qbc_qubits},
                    {"qbc_sequences", c.qbc_sequences},
                    {"qbc_min_relevant", c.qbc_min_relevant},
                    {"quantum_bond_atoms", c.quantum_bond_atoms},
                    {"bond_deposit_group", c.bond_deposit_group},
                    {"certificate_mode", c.certificate_mode},
                    {"commit_value", c.commit_value}};
  root["adversaries"] = {{"sender", c.sender_strategy},
                         {"tamper_count", c.tamper_count},
                         {"tamper_strategy", c.tamper_strategy},
                         {"distributors", c.distributor_strategies},
                         {"alice", c.alice_strategy},
                         {"bob", c.bob_strategy},
                         {"bribery_fraction", c.bribery_fraction}};
  root["curve"] = {{"lengths", c.curve_lengths}, {"attempts", c.curve_attempts}};
  return root.dump();
}

}  // namespace qlb::harness
