#include "acka/cli_config.hpp"

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <sstream>

namespace acka {

namespace {

std::string trim(const std::string& s) {
  const auto begin = s.find_first_not_of(" \t\r\n");
  if (begin == std::string::npos) return "";
  const auto end = s.find_last_not_of(" \t\r\n");
  return s.substr(begin, end - begin + 1);
}

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::string current;
  std::istringstream in(s);
  while (std::getline(in, current, sep)) out.push_back(current);
  return out;
}

long parse_long(const std::string& key, const std::string& value) {
  try {
    std::size_t pos = 0;
    const long v = std::stol(value, &pos);
    if (pos != value.size()) throw std::invalid_argument(value);
    return v;
  } catch (const std::exception&) {
    throw ConfigError("bad integer for '" + key + "': " + value);
  }
}

std::uint64_t parse_u64(const std::string& key, const std::string& value) {
  try {
    std::size_t pos = 0;
    const std::uint64_t v = std::stoull(value, &pos);
    if (pos != value.size()) throw std::invalid_argument(value);
    return v;
  } catch (const std::exception&) {
    throw ConfigError("bad integer for '" + key + "': " + value);
  }
}

AnnouncePolicy parse_policy(const std::string& text) {
  if (text == "0") return AnnouncePolicy::Constant0;
  if (text == "1") return AnnouncePolicy::Constant1;
  if (text == "random") return AnnouncePolicy::UniformRandom;
  if (text == "silent") return AnnouncePolicy::Silent;
  throw ConfigError("unknown announce policy: " + text);
}

Gate parse_gate(const std::string& text) {
  if (text == "H") return Gate::H;
  if (text == "Z") return Gate::Z;
  if (text == "S") return Gate::S;
  if (text == "SDG") return Gate::Sdg;
  throw ConfigError("unknown gate: " + text);
}

AdversarySpec parse_adversary_text(const std::string& text,
                                   const std::vector<int>& extra_colluders) {
  AdversarySpec spec;
  std::string source = "honest";
  std::vector<int> colluders = extra_colluders;
  std::vector<std::pair<int, AnnouncePolicy>> skips;

  for (const std::string& raw : split(text, ',')) {
    const std::string entry = trim(raw);
    if (entry.empty()) continue;
    const auto eq = entry.find('=');
    if (eq == std::string::npos) throw ConfigError("adversary entry needs key=value: " + entry);
    const std::string key = trim(entry.substr(0, eq));
    const std::string value = trim(entry.substr(eq + 1));
    if (key == "source") {
      source = value;
    } else if (key == "colluders") {
      for (const std::string& id : split(value, '|'))
        colluders.push_back(static_cast<int>(parse_long("colluders", trim(id))));
    } else if (key == "skip") {
      for (const std::string& item : split(value, '|')) {
        const auto colon = item.find(':');
        if (colon == std::string::npos)
          throw ConfigError("skip entry needs id:policy: " + item);
        skips.emplace_back(static_cast<int>(parse_long("skip", trim(item.substr(0, colon)))),
                           parse_policy(trim(item.substr(colon + 1))));
      }
    } else if (key == "pre") {
      for (const std::string& item : split(value, '|')) {
        const auto at = item.find('@');
        if (at == std::string::npos) throw ConfigError("pre entry needs GATE@id: " + item);
        spec.pre_unitary.emplace_back(parse_gate(trim(item.substr(0, at))),
                                      static_cast<int>(parse_long("pre", trim(item.substr(at + 1)))));
      }
    } else {
      throw ConfigError("unknown adversary key: " + key);
    }
  }

  for (const auto& [id, policy] : skips) colluders.push_back(id);
  for (const auto& [gate, id] : spec.pre_unitary) {
    (void)gate;
    colluders.push_back(id);
  }
  std::sort(colluders.begin(), colluders.end());
  colluders.erase(std::unique(colluders.begin(), colluders.end()), colluders.end());
  for (int id : colluders) spec.colluder_behavior[id] = ColluderBehavior{};
  for (const auto& [id, policy] : skips)
    spec.colluder_behavior[id] = {AmeBehavior::SkipAndAnnounce, policy};

  const int c = static_cast<int>(colluders.size());
  if (source == "honest") {
    spec.source_mode = SourceMode::HonestGhz;
  } else if (source == "eq2-orthogonal") {
    if (c == 0) throw ConfigError("eq2-orthogonal source needs at least one colluder");
    spec.source_mode = SourceMode::Eq2Injection;
    spec.psi = StateVector::basis_state(c, 0);
    spec.phi = StateVector::basis_state(c, (std::uint64_t{1} << c) - 1);
  } else if (source == "eq2-equal") {
    if (c == 0) throw ConfigError("eq2-equal source needs at least one colluder");
    spec.source_mode = SourceMode::Eq2Injection;
    spec.psi = StateVector::basis_state(c, 0);
    spec.phi = StateVector::basis_state(c, 0);
  } else {
    throw ConfigError("unknown source mode: " + source);
  }
  return spec;
}

}  // namespace

AdversarySpec parse_adversary_spec(const std::string& text) {
  return parse_adversary_text(text, {});
}

std::vector<int> parse_id_list(const std::string& text, char separator) {
  std::vector<int> out;
  for (const std::string& item : split(text, separator)) {
    const std::string trimmed = trim(item);
    if (trimmed.empty()) continue;
    out.push_back(static_cast<int>(parse_long("id list", trimmed)));
  }
  return out;
}

EveType CliConfig::eve_type() const {
  const auto colon = eve_spec.find(':');
  const std::string name = colon == std::string::npos ? eve_spec : eve_spec.substr(0, colon);
  if (name == "bob") return EveType::ParticipantBob;
  if (name == "honest-np") return EveType::HonestNonparticipant;
  if (name == "colluders") return EveType::ColluderSet;
  throw ConfigError("unknown adversary type: '" + name + "' (want bob | honest-np | colluders)");
}

std::vector<int> CliConfig::eve_parties() const {
  const auto colon = eve_spec.find(':');
  if (colon == std::string::npos || colon + 1 >= eve_spec.size())
    throw ConfigError("adversary position missing (want type:id[,id...])");
  std::vector<int> ids = parse_id_list(eve_spec.substr(colon + 1));
  if (ids.empty()) throw ConfigError("adversary position missing (want type:id[,id...])");
  std::sort(ids.begin(), ids.end());
  return ids;
}

AckaConfig CliConfig::to_acka_config() const {
  AckaConfig config;
  config.n = n;
  config.m = m;
  config.alice = alice;
  config.bobs = bobs;
  config.l_states = l_states;
  config.d_param = d_param;
  if (!seed.has_value()) throw ConfigError("a seed is required; there is no wall-clock default");
  config.seed = *seed;
  config.max_qubits = max_qubits;
  config.ame_variant = leaky_variant ? AmeVariant::LeakyDoubleAnnounce : AmeVariant::Standard;

  std::vector<int> extra_colluders;
  if (!eve_spec.empty() && eve_type() == EveType::ColluderSet) extra_colluders = eve_parties();
  config.adversary = parse_adversary_text(adversary_spec, extra_colluders);
  if (!eve_spec.empty()) {
    config.adversary.eve_type = eve_type();
    config.adversary.eve_parties = eve_parties();
  }
  return config;
}

std::map<std::string, std::string> parse_config_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot read config file: " + path);
  std::map<std::string, std::string> entries;
  std::string line;
  while (std::getline(in, line)) {
    const auto hash = line.find('#');
    if (hash != std::string::npos) line = line.substr(0, hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos) throw ConfigError("config line needs key = value: " + line);
    const std::string key = trim(line.substr(0, eq));
    const std::string value = trim(line.substr(eq + 1));
    if (key.empty()) throw ConfigError("config line needs key = value: " + line);
    entries[key] = value;
  }
  return entries;
}

void apply_config_entries(CliConfig& config, const std::map<std::string, std::string>& entries,
                          const std::map<std::string, bool>& flag_was_set) {
  auto flag_set = [&flag_was_set](const std::string& name) {
    auto it = flag_was_set.find(name);
    return it != flag_was_set.end() && it->second;
  };

  std::vector<std::string> adversary_parts;
  for (const auto& [key, value] : entries) {
    if (key == "n") {
      if (!flag_set("n")) config.n = static_cast<int>(parse_long(key, value));
    } else if (key == "m") {
      if (!flag_set("m")) config.m = static_cast<int>(parse_long(key, value));
    } else if (key == "alice") {
      if (!flag_set("alice")) config.alice = static_cast<int>(parse_long(key, value));
    } else if (key == "bobs") {
      if (!flag_set("bobs")) config.bobs = parse_id_list(value);
    } else if (key == "l-states") {
      if (!flag_set("l-states")) config.l_states = parse_long(key, value);
    } else if (key == "d-param") {
      if (!flag_set("d-param")) config.d_param = static_cast<int>(parse_long(key, value));
    } else if (key == "seed") {
      if (!flag_set("seed")) config.seed = parse_u64(key, value);
    } else if (key == "runs") {
      if (!flag_set("runs")) config.runs = parse_long(key, value);
    } else if (key == "jobs") {
      if (!flag_set("jobs")) config.jobs = static_cast<int>(parse_long(key, value));
    } else if (key == "max-qubits") {
      if (!flag_set("max-qubits")) config.max_qubits = static_cast<int>(parse_long(key, value));
    } else if (key == "output") {
      if (!flag_set("output")) config.output_path = value;
    } else if (key == "format") {
      if (!flag_set("format")) {
        if (value == "lines")
          config.format = ReportFormat::Lines;
        else if (value == "csv")
          config.format = ReportFormat::Csv;
        else
          throw ConfigError("unknown format: " + value);
      }
    } else if (key == "transcript") {
      if (!flag_set("transcript")) config.transcript_path = value;
    } else if (key == "exact") {
      if (!flag_set("exact")) config.exact = parse_long(key, value) != 0;
    } else if (key == "runs-per-partition") {
      if (!flag_set("runs-per-partition")) config.runs_per_partition = parse_long(key, value);
    } else if (key == "eve") {
      if (!flag_set("eve")) config.eve_spec = value;
    } else if (key == "broken-variant") {
      if (!flag_set("broken-variant")) config.leaky_variant = parse_long(key, value) != 0;
    } else if (key.rfind("adversary.", 0) == 0) {
      adversary_parts.push_back(key.substr(10) + "=" + value);
    } else {
      throw ConfigError("unknown config key: " + key);
    }
  }
  if (!adversary_parts.empty() && !flag_set("adversary")) {
    std::string joined;
    for (const std::string& part : adversary_parts) {
      if (!joined.empty()) joined += ',';
      joined += part;
    }
    config.adversary_spec = joined;
  }
}

void atomic_write_file(const std::string& path, const std::string& content) {
  const std::string temp = path + ".tmp";
  {
    std::ofstream out(temp, std::ios::binary | std::ios::trunc);
    if (!out) throw ConfigError("cannot write output file: " + temp);
    out << content;
    if (!out.good()) throw ConfigError("failed writing output file: " + temp);
  }
  if (std::rename(temp.c_str(), path.c_str()) != 0)
    throw ConfigError("failed to move output into place: " + path);
}

}  // namespace acka
