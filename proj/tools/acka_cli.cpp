#include <atomic>
#include <cmath>
#include <cstdio>
#include <iostream>
#include <mutex>
#include <sstream>
#include <thread>

#include <CLI11.hpp>

#include "acka/anonymity.hpp"
#include "acka/cli_config.hpp"
#include "acka/oracles.hpp"
#include "acka/orchestrator.hpp"

namespace {

using namespace acka;

std::string format_key(const RunOutcome& outcome, const Partition& partition) {
  if (outcome.aborted) return "-";
  const auto it = outcome.key_bits.find(partition.alice());
  if (it == outcome.key_bits.end() || it->second.empty()) return "-";
  std::string bits;
  for (std::uint8_t b : it->second) bits.push_back(b ? '1' : '0');
  return bits;
}

bool keys_agree(const RunOutcome& outcome) {
  const std::vector<std::uint8_t>* first = nullptr;
  for (const auto& [id, bits] : outcome.key_bits) {
    if (first == nullptr)
      first = &bits;
    else if (bits != *first)
      return false;
  }
  return true;
}

std::string format_run_record(const CliConfig& cli, const AckaConfig& config,
                              const Partition& partition, long run_index,
                              const RunOutcome& outcome) {
  char rate[32];
  if (outcome.aborted)
    std::snprintf(rate, sizeof rate, "-");
  else
    std::snprintf(rate, sizeof rate, "%.6f", key_rate(outcome));

  std::ostringstream line;
  if (cli.format == ReportFormat::Csv) {
    line << run_index << ',' << config.n << ',' << config.m << ',' << config.d_param << ','
         << config.l_states << ',' << config.seed << ',' << (outcome.aborted ? 1 : 0) << ','
         << (outcome.alice_validates ? 1 : 0) << ',' << outcome.verification_rounds << ','
         << outcome.verification_failures << ',' << outcome.keygen_rounds << ',' << rate << ','
         << (keys_agree(outcome) ? 1 : 0) << ',' << format_key(outcome, partition);
  } else {
    line << "run=" << run_index << " n=" << config.n << " m=" << config.m
         << " d=" << config.d_param << " l=" << config.l_states << " seed=" << config.seed
         << " aborted=" << (outcome.aborted ? 1 : 0)
         << " validated=" << (outcome.alice_validates ? 1 : 0)
         << " ver_rounds=" << outcome.verification_rounds
         << " ver_failures=" << outcome.verification_failures
         << " keygen_rounds=" << outcome.keygen_rounds << " key_rate=" << rate
         << " keys_agree=" << (keys_agree(outcome) ? 1 : 0)
         << " key=" << format_key(outcome, partition);
  }
  return line.str();
}

void emit(const CliConfig& cli, const std::string& content) {
  if (cli.output_path.empty())
    std::cout << content;
  else
    atomic_write_file(cli.output_path, content);
}

int command_run(const CliConfig& cli) {
  const AckaConfig config = cli.to_acka_config();
  const Partition partition = config.partition();
  if (cli.runs < 1) throw ConfigError("runs must be >= 1");

  std::vector<std::string> lines(static_cast<std::size_t>(cli.runs));
  std::string transcript_text;

  const int jobs = std::max(1, cli.jobs);
  std::atomic<long> next{0};
  std::atomic<bool> failed{false};
  std::string error_message;
  std::mutex error_mutex;

  auto worker = [&]() {
    for (;;) {
      const long k = next.fetch_add(1);
      if (k >= cli.runs || failed.load()) return;
      try {
        Transcript transcript;
        Transcript* capture = (k == 0 && !cli.transcript_path.empty()) ? &transcript : nullptr;
        const RunOutcome outcome =
            run_acka(config, static_cast<std::uint64_t>(k), capture);
        lines[static_cast<std::size_t>(k)] =
            format_run_record(cli, config, partition, k, outcome);
        if (capture != nullptr) transcript_text = transcript.to_text();
      } catch (const std::exception& e) {
        std::lock_guard<std::mutex> lock(error_mutex);
        error_message = e.what();
        failed.store(true);
        return;
      }
    }
  };

  if (jobs == 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    for (int j = 0; j < jobs; ++j) pool.emplace_back(worker);
    for (std::thread& t : pool) t.join();
  }
  if (failed.load()) throw Error(error_message);

  std::ostringstream out;
  if (cli.format == ReportFormat::Csv)
    out << "run,n,m,d,l,seed,aborted,validated,ver_rounds,ver_failures,keygen_rounds,key_rate,"
           "keys_agree,key\n";
  for (const std::string& line : lines) out << line << '\n';
  emit(cli, out.str());

  if (!cli.transcript_path.empty()) atomic_write_file(cli.transcript_path, transcript_text);
  return 0;
}

AdversaryCase scenario_from_spec(const AdversarySpec& spec) {
  if (spec.source_mode == SourceMode::Eq2Injection) return AdversaryCase::Eq2Orthogonal;
  for (const auto& [id, behavior] : spec.colluder_behavior) {
    (void)id;
    if (behavior.behavior == AmeBehavior::SkipAndAnnounce) return AdversaryCase::ColluderSkipUniform;
  }
  return AdversaryCase::Honest;
}

int command_anonymity(const CliConfig& cli) {
  if (cli.eve_spec.empty()) throw ConfigError("anonymity needs --eve <type:id[,id...]>");
  const EveType type = cli.eve_type();
  const std::vector<int> parties = cli.eve_parties();

  if (cli.exact) {
    CliConfig probe = cli;
    if (!probe.seed.has_value()) probe.seed = 0;  // exact mode draws nothing
    const AckaConfig config = probe.to_acka_config();
    const AdversaryCase scenario = scenario_from_spec(config.adversary);
    const ExactCaseResult result = run_exact_case(cli.n, cli.m, type, parties, scenario);

    std::ostringstream out;
    out << "anonymity-report\n";
    out << "mode = exact\n";
    out << "case = " << result.label() << "\n";
    out << "partitions = " << result.partitions << "\n";
    if (result.no_contrast) {
      out << "result = NO-CONTRAST\n";
    } else {
      out << "max-prob-diff = " << result.max_prob_diff << "\n";
      out << "max-state-distance = " << result.max_state_distance << "\n";
      out << "max-notification-diff = " << result.max_notification_diff << "\n";
      out << "result = " << (result.pass ? "PASS" : "FAIL") << "\n";
    }
    emit(cli, out.str());
    return result.pass || result.no_contrast ? 0 : 3;
  }

  AnonymityExperiment experiment;
  experiment.base = cli.to_acka_config();
  experiment.eve_type = type;
  experiment.eve_parties = parties;
  const int colluder_count = type == EveType::ColluderSet
                                 ? static_cast<int>(parties.size())
                                 : static_cast<int>(experiment.base.partition().colluders().size());
  experiment.ensemble = consistent_partitions(cli.n, cli.m, type, parties, colluder_count, 4);
  experiment.runs_per_partition = cli.runs_per_partition;

  const AnonymityReport report = run_experiment(experiment);
  emit(cli, report.to_text());
  return report.pass || report.no_contrast ? 0 : 3;
}

int command_oracle_suite(const CliConfig& cli) {
  const std::vector<oracle::OracleCheck> checks = oracle::run_oracle_suite();
  std::ostringstream out;
  bool all_pass = true;
  for (const auto& check : checks) {
    out << (check.pass ? "[PASS] " : "[FAIL] ") << check.name << " observed=" << check.observed
        << " expected=" << check.expected << '\n';
    all_pass = all_pass && check.pass;
  }
  emit(cli, out.str());
  return all_pass ? 0 : 3;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Anonymous conference key agreement simulator"};
  app.require_subcommand(1);

  CliConfig cli;
  std::string config_path;

  auto add_common = [&](CLI::App* cmd) {
    cmd->add_option("--config", config_path, "flat key = value config file");
    cmd->add_option("--n", cli.n, "network size");
    cmd->add_option("--m", cli.m, "number of receivers");
    cmd->add_option("--alice", cli.alice, "initiator id (default 0)");
    cmd->add_option("--bobs", [&cli](const std::vector<std::string>& v) {
      cli.bobs = parse_id_list(v.back());
      return true;
    }, "receiver ids, comma separated")->type_name("IDS");
    cmd->add_option("--l-states", cli.l_states, "shared states per run");
    cmd->add_option("--d-param", cli.d_param, "beacon parameter (Pr[key round] = 1/D)");
    cmd->add_option("--seed", [&cli](const std::vector<std::string>& v) {
      cli.seed = std::stoull(v.back());
      return true;
    }, "64-bit master seed (required)")->type_name("UINT");
    cmd->add_option("--runs", cli.runs, "independent runs");
    cmd->add_option("--jobs", cli.jobs, "concurrent simulations");
    cmd->add_option("--max-qubits", cli.max_qubits, "dense-state budget");
    cmd->add_option("--adversary", cli.adversary_spec,
                    "key=val list: source=honest|eq2-orthogonal|eq2-equal, "
                    "skip=id:0|1|random|silent, pre=GATE@id, colluders=id|id");
    cmd->add_option("--eve", cli.eve_spec, "observer: bob:ID | honest-np:ID | colluders:ID[,ID]");
    cmd->add_option("--output", cli.output_path, "output path (atomic write)");
    cmd->add_option("--format", [&cli](const std::vector<std::string>& v) {
      if (v.back() == "lines") cli.format = ReportFormat::Lines;
      else if (v.back() == "csv") cli.format = ReportFormat::Csv;
      else throw CLI::ValidationError("--format", "want lines|csv");
      return true;
    }, "lines | csv")->type_name("FMT");
    cmd->add_option("--transcript", cli.transcript_path, "write run 0's transcript here");
  };

  CLI::App* run_cmd = app.add_subcommand("run", "simulate key-agreement runs");
  add_common(run_cmd);

  CLI::App* anon_cmd = app.add_subcommand("anonymity", "test view independence from the partition");
  add_common(anon_cmd);
  anon_cmd->add_flag("--exact", cli.exact, "full branch enumeration instead of sampling");
  anon_cmd->add_option("--runs-per-partition", cli.runs_per_partition,
                       "sampled runs per candidate partition");
  anon_cmd->add_flag("--broken", cli.leaky_variant,
                     "run the deliberately leaky announcement variant");

  CLI::App* oracle_cmd = app.add_subcommand("oracle-suite", "run the enumeration oracles");
  oracle_cmd->add_option("--output", cli.output_path, "output path (atomic write)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  try {
    CLI::App* active = app.get_subcommands().front();
    if (!config_path.empty()) {
      std::map<std::string, bool> flag_was_set;
      for (const auto* option : active->get_options()) {
        std::string name = option->get_name();
        if (name.rfind("--", 0) == 0) name = name.substr(2);
        flag_was_set[name] = option->count() > 0;
      }
      apply_config_entries(cli, parse_config_file(config_path), flag_was_set);
    }

    cli.command = active->get_name();
    if (cli.command == "run") return command_run(cli);
    if (cli.command == "anonymity") return command_anonymity(cli);
    return command_oracle_suite(cli);
  } catch (const ConfigError& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return 2;
  } catch (const CapacityError& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  }
}
