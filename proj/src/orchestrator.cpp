#include "acka/orchestrator.hpp"

#include <algorithm>

namespace acka {

Partition AckaConfig::partition() const {
  std::vector<int> receivers = bobs;
  if (receivers.empty() && m > 0) {
    for (int id = 1; id <= m; ++id) receivers.push_back(id);
  }
  if (static_cast<int>(receivers.size()) != m)
    throw ConfigError("config: receiver list does not match m");
  std::vector<int> colluders;
  for (const auto& [id, behavior] : adversary.colluder_behavior) {
    (void)behavior;
    colluders.push_back(id);
  }
  if (adversary.eve_type == EveType::ColluderSet) {
    for (int id : adversary.eve_parties)
      if (std::find(colluders.begin(), colluders.end(), id) == colluders.end())
        colluders.push_back(id);
  }
  return Partition(n, alice, std::move(receivers), std::move(colluders));
}

RunOutcome run_acka(const AckaConfig& config, std::uint64_t run_index,
                    Transcript* transcript_out) {
  if (config.l_states < 1) throw ConfigError("config: need at least one shared state");
  if (config.d_param < 1) throw ConfigError("config: d parameter must be >= 1");
  const Partition partition = config.partition();
  if (partition.n() > config.max_qubits)
    throw CapacityError("config: network larger than the qubit budget");
  validate_adversary(config.adversary, partition);

  RunOutcome outcome;
  outcome.l_states = config.l_states;
  Network net(config.n);
  RngStream rng = RngStream::for_run(config.seed, run_index);

  std::map<int, std::vector<std::uint8_t>> keys;
  for (int id : partition.participants()) keys[id] = {};

  try {
    run_notification(partition, net, rng);

    for (long round = 0; round < config.l_states; ++round) {
      StateVector state = emit_source_state(config.adversary, partition, config.max_qubits);
      apply_colluder_actions(state, config.adversary, partition);
      run_ame(state, partition, config.adversary, net, rng, static_cast<int>(round),
              config.ame_variant);

      net.set_context(Phase::Beacon, static_cast<int>(round));
      const int beacon = net.beacon_bit(config.d_param, rng);
      if (beacon == 0) {
        const VerificationRound check =
            run_verification(state, partition, net, rng, static_cast<int>(round));
        ++outcome.verification_rounds;
        if (!check.accepted) ++outcome.verification_failures;
      } else {
        const std::map<int, std::uint8_t> bits = keygen_round(state, partition, rng);
        ++outcome.keygen_rounds;
        for (const auto& [id, bit] : bits) keys[id].push_back(bit);
      }
    }

    outcome.alice_validates =
        outcome.verification_failures <= config.verification_failure_threshold;
    outcome.key_bits = std::move(keys);
  } catch (const ProtocolAbort&) {
    outcome.aborted = true;
    outcome.alice_validates = false;
    outcome.discarded_key_bits = std::move(keys);
  }

  net.set_context(Phase::Validate, static_cast<int>(config.l_states));
  net.beacon_publish(outcome.aborted ? 0 : (outcome.alice_validates ? 1 : 0));

  if (transcript_out != nullptr) *transcript_out = std::move(net.transcript());
  return outcome;
}

std::map<int, std::uint8_t> keygen_round(StateVector& state, const Partition& partition,
                                         RngStream& rng) {
  std::map<int, std::uint8_t> bits;
  for (int id : partition.participants())
    bits[id] = measure(state, id, Basis::Z, rng).outcome;
  return bits;
}

double key_rate(const RunOutcome& outcome) {
  if (outcome.aborted) throw ContractViolation("key rate undefined for an aborted run");
  if (outcome.l_states < 1) throw ContractViolation("key rate: no rounds recorded");
  return static_cast<double>(outcome.keygen_rounds) / static_cast<double>(outcome.l_states);
}

}  // namespace acka
