#pragma once

#include <cstdint>
#include <map>
#include <vector>

#include "acka/adversary.hpp"
#include "acka/ame.hpp"
#include "acka/net.hpp"
#include "acka/notification.hpp"
#include "acka/partition.hpp"
#include "acka/verification.hpp"

namespace acka {

struct AckaConfig {
  int n = 0;
  int m = 0;
  int alice = 0;
  std::vector<int> bobs;  // empty -> {1..m}
  long l_states = 1;      // number of shared states
  int d_param = 1;        // Pr[key round] = 1/d_param
  std::uint64_t seed = 0;
  AdversarySpec adversary;
  int max_qubits = kDefaultMaxQubits;
  /// Alice validates when at most this many check rounds failed.
  int verification_failure_threshold = 0;
  AmeVariant ame_variant = AmeVariant::Standard;

  /// Resolves receiver defaults, validates, and returns the run partition.
  Partition partition() const;
};

struct RunOutcome {
  std::map<int, std::vector<std::uint8_t>> key_bits;  // per participant id
  long verification_rounds = 0;
  long verification_failures = 0;
  long keygen_rounds = 0;
  bool aborted = false;
  bool alice_validates = false;
  long l_states = 0;
  /// Key material generated before an abort; kept out of key_bits.
  std::map<int, std::vector<std::uint8_t>> discarded_key_bits;
};

/// Full run: one notification pass, then l_states rounds of share-extract-
/// branch. The public beacon picks check rounds vs key rounds; at the end
/// Alice publishes her accept/abort decision through the beacon so that no
/// sender is attributed. The per-run stream is derived from (seed, run_index).
RunOutcome run_acka(const AckaConfig& config, std::uint64_t run_index = 0,
                    Transcript* transcript_out = nullptr);

/// Participants Z-measure their legs; no communication happens.
std::map<int, std::uint8_t> keygen_round(StateVector& state, const Partition& partition,
                                         RngStream& rng);

/// Fraction of rounds that produced key bits.
double key_rate(const RunOutcome& outcome);

}  // namespace acka
