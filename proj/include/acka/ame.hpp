#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include "acka/adversary.hpp"
#include "acka/net.hpp"
#include "acka/partition.hpp"
#include "acka/qsim.hpp"
#include "acka/rng.hpp"

namespace acka {

/// LeakyDoubleAnnounce is a deliberately broken announcement rule used only
/// to prove the anonymity harness can detect a leak: participants repeat
/// their decoy bit while everyone else pads with a fresh random bit.
enum class AmeVariant : std::uint8_t { Standard, LeakyDoubleAnnounce };

struct AmeRoundResult {
  std::vector<std::pair<int, std::vector<std::uint8_t>>> announced;  // wire order
  std::uint8_t correction_applied = 0;
  std::vector<MeasurementRecord> measurements;  // honest non-participant records
};

/// One extraction round: participants draw decoy bits, non-participants
/// X-measure their leg (colluders may skip and announce per their policy),
/// everything is broadcast in shuffled order, and Alice flips the phase of
/// her own qubit when the non-participants' announced parity is odd.
/// Decoy draws and measurements consume the stream in ascending party order
/// before the broadcast shuffle.
AmeRoundResult run_ame(StateVector& state, const Partition& partition,
                       const AdversarySpec& adversary, Network& net, RngStream& rng,
                       int round = 0, AmeVariant variant = AmeVariant::Standard);

/// XOR of the announced bits of the given parties. Only Alice can apply this
/// filter: she alone knows which announcements came from non-participants.
int parity_correction(const std::vector<std::pair<int, std::vector<std::uint8_t>>>& announced,
                      const std::vector<int>& nonparticipant_ids);

}  // namespace acka
