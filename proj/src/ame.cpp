#include "acka/ame.hpp"

#include <algorithm>

namespace acka {

namespace {

std::uint8_t policy_bit(AnnouncePolicy policy, RngStream& rng, bool& silent) {
  switch (policy) {
    case AnnouncePolicy::Constant0: return 0;
    case AnnouncePolicy::Constant1: return 1;
    case AnnouncePolicy::UniformRandom: return rng.uniform_bit();
    case AnnouncePolicy::Silent: silent = true; return 0;
  }
  return 0;
}

}  // namespace

AmeRoundResult run_ame(StateVector& state, const Partition& partition,
                       const AdversarySpec& adversary, Network& net, RngStream& rng, int round,
                       AmeVariant variant) {
  const int n = partition.n();
  if (state.n_qubits() != n) throw ShapeError("extraction: one qubit per party required");
  validate_adversary(adversary, partition);
  net.set_context(Phase::Ame, round);

  AmeRoundResult result;
  std::vector<Announcement> announcements;
  announcements.reserve(static_cast<std::size_t>(n));

  for (int id = 0; id < n; ++id) {
    std::uint8_t bit = 0;
    bool silent = false;
    if (partition.is_participant(id)) {
      bit = rng.uniform_bit();
    } else if (partition.is_colluder(id) &&
               adversary.behavior_for(id).behavior == AmeBehavior::SkipAndAnnounce) {
      bit = policy_bit(adversary.behavior_for(id).policy, rng, silent);
    } else {
      const MeasurementRecord record = measure(state, id, Basis::X, rng);
      result.measurements.push_back(record);
      bit = record.outcome;
    }

    std::vector<std::uint8_t> payload{bit};
    if (variant == AmeVariant::LeakyDoubleAnnounce)
      payload.push_back(partition.is_participant(id) ? bit : rng.uniform_bit());
    if (silent)
      announcements.push_back(Announcement{id, std::nullopt});
    else
      announcements.push_back(Announcement{id, std::move(payload)});
  }

  result.announced = net.broadcast_round(announcements, rng);

  result.correction_applied =
      static_cast<std::uint8_t>(parity_correction(result.announced, partition.nonparticipants()));
  if (result.correction_applied) apply_gate(state, partition.alice(), Gate::Z);
  return result;
}

int parity_correction(const std::vector<std::pair<int, std::vector<std::uint8_t>>>& announced,
                      const std::vector<int>& nonparticipant_ids) {
  int parity = 0;
  for (int id : nonparticipant_ids) {
    auto it = std::find_if(announced.begin(), announced.end(),
                           [id](const auto& entry) { return entry.first == id; });
    if (it == announced.end() || it->second.empty())
      throw ContractViolation("correction: non-participant " + std::to_string(id) +
                              " has no announced bit");
    parity ^= it->second.front() & 1;
  }
  return parity;
}

}  // namespace acka
