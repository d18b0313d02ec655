#include "acka/verification.hpp"

#include <numeric>

namespace acka {

VerificationRound run_verification(StateVector& state, const Partition& partition, Network& net,
                                   RngStream& rng, int round) {
  const int n = partition.n();
  if (state.n_qubits() != n) throw ShapeError("verification: one qubit per party required");
  net.set_context(Phase::Verification, round);

  VerificationRound result;

  // Step 1: every receiver draws a basis bit and measures its own qubit.
  for (int bob : partition.bobs()) {
    const std::uint8_t basis_bit = rng.uniform_bit();
    const MeasurementRecord record =
        measure(state, bob, basis_bit == 0 ? Basis::X : Basis::Y, rng);
    result.basis_bits[bob] = basis_bit;
    result.outcomes[bob] = record.outcome;
  }

  // Step 2: one shuffled round where receivers announce their true pair and
  // Alice plus all non-participants announce random pairs.
  std::vector<Announcement> announcements;
  announcements.reserve(static_cast<std::size_t>(n));
  result.alice_announced = {rng.uniform_bit(), rng.uniform_bit()};
  for (int id = 0; id < n; ++id) {
    if (id == partition.alice()) {
      announcements.push_back(
          Announcement{id, std::vector<std::uint8_t>{result.alice_announced.first,
                                                     result.alice_announced.second}});
    } else if (partition.is_participant(id)) {
      announcements.push_back(Announcement{
          id, std::vector<std::uint8_t>{result.basis_bits[id], result.outcomes[id]}});
    } else {
      const std::uint8_t mask_b = rng.uniform_bit();
      const std::uint8_t mask_o = rng.uniform_bit();
      result.masking_bits[id] = {mask_b, mask_o};
      announcements.push_back(Announcement{id, std::vector<std::uint8_t>{mask_b, mask_o}});
    }
  }
  result.announce_order = net.broadcast_round(announcements, rng);

  // Step 3: Alice resets her basis bit from the receivers' announced bits so
  // the participant basis sum is even, then measures.
  std::uint8_t reset_bit = 0;
  for (int bob : partition.bobs()) reset_bit ^= result.basis_bits[bob];
  const MeasurementRecord alice_record =
      measure(state, partition.alice(), reset_bit == 0 ? Basis::X : Basis::Y, rng);
  result.basis_bits[partition.alice()] = reset_bit;
  result.outcomes[partition.alice()] = alice_record.outcome;

  // Step 4: parity predicate over the participants' values.
  std::vector<std::uint8_t> b_bits, o_bits;
  for (const auto& [id, bit] : result.basis_bits) b_bits.push_back(bit);
  for (const auto& [id, bit] : result.outcomes) o_bits.push_back(bit);
  result.accepted = acceptance_predicate(b_bits, o_bits);
  return result;
}

std::uint8_t acceptance_predicate(const std::vector<std::uint8_t>& basis_bits,
                                  const std::vector<std::uint8_t>& outcome_bits) {
  const int basis_sum = std::accumulate(basis_bits.begin(), basis_bits.end(), 0);
  if (basis_sum % 2 != 0)
    throw ContractViolation("acceptance predicate: basis sum must be even");
  const int outcome_sum = std::accumulate(outcome_bits.begin(), outcome_bits.end(), 0);
  return (basis_sum / 2 + outcome_sum) % 2 == 0 ? 1 : 0;
}

}  // namespace acka
