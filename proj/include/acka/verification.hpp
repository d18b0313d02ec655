#pragma once

#include <cstdint>
#include <map>
#include <utility>
#include <vector>

#include "acka/net.hpp"
#include "acka/partition.hpp"
#include "acka/qsim.hpp"
#include "acka/rng.hpp"

namespace acka {

struct VerificationRound {
  /// Participants' final basis bits (0 = X, 1 = Y); Alice's entry holds her
  /// reset value, not the decoy she announced.
  std::map<int, std::uint8_t> basis_bits;
  /// Participants' true measurement outcomes; Alice's is never broadcast.
  std::map<int, std::uint8_t> outcomes;
  /// Non-participants' announced masking pairs.
  std::map<int, std::pair<std::uint8_t, std::uint8_t>> masking_bits;
  /// The random pair Alice broadcast before measuring.
  std::pair<std::uint8_t, std::uint8_t> alice_announced{0, 0};
  /// Wire order of the announcement round.
  std::vector<std::pair<int, std::vector<std::uint8_t>>> announce_order;
  std::uint8_t accepted = 0;
};

/// Complementary X/Y stabilizer check run by Alice over the participants'
/// qubits. Receivers measure first and announce their true (basis, outcome)
/// pair; Alice and all non-participants announce random pairs in the same
/// shuffled round; Alice then resets her basis bit so the participant basis
/// sum is even, measures, and evaluates the parity predicate over the
/// participants' values only.
VerificationRound run_verification(StateVector& state, const Partition& partition, Network& net,
                                   RngStream& rng, int round = 0);

/// 1 iff (sum(b)/2 + sum(o)) is even; sum(b) must be even.
std::uint8_t acceptance_predicate(const std::vector<std::uint8_t>& basis_bits,
                                  const std::vector<std::uint8_t>& outcome_bits);

}  // namespace acka
