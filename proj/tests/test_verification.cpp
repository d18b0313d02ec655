#include <doctest.h>

#include <cmath>

#include "acka/adversary.hpp"
#include "acka/ame.hpp"
#include "acka/oracles.hpp"
#include "acka/stats.hpp"
#include "acka/verification.hpp"
#include "test_util.hpp"

using namespace acka;
using acka::testutil::states_equal;

TEST_CASE("acceptance predicate arithmetic") {
  CHECK(acceptance_predicate({0, 0}, {0, 0}) == 1);
  CHECK(acceptance_predicate({1, 1}, {0, 0}) == 0);
  CHECK(acceptance_predicate({1, 1, 1, 1}, {0, 1, 0, 0}) == 0);
  CHECK(acceptance_predicate({1, 1, 1, 1}, {0, 1, 1, 0}) == 1);
  CHECK_THROWS_AS(acceptance_predicate({1, 0}, {0, 0}), ContractViolation);
}

TEST_CASE("a perfect shared state always passes (exhaustive oracle)") {
  for (int parties = 2; parties <= 6; ++parties) {
    std::vector<int> bobs;
    for (int id = 1; id < parties; ++id) bobs.push_back(id);
    const Partition partition(parties, 0, bobs);
    const double p =
        oracle::verification_acceptance_probability(prepare_ghz(parties), partition);
    CHECK(p == doctest::Approx(1.0).epsilon(1e-12));
  }
}

TEST_CASE("a perfect shared state always passes (simulated)") {
  const Partition partition(4, 0, {1, 2, 3});
  for (long r = 0; r < 2000; ++r) {
    StateVector state = prepare_ghz(4);
    Network net(4);
    RngStream rng = RngStream::for_run(2, static_cast<std::uint64_t>(r));
    const VerificationRound round = run_verification(state, partition, net, rng);
    CHECK(round.accepted == 1);
  }
}

TEST_CASE("a classical register passes exactly half the time") {
  const Partition partition(3, 0, {1, 2});
  const StateVector classical = StateVector::zero_state(3);
  CHECK(oracle::verification_acceptance_probability(classical, partition) ==
        doctest::Approx(0.5).epsilon(1e-12));

  long accepted = 0;
  const long rounds = 10000;
  for (long r = 0; r < rounds; ++r) {
    StateVector state = StateVector::zero_state(3);
    Network net(3);
    RngStream rng = RngStream::for_run(3, static_cast<std::uint64_t>(r));
    accepted += run_verification(state, partition, net, rng).accepted;
  }
  CHECK(std::abs(static_cast<double>(accepted) - rounds * 0.5) <
        4.0 * binomial_sigma(rounds, 0.5));
}

TEST_CASE("orthogonal injected legs pass exactly half the time") {
  const Partition partition(4, 0, {1}, {3});
  AdversarySpec spec;
  spec.source_mode = SourceMode::Eq2Injection;
  spec.psi = StateVector::basis_state(1, 0);
  spec.phi = StateVector::basis_state(1, 1);
  spec.colluder_behavior[3] = {AmeBehavior::SkipAndAnnounce, AnnouncePolicy::UniformRandom};

  // Exact value from the projector oracle on the post-extraction state.
  std::vector<std::pair<int, int>> outcomes{{2, 0}};
  const StateVector tampered =
      oracle::ame_postmeasurement_oracle(partition, outcomes, spec.psi, spec.phi);
  CHECK(oracle::verification_acceptance_probability(tampered, partition) ==
        doctest::Approx(0.5).epsilon(1e-12));

  long accepted = 0;
  const long rounds = 10000;
  for (long r = 0; r < rounds; ++r) {
    StateVector state = emit_source_state(spec, partition);
    Network net(4);
    RngStream rng = RngStream::for_run(4, static_cast<std::uint64_t>(r));
    run_ame(state, partition, spec, net, rng);
    accepted += run_verification(state, partition, net, rng).accepted;
  }
  CHECK(std::abs(static_cast<double>(accepted) - rounds * 0.5) <
        4.0 * binomial_sigma(rounds, 0.5));
}

TEST_CASE("two participants on the shared pair accept") {
  const Partition partition(2, 0, {1});
  for (long r = 0; r < 500; ++r) {
    StateVector state = prepare_ghz(2);
    Network net(2);
    RngStream rng = RngStream::for_run(5, static_cast<std::uint64_t>(r));
    const VerificationRound round = run_verification(state, partition, net, rng);
    CHECK(round.accepted == 1);
    // With one receiver the participant basis sum forces Alice to mirror.
    CHECK(round.basis_bits.at(0) == round.basis_bits.at(1));
    if (round.basis_bits.at(1) == 0)
      CHECK(((round.outcomes.at(0) + round.outcomes.at(1)) % 2) == 0);
  }
}

TEST_CASE("phase bookkeeping through the check round") {
  // Post-check state on verifier + colluder: |0>|psi> + gamma |1>|phi>, with
  // gamma = (-1)^Delta * (-1)^(sum of outcomes) * (-i)^(number of Y bases).
  for (int m : {1, 2}) {
    const int n = m + 2;  // alice + bobs + one colluder
    std::vector<int> bobs;
    for (int b = 1; b <= m; ++b) bobs.push_back(b);
    const Partition partition(n, 0, bobs, {n - 1});

    for (int delta = 0; delta < 2; ++delta) {
      const StateVector zero_term = oracle::product_state(
          n, {oracle::Factor{{0}, {Complex(1, 0), Complex(0, 0)}},
              oracle::Factor{bobs, StateVector::basis_state(m, 0).amplitudes()},
              oracle::Factor{{n - 1}, {Complex(1, 0), Complex(0, 0)}}});
      const StateVector one_term = oracle::product_state(
          n, {oracle::Factor{{0}, {Complex(0, 0), Complex(1, 0)}},
              oracle::Factor{bobs,
                             StateVector::basis_state(m, (std::uint64_t{1} << m) - 1).amplitudes()},
              oracle::Factor{{n - 1}, {Complex(0, 0), Complex(1, 0)}}});
      const StateVector input =
          oracle::superpose(zero_term, one_term, Complex(1, 0), Complex(delta ? -1.0 : 1.0, 0));

      for (std::uint64_t basis_bits = 0; basis_bits < (std::uint64_t{1} << m); ++basis_bits) {
        for (std::uint64_t outcome_bits = 0; outcome_bits < (std::uint64_t{1} << m);
             ++outcome_bits) {
          StateVector state = input;
          int y_count = 0, outcome_sum = 0;
          std::vector<oracle::Factor> measured;
          bool impossible = false;
          for (int k = 0; k < m && !impossible; ++k) {
            const int b = static_cast<int>((basis_bits >> k) & 1ull);
            const int o = static_cast<int>((outcome_bits >> k) & 1ull);
            y_count += b;
            outcome_sum += o;
            const double p = project(state, bobs[k], b == 0 ? Basis::X : Basis::Y, o);
            if (p <= 0.0) {
              impossible = true;
              break;
            }
            const auto ket = b == 0 ? oracle::x_eigenvector(o) : oracle::y_eigenvector(o);
            measured.push_back(oracle::Factor{{bobs[k]}, {ket[0], ket[1]}});
          }
          if (impossible) continue;

          Complex gamma(delta ? -1.0 : 1.0, 0);
          if (outcome_sum % 2) gamma *= -1.0;
          for (int y = 0; y < y_count; ++y) gamma *= Complex(0, -1);

          std::vector<oracle::Factor> zero_factors = measured;
          zero_factors.push_back(oracle::Factor{{0}, {Complex(1, 0), Complex(0, 0)}});
          zero_factors.push_back(oracle::Factor{{n - 1}, {Complex(1, 0), Complex(0, 0)}});
          std::vector<oracle::Factor> one_factors = measured;
          one_factors.push_back(oracle::Factor{{0}, {Complex(0, 0), Complex(1, 0)}});
          one_factors.push_back(oracle::Factor{{n - 1}, {Complex(0, 0), Complex(1, 0)}});

          const StateVector expected =
              oracle::superpose(oracle::product_state(n, zero_factors),
                                oracle::product_state(n, one_factors), Complex(1, 0), gamma);
          CHECK(states_equal(state, expected, 1e-12));
        }
      }
    }
  }
}

TEST_CASE("announced decoys are independent of the verifier's actual values") {
  const Partition partition(3, 0, {1});
  bool decoy_differs_from_final = false;
  for (long r = 0; r < 200; ++r) {
    StateVector state = prepare_ghz(3);
    Network net(3);
    RngStream rng = RngStream::for_run(6, static_cast<std::uint64_t>(r));
    const VerificationRound round = run_verification(state, partition, net, rng);

    // The wire carries the decoy pair, never the reset values.
    std::vector<std::uint8_t> alice_wire_bits;
    for (const Event& e : net.transcript().events)
      if (e.kind == ChannelKind::Broadcast && e.sender == 0)
        alice_wire_bits.push_back(static_cast<std::uint8_t>(e.bit));
    REQUIRE(alice_wire_bits.size() == 2);
    CHECK(alice_wire_bits[0] == round.alice_announced.first);
    CHECK(alice_wire_bits[1] == round.alice_announced.second);

    CHECK(round.basis_bits.at(0) == round.basis_bits.at(1));  // reset rule, m = 1
    if (round.alice_announced.first != round.basis_bits.at(0) ||
        round.alice_announced.second != round.outcomes.at(0))
      decoy_differs_from_final = true;
  }
  CHECK(decoy_differs_from_final);
}

TEST_CASE("every party announces one pair per check round") {
  const Partition partition(5, 0, {2, 4});
  StateVector state = prepare_ghz(5);
  Network net(5);
  RngStream rng(64);
  const VerificationRound round = run_verification(state, partition, net, rng);
  CHECK(round.announce_order.size() == 5);
  for (const auto& [id, payload] : round.announce_order) CHECK(payload.size() == 2);
  CHECK(round.masking_bits.size() == 2);  // the two outsiders
}
