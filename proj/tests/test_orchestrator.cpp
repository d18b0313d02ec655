#include <doctest.h>

#include <cmath>
#include <map>

#include "acka/orchestrator.hpp"
#include "acka/stats.hpp"

using namespace acka;

namespace {

AckaConfig honest_config(int n, int m, long l, int d, std::uint64_t seed) {
  AckaConfig config;
  config.n = n;
  config.m = m;
  config.l_states = l;
  config.d_param = d;
  config.seed = seed;
  return config;
}

}  // namespace

TEST_CASE("honest runs deliver one identical key to every participant") {
  const AckaConfig config = honest_config(4, 2, 50, 5, 7);
  Transcript transcript;
  const RunOutcome outcome = run_acka(config, 0, &transcript);

  CHECK_FALSE(outcome.aborted);
  CHECK(outcome.alice_validates);
  CHECK(outcome.verification_failures == 0);
  CHECK(outcome.verification_rounds + outcome.keygen_rounds == 50);
  REQUIRE(outcome.key_bits.size() == 3);
  const std::vector<std::uint8_t>& reference = outcome.key_bits.begin()->second;
  CHECK(static_cast<long>(reference.size()) == outcome.keygen_rounds);
  for (const auto& [id, bits] : outcome.key_bits) CHECK(bits == reference);
}

TEST_CASE("key agreement holds across seeds and sizes") {
  for (const auto& [n, m] : std::vector<std::pair<int, int>>{{2, 1}, {5, 2}, {10, 4}}) {
    for (std::uint64_t run = 0; run < 20; ++run) {
      AckaConfig config = honest_config(n, m, 8, 2, 11);
      const RunOutcome outcome = run_acka(config, run);
      CHECK_FALSE(outcome.aborted);
      CHECK(outcome.alice_validates);
      const std::vector<std::uint8_t>& reference = outcome.key_bits.begin()->second;
      for (const auto& [id, bits] : outcome.key_bits) CHECK(bits == reference);
      CHECK(outcome.verification_rounds + outcome.keygen_rounds == 8);
    }
  }
}

TEST_CASE("every round generates key when the beacon always fires") {
  const AckaConfig config = honest_config(4, 1, 25, 1, 3);
  const RunOutcome outcome = run_acka(config, 0);
  CHECK(outcome.verification_rounds == 0);
  CHECK(outcome.keygen_rounds == 25);
  CHECK(key_rate(outcome) == doctest::Approx(1.0));
  CHECK(outcome.key_bits.begin()->second.size() == 25);
}

TEST_CASE("key rate approaches the beacon frequency") {
  AckaConfig config = honest_config(4, 2, 1000, 10, 12345);
  const RunOutcome outcome = run_acka(config, 0);
  const double sigma = binomial_sigma(1000, 0.1) / 1000.0;
  CHECK(std::abs(key_rate(outcome) - 0.1) < 4.0 * sigma);

  AckaConfig trivial = honest_config(3, 1, 1, 1, 1);
  CHECK(key_rate(run_acka(trivial, 0)) == doctest::Approx(1.0));
}

TEST_CASE("key bits are unbiased and serially uncorrelated") {
  AckaConfig config = honest_config(3, 1, 64, 1, 909);
  std::vector<std::uint8_t> pooled;
  for (std::uint64_t run = 0; run < 160; ++run) {
    const RunOutcome outcome = run_acka(config, run);
    const auto& bits = outcome.key_bits.begin()->second;
    pooled.insert(pooled.end(), bits.begin(), bits.end());
  }
  REQUIRE(pooled.size() == 64 * 160);

  std::vector<long> counts(2, 0);
  for (std::uint8_t b : pooled) ++counts[b];
  CHECK(chi_square_uniform(counts).p_value > 0.01);

  long matches = 0;
  for (std::size_t i = 1; i < pooled.size(); ++i) matches += pooled[i] == pooled[i - 1];
  const long pairs = static_cast<long>(pooled.size()) - 1;
  CHECK(std::abs(static_cast<double>(matches) - pairs * 0.5) < 4.0 * binomial_sigma(pairs, 0.5));
}

TEST_CASE("keygen rounds measure in the computational basis and stay silent") {
  RngStream rng(55);
  const Partition partition(4, 0, {1, 2});

  StateVector ghz = prepare_ghz(4);
  const auto bits = keygen_round(ghz, partition, rng);
  REQUIRE(bits.size() == 3);
  CHECK(bits.at(0) == bits.at(1));
  CHECK(bits.at(1) == bits.at(2));

  StateVector zeros = StateVector::zero_state(4);
  for (const auto& [id, bit] : keygen_round(zeros, partition, rng)) CHECK(bit == 0);

  long ones = 0;
  const long rounds = 10000;
  for (long r = 0; r < rounds; ++r) {
    StateVector state = prepare_ghz(4);
    ones += keygen_round(state, partition, rng).at(0);
  }
  CHECK(std::abs(static_cast<double>(ones) - rounds * 0.5) < 4.0 * binomial_sigma(rounds, 0.5));

  // No key-phase communication lands in the transcript.
  AckaConfig config = honest_config(4, 2, 40, 2, 8);
  Transcript transcript;
  run_acka(config, 0, &transcript);
  for (const Event& e : transcript.events) CHECK(e.phase != Phase::KeyGen);
}

TEST_CASE("round accounting matches the shared-state budget") {
  for (std::uint64_t run = 0; run < 50; ++run) {
    AckaConfig config = honest_config(4, 1, 30, 3, 21);
    const RunOutcome outcome = run_acka(config, run);
    CHECK(outcome.verification_rounds + outcome.keygen_rounds == 30);
    CHECK(outcome.l_states == 30);
  }
}

TEST_CASE("an entangling source with orthogonal legs is caught") {
  AckaConfig config = honest_config(4, 1, 100, 2, 99);
  config.adversary.source_mode = SourceMode::Eq2Injection;
  config.adversary.psi = StateVector::basis_state(1, 0);
  config.adversary.phi = StateVector::basis_state(1, 1);
  config.adversary.colluder_behavior[3] = {AmeBehavior::SkipAndAnnounce,
                                           AnnouncePolicy::UniformRandom};
  const RunOutcome outcome = run_acka(config, 0);
  CHECK_FALSE(outcome.aborted);
  CHECK_FALSE(outcome.alice_validates);
  CHECK(outcome.verification_failures > 0);
  // Roughly half of the check rounds reject.
  const double failures = static_cast<double>(outcome.verification_failures);
  const double checks = static_cast<double>(outcome.verification_rounds);
  CHECK(std::abs(failures - 0.5 * checks) < 4.0 * binomial_sigma(outcome.verification_rounds, 0.5));
}

TEST_CASE("a silent party aborts the whole run and discards key material") {
  AckaConfig config = honest_config(4, 1, 10, 1, 5);
  config.adversary.colluder_behavior[3] = {AmeBehavior::SkipAndAnnounce, AnnouncePolicy::Silent};
  Transcript transcript;
  const RunOutcome outcome = run_acka(config, 0, &transcript);
  CHECK(outcome.aborted);
  CHECK_FALSE(outcome.alice_validates);
  CHECK(outcome.key_bits.empty());
  CHECK(outcome.discarded_key_bits.size() == 2);
  CHECK_THROWS_AS(key_rate(outcome), ContractViolation);

  bool abort_marker = false;
  for (const Event& e : transcript.events)
    if (e.kind == ChannelKind::Abort) abort_marker = true;
  CHECK(abort_marker);
  // The terminal validation bit is still published, as a rejection.
  const Event& last = transcript.events.back();
  CHECK(last.phase == Phase::Validate);
  CHECK(last.bit == 0);
}

TEST_CASE("validation probability composes as acceptance^checks") {
  AckaConfig config = honest_config(3, 1, 6, 2, 4711);
  config.adversary.source_mode = SourceMode::Eq2Injection;
  config.adversary.psi = StateVector::basis_state(1, 0);
  config.adversary.phi = StateVector::basis_state(1, 1);
  config.adversary.colluder_behavior[2] = {AmeBehavior::SkipAndAnnounce,
                                           AnnouncePolicy::UniformRandom};

  std::map<long, std::pair<long, long>> by_checks;  // V -> (runs, validations)
  for (std::uint64_t run = 0; run < 4000; ++run) {
    const RunOutcome outcome = run_acka(config, run);
    auto& [total, validated] = by_checks[outcome.verification_rounds];
    ++total;
    validated += outcome.alice_validates ? 1 : 0;
  }
  for (const auto& [checks, stats] : by_checks) {
    const auto& [total, validated] = stats;
    if (total < 200) continue;
    const double expected = std::pow(0.5, static_cast<double>(checks));
    CHECK(std::abs(static_cast<double>(validated) - total * expected) <
          4.0 * binomial_sigma(total, expected) + 1.0);
  }
}

TEST_CASE("config validation") {
  AckaConfig config = honest_config(4, 2, 0, 1, 1);
  CHECK_THROWS_AS(run_acka(config, 0), ConfigError);
  config.l_states = 1;
  config.d_param = 0;
  CHECK_THROWS_AS(run_acka(config, 0), ConfigError);
  config.d_param = 1;
  config.bobs = {1};
  CHECK_THROWS_AS(run_acka(config, 0), ConfigError);  // m says 2, list says 1
  config.bobs = {1, 2};
  CHECK_FALSE(run_acka(config, 0).aborted);
  config.n = 20;
  CHECK_THROWS_AS(run_acka(config, 0), CapacityError);
}
