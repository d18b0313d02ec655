#include <doctest.h>

#include "acka/adversary.hpp"
#include "acka/oracles.hpp"
#include "acka/orchestrator.hpp"
#include "test_util.hpp"

using namespace acka;
using acka::testutil::states_equal;

TEST_CASE("source emission") {
  const Partition partition(5, 0, {1, 2});
  AdversarySpec honest;
  CHECK(states_equal(emit_source_state(honest, partition), prepare_ghz(5), 1e-12));

  const Partition with_colluder(5, 0, {1, 2}, {4});
  AdversarySpec equal_legs;
  equal_legs.source_mode = SourceMode::Eq2Injection;
  equal_legs.psi = StateVector::basis_state(1, 0);
  equal_legs.phi = StateVector::basis_state(1, 0);
  const StateVector factored = emit_source_state(equal_legs, with_colluder);
  const StateVector expected = oracle::product_state(
      5, {oracle::Factor{{0, 1, 2, 3}, prepare_ghz(4).amplitudes()},
          oracle::Factor{{4}, {Complex(1, 0), Complex(0, 0)}}});
  CHECK(states_equal(factored, expected, 1e-12));

  AdversarySpec orthogonal = equal_legs;
  orthogonal.phi = StateVector::basis_state(1, 1);
  CHECK(states_equal(emit_source_state(orthogonal, with_colluder), prepare_ghz(5), 1e-12));
}

TEST_CASE("adversary validation") {
  const Partition partition(4, 0, {1}, {3});

  AdversarySpec stray_behavior;
  stray_behavior.colluder_behavior[2] = {AmeBehavior::SkipAndAnnounce, AnnouncePolicy::Constant0};
  CHECK_THROWS_AS(validate_adversary(stray_behavior, partition), ModelError);

  AdversarySpec stray_gate;
  stray_gate.pre_unitary = {{Gate::Z, 1}};
  CHECK_THROWS_AS(validate_adversary(stray_gate, partition), ModelError);
  StateVector state = prepare_ghz(4);
  CHECK_THROWS_AS(apply_colluder_actions(state, stray_gate, partition), ModelError);

  AdversarySpec bad_shape;
  bad_shape.source_mode = SourceMode::Eq2Injection;
  bad_shape.psi = StateVector::basis_state(2, 0);
  bad_shape.phi = StateVector::basis_state(2, 0);
  CHECK_THROWS_AS(emit_source_state(bad_shape, partition), ShapeError);
}

TEST_CASE("identity actions leave the state alone") {
  const Partition partition(4, 0, {1}, {3});
  AdversarySpec spec;
  StateVector state = prepare_ghz(4);
  apply_colluder_actions(state, spec, partition);
  CHECK(states_equal(state, prepare_ghz(4), 1e-15));
}

TEST_CASE("declaring an honestly-behaving colluder does not change the run") {
  AckaConfig plain;
  plain.n = 5;
  plain.m = 2;
  plain.bobs = {1, 2};
  plain.l_states = 6;
  plain.d_param = 2;
  plain.seed = 31337;

  AckaConfig with_curious = plain;
  with_curious.adversary.colluder_behavior[4] = ColluderBehavior{};  // measures honestly

  Transcript a, b;
  const RunOutcome first = run_acka(plain, 0, &a);
  const RunOutcome second = run_acka(with_curious, 0, &b);
  CHECK(a.to_text() == b.to_text());
  CHECK(first.key_bits == second.key_bits);
  CHECK(first.verification_failures == second.verification_failures);
}

TEST_CASE("a phase flip before honest measurement is absorbed by the correction") {
  const Partition partition(4, 0, {1}, {3});
  AdversarySpec spec;
  spec.pre_unitary = {{Gate::Z, 3}};

  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    StateVector state = emit_source_state(spec, partition);
    apply_colluder_actions(state, spec, partition);
    Network net(4);
    RngStream rng = RngStream::for_run(seed, 7);
    run_ame(state, partition, spec, net, rng);
    CHECK(fidelity_with_ghz(state, {0, 1}) == doctest::Approx(1.0).epsilon(1e-10));
  }
}
