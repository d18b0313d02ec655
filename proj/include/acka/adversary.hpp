#pragma once

#include <map>
#include <utility>
#include <vector>

#include "acka/net.hpp"
#include "acka/partition.hpp"
#include "acka/qsim.hpp"

namespace acka {

enum class SourceMode : std::uint8_t { HonestGhz, Eq2Injection };

enum class AmeBehavior : std::uint8_t { MeasureHonestly, SkipAndAnnounce };

enum class AnnouncePolicy : std::uint8_t { Constant0, Constant1, UniformRandom, Silent };

struct ColluderBehavior {
  AmeBehavior behavior = AmeBehavior::MeasureHonestly;
  AnnouncePolicy policy = AnnouncePolicy::UniformRandom;  // used when skipping
};

/// Declarative adversary model: what the source emits, how each colluder
/// behaves during the extraction round, which single-qubit rotations the
/// colluders apply beforehand, and which adversary the harness observes.
struct AdversarySpec {
  SourceMode source_mode = SourceMode::HonestGhz;
  StateVector psi;  // on |C| qubits when injecting
  StateVector phi;

  std::map<int, ColluderBehavior> colluder_behavior;
  std::vector<std::pair<Gate, int>> pre_unitary;  // (gate, colluder id)

  EveType eve_type = EveType::HonestNonparticipant;
  std::vector<int> eve_parties;

  bool is_source_honest() const { return source_mode == SourceMode::HonestGhz; }
  ColluderBehavior behavior_for(int id) const {
    auto it = colluder_behavior.find(id);
    return it == colluder_behavior.end() ? ColluderBehavior{} : it->second;
  }
};

void validate_adversary(const AdversarySpec& spec, const Partition& partition);

/// HonestGhz -> exact GHZ_n; Eq2Injection -> the tampered source state built
/// from (psi, phi) on the colluder legs.
StateVector emit_source_state(const AdversarySpec& spec, const Partition& partition,
                              int max_qubits = kDefaultMaxQubits);

/// Applies the colluders' pre-round rotations. Gates touching qubits outside
/// the colluder set are a model violation.
void apply_colluder_actions(StateVector& state, const AdversarySpec& spec,
                            const Partition& partition);

}  // namespace acka
