#include "acka/adversary.hpp"

namespace acka {

void validate_adversary(const AdversarySpec& spec, const Partition& partition) {
  for (const auto& [id, behavior] : spec.colluder_behavior) {
    (void)behavior;
    if (!partition.is_colluder(id))
      throw ModelError("adversary: behavior declared for non-colluder " + std::to_string(id));
  }
  for (const auto& [gate, id] : spec.pre_unitary) {
    (void)gate;
    if (!partition.is_colluder(id))
      throw ModelError("adversary: pre-round unitary touches non-colluder qubit " +
                       std::to_string(id));
  }
  if (spec.source_mode == SourceMode::Eq2Injection) {
    const int c = static_cast<int>(partition.colluders().size());
    if (spec.psi.n_qubits() != c || spec.phi.n_qubits() != c)
      throw ShapeError("adversary: injected states must live on exactly |C| qubits");
  }
}

StateVector emit_source_state(const AdversarySpec& spec, const Partition& partition,
                              int max_qubits) {
  validate_adversary(spec, partition);
  if (spec.source_mode == SourceMode::HonestGhz) return prepare_ghz(partition.n(), max_qubits);
  return prepare_adversarial_state(partition.n(), partition, spec.psi, spec.phi, max_qubits);
}

void apply_colluder_actions(StateVector& state, const AdversarySpec& spec,
                            const Partition& partition) {
  validate_adversary(spec, partition);
  if (state.n_qubits() != partition.n())
    throw ShapeError("adversary: state size does not match the network");
  for (const auto& [gate, id] : spec.pre_unitary) apply_gate(state, id, gate);
}

}  // namespace acka
