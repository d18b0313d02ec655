#pragma once

#include <array>
#include <vector>

#include "acka/partition.hpp"
#include "acka/qsim.hpp"

namespace acka::oracle {

/// Reference implementations kept deliberately independent of the gate and
/// measurement code paths they are used to check: everything here is built
/// from explicit kets, tensor assembly and projector contractions.

/// A multi-qubit tensor factor placed on the given (ascending) qubit ids.
struct Factor {
  std::vector<int> qubits;
  std::vector<Complex> amplitudes;
};

/// Tensor product of factors that together cover qubits 0..n-1 exactly once.
StateVector product_state(int n, const std::vector<Factor>& factors);

/// Normalized a*|left> + b*|right>.
StateVector superpose(const StateVector& left, const StateVector& right, Complex a, Complex b);

/// H|bit>.
std::array<Complex, 2> x_eigenvector(int bit);
/// sqrt(Z) H |bit>.
std::array<Complex, 2> y_eigenvector(int bit);
std::array<Complex, 2> z_eigenvector(int bit);

/// Probability of the given single-qubit outcome, via direct projector
/// contraction of the amplitude array.
double born_probability(const StateVector& state, int qubit, Basis basis, int outcome);

/// Applies the (unnormalized) rank-one basis projector to one qubit.
void apply_basis_projector(std::vector<Complex>& amplitudes, int n, int qubit, Basis basis,
                           int outcome);

/// Exact acceptance probability of the stabilizer check on `state`, averaged
/// over the receivers' uniform basis choices and all outcome branches, with
/// the verifier's basis fixed by the even-sum reset rule. Qubits outside the
/// participant set are left untouched (traced over implicitly).
double verification_acceptance_probability(const StateVector& state, const Partition& partition);

/// Expected global state after the extraction-round X measurements with the
/// given outcomes (pre-correction): the phase on the participants' branch is
/// set by the parity of the measured bits, measured legs end in X
/// eigenstates, and unmeasured colluder legs keep the injected pair.
StateVector ame_postmeasurement_oracle(const Partition& partition,
                                       const std::vector<std::pair<int, int>>& measured_outcomes,
                                       const StateVector& psi, const StateVector& phi);

struct OracleCheck {
  const char* name;
  bool pass;
  double observed;
  double expected;
};

/// The enumeration oracles behind the oracle-suite command.
std::vector<OracleCheck> run_oracle_suite();

}  // namespace acka::oracle
