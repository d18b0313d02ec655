#pragma once

#include <complex>
#include <cstdint>
#include <vector>

#include <Eigen/Dense>

#include "acka/errors.hpp"
#include "acka/partition.hpp"
#include "acka/rng.hpp"

namespace acka {

using Complex = std::complex<double>;

inline constexpr int kDefaultMaxQubits = 16;
inline constexpr double kNormTolerance = 1e-12;
inline constexpr double kTraceTolerance = 1e-10;

enum class Gate : std::uint8_t { H, Z, S, Sdg };
enum class Basis : std::uint8_t { X, Y, Z };

const char* to_string(Gate gate);
const char* to_string(Basis basis);

struct MeasurementRecord {
  int qubit_index;
  Basis basis;
  std::uint8_t outcome;  // 0 <-> +1 eigenvalue
};

/// Dense amplitude vector over n qubits. Qubit q is bit q of the amplitude
/// index (qubit 0 = least significant bit). A 0-qubit state is the scalar 1
/// and acts as the empty tensor factor.
class StateVector {
 public:
  StateVector() : n_qubits_(0), amps_(1, Complex(1.0, 0.0)) {}

  static StateVector zero_state(int n_qubits, int max_qubits = kDefaultMaxQubits);
  static StateVector basis_state(int n_qubits, std::uint64_t index,
                                 int max_qubits = kDefaultMaxQubits);
  /// Length must be a power of two; near-unit norm required, then renormalized.
  static StateVector from_amplitudes(std::vector<Complex> amplitudes,
                                     int max_qubits = kDefaultMaxQubits);

  int n_qubits() const { return n_qubits_; }
  std::size_t dim() const { return amps_.size(); }
  const std::vector<Complex>& amplitudes() const { return amps_; }
  std::vector<Complex>& amplitudes() { return amps_; }
  Complex amplitude(std::uint64_t index) const { return amps_[index]; }

  double norm_squared() const;
  void normalize();

  /// (real, imaginary) pairs in amplitude-index order; the fixture format.
  std::vector<std::pair<double, double>> to_pairs() const;
  static StateVector from_pairs(const std::vector<std::pair<double, double>>& pairs);

 private:
  StateVector(int n_qubits, std::vector<Complex> amps)
      : n_qubits_(n_qubits), amps_(std::move(amps)) {}

  int n_qubits_;
  std::vector<Complex> amps_;
};

/// (|0...0> + |1...1>)/sqrt(2) on n qubits.
StateVector prepare_ghz(int n, int max_qubits = kDefaultMaxQubits);

/// (|0...0>_{A u D'} (x) psi_C + |1...1>_{A u D'} (x) phi_C)/sqrt(2), then
/// normalized (the two colluder states may overlap). psi and phi live on
/// exactly |C| qubits, mapped onto the colluder ids in ascending order.
StateVector prepare_adversarial_state(int n, const Partition& partition,
                                      const StateVector& psi, const StateVector& phi,
                                      int max_qubits = kDefaultMaxQubits);

void apply_gate(StateVector& state, int qubit_index, Gate gate);

/// Probability that measuring `qubit_index` in `basis` yields `outcome`.
double outcome_probability(const StateVector& state, int qubit_index, Basis basis,
                           int outcome);

/// Collapse onto the given outcome and renormalize; returns the branch
/// probability. A (near-)zero-probability branch leaves the state untouched
/// and returns 0.
double project(StateVector& state, int qubit_index, Basis basis, int outcome);

/// Born-rule measurement consuming exactly one uniform deviate from `rng`.
MeasurementRecord measure(StateVector& state, int qubit_index, Basis basis,
                          RngStream& rng);

class DensityMatrix {
 public:
  explicit DensityMatrix(Eigen::MatrixXcd matrix);

  int n_qubits() const { return n_qubits_; }
  const Eigen::MatrixXcd& matrix() const { return matrix_; }

  double trace_real() const { return matrix_.trace().real(); }
  double hermiticity_error() const;
  /// Smallest eigenvalue of the Hermitian part; >= -tol for a valid state.
  double min_eigenvalue() const;

 private:
  int n_qubits_;
  Eigen::MatrixXcd matrix_;
};

/// Partial trace onto `qubit_subset` (strictly ascending). Subset qubit k in
/// list order becomes bit k of the reduced index.
DensityMatrix reduced_density(const StateVector& state, const std::vector<int>& qubit_subset);

/// |<a|b>|^2.
double fidelity(const StateVector& a, const StateVector& b);

/// 0.5 * Tr|rho - sigma|.
double trace_distance(const DensityMatrix& a, const DensityMatrix& b);

/// <phi|rho|phi> for a pure target given by its amplitudes.
double fidelity_with_pure(const DensityMatrix& rho, const std::vector<Complex>& phi);

/// <GHZ_k| rho_subset |GHZ_k> computed without materializing the reduced
/// density matrix; subset strictly ascending, k = subset size.
double fidelity_with_ghz(const StateVector& state, const std::vector<int>& qubit_subset);

}  // namespace acka
