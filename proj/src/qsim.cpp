#include "acka/qsim.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include <Eigen/Eigenvalues>

namespace acka {

namespace {

constexpr double kInvSqrt2 = 0.70710678118654752440;

void check_qubit_count(int n_qubits, int max_qubits) {
  if (n_qubits < 0) throw ShapeError("state: negative qubit count");
  if (n_qubits > max_qubits)
    throw CapacityError("state: " + std::to_string(n_qubits) + " qubits exceeds the configured max of " +
                        std::to_string(max_qubits));
}

void check_qubit_index(const StateVector& state, int qubit_index) {
  if (qubit_index < 0 || qubit_index >= state.n_qubits())
    throw ShapeError("qubit index " + std::to_string(qubit_index) + " out of range for " +
                     std::to_string(state.n_qubits()) + " qubits");
}

// Maps the measured basis onto the computational one. Undone after collapse
// so the post-measurement state carries the actual basis eigenvector.
void rotate_to_z(StateVector& state, int qubit, Basis basis) {
  switch (basis) {
    case Basis::Z: break;
    case Basis::X: apply_gate(state, qubit, Gate::H); break;
    case Basis::Y:
      apply_gate(state, qubit, Gate::Sdg);
      apply_gate(state, qubit, Gate::H);
      break;
  }
}

void rotate_from_z(StateVector& state, int qubit, Basis basis) {
  switch (basis) {
    case Basis::Z: break;
    case Basis::X: apply_gate(state, qubit, Gate::H); break;
    case Basis::Y:
      apply_gate(state, qubit, Gate::H);
      apply_gate(state, qubit, Gate::S);
      break;
  }
}

// Scatters the bits of `value` into the positions set in `positions`.
std::uint64_t scatter_bits(std::uint64_t value, const std::vector<int>& positions) {
  std::uint64_t out = 0;
  for (std::size_t k = 0; k < positions.size(); ++k) {
    if ((value >> k) & 1ull) out |= 1ull << positions[k];
  }
  return out;
}

void check_ascending_subset(const StateVector& state, const std::vector<int>& subset) {
  if (subset.empty()) throw ShapeError("qubit subset must be nonempty");
  int prev = -1;
  for (int q : subset) {
    if (q <= prev) throw ShapeError("qubit subset must be strictly ascending");
    if (q >= state.n_qubits()) throw ShapeError("qubit subset index out of range");
    prev = q;
  }
}

}  // namespace

const char* to_string(Gate gate) {
  switch (gate) {
    case Gate::H: return "H";
    case Gate::Z: return "Z";
    case Gate::S: return "S";
    case Gate::Sdg: return "Sdg";
  }
  return "?";
}

const char* to_string(Basis basis) {
  switch (basis) {
    case Basis::X: return "X";
    case Basis::Y: return "Y";
    case Basis::Z: return "Z";
  }
  return "?";
}

StateVector StateVector::zero_state(int n_qubits, int max_qubits) {
  return basis_state(n_qubits, 0, max_qubits);
}

StateVector StateVector::basis_state(int n_qubits, std::uint64_t index, int max_qubits) {
  check_qubit_count(n_qubits, max_qubits);
  std::vector<Complex> amps(std::size_t{1} << n_qubits, Complex(0.0, 0.0));
  if (index >= amps.size()) throw ShapeError("basis state index out of range");
  amps[index] = Complex(1.0, 0.0);
  return StateVector(n_qubits, std::move(amps));
}

StateVector StateVector::from_amplitudes(std::vector<Complex> amplitudes, int max_qubits) {
  const std::size_t len = amplitudes.size();
  if (len == 0 || (len & (len - 1)) != 0)
    throw ShapeError("amplitude array length must be a power of two");
  int n = 0;
  while ((std::size_t{1} << n) < len) ++n;
  check_qubit_count(n, max_qubits);
  StateVector state(n, std::move(amplitudes));
  const double norm_sq = state.norm_squared();
  if (std::abs(norm_sq - 1.0) > 1e-6)
    throw ShapeError("amplitude array is not normalized");
  state.normalize();
  return state;
}

double StateVector::norm_squared() const {
  double acc = 0.0;
  for (const Complex& a : amps_) acc += std::norm(a);
  return acc;
}

void StateVector::normalize() {
  const double norm = std::sqrt(norm_squared());
  if (norm <= 0.0) throw ShapeError("cannot normalize the zero vector");
  for (Complex& a : amps_) a /= norm;
}

std::vector<std::pair<double, double>> StateVector::to_pairs() const {
  std::vector<std::pair<double, double>> out;
  out.reserve(amps_.size());
  for (const Complex& a : amps_) out.emplace_back(a.real(), a.imag());
  return out;
}

StateVector StateVector::from_pairs(const std::vector<std::pair<double, double>>& pairs) {
  std::vector<Complex> amps;
  amps.reserve(pairs.size());
  for (const auto& [re, im] : pairs) amps.emplace_back(re, im);
  return from_amplitudes(std::move(amps));
}

StateVector prepare_ghz(int n, int max_qubits) {
  if (n < 1) throw ShapeError("ghz: need at least one qubit");
  check_qubit_count(n, max_qubits);
  StateVector state = StateVector::zero_state(n, max_qubits);
  auto& amps = state.amplitudes();
  amps[0] = Complex(kInvSqrt2, 0.0);
  amps[amps.size() - 1] = Complex(kInvSqrt2, 0.0);
  return state;
}

StateVector prepare_adversarial_state(int n, const Partition& partition,
                                      const StateVector& psi, const StateVector& phi,
                                      int max_qubits) {
  if (partition.n() != n) throw ShapeError("adversarial state: partition size mismatch");
  check_qubit_count(n, max_qubits);
  const std::vector<int>& colluders = partition.colluders();
  const int c = static_cast<int>(colluders.size());
  if (psi.n_qubits() != c || phi.n_qubits() != c)
    throw ShapeError("adversarial state: colluder states must live on exactly |C| qubits");
  if (std::abs(psi.norm_squared() - 1.0) > 1e-9 || std::abs(phi.norm_squared() - 1.0) > 1e-9)
    throw ShapeError("adversarial state: colluder states must be normalized");

  std::vector<int> honest;
  for (int id = 0; id < n; ++id)
    if (!partition.is_colluder(id)) honest.push_back(id);
  const std::uint64_t honest_ones = scatter_bits(~std::uint64_t{0}, honest);

  StateVector state = StateVector::zero_state(n, max_qubits);
  auto& amps = state.amplitudes();
  amps[0] = Complex(0.0, 0.0);
  for (std::uint64_t assignment = 0; assignment < psi.dim(); ++assignment) {
    const std::uint64_t colluder_part = scatter_bits(assignment, colluders);
    amps[colluder_part] += psi.amplitude(assignment) * kInvSqrt2;
    amps[honest_ones | colluder_part] += phi.amplitude(assignment) * kInvSqrt2;
  }
  state.normalize();
  return state;
}

void apply_gate(StateVector& state, int qubit_index, Gate gate) {
  check_qubit_index(state, qubit_index);
  auto& amps = state.amplitudes();
  const std::uint64_t bit = std::uint64_t{1} << qubit_index;
  const std::uint64_t dim = amps.size();
  switch (gate) {
    case Gate::H:
      for (std::uint64_t i = 0; i < dim; ++i) {
        if (i & bit) continue;
        const Complex a = amps[i];
        const Complex b = amps[i | bit];
        amps[i] = (a + b) * kInvSqrt2;
        amps[i | bit] = (a - b) * kInvSqrt2;
      }
      break;
    case Gate::Z:
      for (std::uint64_t i = 0; i < dim; ++i)
        if (i & bit) amps[i] = -amps[i];
      break;
    case Gate::S:
      for (std::uint64_t i = 0; i < dim; ++i)
        if (i & bit) amps[i] *= Complex(0.0, 1.0);
      break;
    case Gate::Sdg:
      for (std::uint64_t i = 0; i < dim; ++i)
        if (i & bit) amps[i] *= Complex(0.0, -1.0);
      break;
  }
}

double outcome_probability(const StateVector& state, int qubit_index, Basis basis,
                           int outcome) {
  check_qubit_index(state, qubit_index);
  if (outcome != 0 && outcome != 1) throw ShapeError("outcome must be a bit");
  const auto& amps = state.amplitudes();
  const std::uint64_t bit = std::uint64_t{1} << qubit_index;
  const std::uint64_t dim = amps.size();
  double p = 0.0;
  for (std::uint64_t i = 0; i < dim; ++i) {
    if (i & bit) continue;
    const Complex a = amps[i];
    const Complex b = amps[i | bit];
    Complex picked;
    switch (basis) {
      case Basis::Z: picked = outcome == 0 ? a : b; break;
      case Basis::X: picked = (outcome == 0 ? a + b : a - b) * kInvSqrt2; break;
      case Basis::Y:
        // <y_o| = (<0| -+ i<1|)/sqrt(2)
        picked = (a + Complex(0.0, outcome == 0 ? -1.0 : 1.0) * b) * kInvSqrt2;
        break;
    }
    p += std::norm(picked);
  }
  return p;
}

double project(StateVector& state, int qubit_index, Basis basis, int outcome) {
  check_qubit_index(state, qubit_index);
  if (outcome != 0 && outcome != 1) throw ShapeError("outcome must be a bit");
  rotate_to_z(state, qubit_index, basis);
  auto& amps = state.amplitudes();
  const std::uint64_t bit = std::uint64_t{1} << qubit_index;
  const std::uint64_t keep = outcome == 0 ? 0 : bit;
  double p = 0.0;
  for (std::uint64_t i = 0; i < amps.size(); ++i)
    if ((i & bit) == keep) p += std::norm(amps[i]);
  if (p < 1e-300) {
    rotate_from_z(state, qubit_index, basis);
    return 0.0;
  }
  const double scale = 1.0 / std::sqrt(p);
  for (std::uint64_t i = 0; i < amps.size(); ++i)
    amps[i] = (i & bit) == keep ? amps[i] * scale : Complex(0.0, 0.0);
  rotate_from_z(state, qubit_index, basis);
  return p;
}

MeasurementRecord measure(StateVector& state, int qubit_index, Basis basis, RngStream& rng) {
  const double p0 = outcome_probability(state, qubit_index, basis, 0);
  const std::uint8_t outcome = rng.uniform_double() < p0 ? 0 : 1;
  project(state, qubit_index, basis, outcome);
  return MeasurementRecord{qubit_index, basis, outcome};
}

DensityMatrix::DensityMatrix(Eigen::MatrixXcd matrix) : matrix_(std::move(matrix)) {
  if (matrix_.rows() != matrix_.cols() || matrix_.rows() == 0)
    throw ShapeError("density matrix must be square");
  const auto d = static_cast<std::uint64_t>(matrix_.rows());
  if ((d & (d - 1)) != 0) throw ShapeError("density matrix dimension must be a power of two");
  n_qubits_ = 0;
  while ((std::uint64_t{1} << n_qubits_) < d) ++n_qubits_;
}

double DensityMatrix::hermiticity_error() const {
  return (matrix_ - matrix_.adjoint()).cwiseAbs().maxCoeff();
}

double DensityMatrix::min_eigenvalue() const {
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(
      Eigen::MatrixXcd(0.5 * (matrix_ + matrix_.adjoint())));
  return solver.eigenvalues().minCoeff();
}

DensityMatrix reduced_density(const StateVector& state, const std::vector<int>& qubit_subset) {
  check_ascending_subset(state, qubit_subset);
  const int k = static_cast<int>(qubit_subset.size());
  if (k > 10) throw CapacityError("reduced density over more than 10 qubits is not supported");
  std::vector<int> rest;
  for (int q = 0; q < state.n_qubits(); ++q)
    if (!std::binary_search(qubit_subset.begin(), qubit_subset.end(), q)) rest.push_back(q);

  const std::uint64_t sub_dim = std::uint64_t{1} << k;
  const std::uint64_t rest_dim = std::uint64_t{1} << rest.size();
  Eigen::MatrixXcd rho = Eigen::MatrixXcd::Zero(sub_dim, sub_dim);
  const auto& amps = state.amplitudes();
  for (std::uint64_t row = 0; row < sub_dim; ++row) {
    const std::uint64_t row_part = scatter_bits(row, qubit_subset);
    for (std::uint64_t col = 0; col < sub_dim; ++col) {
      const std::uint64_t col_part = scatter_bits(col, qubit_subset);
      Complex acc(0.0, 0.0);
      for (std::uint64_t r = 0; r < rest_dim; ++r) {
        const std::uint64_t rest_part = scatter_bits(r, rest);
        acc += amps[row_part | rest_part] * std::conj(amps[col_part | rest_part]);
      }
      rho(row, col) = acc;
    }
  }
  return DensityMatrix(std::move(rho));
}

double fidelity(const StateVector& a, const StateVector& b) {
  if (a.n_qubits() != b.n_qubits()) throw ShapeError("fidelity: dimension mismatch");
  Complex overlap(0.0, 0.0);
  for (std::uint64_t i = 0; i < a.dim(); ++i)
    overlap += std::conj(a.amplitude(i)) * b.amplitude(i);
  return std::norm(overlap);
}

double trace_distance(const DensityMatrix& a, const DensityMatrix& b) {
  if (a.matrix().rows() != b.matrix().rows()) throw ShapeError("trace distance: dimension mismatch");
  Eigen::MatrixXcd diff = a.matrix() - b.matrix();
  diff = 0.5 * (diff + diff.adjoint());
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(diff);
  return 0.5 * solver.eigenvalues().cwiseAbs().sum();
}

double fidelity_with_pure(const DensityMatrix& rho, const std::vector<Complex>& phi) {
  if (static_cast<std::uint64_t>(rho.matrix().rows()) != phi.size())
    throw ShapeError("fidelity: dimension mismatch");
  Eigen::VectorXcd v(phi.size());
  for (std::size_t i = 0; i < phi.size(); ++i) v(i) = phi[i];
  return (v.adjoint() * rho.matrix() * v)(0, 0).real();
}

double fidelity_with_ghz(const StateVector& state, const std::vector<int>& qubit_subset) {
  check_ascending_subset(state, qubit_subset);
  std::vector<int> rest;
  for (int q = 0; q < state.n_qubits(); ++q)
    if (!std::binary_search(qubit_subset.begin(), qubit_subset.end(), q)) rest.push_back(q);
  const std::uint64_t ones = scatter_bits(~std::uint64_t{0}, qubit_subset);
  const std::uint64_t rest_dim = std::uint64_t{1} << rest.size();
  const auto& amps = state.amplitudes();
  double f = 0.0;
  for (std::uint64_t r = 0; r < rest_dim; ++r) {
    const std::uint64_t rest_part = scatter_bits(r, rest);
    f += 0.5 * std::norm(amps[rest_part] + amps[rest_part | ones]);
  }
  return f;
}

}  // namespace acka
