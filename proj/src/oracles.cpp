#include "acka/oracles.hpp"

#include <algorithm>
#include <cmath>

namespace acka::oracle {

namespace {

constexpr double kInvSqrt2 = 0.70710678118654752440;

std::array<Complex, 2> basis_ket(Basis basis, int outcome) {
  switch (basis) {
    case Basis::X: return x_eigenvector(outcome);
    case Basis::Y: return y_eigenvector(outcome);
    case Basis::Z: return z_eigenvector(outcome);
  }
  return {Complex(0, 0), Complex(0, 0)};
}

double norm_squared(const std::vector<Complex>& amps) {
  double acc = 0.0;
  for (const Complex& a : amps) acc += std::norm(a);
  return acc;
}

std::vector<Complex> all_zero_ket(int k) {
  std::vector<Complex> amps(std::size_t{1} << k, Complex(0, 0));
  amps[0] = Complex(1, 0);
  return amps;
}

std::vector<Complex> all_one_ket(int k) {
  std::vector<Complex> amps(std::size_t{1} << k, Complex(0, 0));
  amps[amps.size() - 1] = Complex(1, 0);
  return amps;
}

}  // namespace

StateVector product_state(int n, const std::vector<Factor>& factors) {
  std::vector<int> covered;
  for (const Factor& f : factors) {
    if (f.amplitudes.size() != (std::size_t{1} << f.qubits.size()))
      throw ShapeError("oracle: factor amplitude length mismatch");
    covered.insert(covered.end(), f.qubits.begin(), f.qubits.end());
  }
  std::sort(covered.begin(), covered.end());
  for (int q = 0; q < n; ++q)
    if (static_cast<std::size_t>(q) >= covered.size() || covered[q] != q)
      throw ShapeError("oracle: factors must cover each qubit exactly once");
  if (covered.size() != static_cast<std::size_t>(n))
    throw ShapeError("oracle: factors must cover each qubit exactly once");

  const std::size_t dim = std::size_t{1} << n;
  std::vector<Complex> amps(dim, Complex(1, 0));
  for (std::uint64_t index = 0; index < dim; ++index) {
    Complex value(1, 0);
    for (const Factor& f : factors) {
      std::uint64_t local = 0;
      for (std::size_t k = 0; k < f.qubits.size(); ++k)
        if ((index >> f.qubits[k]) & 1ull) local |= std::uint64_t{1} << k;
      value *= f.amplitudes[local];
    }
    amps[index] = value;
  }
  return StateVector::from_amplitudes(std::move(amps));
}

StateVector superpose(const StateVector& left, const StateVector& right, Complex a, Complex b) {
  if (left.n_qubits() != right.n_qubits()) throw ShapeError("oracle: superpose dimension mismatch");
  std::vector<Complex> amps(left.dim());
  for (std::uint64_t i = 0; i < left.dim(); ++i)
    amps[i] = a * left.amplitude(i) + b * right.amplitude(i);
  const double norm = std::sqrt(norm_squared(amps));
  if (norm <= 0.0) throw ShapeError("oracle: superposition vanishes");
  for (Complex& v : amps) v /= norm;
  return StateVector::from_amplitudes(std::move(amps));
}

std::array<Complex, 2> x_eigenvector(int bit) {
  return {Complex(kInvSqrt2, 0), Complex(bit == 0 ? kInvSqrt2 : -kInvSqrt2, 0)};
}

std::array<Complex, 2> y_eigenvector(int bit) {
  return {Complex(kInvSqrt2, 0), Complex(0, bit == 0 ? kInvSqrt2 : -kInvSqrt2)};
}

std::array<Complex, 2> z_eigenvector(int bit) {
  return {Complex(bit == 0 ? 1 : 0, 0), Complex(bit == 0 ? 0 : 1, 0)};
}

void apply_basis_projector(std::vector<Complex>& amplitudes, int n, int qubit, Basis basis,
                           int outcome) {
  if (qubit < 0 || qubit >= n) throw ShapeError("oracle: projector qubit out of range");
  const std::array<Complex, 2> ket = basis_ket(basis, outcome);
  const std::uint64_t bit = std::uint64_t{1} << qubit;
  for (std::uint64_t i = 0; i < amplitudes.size(); ++i) {
    if (i & bit) continue;
    const Complex inner =
        std::conj(ket[0]) * amplitudes[i] + std::conj(ket[1]) * amplitudes[i | bit];
    amplitudes[i] = inner * ket[0];
    amplitudes[i | bit] = inner * ket[1];
  }
}

double born_probability(const StateVector& state, int qubit, Basis basis, int outcome) {
  std::vector<Complex> amps = state.amplitudes();
  apply_basis_projector(amps, state.n_qubits(), qubit, basis, outcome);
  return norm_squared(amps);
}

double verification_acceptance_probability(const StateVector& state, const Partition& partition) {
  const std::vector<int>& bobs = partition.bobs();
  const int m = static_cast<int>(bobs.size());
  const int n = state.n_qubits();
  const double basis_weight = 1.0 / static_cast<double>(std::uint64_t{1} << m);

  double p_accept = 0.0;
  for (std::uint64_t basis_bits = 0; basis_bits < (std::uint64_t{1} << m); ++basis_bits) {
    int basis_sum = 0;
    for (int i = 0; i < m; ++i) basis_sum += static_cast<int>((basis_bits >> i) & 1ull);
    const int alice_basis = basis_sum % 2;

    std::vector<int> participant_ids = bobs;
    std::vector<Basis> bases;
    for (int i = 0; i < m; ++i)
      bases.push_back(((basis_bits >> i) & 1ull) ? Basis::Y : Basis::X);
    participant_ids.push_back(partition.alice());
    bases.push_back(alice_basis == 1 ? Basis::Y : Basis::X);

    const std::uint64_t outcome_count = std::uint64_t{1} << participant_ids.size();
    for (std::uint64_t outcomes = 0; outcomes < outcome_count; ++outcomes) {
      std::vector<Complex> amps = state.amplitudes();
      int outcome_sum = 0;
      for (std::size_t k = 0; k < participant_ids.size(); ++k) {
        const int o = static_cast<int>((outcomes >> k) & 1ull);
        outcome_sum += o;
        apply_basis_projector(amps, n, participant_ids[k], bases[k], o);
      }
      const double branch_probability = norm_squared(amps);
      if (branch_probability <= 0.0) continue;
      const int predicate = ((basis_sum + alice_basis) / 2 + outcome_sum) % 2 == 0 ? 1 : 0;
      p_accept += basis_weight * branch_probability * predicate;
    }
  }
  return p_accept;
}

StateVector ame_postmeasurement_oracle(const Partition& partition,
                                       const std::vector<std::pair<int, int>>& measured_outcomes,
                                       const StateVector& psi, const StateVector& phi) {
  const int n = partition.n();
  int parity = 0;
  std::vector<Factor> zero_branch, one_branch;
  std::vector<int> skipped_colluders;
  for (int id : partition.colluders()) {
    bool measured = false;
    for (const auto& [mid, outcome] : measured_outcomes) {
      (void)outcome;
      if (mid == id) measured = true;
    }
    if (!measured) skipped_colluders.push_back(id);
  }
  if (psi.n_qubits() != static_cast<int>(skipped_colluders.size()) ||
      phi.n_qubits() != static_cast<int>(skipped_colluders.size()))
    throw ShapeError("oracle: injected states must match the unmeasured colluder legs");

  std::vector<int> retained;  // participants, ascending
  for (int id = 0; id < n; ++id)
    if (partition.is_participant(id)) retained.push_back(id);

  for (const auto& [id, outcome] : measured_outcomes) {
    parity ^= outcome & 1;
    const std::array<Complex, 2> ket = x_eigenvector(outcome);
    Factor f{{id}, {ket[0], ket[1]}};
    zero_branch.push_back(f);
    one_branch.push_back(f);
  }
  const int k = static_cast<int>(retained.size());
  zero_branch.push_back(Factor{retained, all_zero_ket(k)});
  one_branch.push_back(Factor{retained, all_one_ket(k)});
  if (!skipped_colluders.empty()) {
    zero_branch.push_back(Factor{skipped_colluders, psi.amplitudes()});
    one_branch.push_back(Factor{skipped_colluders, phi.amplitudes()});
  }

  const StateVector zero_term = product_state(n, zero_branch);
  const StateVector one_term = product_state(n, one_branch);
  const Complex phase(parity == 0 ? 1.0 : -1.0, 0.0);
  return superpose(zero_term, one_term, Complex(1, 0), phase);
}

std::vector<OracleCheck> run_oracle_suite() {
  std::vector<OracleCheck> checks;

  // Stabilizer check accepts a perfect shared state with certainty.
  {
    double worst = 1.0;
    for (int parties = 2; parties <= 6; ++parties) {
      std::vector<int> bobs;
      for (int id = 1; id < parties; ++id) bobs.push_back(id);
      const Partition partition(parties, 0, bobs);
      worst = std::min(worst,
                       verification_acceptance_probability(prepare_ghz(parties), partition));
    }
    checks.push_back({"verification-completeness", std::abs(worst - 1.0) < 1e-12, worst, 1.0});
  }

  // Phase on the retained branch follows the parity of the measured bits.
  {
    double worst = 0.0;
    for (int n = 3; n <= 6; ++n) {
      const Partition partition(n, 0, {1});
      const StateVector scalar;
      for (std::uint64_t x = 0; x < (std::uint64_t{1} << (n - 2)); ++x) {
        std::vector<std::pair<int, int>> outcomes;
        int parity = 0;
        for (int k = 0; k < n - 2; ++k) {
          const int bit = static_cast<int>((x >> k) & 1ull);
          outcomes.emplace_back(k + 2, bit);
          parity ^= bit;
        }
        const StateVector expected = ame_postmeasurement_oracle(partition, outcomes, scalar, scalar);
        // Project the shared state through the same outcomes, independently.
        std::vector<Complex> amps = prepare_ghz(n).amplitudes();
        for (const auto& [id, bit] : outcomes) apply_basis_projector(amps, n, id, Basis::X, bit);
        const double norm = std::sqrt(norm_squared(amps));
        for (Complex& a : amps) a /= norm;
        const StateVector projected = StateVector::from_amplitudes(std::move(amps));
        worst = std::max(worst, 1.0 - fidelity(projected, expected));
        (void)parity;
      }
    }
    checks.push_back({"ame-phase-law", worst < 1e-12, worst, 0.0});
  }

  // An entangled injection with orthogonal colluder states passes half the time.
  {
    double worst = 0.0;
    for (int n = 3; n <= 5; ++n) {
      const Partition partition(n, 0, {1}, {n - 1});
      const StateVector psi = StateVector::basis_state(1, 0);
      const StateVector phi = StateVector::basis_state(1, 1);
      std::vector<std::pair<int, int>> outcomes;
      for (int id = 2; id < n - 1; ++id) outcomes.emplace_back(id, 0);
      const StateVector tampered = ame_postmeasurement_oracle(partition, outcomes, psi, phi);
      const double p = verification_acceptance_probability(tampered, partition);
      worst = std::max(worst, std::abs(p - 0.5));
    }
    checks.push_back({"entangled-injection-soundness", worst < 1e-12, 0.5 + worst, 0.5});
  }

  return checks;
}

}  // namespace acka::oracle
