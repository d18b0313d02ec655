#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "acka/adversary.hpp"
#include "acka/ame.hpp"
#include "acka/net.hpp"
#include "acka/orchestrator.hpp"
#include "acka/partition.hpp"
#include "acka/stats.hpp"

namespace acka {

/// Thresholds of the anonymity harness, fixed here rather than configurable.
inline constexpr double kExactProbabilityTolerance = 1e-12;
inline constexpr double kExactStateDistanceTolerance = 1e-10;
inline constexpr double kHomogeneityMinPValue = 0.01;
inline constexpr double kMutualInfoMaxBits = 0.02;

/// All partitions that look possible given the adversary's trivial knowledge:
/// same (n, m) and the adversary's own parties keep their role. When the
/// adversary is the colluder set its ids are pinned; otherwise
/// `colluder_count` colluders range over the remaining parties. Deterministic
/// order; `max_partitions` caps the ensemble for statistical batches.
std::vector<Partition> consistent_partitions(int n, int m, EveType eve_type,
                                             const std::vector<int>& eve_parties,
                                             int colluder_count = 0,
                                             std::size_t max_partitions = SIZE_MAX);

// ---------- exact enumeration ----------

struct ExactOptions {
  bool include_verification = true;
  AmeVariant variant = AmeVariant::Standard;
  /// Accumulate the colluders' conditional post-extraction density matrix per
  /// observable prefix.
  bool track_colluder_state = false;
  int max_enumeration_qubits = 4;
};

/// Exact distribution over the publicly observable classical stream of one
/// extraction round (optionally followed by one check round): every random
/// bit, measurement branch and announcement order is enumerated with its
/// probability. Views are encoded as packed integer keys.
struct ViewDistribution {
  std::vector<std::pair<std::uint64_t, double>> probabilities;  // sorted by key
  std::vector<std::pair<std::uint64_t, Eigen::MatrixXcd>> colluder_states;  // sorted by key
};

ViewDistribution exact_view_distribution(const Partition& partition,
                                         const AdversarySpec& adversary,
                                         const ExactOptions& options = {});

/// Largest pointwise probability gap; missing keys count with their full mass.
double max_probability_difference(const ViewDistribution& a, const ViewDistribution& b);

/// Largest trace distance between matching conditional colluder states.
/// A key present on one side only is reported as distance 1.
double max_colluder_state_distance(const ViewDistribution& a, const ViewDistribution& b);

/// Exact distribution of one notification target-loop as seen by the
/// adversary's parties: their received share bits (and received aggregates
/// when the target is one of them), over all other parties' share rows.
std::vector<std::pair<std::uint64_t, double>> exact_notification_loop_view(
    const Partition& partition, int target, const std::vector<int>& eve_parties);

// ---------- the exact test matrix ----------

enum class AdversaryCase : std::uint8_t { Honest, ColluderSkipUniform, Eq2Orthogonal };

const char* to_string(AdversaryCase scenario);

struct ExactCaseResult {
  int n = 0;
  int m = 0;
  EveType eve_type = EveType::HonestNonparticipant;
  std::vector<int> eve_parties;
  AdversaryCase scenario = AdversaryCase::Honest;
  std::size_t partitions = 0;
  bool no_contrast = false;
  double max_prob_diff = 0.0;
  double max_state_distance = 0.0;
  double max_notification_diff = 0.0;
  bool pass = false;
  std::string label() const;
};

/// Runs one cell of the adversary-type coverage matrix: builds every
/// partition consistent with the adversary's role and requires the exact
/// view distributions (and conditional colluder states, where the adversary
/// holds qubits) to coincide across all of them.
ExactCaseResult run_exact_case(int n, int m, EveType eve_type,
                               const std::vector<int>& eve_parties, AdversaryCase scenario);

/// The full matrix for all 2 <= n <= n_max, all m, all adversary types.
std::vector<ExactCaseResult> exact_anonymity_matrix(int n_max);

// ---------- statistical experiment ----------

struct AnonymityExperiment {
  AckaConfig base;  // n, l_states, d_param, seed; partition fields overridden
  EveType eve_type = EveType::HonestNonparticipant;
  std::vector<int> eve_parties;
  std::vector<Partition> ensemble;
  long runs_per_partition = 1000;
  int signature_bits = 6;
};

struct AnonymityReport {
  bool no_contrast = false;
  std::size_t partitions = 0;
  long runs_per_partition = 0;
  ChiSquareResult homogeneity;
  double mi_bits = 0.0;
  double tv_max = 0.0;
  double max_marginal_z = 0.0;
  bool pass = true;
  std::string to_text() const;
};

/// Batch harness: runs the full protocol `runs_per_partition` times per
/// ensemble member with a fixed adversary position, reduces each view to a
/// per-sender broadcast signature, and tests that the signature distribution
/// is independent of the partition.
AnonymityReport run_experiment(const AnonymityExperiment& experiment);

}  // namespace acka
