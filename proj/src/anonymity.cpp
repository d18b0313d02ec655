#include "acka/anonymity.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <numeric>
#include <sstream>

#include "acka/notification.hpp"
#include "acka/verification.hpp"

namespace acka {

namespace {

int id_width(int n) {
  int w = 1;
  while ((1 << w) < n) ++w;
  return w;
}

struct KeyWriter {
  std::uint64_t bits = 0;
  int used = 0;
  void push(std::uint64_t value, int width) {
    if (used + width > 64) throw CapacityError("view encoding exceeds the exact-enumeration budget");
    bits |= value << used;
    used += width;
  }
};

std::vector<std::vector<int>> all_permutations(int n) {
  std::vector<int> ids(static_cast<std::size_t>(n));
  std::iota(ids.begin(), ids.end(), 0);
  std::vector<std::vector<int>> out;
  do {
    out.push_back(ids);
  } while (std::next_permutation(ids.begin(), ids.end()));
  return out;
}

/// One fully decided protocol branch before announcement orders are chosen:
/// the payload every party will put on the wire plus the branch weight and
/// the quantum state evolved through the decided measurement outcomes.
struct SemanticBranch {
  double weight = 1.0;
  StateVector state;
  std::vector<std::vector<std::uint8_t>> ame_payload;
  std::vector<std::vector<std::uint8_t>> ver_payload;
};

class RoundEnumerator {
 public:
  RoundEnumerator(const Partition& partition, const AdversarySpec& adversary,
                  const ExactOptions& options)
      : partition_(partition), adversary_(adversary), options_(options),
        width_(id_width(partition.n())), perms_(all_permutations(partition.n())) {
    if (partition.n() > options.max_enumeration_qubits)
      throw CapacityError("state too large to enumerate exactly");
    validate_adversary(adversary, partition);
  }

  ViewDistribution run() {
    SemanticBranch root;
    root.state = emit_source_state(adversary_, partition_);
    apply_colluder_actions(root.state, adversary_, partition_);
    root.ame_payload.resize(static_cast<std::size_t>(partition_.n()));
    root.ver_payload.resize(static_cast<std::size_t>(partition_.n()));
    ame_party(root, 0);

    std::sort(raw_.begin(), raw_.end());
    ViewDistribution distribution;
    for (const auto& [key, p] : raw_) {
      if (!distribution.probabilities.empty() && distribution.probabilities.back().first == key)
        distribution.probabilities.back().second += p;
      else
        distribution.probabilities.emplace_back(key, p);
    }
    for (auto& [key, acc] : rho_) {
      acc.second /= acc.first;
      distribution.colluder_states.emplace_back(key, std::move(acc.second));
    }
    std::sort(distribution.colluder_states.begin(), distribution.colluder_states.end(),
              [](const auto& a, const auto& b) { return a.first < b.first; });
    return distribution;
  }

 private:
  void ame_party(SemanticBranch& branch, int id) {
    const int n = partition_.n();
    if (id == n) {
      finish_ame(branch);
      return;
    }
    const bool leaky = options_.variant == AmeVariant::LeakyDoubleAnnounce;

    auto descend = [&](std::uint8_t first_bit, double weight, bool clone_state_with_projection,
                       Basis basis) {
      auto emit = [&](SemanticBranch& next) {
        if (leaky && !partition_.is_participant(id)) {
          for (std::uint8_t pad = 0; pad < 2; ++pad) {
            SemanticBranch padded = next;
            padded.weight *= 0.5;
            padded.ame_payload[id].push_back(pad);
            ame_party(padded, id + 1);
          }
        } else {
          ame_party(next, id + 1);
        }
      };
      if (clone_state_with_projection) {
        SemanticBranch next = branch;
        const double p = project(next.state, id, basis, first_bit);
        if (p <= 1e-14) return;
        next.weight *= p * weight;
        next.ame_payload[id] = {first_bit};
        if (leaky && partition_.is_participant(id)) next.ame_payload[id].push_back(first_bit);
        emit(next);
      } else {
        SemanticBranch next = branch;
        next.weight *= weight;
        next.ame_payload[id] = {first_bit};
        if (leaky && partition_.is_participant(id)) next.ame_payload[id].push_back(first_bit);
        emit(next);
      }
    };

    if (partition_.is_participant(id)) {
      descend(0, 0.5, false, Basis::X);
      descend(1, 0.5, false, Basis::X);
      return;
    }
    if (partition_.is_colluder(id) &&
        adversary_.behavior_for(id).behavior == AmeBehavior::SkipAndAnnounce) {
      switch (adversary_.behavior_for(id).policy) {
        case AnnouncePolicy::Constant0: descend(0, 1.0, false, Basis::X); break;
        case AnnouncePolicy::Constant1: descend(1, 1.0, false, Basis::X); break;
        case AnnouncePolicy::UniformRandom:
          descend(0, 0.5, false, Basis::X);
          descend(1, 0.5, false, Basis::X);
          break;
        case AnnouncePolicy::Silent:
          throw ModelError("exact enumeration does not model silent parties");
      }
      return;
    }
    descend(0, 1.0, true, Basis::X);
    descend(1, 1.0, true, Basis::X);
  }

  void finish_ame(SemanticBranch& branch) {
    int parity = 0;
    for (int id : partition_.nonparticipants()) parity ^= branch.ame_payload[id][0];
    if (parity) apply_gate(branch.state, partition_.alice(), Gate::Z);

    if (options_.track_colluder_state && !partition_.colluders().empty()) {
      const DensityMatrix rho = reduced_density(branch.state, partition_.colluders());
      const double slot_weight = branch.weight / static_cast<double>(perms_.size());
      for (const auto& perm : perms_) {
        KeyWriter key;
        encode_slots(key, perm, branch.ame_payload);
        auto [it, inserted] = rho_.try_emplace(
            key.bits,
            std::make_pair(0.0, Eigen::MatrixXcd(Eigen::MatrixXcd::Zero(rho.matrix().rows(),
                                                                        rho.matrix().cols()))));
        it->second.first += slot_weight;
        it->second.second += slot_weight * rho.matrix();
      }
    }

    if (!options_.include_verification) {
      for (const auto& perm : perms_) {
        KeyWriter key;
        encode_slots(key, perm, branch.ame_payload);
        raw_.emplace_back(key.bits, branch.weight / static_cast<double>(perms_.size()));
      }
      return;
    }
    ver_bob(branch, 0);
  }

  void ver_bob(SemanticBranch& branch, int bob_index) {
    const std::vector<int>& bobs = partition_.bobs();
    if (bob_index == static_cast<int>(bobs.size())) {
      ver_masks(branch);
      return;
    }
    const int id = bobs[bob_index];
    for (std::uint8_t basis_bit = 0; basis_bit < 2; ++basis_bit) {
      for (std::uint8_t outcome = 0; outcome < 2; ++outcome) {
        SemanticBranch next = branch;
        const double p =
            project(next.state, id, basis_bit == 0 ? Basis::X : Basis::Y, outcome);
        if (p <= 1e-14) continue;
        next.weight *= 0.5 * p;
        next.ver_payload[id] = {basis_bit, outcome};
        ver_bob(next, bob_index + 1);
      }
    }
  }

  void ver_masks(SemanticBranch& branch) {
    // Alice's decoy pair plus every non-participant's masking pair are
    // uniform published bits.
    std::vector<int> maskers{partition_.alice()};
    for (int id : partition_.nonparticipants()) maskers.push_back(id);
    enumerate_masks(branch, maskers, 0);
  }

  void enumerate_masks(SemanticBranch& branch, const std::vector<int>& maskers,
                       std::size_t index) {
    if (index == maskers.size()) {
      finish_verification(branch);
      return;
    }
    const int id = maskers[index];
    for (std::uint8_t b = 0; b < 2; ++b) {
      for (std::uint8_t o = 0; o < 2; ++o) {
        SemanticBranch next = branch;
        next.weight *= 0.25;
        next.ver_payload[id] = {b, o};
        enumerate_masks(next, maskers, index + 1);
      }
    }
  }

  void finish_verification(SemanticBranch& branch) {
    // Alice's reset basis and measurement are not publicly visible and the
    // outcome branches share the key, so they need no fork here.
    const double slot_weight =
        branch.weight / static_cast<double>(perms_.size() * perms_.size());
    for (const auto& ame_perm : perms_) {
      KeyWriter prefix;
      encode_slots(prefix, ame_perm, branch.ame_payload);
      for (const auto& ver_perm : perms_) {
        KeyWriter key = prefix;
        encode_slots(key, ver_perm, branch.ver_payload);
        raw_.emplace_back(key.bits, slot_weight);
      }
    }
  }

  void encode_slots(KeyWriter& key, const std::vector<int>& perm,
                    const std::vector<std::vector<std::uint8_t>>& payloads) {
    for (int slot : perm) {
      key.push(static_cast<std::uint64_t>(slot), width_);
      for (std::uint8_t bit : payloads[slot]) key.push(bit, 1);
    }
  }

  const Partition& partition_;
  const AdversarySpec& adversary_;
  ExactOptions options_;
  int width_;
  std::vector<std::vector<int>> perms_;
  std::vector<std::pair<std::uint64_t, double>> raw_;
  std::map<std::uint64_t, std::pair<double, Eigen::MatrixXcd>> rho_;
};

AdversarySpec scenario_adversary(const Partition& partition, AdversaryCase scenario,
                                 EveType eve_type, const std::vector<int>& eve_parties) {
  AdversarySpec spec;
  spec.eve_type = eve_type;
  spec.eve_parties = eve_parties;
  switch (scenario) {
    case AdversaryCase::Honest:
      break;
    case AdversaryCase::ColluderSkipUniform:
      for (int id : partition.colluders())
        spec.colluder_behavior[id] = {AmeBehavior::SkipAndAnnounce, AnnouncePolicy::UniformRandom};
      break;
    case AdversaryCase::Eq2Orthogonal: {
      const int c = static_cast<int>(partition.colluders().size());
      spec.source_mode = SourceMode::Eq2Injection;
      spec.psi = StateVector::basis_state(c, 0);
      spec.phi = StateVector::basis_state(c, (std::uint64_t{1} << c) - 1);
      for (int id : partition.colluders())
        spec.colluder_behavior[id] = {AmeBehavior::SkipAndAnnounce, AnnouncePolicy::UniformRandom};
      break;
    }
  }
  return spec;
}

std::vector<std::uint8_t> view_signature_bits(const EveView& view, int n) {
  // Broadcast payloads of the first extraction round, grouped by sender in
  // ascending id order, with the adversary's own announcements dropped
  // (trivial self-knowledge).
  std::vector<std::vector<std::uint8_t>> per_sender(static_cast<std::size_t>(n));
  for (const Event& e : view.visible_events) {
    if (e.phase != Phase::Ame || e.round != 0 || e.kind != ChannelKind::Broadcast) continue;
    if (e.sender < 0 || e.sender >= n) continue;
    per_sender[e.sender].push_back(static_cast<std::uint8_t>(e.bit));
  }
  std::vector<std::uint8_t> bits;
  for (int id = 0; id < n; ++id) {
    if (std::find(view.eve_parties.begin(), view.eve_parties.end(), id) != view.eve_parties.end())
      continue;
    bits.insert(bits.end(), per_sender[id].begin(), per_sender[id].end());
    if (bits.size() >= 32) break;
  }
  if (bits.size() > 32) bits.resize(32);
  return bits;
}

}  // namespace

const char* to_string(AdversaryCase scenario) {
  switch (scenario) {
    case AdversaryCase::Honest: return "honest";
    case AdversaryCase::ColluderSkipUniform: return "colluder-skip";
    case AdversaryCase::Eq2Orthogonal: return "entangled-injection";
  }
  return "?";
}

std::vector<Partition> consistent_partitions(int n, int m, EveType eve_type,
                                             const std::vector<int>& eve_parties,
                                             int colluder_count, std::size_t max_partitions) {
  if (eve_parties.empty()) throw ModelError("ensemble: adversary controls no party");
  std::vector<int> eve_sorted = eve_parties;
  std::sort(eve_sorted.begin(), eve_sorted.end());

  std::vector<int> others;
  for (int id = 0; id < n; ++id)
    if (!std::binary_search(eve_sorted.begin(), eve_sorted.end(), id)) others.push_back(id);

  std::vector<Partition> ensemble;
  auto try_add = [&](int alice, const std::vector<int>& bobs, const std::vector<int>& colluders) {
    if (ensemble.size() >= max_partitions) return;
    Partition partition(n, alice, bobs, colluders);
    switch (eve_type) {
      case EveType::ParticipantBob:
        if (!std::binary_search(partition.bobs().begin(), partition.bobs().end(), eve_sorted[0]))
          return;
        break;
      case EveType::HonestNonparticipant:
        if (!partition.is_dprime(eve_sorted[0])) return;
        break;
      case EveType::ColluderSet:
        if (partition.colluders() != eve_sorted) return;
        break;
    }
    ensemble.push_back(std::move(partition));
  };

  const bool eve_is_bob = eve_type == EveType::ParticipantBob;
  const bool eve_is_colluder = eve_type == EveType::ColluderSet;
  if (eve_is_bob && eve_sorted.size() != 1) throw ModelError("ensemble: participant adversary is one party");
  if (eve_type == EveType::HonestNonparticipant && eve_sorted.size() != 1)
    throw ModelError("ensemble: honest-but-curious adversary is one party");

  // Roles assigned to the non-adversary parties: alice, the other receivers,
  // and (when the scenario has them and the adversary is not the colluder
  // set itself) the colluding parties.
  const int needed_bobs = m - (eve_is_bob ? 1 : 0);
  const int needed_colluders = eve_is_colluder ? 0 : colluder_count;
  const int k = static_cast<int>(others.size());
  for (int alice_pick = 0; alice_pick < k; ++alice_pick) {
    std::vector<int> rest;
    for (int i = 0; i < k; ++i)
      if (i != alice_pick) rest.push_back(others[i]);
    const int r = static_cast<int>(rest.size());
    if (needed_bobs < 0 || needed_bobs > r) continue;
    // choose receivers among rest via bitmask, then colluders among leftover
    for (std::uint32_t bob_mask = 0; bob_mask < (1u << r); ++bob_mask) {
      if (std::popcount(bob_mask) != needed_bobs) continue;
      std::vector<int> bobs, leftover;
      for (int i = 0; i < r; ++i)
        ((bob_mask >> i) & 1u ? bobs : leftover).push_back(rest[i]);
      if (eve_is_bob) bobs.push_back(eve_sorted[0]);
      const int l = static_cast<int>(leftover.size());
      if (needed_colluders > l) continue;
      for (std::uint32_t col_mask = 0; col_mask < (1u << l); ++col_mask) {
        if (std::popcount(col_mask) != needed_colluders) continue;
        std::vector<int> colluders;
        for (int i = 0; i < l; ++i)
          if ((col_mask >> i) & 1u) colluders.push_back(leftover[i]);
        if (eve_is_colluder) colluders = eve_sorted;
        try_add(others[alice_pick], bobs, colluders);
        if (eve_is_colluder) break;  // colluder set fixed; inner mask redundant
      }
    }
  }
  return ensemble;
}

ViewDistribution exact_view_distribution(const Partition& partition,
                                         const AdversarySpec& adversary,
                                         const ExactOptions& options) {
  RoundEnumerator enumerator(partition, adversary, options);
  return enumerator.run();
}

double max_probability_difference(const ViewDistribution& a, const ViewDistribution& b) {
  double worst = 0.0;
  std::size_t i = 0, j = 0;
  while (i < a.probabilities.size() || j < b.probabilities.size()) {
    if (j >= b.probabilities.size() ||
        (i < a.probabilities.size() && a.probabilities[i].first < b.probabilities[j].first)) {
      worst = std::max(worst, a.probabilities[i].second);
      ++i;
    } else if (i >= a.probabilities.size() || b.probabilities[j].first < a.probabilities[i].first) {
      worst = std::max(worst, b.probabilities[j].second);
      ++j;
    } else {
      worst = std::max(worst, std::abs(a.probabilities[i].second - b.probabilities[j].second));
      ++i;
      ++j;
    }
  }
  return worst;
}

double max_colluder_state_distance(const ViewDistribution& a, const ViewDistribution& b) {
  double worst = 0.0;
  std::size_t i = 0, j = 0;
  while (i < a.colluder_states.size() || j < b.colluder_states.size()) {
    if (j >= b.colluder_states.size() ||
        (i < a.colluder_states.size() && a.colluder_states[i].first < b.colluder_states[j].first)) {
      worst = 1.0;
      ++i;
    } else if (i >= a.colluder_states.size() ||
               b.colluder_states[j].first < a.colluder_states[i].first) {
      worst = 1.0;
      ++j;
    } else {
      worst = std::max(worst, trace_distance(DensityMatrix(a.colluder_states[i].second),
                                             DensityMatrix(b.colluder_states[j].second)));
      ++i;
      ++j;
    }
  }
  return worst;
}

std::vector<std::pair<std::uint64_t, double>> exact_notification_loop_view(
    const Partition& partition, int target, const std::vector<int>& eve_parties) {
  const int n = partition.n();
  if (n > 6) throw CapacityError("notification loop too large to enumerate exactly");
  std::vector<int> eve_sorted = eve_parties;
  std::sort(eve_sorted.begin(), eve_sorted.end());
  std::vector<int> others;
  for (int id = 0; id < n; ++id)
    if (!std::binary_search(eve_sorted.begin(), eve_sorted.end(), id)) others.push_back(id);

  const bool target_is_receiver =
      std::binary_search(partition.bobs().begin(), partition.bobs().end(), target);
  const bool target_is_eve =
      std::binary_search(eve_sorted.begin(), eve_sorted.end(), target);

  // Each non-adversary chooser picks one of 2^(n-1) parity-constrained rows.
  // The adversary's own rows are trivial self-knowledge and are XORed out of
  // the aggregates, so they stay out of the enumeration.
  const std::uint64_t row_choices = std::uint64_t{1} << (n - 1);
  const double row_weight = 1.0 / static_cast<double>(row_choices);

  std::map<std::uint64_t, double> table;
  std::vector<std::uint64_t> choice(others.size(), 0);
  std::vector<std::vector<std::uint8_t>> rows(others.size());

  auto expand_row = [&](std::uint64_t free_bits, int parity) {
    std::vector<std::uint8_t> row(static_cast<std::size_t>(n));
    std::uint8_t acc = 0;
    for (int k = 0; k + 1 < n; ++k) {
      row[k] = static_cast<std::uint8_t>((free_bits >> k) & 1ull);
      acc ^= row[k];
    }
    row[n - 1] = acc ^ static_cast<std::uint8_t>(parity & 1);
    return row;
  };

  const auto recurse = [&](auto&& self, std::size_t idx, double weight) -> void {
    if (idx == others.size()) {
      KeyWriter key;
      for (int e : eve_sorted)
        for (std::size_t j = 0; j < others.size(); ++j) key.push(rows[j][e], 1);
      if (target_is_eve) {
        for (std::size_t k_idx = 0; k_idx < others.size(); ++k_idx) {
          const int k = others[k_idx];
          std::uint8_t column = 0;
          for (std::size_t j = 0; j < others.size(); ++j) column ^= rows[j][k];
          key.push(column, 1);
        }
      }
      table[key.bits] += weight;
      return;
    }
    const int chooser = others[idx];
    const int parity = (chooser == partition.alice() && target_is_receiver) ? 1 : 0;
    for (std::uint64_t free_bits = 0; free_bits < row_choices; ++free_bits) {
      rows[idx] = expand_row(free_bits, parity);
      self(self, idx + 1, weight * row_weight);
    }
  };
  recurse(recurse, 0, 1.0);

  return {table.begin(), table.end()};
}

std::string ExactCaseResult::label() const {
  std::ostringstream out;
  out << "n=" << n << " m=" << m << " eve=" << acka::to_string(eve_type) << ':';
  for (std::size_t i = 0; i < eve_parties.size(); ++i)
    out << (i ? "," : "") << eve_parties[i];
  out << " case=" << acka::to_string(scenario);
  return out.str();
}

ExactCaseResult run_exact_case(int n, int m, EveType eve_type,
                               const std::vector<int>& eve_parties, AdversaryCase scenario) {
  ExactCaseResult result;
  result.n = n;
  result.m = m;
  result.eve_type = eve_type;
  result.eve_parties = eve_parties;
  result.scenario = scenario;

  const int colluder_count =
      scenario == AdversaryCase::Honest
          ? (eve_type == EveType::ColluderSet ? static_cast<int>(eve_parties.size()) : 0)
          : (eve_type == EveType::ColluderSet ? static_cast<int>(eve_parties.size()) : 1);
  const std::vector<Partition> ensemble =
      consistent_partitions(n, m, eve_type, eve_parties, colluder_count);
  result.partitions = ensemble.size();
  if (ensemble.size() < 2) {
    result.no_contrast = true;
    result.pass = true;
    return result;
  }

  ExactOptions options;
  options.include_verification = true;
  options.track_colluder_state = eve_type == EveType::ColluderSet;

  ViewDistribution baseline;
  std::vector<std::vector<std::pair<std::uint64_t, double>>> baseline_notification;
  for (std::size_t p = 0; p < ensemble.size(); ++p) {
    const Partition& partition = ensemble[p];
    const AdversarySpec spec = scenario_adversary(partition, scenario, eve_type, eve_parties);
    ViewDistribution dist = exact_view_distribution(partition, spec, options);

    std::vector<std::vector<std::pair<std::uint64_t, double>>> notification_views;
    for (int target = 0; target < n; ++target)
      notification_views.push_back(exact_notification_loop_view(partition, target, eve_parties));

    if (p == 0) {
      baseline = std::move(dist);
      baseline_notification = std::move(notification_views);
      continue;
    }
    result.max_prob_diff = std::max(result.max_prob_diff,
                                    max_probability_difference(baseline, dist));
    if (options.track_colluder_state)
      result.max_state_distance =
          std::max(result.max_state_distance, max_colluder_state_distance(baseline, dist));
    for (int target = 0; target < n; ++target) {
      const auto& a = baseline_notification[target];
      const auto& b = notification_views[target];
      double diff = 0.0;
      std::size_t i = 0, j = 0;
      while (i < a.size() || j < b.size()) {
        if (j >= b.size() || (i < a.size() && a[i].first < b[j].first)) {
          diff = std::max(diff, a[i++].second);
        } else if (i >= a.size() || b[j].first < a[i].first) {
          diff = std::max(diff, b[j++].second);
        } else {
          diff = std::max(diff, std::abs(a[i].second - b[j].second));
          ++i;
          ++j;
        }
      }
      result.max_notification_diff = std::max(result.max_notification_diff, diff);
    }
  }

  result.pass = result.max_prob_diff <= kExactProbabilityTolerance &&
                result.max_state_distance <= kExactStateDistanceTolerance &&
                result.max_notification_diff <= kExactProbabilityTolerance;
  return result;
}

std::vector<ExactCaseResult> exact_anonymity_matrix(int n_max) {
  std::vector<ExactCaseResult> results;
  for (int n = 2; n <= std::min(n_max, 4); ++n) {
    const int eve = n - 1;
    for (int m = 1; m < n; ++m) {
      const int nonparticipants = n - (m + 1);

      // Adversary inside the participant set.
      results.push_back(run_exact_case(n, m, EveType::ParticipantBob, {eve}, AdversaryCase::Honest));
      if (nonparticipants >= 1) {
        results.push_back(
            run_exact_case(n, m, EveType::ParticipantBob, {eve}, AdversaryCase::ColluderSkipUniform));
        results.push_back(
            run_exact_case(n, m, EveType::ParticipantBob, {eve}, AdversaryCase::Eq2Orthogonal));
      }

      // Honest-but-curious outsider.
      if (nonparticipants >= 1) {
        results.push_back(
            run_exact_case(n, m, EveType::HonestNonparticipant, {eve}, AdversaryCase::Honest));
        if (nonparticipants >= 2) {
          results.push_back(run_exact_case(n, m, EveType::HonestNonparticipant, {eve},
                                           AdversaryCase::ColluderSkipUniform));
          results.push_back(run_exact_case(n, m, EveType::HonestNonparticipant, {eve},
                                           AdversaryCase::Eq2Orthogonal));
        }
      }

      // The colluder set itself.
      if (nonparticipants >= 1) {
        for (const AdversaryCase scenario :
             {AdversaryCase::Honest, AdversaryCase::ColluderSkipUniform,
              AdversaryCase::Eq2Orthogonal}) {
          results.push_back(run_exact_case(n, m, EveType::ColluderSet, {eve}, scenario));
        }
        if (nonparticipants >= 2 && n >= 4) {
          results.push_back(
              run_exact_case(n, m, EveType::ColluderSet, {eve - 1, eve}, AdversaryCase::Honest));
          results.push_back(run_exact_case(n, m, EveType::ColluderSet, {eve - 1, eve},
                                           AdversaryCase::Eq2Orthogonal));
        }
      }
    }
  }
  return results;
}

std::string AnonymityReport::to_text() const {
  std::ostringstream out;
  out << "anonymity-report\n";
  out << "mode = statistical\n";
  out << "partitions = " << partitions << "\n";
  out << "runs-per-partition = " << runs_per_partition << "\n";
  if (no_contrast) {
    out << "result = NO-CONTRAST\n";
    return out.str();
  }
  out << "chi2 = " << homogeneity.statistic << "\n";
  out << "dof = " << homogeneity.dof << "\n";
  out << "p-value = " << homogeneity.p_value << "\n";
  out << "mi-bits = " << mi_bits << "\n";
  out << "tv-max = " << tv_max << "\n";
  out << "marginal-max-z = " << max_marginal_z << "\n";
  out << "result = " << (pass ? "PASS" : "FAIL") << "\n";
  return out.str();
}

AnonymityReport run_experiment(const AnonymityExperiment& experiment) {
  AnonymityReport report;
  report.partitions = experiment.ensemble.size();
  report.runs_per_partition = experiment.runs_per_partition;
  if (experiment.ensemble.size() < 2) {
    report.no_contrast = true;
    return report;
  }
  if (experiment.runs_per_partition < 1)
    throw ConfigError("experiment: need at least one run per partition");
  const int signature_bits = std::clamp(experiment.signature_bits, 1, 16);
  const std::size_t bins = std::size_t{1} << signature_bits;

  std::vector<std::vector<long>> counts(experiment.ensemble.size(),
                                        std::vector<long>(bins, 0));
  std::vector<std::vector<long>> bit_ones(experiment.ensemble.size(),
                                          std::vector<long>(32, 0));
  std::vector<std::vector<long>> bit_totals(experiment.ensemble.size(),
                                            std::vector<long>(32, 0));

  for (std::size_t p = 0; p < experiment.ensemble.size(); ++p) {
    const Partition& partition = experiment.ensemble[p];
    AckaConfig config = experiment.base;
    config.n = partition.n();
    config.m = partition.m();
    config.alice = partition.alice();
    config.bobs = partition.bobs();
    config.adversary.eve_type = experiment.eve_type;
    config.adversary.eve_parties = experiment.eve_parties;
    if (config.partition().colluders() != partition.colluders())
      throw ModelError("experiment: ensemble colluders must match the adversary spec");

    for (long r = 0; r < experiment.runs_per_partition; ++r) {
      const std::uint64_t run_index =
          static_cast<std::uint64_t>(p) * static_cast<std::uint64_t>(experiment.runs_per_partition) +
          static_cast<std::uint64_t>(r);
      Transcript transcript;
      run_acka(config, run_index, &transcript);
      const EveView view =
          extract_view(transcript, partition, experiment.eve_type, experiment.eve_parties);
      const std::vector<std::uint8_t> bits = view_signature_bits(view, partition.n());

      std::size_t signature = 0;
      for (int k = 0; k < signature_bits && k < static_cast<int>(bits.size()); ++k)
        signature |= static_cast<std::size_t>(bits[k] & 1) << k;
      ++counts[p][signature];
      for (std::size_t k = 0; k < bits.size() && k < 32; ++k) {
        bit_ones[p][k] += bits[k] & 1;
        ++bit_totals[p][k];
      }
    }
  }

  report.homogeneity = chi_square_homogeneity(counts);
  report.mi_bits = mutual_information_bits(counts);
  for (std::size_t a = 0; a < counts.size(); ++a)
    for (std::size_t b = a + 1; b < counts.size(); ++b)
      report.tv_max = std::max(report.tv_max, total_variation(counts[a], counts[b]));
  for (std::size_t p = 0; p < bit_ones.size(); ++p) {
    for (std::size_t k = 0; k < 32; ++k) {
      if (bit_totals[p][k] == 0) continue;
      const double total = static_cast<double>(bit_totals[p][k]);
      const double z = std::abs(static_cast<double>(bit_ones[p][k]) - 0.5 * total) /
                       (0.5 * std::sqrt(total));
      report.max_marginal_z = std::max(report.max_marginal_z, z);
    }
  }
  report.pass = report.homogeneity.p_value > kHomogeneityMinPValue &&
                report.mi_bits < kMutualInfoMaxBits;
  return report;
}

}  // namespace acka
