#pragma once

#include <algorithm>
#include <cstdint>
#include <vector>

#include "acka/errors.hpp"

namespace acka {

/// Disjoint split of the n party ids {0..n-1} into Alice, her chosen
/// receivers ("bobs"), honest non-participants and colluding
/// non-participants. Any id not listed as alice/bob/colluder is an honest
/// non-participant.
class Partition {
 public:
  Partition(int n, int alice, std::vector<int> bobs, std::vector<int> colluders = {})
      : n_(n), alice_(alice), bobs_(std::move(bobs)), colluders_(std::move(colluders)) {
    if (n < 1) throw ModelError("partition: n must be >= 1");
    auto check_range = [n](int id, const char* what) {
      if (id < 0 || id >= n) throw ModelError(std::string("partition: ") + what + " id out of range");
    };
    check_range(alice_, "alice");
    std::sort(bobs_.begin(), bobs_.end());
    std::sort(colluders_.begin(), colluders_.end());
    if (std::adjacent_find(bobs_.begin(), bobs_.end()) != bobs_.end())
      throw ModelError("partition: duplicate bob id");
    if (std::adjacent_find(colluders_.begin(), colluders_.end()) != colluders_.end())
      throw ModelError("partition: duplicate colluder id");
    for (int b : bobs_) {
      check_range(b, "bob");
      if (b == alice_) throw ModelError("partition: alice cannot be a receiver");
      if (std::binary_search(colluders_.begin(), colluders_.end(), b))
        throw ModelError("partition: colluders are non-participants");
    }
    for (int c : colluders_) {
      check_range(c, "colluder");
      if (c == alice_) throw ModelError("partition: alice cannot collude");
    }
    for (int id = 0; id < n_; ++id) {
      if (id == alice_) continue;
      if (std::binary_search(bobs_.begin(), bobs_.end(), id)) continue;
      if (std::binary_search(colluders_.begin(), colluders_.end(), id)) continue;
      dprime_.push_back(id);
    }
  }

  int n() const { return n_; }
  int alice() const { return alice_; }
  int m() const { return static_cast<int>(bobs_.size()); }

  const std::vector<int>& bobs() const { return bobs_; }
  const std::vector<int>& dprime() const { return dprime_; }
  const std::vector<int>& colluders() const { return colluders_; }

  std::vector<int> participants() const {
    std::vector<int> out = bobs_;
    out.push_back(alice_);
    std::sort(out.begin(), out.end());
    return out;
  }

  std::vector<int> nonparticipants() const {
    std::vector<int> out = dprime_;
    out.insert(out.end(), colluders_.begin(), colluders_.end());
    std::sort(out.begin(), out.end());
    return out;
  }

  bool is_participant(int id) const {
    return id == alice_ || std::binary_search(bobs_.begin(), bobs_.end(), id);
  }
  bool is_colluder(int id) const {
    return std::binary_search(colluders_.begin(), colluders_.end(), id);
  }
  bool is_dprime(int id) const { return !is_participant(id) && !is_colluder(id); }

  std::uint32_t participant_mask() const {
    std::uint32_t mask = 1u << alice_;
    for (int b : bobs_) mask |= 1u << b;
    return mask;
  }

  friend bool operator==(const Partition& a, const Partition& b) {
    return a.n_ == b.n_ && a.alice_ == b.alice_ && a.bobs_ == b.bobs_ &&
           a.colluders_ == b.colluders_;
  }

 private:
  int n_;
  int alice_;
  std::vector<int> bobs_;
  std::vector<int> colluders_;
  std::vector<int> dprime_;
};

}  // namespace acka
