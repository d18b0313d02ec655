#include <doctest.h>

#include <map>

#include "acka/anonymity.hpp"
#include "acka/notification.hpp"
#include "acka/stats.hpp"

using namespace acka;

TEST_CASE("share rows have the requested parity") {
  RngStream rng(1);
  CHECK(gen_share_row(0, 1, rng) == std::vector<std::uint8_t>{0});
  CHECK(gen_share_row(1, 1, rng) == std::vector<std::uint8_t>{1});

  for (int trial = 0; trial < 500; ++trial) {
    for (int parity = 0; parity < 2; ++parity) {
      const auto row = gen_share_row(parity, 5, rng);
      int acc = 0;
      for (std::uint8_t bit : row) acc ^= bit;
      CHECK(acc == parity);
    }
  }
}

TEST_CASE("share rows are uniform within a parity class") {
  RngStream rng(2024);
  std::vector<long> counts(8, 0);  // odd-parity strings of length 4
  const long draws = 10000;
  for (long d = 0; d < draws; ++d) {
    const auto row = gen_share_row(1, 4, rng);
    // Index by the three free bits; the last is determined.
    ++counts[row[0] | (row[1] << 1) | (row[2] << 2)];
  }
  const ChiSquareResult result = chi_square_uniform(counts);
  CHECK(result.p_value > 0.01);
}

TEST_CASE("notification delivers exactly to the chosen receivers") {
  {
    const Partition partition(3, 0, {2});
    Network net(3);
    RngStream rng(9);
    const auto notified = run_notification(partition, net, rng);
    CHECK(notified == std::map<int, std::uint8_t>{{0, 0}, {1, 0}, {2, 1}});
  }
  {
    const Partition partition(2, 0, {});
    Network net(2);
    RngStream rng(10);
    const auto notified = run_notification(partition, net, rng);
    CHECK(notified == std::map<int, std::uint8_t>{{0, 0}, {1, 0}});
  }
  for (std::uint64_t seed = 0; seed < 1000; ++seed) {
    const Partition partition(5, 0, {1, 3});
    Network net(5);
    RngStream rng = RngStream::for_run(seed, 0);
    const auto notified = run_notification(partition, net, rng);
    for (int id = 0; id < 5; ++id)
      CHECK(notified.at(id) == ((id == 1 || id == 3) ? 1 : 0));
  }
}

TEST_CASE("notification correctness across small networks") {
  for (int n = 2; n <= 6; ++n) {
    for (int alice = 0; alice < n; ++alice) {
      for (std::uint32_t mask = 0; mask < (1u << n); ++mask) {
        if (mask & (1u << alice)) continue;
        std::vector<int> bobs;
        for (int id = 0; id < n; ++id)
          if (mask & (1u << id)) bobs.push_back(id);
        const Partition partition(n, alice, bobs);
        Network net(n);
        RngStream rng = RngStream::for_run(31, mask * 16 + alice);
        const auto notified = run_notification(partition, net, rng);
        for (int id = 0; id < n; ++id)
          CHECK(notified.at(id) == ((mask >> id) & 1u));
      }
    }
  }
}

TEST_CASE("notification uses exactly n^3 + n^2 private channel events") {
  for (int n : {2, 3, 5}) {
    const Partition partition(n, 0, {n - 1});
    Network net(n);
    RngStream rng(12);
    run_notification(partition, net, rng);
    long private_events = 0;
    for (const Event& e : net.transcript().events)
      if (e.kind == ChannelKind::Private) ++private_events;
    CHECK(private_events == static_cast<long>(n) * n * n + static_cast<long>(n) * n);
  }
}

TEST_CASE("observer's loop view is uniform and role-independent (exact)") {
  // Whether the target is a receiver must not show in what an observer sees.
  const Partition target_is_receiver(3, 0, {2});
  const Partition target_is_not(3, 0, {1});
  const auto with = exact_notification_loop_view(target_is_receiver, 2, {1});
  const auto without = exact_notification_loop_view(target_is_not, 2, {1});

  REQUIRE(with.size() == 4);  // two received share bits
  for (const auto& [key, p] : with) CHECK(p == doctest::Approx(0.25).epsilon(1e-12));
  REQUIRE(without.size() == with.size());
  for (std::size_t i = 0; i < with.size(); ++i) {
    CHECK(with[i].first == without[i].first);
    CHECK(with[i].second == doctest::Approx(without[i].second).epsilon(1e-12));
  }
}

TEST_CASE("observer's received bits are role-independent (sampled, n=5)") {
  // 10^4 runs per role assignment; the observer's received bits for a fixed
  // target loop must be homogeneous across the two assignments.
  const Partition receiver_case(5, 0, {3});
  const Partition bystander_case(5, 0, {1});
  const int target = 3;
  const int observer = 2;

  std::vector<std::vector<long>> table(2, std::vector<long>(32, 0));
  for (int which = 0; which < 2; ++which) {
    const Partition& partition = which == 0 ? receiver_case : bystander_case;
    for (long r = 0; r < 10000; ++r) {
      Network net(5);
      RngStream rng = RngStream::for_run(555 + which, static_cast<std::uint64_t>(r));
      run_notification(partition, net, rng);
      int key = 0, bit_index = 0;
      for (const Event& e : net.transcript().events) {
        if (e.kind != ChannelKind::Private || e.round != target) continue;
        if (e.receiver != observer || e.sender == observer) continue;
        key |= (e.bit & 1) << bit_index++;
      }
      REQUIRE(bit_index == 4);  // shares from the four other parties
      ++table[which][static_cast<std::size_t>(key)];
    }
  }
  const ChiSquareResult result = chi_square_homogeneity(table);
  CHECK(result.p_value > 0.01);
}
