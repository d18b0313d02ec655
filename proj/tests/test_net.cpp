#include <doctest.h>

#include <map>
#include <set>

#include "acka/net.hpp"
#include "acka/orchestrator.hpp"
#include "acka/stats.hpp"

using namespace acka;

TEST_CASE("transcript export format") {
  Transcript t;
  t.append(Phase::Notification, 0, ChannelKind::Private, 0, 1, 1);
  t.append(Phase::Ame, 2, ChannelKind::Broadcast, 3, -1, 0);
  t.append(Phase::Beacon, 2, ChannelKind::Beacon, -1, -1, 1);
  CHECK(t.to_text() ==
        "0\tnotification\t0\tprivate\t0\t1\t1\n"
        "1\tame\t2\tbroadcast\t3\t-\t0\n"
        "2\tbeacon\t2\tbeacon\t-\t-\t1\n");
}

TEST_CASE("private channel visibility") {
  const Partition partition(3, 0, {1});
  Network net(3);
  net.set_context(Phase::Notification, 0);
  net.send_private(0, 1, 1);

  const EveView outsider = extract_view(net.transcript(), partition, EveType::HonestNonparticipant, {2});
  CHECK(outsider.visible_events.empty());

  const EveView receiver = extract_view(net.transcript(), partition, EveType::ParticipantBob, {1});
  REQUIRE(receiver.visible_events.size() == 1);
  CHECK(receiver.visible_events[0].bit == 1);

  CHECK_THROWS_AS(net.send_private(0, 0, 1), ModelError);
  CHECK_THROWS_AS(net.send_private(0, 5, 1), ModelError);
}

TEST_CASE("broadcast preserves the announced multiset") {
  Network net(3);
  net.set_context(Phase::Ame, 0);
  RngStream rng(5);
  const auto order = net.broadcast_round(
      {Announcement{0, std::vector<std::uint8_t>{0}}, Announcement{1, std::vector<std::uint8_t>{1}},
       Announcement{2, std::vector<std::uint8_t>{0}}},
      rng);
  REQUIRE(order.size() == 3);
  std::multiset<int> bits;
  std::set<int> parties;
  for (const auto& [party, payload] : order) {
    parties.insert(party);
    bits.insert(payload.at(0));
  }
  CHECK(parties == std::set<int>{0, 1, 2});
  CHECK(bits == std::multiset<int>{0, 0, 1});

  const auto single = net.broadcast_round({Announcement{1, std::vector<std::uint8_t>{1}}}, rng);
  REQUIRE(single.size() == 1);
  CHECK(single[0].first == 1);
}

TEST_CASE("broadcast order is uniform over permutations") {
  RngStream rng(99);
  std::map<std::vector<int>, long> histogram;
  const long rounds = 10000;
  for (long r = 0; r < rounds; ++r) {
    Network net(4);
    net.set_context(Phase::Ame, 0);
    const auto order = net.broadcast_round({Announcement{0, std::vector<std::uint8_t>{0}},
                                            Announcement{1, std::vector<std::uint8_t>{0}},
                                            Announcement{2, std::vector<std::uint8_t>{0}},
                                            Announcement{3, std::vector<std::uint8_t>{0}}},
                                           rng);
    std::vector<int> sequence;
    for (const auto& [party, payload] : order) sequence.push_back(party);
    ++histogram[sequence];
  }
  CHECK(histogram.size() == 24);
  const double expected = rounds / 24.0;
  const double sigma = binomial_sigma(rounds, 1.0 / 24.0);
  for (const auto& [order, count] : histogram)
    CHECK(std::abs(static_cast<double>(count) - expected) < 4.0 * sigma);
}

TEST_CASE("missing announcement aborts the round") {
  Network net(3);
  net.set_context(Phase::Ame, 1);
  RngStream rng(8);
  bool aborted = false;
  for (int attempt = 0; attempt < 16 && !aborted; ++attempt) {
    try {
      net.broadcast_round({Announcement{0, std::vector<std::uint8_t>{1}},
                           Announcement{1, std::nullopt},
                           Announcement{2, std::vector<std::uint8_t>{0}}},
                          rng);
    } catch (const ProtocolAbort&) {
      aborted = true;
    }
  }
  CHECK(aborted);
  bool abort_marker = false;
  for (const Event& e : net.transcript().events)
    if (e.kind == ChannelKind::Abort && e.sender == 1) abort_marker = true;
  CHECK(abort_marker);
}

TEST_CASE("beacon frequencies") {
  Network net(2);
  net.set_context(Phase::Beacon, 0);
  RngStream rng(123);

  for (int i = 0; i < 50; ++i) CHECK(net.beacon_bit(1, rng) == 1);

  long ones = 0;
  const long draws = 100000;
  for (long i = 0; i < draws; ++i) ones += net.beacon_bit(4, rng);
  CHECK(std::abs(static_cast<double>(ones) - draws * 0.25) < 4.0 * binomial_sigma(draws, 0.25));

  long fair = 0;
  for (long i = 0; i < draws; ++i) fair += net.beacon_bit(2, rng);
  CHECK(std::abs(static_cast<double>(fair) - draws * 0.5) < 4.0 * binomial_sigma(draws, 0.5));

  CHECK_THROWS_AS(net.beacon_bit(0, rng), ConfigError);
}

TEST_CASE("views agree on the public subsequence and keep private events scoped") {
  AckaConfig config;
  config.n = 4;
  config.m = 1;
  config.bobs = {1};
  config.l_states = 3;
  config.d_param = 2;
  config.seed = 42;
  Transcript transcript;
  run_acka(config, 0, &transcript);
  const Partition partition = config.partition();

  const EveView bob = extract_view(transcript, partition, EveType::ParticipantBob, {1});
  const EveView np2 = extract_view(transcript, partition, EveType::HonestNonparticipant, {2});
  const EveView np3 = extract_view(transcript, partition, EveType::HonestNonparticipant, {3});

  auto public_events = [](const EveView& view) {
    std::vector<std::uint64_t> seqs;
    for (const Event& e : view.visible_events)
      if (e.kind != ChannelKind::Private) seqs.push_back(e.seq);
    return seqs;
  };
  CHECK(public_events(bob) == public_events(np2));
  CHECK(public_events(np2) == public_events(np3));

  for (const Event& e : np2.visible_events)
    if (e.kind == ChannelKind::Private) CHECK((e.sender == 2 || e.receiver == 2));

  CHECK_THROWS_AS(extract_view(transcript, partition, EveType::ColluderSet, {0, 2}), ModelError);
  CHECK_THROWS_AS(extract_view(transcript, partition, EveType::HonestNonparticipant, {1}),
                  ModelError);
}

TEST_CASE("replay determinism") {
  AckaConfig config;
  config.n = 5;
  config.m = 2;
  config.bobs = {2, 4};
  config.l_states = 4;
  config.d_param = 3;
  config.seed = 777;

  Transcript first, second;
  run_acka(config, 3, &first);
  run_acka(config, 3, &second);
  CHECK(first.to_text() == second.to_text());

  Transcript other_run;
  run_acka(config, 4, &other_run);
  CHECK(first.to_text() != other_run.to_text());
}
