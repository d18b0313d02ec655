#pragma once

#include <cstdint>
#include <map>
#include <vector>

#include "acka/net.hpp"
#include "acka/partition.hpp"
#include "acka/rng.hpp"

namespace acka {

/// n bits uniform over all strings whose XOR equals `parity`.
std::vector<std::uint8_t> gen_share_row(int parity, int n, RngStream& rng);

/// XOR-share based anonymous notification. Alice's share row for target i
/// has odd parity exactly when i is one of her receivers; every agent ends
/// up with notified[i] = 1 iff i is a receiver. One target loop runs per
/// agent i = 0..n-1 sequentially; within a loop, rows are generated and sent
/// in ascending chooser order and aggregates in ascending sender order.
/// Self-deliveries are logged as private events with sender == receiver.
std::map<int, std::uint8_t> run_notification(const Partition& partition, Network& net,
                                             RngStream& rng);

}  // namespace acka
