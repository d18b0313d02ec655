#include "acka/notification.hpp"

#include <algorithm>

namespace acka {

std::vector<std::uint8_t> gen_share_row(int parity, int n, RngStream& rng) {
  if (n < 1) throw ModelError("share row: need at least one bit");
  std::vector<std::uint8_t> row(static_cast<std::size_t>(n));
  std::uint8_t acc = 0;
  for (int k = 0; k + 1 < n; ++k) {
    row[k] = rng.uniform_bit();
    acc ^= row[k];
  }
  row[n - 1] = acc ^ static_cast<std::uint8_t>(parity & 1);
  return row;
}

std::map<int, std::uint8_t> run_notification(const Partition& partition, Network& net,
                                             RngStream& rng) {
  const int n = partition.n();
  if (net.n() != n) throw ModelError("notification: network size mismatch");

  std::map<int, std::uint8_t> notified;
  for (int target = 0; target < n; ++target) {
    net.set_context(Phase::Notification, target);
    const bool target_is_receiver =
        std::binary_search(partition.bobs().begin(), partition.bobs().end(), target);

    // Step 1: every chooser j picks a parity-constrained row and distributes it.
    std::vector<std::vector<std::uint8_t>> rows(static_cast<std::size_t>(n));
    for (int j = 0; j < n; ++j) {
      const int parity = (j == partition.alice() && target_is_receiver) ? 1 : 0;
      rows[j] = gen_share_row(parity, n, rng);
      for (int k = 0; k < n; ++k) {
        if (k == j)
          net.send_self(j, rows[j][k]);
        else
          net.send_private(j, k, rows[j][k]);
      }
    }

    // Step 2: every agent k aggregates its column and forwards it to the target.
    std::uint8_t target_bit = 0;
    for (int k = 0; k < n; ++k) {
      std::uint8_t column = 0;
      for (int j = 0; j < n; ++j) column ^= rows[j][k];
      if (k == target)
        net.send_self(k, column);
      else
        net.send_private(k, target, column);
      target_bit ^= column;
    }

    // Step 3: the target XORs what it received.
    notified[target] = target_bit;
  }
  return notified;
}

}  // namespace acka
