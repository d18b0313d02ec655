#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "acka/errors.hpp"
#include "acka/partition.hpp"
#include "acka/qsim.hpp"
#include "acka/rng.hpp"

namespace acka {

enum class Phase : std::uint8_t { Notification, Ame, Verification, KeyGen, Beacon, Validate };
enum class ChannelKind : std::uint8_t { Private, Broadcast, Beacon, Abort };

const char* to_string(Phase phase);
const char* to_string(ChannelKind kind);

struct Event {
  std::uint64_t seq;
  Phase phase;
  int round;
  ChannelKind kind;
  int sender;    // -1 when absent (beacon)
  int receiver;  // -1 when absent (broadcast/beacon)
  int bit;       // -1 when absent (abort marker)
};

/// Ordered log of every message in a run. Exported one event per line as
///   seq  phase  round  kind  sender  receiver  bit
/// tab-separated, "-" for absent fields.
struct Transcript {
  std::vector<Event> events;
  std::uint64_t next_seq = 0;

  Event& append(Phase phase, int round, ChannelKind kind, int sender, int receiver, int bit);
  std::string to_text() const;
};

enum class EveType : std::uint8_t { ParticipantBob, HonestNonparticipant, ColluderSet };

const char* to_string(EveType type);

struct EveView {
  EveType eve_type;
  std::vector<int> eve_parties;
  std::vector<Event> visible_events;
  std::optional<DensityMatrix> visible_quantum;
};

/// One announcement for a broadcast round: absent payload models a party
/// that stays silent past its slot and triggers the abort path.
struct Announcement {
  int party;
  std::optional<std::vector<std::uint8_t>> payload;
};

/// Simulated communication fabric for one run: private pairwise channels,
/// a broadcast channel with uniformly shuffled announcement order, and a
/// trusted public randomness beacon. Every message lands in the transcript.
class Network {
 public:
  explicit Network(int n);

  int n() const { return n_; }
  Transcript& transcript() { return transcript_; }
  const Transcript& transcript() const { return transcript_; }

  void set_context(Phase phase, int round);

  void send_private(int from, int to, int bit);
  /// Locally recorded self-delivery (sender == receiver).
  void send_self(int id, int bit);

  /// Shuffles the announcement order uniformly, logs every payload bit in
  /// that order, and returns the ordered (party, payload) list all parties
  /// see. A missing payload logs an abort marker and throws ProtocolAbort.
  std::vector<std::pair<int, std::vector<std::uint8_t>>> broadcast_round(
      const std::vector<Announcement>& announcements, RngStream& rng);

  /// Returns 1 with probability exactly 1/d_param, logged as a beacon event.
  int beacon_bit(int d_param, RngStream& rng);

  /// Beacon-attributed publication of a single bit (validation outcome).
  void beacon_publish(int bit);

 private:
  void check_id(int id) const;

  int n_;
  Phase phase_ = Phase::Notification;
  int round_ = 0;
  Transcript transcript_;
};

/// Filters the transcript down to what the given adversary observes: all
/// broadcast/beacon events plus private events touching one of its parties.
EveView extract_view(const Transcript& transcript, const Partition& partition,
                     EveType eve_type, const std::vector<int>& eve_parties);

}  // namespace acka
