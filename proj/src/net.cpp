#include "acka/net.hpp"

#include <algorithm>
#include <sstream>

namespace acka {

const char* to_string(Phase phase) {
  switch (phase) {
    case Phase::Notification: return "notification";
    case Phase::Ame: return "ame";
    case Phase::Verification: return "verification";
    case Phase::KeyGen: return "keygen";
    case Phase::Beacon: return "beacon";
    case Phase::Validate: return "validate";
  }
  return "?";
}

const char* to_string(ChannelKind kind) {
  switch (kind) {
    case ChannelKind::Private: return "private";
    case ChannelKind::Broadcast: return "broadcast";
    case ChannelKind::Beacon: return "beacon";
    case ChannelKind::Abort: return "abort";
  }
  return "?";
}

const char* to_string(EveType type) {
  switch (type) {
    case EveType::ParticipantBob: return "bob";
    case EveType::HonestNonparticipant: return "honest-np";
    case EveType::ColluderSet: return "colluders";
  }
  return "?";
}

Event& Transcript::append(Phase phase, int round, ChannelKind kind, int sender, int receiver,
                          int bit) {
  events.push_back(Event{next_seq++, phase, round, kind, sender, receiver, bit});
  return events.back();
}

std::string Transcript::to_text() const {
  std::ostringstream out;
  auto field = [&out](int v) {
    if (v < 0)
      out << '-';
    else
      out << v;
  };
  for (const Event& e : events) {
    out << e.seq << '\t' << to_string(e.phase) << '\t' << e.round << '\t' << to_string(e.kind)
        << '\t';
    field(e.sender);
    out << '\t';
    field(e.receiver);
    out << '\t';
    field(e.bit);
    out << '\n';
  }
  return out.str();
}

Network::Network(int n) : n_(n) {
  if (n < 1) throw ModelError("network: need at least one party");
}

void Network::set_context(Phase phase, int round) {
  phase_ = phase;
  round_ = round;
}

void Network::check_id(int id) const {
  if (id < 0 || id >= n_) throw ModelError("network: party id out of range");
}

void Network::send_private(int from, int to, int bit) {
  check_id(from);
  check_id(to);
  if (from == to) throw ModelError("network: private send requires distinct endpoints");
  transcript_.append(phase_, round_, ChannelKind::Private, from, to, bit & 1);
}

void Network::send_self(int id, int bit) {
  check_id(id);
  transcript_.append(phase_, round_, ChannelKind::Private, id, id, bit & 1);
}

std::vector<std::pair<int, std::vector<std::uint8_t>>> Network::broadcast_round(
    const std::vector<Announcement>& announcements, RngStream& rng) {
  std::vector<std::size_t> order(announcements.size());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
  rng.shuffle(order);

  std::vector<std::pair<int, std::vector<std::uint8_t>>> result;
  result.reserve(announcements.size());
  for (std::size_t slot : order) {
    const Announcement& a = announcements[slot];
    check_id(a.party);
    if (!a.payload.has_value() || a.payload->empty()) {
      transcript_.append(phase_, round_, ChannelKind::Abort, a.party, -1, -1);
      throw ProtocolAbort("party " + std::to_string(a.party) +
                          " failed to announce in its scheduled slot");
    }
    for (std::uint8_t bit : *a.payload)
      transcript_.append(phase_, round_, ChannelKind::Broadcast, a.party, -1, bit & 1);
    result.emplace_back(a.party, *a.payload);
  }
  return result;
}

int Network::beacon_bit(int d_param, RngStream& rng) {
  if (d_param < 1) throw ConfigError("beacon: d parameter must be >= 1");
  const int bit = rng.uniform_below(static_cast<std::uint64_t>(d_param)) == 0 ? 1 : 0;
  transcript_.append(phase_, round_, ChannelKind::Beacon, -1, -1, bit);
  return bit;
}

void Network::beacon_publish(int bit) {
  transcript_.append(phase_, round_, ChannelKind::Beacon, -1, -1, bit & 1);
}

EveView extract_view(const Transcript& transcript, const Partition& partition, EveType eve_type,
                     const std::vector<int>& eve_parties) {
  if (eve_parties.empty()) throw ModelError("view: adversary controls no party");
  for (int id : eve_parties) {
    if (id < 0 || id >= partition.n()) throw ModelError("view: eve party out of range");
  }
  switch (eve_type) {
    case EveType::ParticipantBob:
      if (eve_parties.size() != 1 ||
          !std::binary_search(partition.bobs().begin(), partition.bobs().end(), eve_parties[0]))
        throw ModelError("view: a participant adversary is a single receiver");
      break;
    case EveType::HonestNonparticipant:
      if (eve_parties.size() != 1 || !partition.is_dprime(eve_parties[0]))
        throw ModelError("view: an honest-but-curious adversary is a single non-participant");
      break;
    case EveType::ColluderSet:
      for (int id : eve_parties) {
        if (id == partition.alice() || partition.is_participant(id))
          throw ModelError("view: colluders are non-participants");
      }
      if (eve_parties != partition.colluders())
        throw ModelError("view: colluder adversary must control exactly the colluder set");
      break;
  }

  EveView view;
  view.eve_type = eve_type;
  view.eve_parties = eve_parties;
  for (const Event& e : transcript.events) {
    const bool is_public = e.kind != ChannelKind::Private;
    const bool touches_eve =
        std::find(eve_parties.begin(), eve_parties.end(), e.sender) != eve_parties.end() ||
        std::find(eve_parties.begin(), eve_parties.end(), e.receiver) != eve_parties.end();
    if (is_public || touches_eve) view.visible_events.push_back(e);
  }
  return view;
}

}  // namespace acka
