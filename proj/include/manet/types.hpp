#ifndef MANET_TYPES_HPP
#define MANET_TYPES_HPP

#include <cstdint>
#include <cmath>
#include <optional>
#include <utility>
#include <vector>

namespace manet {

using NodeId = int;

// Simulation time in integer microseconds. Keeps slot arithmetic and
// event ordering exact; seconds appear only at the config/report edges.
using SimTime = std::int64_t;

constexpr SimTime kMicrosPerSecond = 1'000'000;

inline SimTime from_seconds(double s) {
    return static_cast<SimTime>(std::llround(s * static_cast<double>(kMicrosPerSecond)));
}

inline double to_seconds(SimTime t) {
    return static_cast<double>(t) / static_cast<double>(kMicrosPerSecond);
}

enum class TrafficClass { RealTime, BestEffort, Control };

inline const char* to_string(TrafficClass c) {
    switch (c) {
        case TrafficClass::RealTime: return "RT";
        case TrafficClass::BestEffort: return "BE";
        case TrafficClass::Control: return "CTL";
    }
    return "?";
}

// Unicast payload packet. The class is fixed at creation and never
// mutated afterwards; current_hop_enqueued_at is rewritten at each hop.
struct DataPacket {
    std::int64_t packet_id = 0;
    int flow_id = 0;
    NodeId src = 0;
    NodeId dst = 0;
    TrafficClass cls = TrafficClass::BestEffort;
    int size_bytes = 0;
    SimTime created_at = 0;
    SimTime current_hop_enqueued_at = 0;
};

// Route request. reserved_load carries the running sum of per-relay
// BE-to-other queue ratios; hop_count counts transmissions taken.
struct RreqMessage {
    NodeId origin = 0;
    std::uint32_t origin_seq = 0;
    std::uint32_t broadcast_id = 0;
    NodeId destination = 0;
    std::optional<std::uint32_t> dest_seq_known;
    int hop_count = 0;
    double reserved_load = 0.0;
    SimTime issued_at = 0;
};

struct RrepMessage {
    NodeId destination = 0;
    std::uint32_t dest_seq = 0;
    NodeId origin = 0;
    int hop_count = 0;
    SimTime lifetime = 0;
};

struct RerrMessage {
    // (unreachable destination, last known sequence number); non-empty.
    std::vector<std::pair<NodeId, std::uint32_t>> unreachable;
};

}  // namespace manet

#endif
