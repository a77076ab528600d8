#ifndef MANET_TESTS_HELPERS_HPP
#define MANET_TESTS_HELPERS_HPP

#include <map>
#include <set>
#include <span>
#include <vector>

#include "manet/buffer.hpp"
#include "manet/trace.hpp"

namespace manet::testing {

inline DataPacket make_data(std::int64_t id, TrafficClass cls, NodeId src = 0,
                            NodeId dst = 1, SimTime created = 0) {
    DataPacket p;
    p.packet_id = id;
    p.flow_id = 1;
    p.src = src;
    p.dst = dst;
    p.cls = cls;
    p.size_bytes = cls == TrafficClass::RealTime ? 512 : 1000;
    p.created_at = created;
    p.current_hop_enqueued_at = created;
    return p;
}

// Builds a buffer from a class pattern, packet ids 1..n in order.
inline Buffer make_buffer(const std::vector<TrafficClass>& pattern,
                          std::size_t capacity = 20) {
    Buffer buf(capacity);
    std::int64_t id = 1;
    for (TrafficClass cls : pattern)
        buf.enqueue(QueuedPacket{make_data(id++, cls), 0}, 0);
    return buf;
}

// The reference ten-packet queue: RT BE BE RT RT BE BE BE RT RT.
inline std::vector<TrafficClass> reference_pattern() {
    using enum TrafficClass;
    return {RealTime, BestEffort, BestEffort, RealTime,  RealTime,
            BestEffort, BestEffort, BestEffort, RealTime, RealTime};
}

struct ConservationTally {
    std::int64_t generated = 0;
    std::int64_t delivered = 0;
    std::int64_t dropped = 0;
    std::set<std::int64_t> outstanding;  // generated, neither delivered nor dropped
};

// Packet accounting audit over a full trace (data packets only).
inline ConservationTally conservation_audit(std::span<const TraceRecord> trace) {
    ConservationTally t;
    for (const auto& r : trace) {
        bool data = r.packet_id >= 0 && r.cls && *r.cls != TrafficClass::Control;
        if (!data) continue;
        switch (r.event) {
            case TraceEvent::Enqueue:
            case TraceEvent::DropSource:
                if (r.find_extra("gen")) {
                    t.generated++;
                    t.outstanding.insert(r.packet_id);
                }
                if (r.event == TraceEvent::DropSource) {
                    t.dropped++;
                    t.outstanding.erase(r.packet_id);
                }
                break;
            case TraceEvent::DropTail:
            case TraceEvent::LinkBreak:
                t.dropped++;
                t.outstanding.erase(r.packet_id);
                break;
            case TraceEvent::Deliver:
                t.delivered++;
                t.outstanding.erase(r.packet_id);
                break;
            default:
                break;
        }
    }
    return t;
}

// True when no BE data packet is dequeued during an RT slot and vice
// versa (strict-slot purity over a full trace).
inline bool slot_purity_holds(std::span<const TraceRecord> trace,
                              const SchedulerConfig& sched) {
    for (const auto& r : trace) {
        if (r.event != TraceEvent::Dequeue || !r.cls) continue;
        Slot slot = current_slot(r.time, sched);
        if (slot == Slot::Rt && *r.cls == TrafficClass::BestEffort) return false;
        if (slot == Slot::Be && *r.cls == TrafficClass::RealTime) return false;
    }
    return true;
}

}  // namespace manet::testing

#endif
