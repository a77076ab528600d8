#ifndef MANET_BUFFER_HPP
#define MANET_BUFFER_HPP

#include <deque>
#include <optional>
#include <variant>

#include "manet/types.hpp"

namespace manet {

// RT/BE slot parameters for the slotted scheduler. Both slot lengths must
// be integer multiples of tx_time so transmit opportunities stay aligned
// to slot boundaries.
struct SchedulerConfig {
    SimTime rt_slot = 5'000;
    SimTime be_slot = 3'000;
    SimTime tx_time = 1'000;
    bool strict_slots = true;
    SimTime slot_phase_origin = 0;

    SimTime cycle() const { return rt_slot + be_slot; }
};

enum class Slot { Rt, Be };

Slot current_slot(SimTime now, const SchedulerConfig& cfg);

// Control message queued for transmission. target empty means broadcast
// (RREQ); otherwise unicast to that neighbor.
struct ControlPayload {
    std::variant<RreqMessage, RrepMessage, RerrMessage> msg;
    std::optional<NodeId> target;
};

struct QueuedPacket {
    std::variant<DataPacket, ControlPayload> body;
    SimTime enqueued_at = 0;

    bool is_control() const { return std::holds_alternative<ControlPayload>(body); }
    const DataPacket& data() const { return std::get<DataPacket>(body); }
    DataPacket& data() { return std::get<DataPacket>(body); }
    const ControlPayload& control() const { return std::get<ControlPayload>(body); }

    TrafficClass cls() const {
        return is_control() ? TrafficClass::Control : data().cls;
    }
};

struct ClassCounts {
    int n_be = 0;
    int n_other = 0;
};

enum class EnqueueResult { Accepted, Dropped };

// Per-node transmit buffer. Drop-tail for data; control packets are
// admitted even at capacity by evicting the tail-most data packet.
// Stored order is arrival order; schedulers pick dequeue positions but
// never permute the remaining contents.
class Buffer {
public:
    explicit Buffer(std::size_t capacity = 20) : capacity_(capacity) {}

    // On control admission at capacity, *evicted receives the data packet
    // pushed out (if any).
    EnqueueResult enqueue(QueuedPacket pkt, SimTime now,
                          std::optional<DataPacket>* evicted = nullptr);

    ClassCounts count_classes() const;

    // BE-to-other queue ratio: n_be / n_other, with the denominator
    // floored at 1 so an all-BE queue stays finite and monotone in BE
    // count. Empty buffer -> 0.
    double load_ratio() const;

    // Head-of-line dequeue, control packets first regardless of position.
    std::optional<QueuedPacket> next_fifo();

    // Slot-gated dequeue: control first; otherwise the earliest packet of
    // the slot's class. With strict slots an opportunity with no eligible
    // packet stays idle; otherwise the other class is served as fallback.
    std::optional<QueuedPacket> next_slotted(SimTime now, const SchedulerConfig& cfg);

    bool empty() const { return slots_.empty(); }
    std::size_t size() const { return slots_.size(); }
    std::size_t capacity() const { return capacity_; }
    const std::deque<QueuedPacket>& slots() const { return slots_; }

private:
    std::optional<QueuedPacket> take(std::size_t index);
    std::optional<QueuedPacket> take_first_of(TrafficClass cls);

    std::deque<QueuedPacket> slots_;
    std::size_t capacity_;
};

inline double compute_node_ratio(const Buffer& buf) { return buf.load_ratio(); }

}  // namespace manet

#endif
