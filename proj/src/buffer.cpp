#include "manet/buffer.hpp"

namespace manet {

Slot current_slot(SimTime now, const SchedulerConfig& cfg) {
    SimTime t = (now - cfg.slot_phase_origin) % cfg.cycle();
    if (t < 0) t += cfg.cycle();
    return t < cfg.rt_slot ? Slot::Rt : Slot::Be;
}

EnqueueResult Buffer::enqueue(QueuedPacket pkt, SimTime now,
                              std::optional<DataPacket>* evicted) {
    pkt.enqueued_at = now;
    if (!pkt.is_control()) pkt.data().current_hop_enqueued_at = now;

    if (slots_.size() < capacity_) {
        slots_.push_back(std::move(pkt));
        return EnqueueResult::Accepted;
    }
    if (!pkt.is_control()) return EnqueueResult::Dropped;

    // Routing messages must not starve behind a full data queue: evict the
    // tail-most data packet to make room.
    for (auto it = slots_.rbegin(); it != slots_.rend(); ++it) {
        if (!it->is_control()) {
            if (evicted) *evicted = it->data();
            slots_.erase(std::next(it).base());
            slots_.push_back(std::move(pkt));
            return EnqueueResult::Accepted;
        }
    }
    return EnqueueResult::Dropped;  // buffer entirely control; drop the newcomer
}

ClassCounts Buffer::count_classes() const {
    ClassCounts c;
    for (const auto& p : slots_) {
        if (p.cls() == TrafficClass::BestEffort)
            ++c.n_be;
        else
            ++c.n_other;
    }
    return c;
}

double Buffer::load_ratio() const {
    ClassCounts c = count_classes();
    if (c.n_be == 0 && c.n_other == 0) return 0.0;
    int denom = c.n_other > 0 ? c.n_other : 1;
    return static_cast<double>(c.n_be) / static_cast<double>(denom);
}

std::optional<QueuedPacket> Buffer::take(std::size_t index) {
    QueuedPacket pkt = std::move(slots_[index]);
    slots_.erase(slots_.begin() + static_cast<std::ptrdiff_t>(index));
    return pkt;
}

std::optional<QueuedPacket> Buffer::take_first_of(TrafficClass cls) {
    for (std::size_t i = 0; i < slots_.size(); ++i)
        if (slots_[i].cls() == cls) return take(i);
    return std::nullopt;
}

std::optional<QueuedPacket> Buffer::next_fifo() {
    if (slots_.empty()) return std::nullopt;
    if (auto ctl = take_first_of(TrafficClass::Control)) return ctl;
    return take(0);
}

std::optional<QueuedPacket> Buffer::next_slotted(SimTime now, const SchedulerConfig& cfg) {
    if (slots_.empty()) return std::nullopt;
    if (auto ctl = take_first_of(TrafficClass::Control)) return ctl;

    Slot slot = current_slot(now, cfg);
    TrafficClass preferred =
        slot == Slot::Rt ? TrafficClass::RealTime : TrafficClass::BestEffort;
    TrafficClass other =
        slot == Slot::Rt ? TrafficClass::BestEffort : TrafficClass::RealTime;

    if (auto pkt = take_first_of(preferred)) return pkt;
    if (!cfg.strict_slots) return take_first_of(other);
    return std::nullopt;
}

}  // namespace manet
