#include "manet/routing.hpp"

#include <cassert>
#include <stdexcept>

namespace manet {

RouteEntry* RoutingTable::lookup(NodeId dst, SimTime now) {
    auto it = entries_.find(dst);
    if (it == entries_.end()) return nullptr;
    if (!it->second.valid || it->second.expires_at <= now) return nullptr;
    return &it->second;
}

const RouteEntry* RoutingTable::find(NodeId dst) const {
    auto it = entries_.find(dst);
    return it == entries_.end() ? nullptr : &it->second;
}

RouteEntry& RoutingTable::update(NodeId dst, NodeId next_hop, int hop_count,
                                 std::uint32_t dest_seq, SimTime expires_at) {
    auto& e = entries_[dst];
    bool fresher = !e.valid || dest_seq > e.dest_seq ||
                   (dest_seq == e.dest_seq && hop_count < e.hop_count);
    if (fresher) {
        e.destination = dst;
        e.next_hop = next_hop;
        e.hop_count = hop_count;
        e.dest_seq = dest_seq;
        e.valid = true;
    }
    if (e.valid && expires_at > e.expires_at) e.expires_at = expires_at;
    return e;
}

void RoutingTable::refresh(NodeId dst, SimTime expires_at) {
    auto it = entries_.find(dst);
    if (it != entries_.end() && it->second.valid && expires_at > it->second.expires_at)
        it->second.expires_at = expires_at;
}

std::vector<std::pair<NodeId, std::uint32_t>> RoutingTable::invalidate_via(NodeId neighbor) {
    std::vector<std::pair<NodeId, std::uint32_t>> affected;
    for (auto& [dst, e] : entries_) {
        if (e.valid && e.next_hop == neighbor) {
            e.valid = false;
            ++e.dest_seq;  // unreachable destinations advertise a bumped seq
            affected.emplace_back(dst, e.dest_seq);
        }
    }
    return affected;
}

bool RoutingTable::invalidate(NodeId dst, std::uint32_t newer_seq) {
    auto it = entries_.find(dst);
    if (it == entries_.end() || !it->second.valid) return false;
    it->second.valid = false;
    if (newer_seq > it->second.dest_seq) it->second.dest_seq = newer_seq;
    return true;
}

bool SeenCache::seen(NodeId origin, std::uint32_t broadcast_id, SimTime now) const {
    auto it = expiry_.find({origin, broadcast_id});
    if (it == expiry_.end()) return false;
    if (it->second <= now) {
        expiry_.erase(it);
        return false;
    }
    return true;
}

void SeenCache::insert(NodeId origin, std::uint32_t broadcast_id, SimTime now) {
    expiry_[{origin, broadcast_id}] = now + lifetime_;
}

RreqMessage accumulate_load(const RreqMessage& rreq, double node_ratio) {
    assert(node_ratio >= 0.0);
    RreqMessage out = rreq;
    out.reserved_load += node_ratio;
    out.hop_count += 1;
    return out;
}

double average_load(const RreqMessage& rreq) {
    if (rreq.hop_count < 1)
        throw std::logic_error("average_load: RREQ with hop_count 0 at destination");
    return rreq.reserved_load / static_cast<double>(rreq.hop_count);
}

const RreqCandidate& select_best_rreq(std::span<const RreqCandidate> candidates) {
    if (candidates.empty())
        throw std::logic_error("select_best_rreq: empty candidate list");
    const RreqCandidate* best = &candidates[0];
    for (const auto& c : candidates.subspan(1)) {
        double ca = average_load(c.rreq);
        double ba = average_load(best->rreq);
        if (ca < ba ||
            (ca == ba && c.rreq.hop_count < best->rreq.hop_count) ||
            (ca == ba && c.rreq.hop_count == best->rreq.hop_count &&
             c.arrived_at < best->arrived_at) ||
            (ca == ba && c.rreq.hop_count == best->rreq.hop_count &&
             c.arrived_at == best->arrived_at && c.prev_hop < best->prev_hop)) {
            best = &c;
        }
    }
    return *best;
}

}  // namespace manet
