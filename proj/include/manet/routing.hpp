#ifndef MANET_ROUTING_HPP
#define MANET_ROUTING_HPP

#include <map>
#include <set>
#include <span>
#include <vector>

#include "manet/buffer.hpp"
#include "manet/types.hpp"

namespace manet {

enum class RoutingMode { Baseline, QosImproved };

struct RouteEntry {
    NodeId destination = 0;
    NodeId next_hop = 0;
    int hop_count = 1;
    std::uint32_t dest_seq = 0;
    SimTime expires_at = 0;
    bool valid = false;
    // Upstream neighbors that recently sent data over this route; they get
    // the RERR when the next hop becomes unreachable.
    std::set<NodeId> precursors;
};

class RoutingTable {
public:
    // Valid, unexpired entry or nullptr.
    RouteEntry* lookup(NodeId dst, SimTime now);
    const RouteEntry* find(NodeId dst) const;

    // RFC 3561 freshness: install if unknown/invalid, newer sequence
    // number, or same sequence with fewer hops.
    RouteEntry& update(NodeId dst, NodeId next_hop, int hop_count,
                       std::uint32_t dest_seq, SimTime expires_at);

    void refresh(NodeId dst, SimTime expires_at);

    // Invalidates every valid entry whose next_hop is the dead neighbor;
    // returns the affected (destination, last seq) pairs.
    std::vector<std::pair<NodeId, std::uint32_t>> invalidate_via(NodeId neighbor);

    bool invalidate(NodeId dst, std::uint32_t newer_seq);

    std::map<NodeId, RouteEntry>& entries() { return entries_; }

private:
    std::map<NodeId, RouteEntry> entries_;
};

// Duplicate suppression for the RREQ flood: a (origin, broadcast_id) pair
// is handled at most once per cache lifetime.
class SeenCache {
public:
    explicit SeenCache(SimTime lifetime = 3 * kMicrosPerSecond) : lifetime_(lifetime) {}

    bool seen(NodeId origin, std::uint32_t broadcast_id, SimTime now) const;
    void insert(NodeId origin, std::uint32_t broadcast_id, SimTime now);

private:
    SimTime lifetime_;
    mutable std::map<std::pair<NodeId, std::uint32_t>, SimTime> expiry_;
};

struct RreqCandidate {
    RreqMessage rreq;   // as received at the destination (receipt hop applied)
    NodeId prev_hop = 0;
    SimTime arrived_at = 0;
};

// Destination-side wait for competing RREQ copies of one discovery.
struct CollectionWindow {
    std::pair<NodeId, std::uint32_t> key;  // (origin, broadcast_id)
    SimTime opened_at = 0;
    SimTime duration = 0;
    std::vector<RreqCandidate> candidates;
};

// Copy with this relay's queue ratio added and one more hop taken.
RreqMessage accumulate_load(const RreqMessage& rreq, double node_ratio);

// reserved_load / hop_count. Requires hop_count >= 1.
double average_load(const RreqMessage& rreq);

// Minimum average load; ties broken by fewer hops, then earlier arrival,
// then smaller prev_hop id. Deterministic; candidates must be non-empty.
const RreqCandidate& select_best_rreq(std::span<const RreqCandidate> candidates);

}  // namespace manet

#endif
