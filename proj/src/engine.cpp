#include "manet/engine.hpp"

#include <cassert>
#include <cmath>

namespace manet {

namespace {

std::uint64_t node_stream_seed(std::uint64_t run_seed, NodeId node) {
    // splitmix64 over (run_seed, node) so per-node streams are independent.
    std::uint64_t z = run_seed + 0x9e3779b97f4a7c15ULL * (static_cast<std::uint64_t>(node) + 1);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

}  // namespace

Simulation::Simulation(const ScenarioConfig& cfg, double pause_time_s,
                       std::uint64_t seed, RoutingMode mode)
    : cfg_(cfg),
      mode_(mode),
      sched_(cfg.scheduler()),
      radio_(cfg.radio()),
      waypoint_model_(cfg.area_width, cfg.area_height, cfg.speed_min, cfg.speed_max,
                      from_seconds(pause_time_s)),
      registry_(cfg.flows),
      sim_end_(from_seconds(cfg.sim_time_s)),
      route_lifetime_(from_seconds(cfg.route_lifetime_s)),
      collection_window_(from_seconds(cfg.collection_window_s)) {
    validate(cfg_);
    nodes_.resize(static_cast<std::size_t>(cfg.node_count));
    for (int i = 0; i < cfg.node_count; ++i) {
        nodes_[i].id = i;
        nodes_[i].mob = waypoint_model_.init(node_stream_seed(seed, i));
        nodes_[i].buffer = Buffer(cfg.queue_capacity);
    }
}

void Simulation::set_position(NodeId node, double x, double y) {
    auto& m = nodes_.at(node).mob;
    m.x = x;
    m.y = y;
    m.waypoint_x = x;
    m.waypoint_y = y;
}

void Simulation::preload_data(NodeId node, const DataPacket& pkt) {
    auto& n = nodes_.at(node);
    QueuedPacket qp{pkt, 0};
    if (n.buffer.enqueue(std::move(qp), 0) == EnqueueResult::Accepted)
        record(TraceEvent::Enqueue, node, pkt.packet_id, pkt.cls);
    next_packet_id_ = std::max(next_packet_id_, pkt.packet_id + 1);
}

void Simulation::schedule(SimTime at, EventPayload payload) {
    assert(at >= now_ && "event scheduled in the past");
    events_.push(Event{at, next_event_seq_++, std::move(payload)});
}

void Simulation::record(TraceEvent ev, NodeId node, std::int64_t pid,
                        std::optional<TrafficClass> cls,
                        std::vector<std::pair<std::string, std::string>> extra) {
    trace_.push_back(TraceRecord{now_, node, ev, pid, cls, std::move(extra)});
}

std::pair<double, double> Simulation::position(NodeId node) {
    auto& m = nodes_[node].mob;
    waypoint_model_.advance(m, now_);
    return {m.x, m.y};
}

bool Simulation::link_up(NodeId a, NodeId b) {
    auto [ax, ay] = position(a);
    auto [bx, by] = position(b);
    return in_range(ax, ay, bx, by, radio_);
}

SimTime Simulation::align_up(SimTime t) const {
    SimTime tx = sched_.tx_time;
    SimTime rel = t - sched_.slot_phase_origin;
    SimTime aligned = (rel + tx - 1) / tx * tx;
    return aligned + sched_.slot_phase_origin;
}

void Simulation::ensure_opportunity(NodeState& n) {
    if (n.opportunity_scheduled || n.buffer.empty()) return;
    SimTime at = align_up(std::max(now_, n.next_free));
    n.opportunity_scheduled = true;
    schedule(at, EvTransmit{n.id});
}

void Simulation::enqueue_data(NodeState& n, const DataPacket& pkt, bool at_creation) {
    QueuedPacket qp{pkt, now_};
    auto res = n.buffer.enqueue(std::move(qp), now_);
    if (res == EnqueueResult::Accepted) {
        std::vector<std::pair<std::string, std::string>> extra;
        if (at_creation) extra.emplace_back("gen", "1");
        record(TraceEvent::Enqueue, n.id, pkt.packet_id, pkt.cls, std::move(extra));
        ensure_opportunity(n);
    } else if (at_creation) {
        record(TraceEvent::DropSource, n.id, pkt.packet_id, pkt.cls, {{"gen", "1"}});
    } else {
        record(TraceEvent::DropTail, n.id, pkt.packet_id, pkt.cls);
    }
}

void Simulation::enqueue_control(NodeState& n, ControlPayload ctl) {
    std::optional<DataPacket> evicted;
    QueuedPacket qp{std::move(ctl), now_};
    n.buffer.enqueue(std::move(qp), now_, &evicted);
    if (evicted)
        record(TraceEvent::DropTail, n.id, evicted->packet_id, evicted->cls,
               {{"evicted", "1"}});
    ensure_opportunity(n);
}

void Simulation::start_discovery(NodeState& n, NodeId dst) {
    auto it = n.discovery_deadline.find(dst);
    if (it != n.discovery_deadline.end() && it->second > now_) return;
    n.discovery_deadline[dst] = now_ + kDiscoveryRetryWait;

    ++n.own_seq;
    std::uint32_t bid = ++n.next_broadcast_id;
    RreqMessage rreq;
    rreq.origin = n.id;
    rreq.origin_seq = n.own_seq;
    rreq.broadcast_id = bid;
    rreq.destination = dst;
    if (const RouteEntry* e = n.table.find(dst)) rreq.dest_seq_known = e->dest_seq;
    rreq.hop_count = 0;
    rreq.reserved_load = 0.0;
    rreq.issued_at = now_;

    n.seen.insert(n.id, bid, now_);
    enqueue_control(n, ControlPayload{rreq, std::nullopt});
    schedule(n.discovery_deadline[dst], EvDiscoveryRetry{n.id, dst});
}

void Simulation::flush_pending(NodeState& n, NodeId dst) {
    auto it = n.pending.find(dst);
    if (it == n.pending.end()) return;
    auto packets = std::move(it->second);
    n.pending.erase(it);
    for (auto& pkt : packets) enqueue_data(n, pkt, false);
}

void Simulation::reply_as_destination(NodeState& n, const RreqCandidate& winner) {
    const RreqMessage& rr = winner.rreq;
    ++n.own_seq;  // destination bumps its own sequence number for the reply

    n.table.update(rr.origin, winner.prev_hop, rr.hop_count, rr.origin_seq,
                   now_ + route_lifetime_);

    RrepMessage rep;
    rep.destination = n.id;
    rep.dest_seq = n.own_seq;
    rep.origin = rr.origin;
    rep.hop_count = 0;
    rep.lifetime = route_lifetime_;

    record(TraceEvent::RrepSend, n.id, -1, TrafficClass::Control,
           {{"origin", std::to_string(rr.origin)},
            {"bid", std::to_string(rr.broadcast_id)},
            {"prev", std::to_string(winner.prev_hop)},
            {"reserved", format_double(rr.reserved_load)},
            {"hops", std::to_string(rr.hop_count)},
            {"avg", format_double(average_load(rr))}});
    enqueue_control(n, ControlPayload{rep, winner.prev_hop});
}

void Simulation::link_break(NodeState& n, NodeId dead_neighbor) {
    auto affected = n.table.invalidate_via(dead_neighbor);
    if (affected.empty()) return;
    std::set<NodeId> upstream;
    for (const auto& [dst, seq] : affected) {
        const RouteEntry* e = n.table.find(dst);
        if (!e) continue;
        for (NodeId p : e->precursors)
            if (p != dead_neighbor) upstream.insert(p);
    }
    if (upstream.empty()) return;
    RerrMessage rerr{affected};
    for (NodeId up : upstream) enqueue_control(n, ControlPayload{rerr, up});
}

void Simulation::handle_transmit(const EvTransmit& ev) {
    NodeState& n = nodes_[ev.node];
    // The node holds the air for this whole opportunity: ensure_opportunity
    // calls made by handlers below (RERR on link break, RREQ on missing
    // route) must not schedule a second transmit at the same timestamp.
    n.opportunity_scheduled = true;
    if (n.buffer.empty()) {
        n.opportunity_scheduled = false;
        return;
    }

    bool transmitted = false;
    while (!transmitted) {
        auto qp = mode_ == RoutingMode::Baseline ? n.buffer.next_fifo()
                                                 : n.buffer.next_slotted(now_, sched_);
        if (!qp) break;  // strict slot with no eligible packet: idle opportunity

        if (!qp->is_control()) {
            DataPacket pkt = qp->data();
            record(TraceEvent::Dequeue, n.id, pkt.packet_id, pkt.cls);
            RouteEntry* route = n.table.lookup(pkt.dst, now_);
            if (!route) {
                n.pending[pkt.dst].push_back(pkt);
                start_discovery(n, pkt.dst);
                continue;  // try the next queued packet in this opportunity
            }
            NodeId next_hop = route->next_hop;
            if (link_up(n.id, next_hop)) {
                record(TraceEvent::Send, n.id, pkt.packet_id, pkt.cls,
                       {{"to", std::to_string(next_hop)}});
                n.table.refresh(pkt.dst, now_ + route_lifetime_);
                schedule(now_ + radio_.tx_time, EvArrival{next_hop, n.id, pkt});
            } else {
                record(TraceEvent::LinkBreak, n.id, pkt.packet_id, pkt.cls,
                       {{"neighbor", std::to_string(next_hop)}});
                link_break(n, next_hop);
            }
            transmitted = true;  // the attempt occupies the air either way
        } else {
            ControlPayload ctl = qp->control();
            if (!ctl.target) {
                record(TraceEvent::Send, n.id, -1, TrafficClass::Control,
                       {{"kind", "rreq"}});
                for (auto& m : nodes_) {
                    if (m.id == n.id) continue;
                    if (link_up(n.id, m.id))
                        schedule(now_ + radio_.tx_time, EvArrival{m.id, n.id, ctl});
                }
            } else {
                NodeId target = *ctl.target;
                const char* kind =
                    std::holds_alternative<RrepMessage>(ctl.msg) ? "rrep" : "rerr";
                if (link_up(n.id, target)) {
                    record(TraceEvent::Send, n.id, -1, TrafficClass::Control,
                           {{"kind", kind}, {"to", std::to_string(target)}});
                    schedule(now_ + radio_.tx_time, EvArrival{target, n.id, ctl});
                } else {
                    record(TraceEvent::LinkBreak, n.id, -1, TrafficClass::Control,
                           {{"neighbor", std::to_string(target)}});
                    link_break(n, target);
                }
            }
            transmitted = true;
        }
    }

    if (transmitted) n.next_free = now_ + sched_.tx_time;
    if (!n.buffer.empty())
        schedule(now_ + sched_.tx_time, EvTransmit{n.id});
    else
        n.opportunity_scheduled = false;
}

void Simulation::handle_arrival(const EvArrival& ev) {
    NodeState& n = nodes_[ev.node];
    if (std::holds_alternative<DataPacket>(ev.body)) {
        handle_data(n, std::get<DataPacket>(ev.body), ev.prev);
        return;
    }
    const ControlPayload& ctl = std::get<ControlPayload>(ev.body);
    if (std::holds_alternative<RreqMessage>(ctl.msg))
        handle_rreq(n, std::get<RreqMessage>(ctl.msg), ev.prev);
    else if (std::holds_alternative<RrepMessage>(ctl.msg))
        handle_rrep(n, std::get<RrepMessage>(ctl.msg), ev.prev);
    else
        handle_rerr(n, std::get<RerrMessage>(ctl.msg), ev.prev);
}

void Simulation::handle_data(NodeState& n, const DataPacket& pkt, NodeId prev) {
    if (n.id == pkt.dst) {
        record(TraceEvent::Deliver, n.id, pkt.packet_id, pkt.cls);
        return;
    }
    if (RouteEntry* route = n.table.lookup(pkt.dst, now_)) {
        route->precursors.insert(prev);
        route->expires_at = std::max(route->expires_at, now_ + route_lifetime_);
    }
    enqueue_data(n, pkt, false);
}

void Simulation::handle_rreq(NodeState& n, const RreqMessage& rreq, NodeId prev) {
    if (n.id == rreq.origin) return;  // own flood echoed back

    // Reverse route toward the origin, learned from the flood.
    n.table.update(rreq.origin, prev, rreq.hop_count + 1, rreq.origin_seq,
                   now_ + route_lifetime_);

    auto key = std::make_pair(rreq.origin, rreq.broadcast_id);

    if (n.id == rreq.destination) {
        RreqCandidate cand;
        cand.rreq = rreq;
        cand.rreq.hop_count += 1;  // receipt counts as the final hop
        cand.prev_hop = prev;
        cand.arrived_at = now_;

        // Copies arriving while a collection window is open join it even
        // though the flood id is already cached; that is the whole point
        // of collecting.
        if (auto wit = n.windows.find(key); wit != n.windows.end()) {
            wit->second.candidates.push_back(cand);
            return;
        }
        if (n.seen.seen(key.first, key.second, now_)) return;
        n.seen.insert(key.first, key.second, now_);

        SimTime window = mode_ == RoutingMode::QosImproved ? collection_window_ : 0;
        if (window == 0) {
            reply_as_destination(n, cand);
            return;
        }
        CollectionWindow w;
        w.key = key;
        w.opened_at = now_;
        w.duration = window;
        w.candidates.push_back(cand);
        n.windows.emplace(key, std::move(w));
        schedule(now_ + window, EvWindowClose{n.id, key});
        return;
    }

    if (n.seen.seen(key.first, key.second, now_)) return;
    n.seen.insert(key.first, key.second, now_);

    if (mode_ == RoutingMode::Baseline) {
        // Stock AODV lets an intermediate node answer from a fresh cached
        // route. Disabled in QoS mode: a cached reply would bypass the
        // destination's average-load comparison.
        RouteEntry* cached = n.table.lookup(rreq.destination, now_);
        bool fresh = cached && (!rreq.dest_seq_known ||
                                cached->dest_seq >= *rreq.dest_seq_known);
        if (fresh) {
            RrepMessage rep;
            rep.destination = rreq.destination;
            rep.dest_seq = cached->dest_seq;
            rep.origin = rreq.origin;
            rep.hop_count = cached->hop_count;
            rep.lifetime = route_lifetime_;
            record(TraceEvent::RrepSend, n.id, -1, TrafficClass::Control,
                   {{"origin", std::to_string(rreq.origin)},
                    {"bid", std::to_string(rreq.broadcast_id)},
                    {"prev", std::to_string(prev)},
                    {"cached", "1"}});
            enqueue_control(n, ControlPayload{rep, prev});
            return;
        }
    }

    double ratio = n.buffer.load_ratio();
    record(TraceEvent::RatioSample, n.id, -1, std::nullopt,
           {{"ratio", format_double(ratio)},
            {"origin", std::to_string(rreq.origin)},
            {"bid", std::to_string(rreq.broadcast_id)},
            {"prev", std::to_string(prev)}});

    RreqMessage fwd = accumulate_load(rreq, ratio);
    record(TraceEvent::RreqForward, n.id, -1, TrafficClass::Control,
           {{"origin", std::to_string(fwd.origin)},
            {"bid", std::to_string(fwd.broadcast_id)},
            {"reserved", format_double(fwd.reserved_load)},
            {"hops", std::to_string(fwd.hop_count)}});
    enqueue_control(n, ControlPayload{fwd, std::nullopt});
}

void Simulation::handle_rrep(NodeState& n, const RrepMessage& rrep, NodeId prev) {
    n.table.update(rrep.destination, prev, rrep.hop_count + 1, rrep.dest_seq,
                   now_ + rrep.lifetime);

    if (n.id == rrep.origin) {
        n.discovery_deadline.erase(rrep.destination);
        flush_pending(n, rrep.destination);
        return;
    }

    RouteEntry* rev = n.table.lookup(rrep.origin, now_);
    if (!rev) {
        record(TraceEvent::RrepSend, n.id, -1, TrafficClass::Control,
               {{"dropped", "1"}, {"reason", "no_reverse_route"}});
        return;
    }
    // Precursor bookkeeping along both directions of the future route.
    if (RouteEntry* fwd_route = n.table.lookup(rrep.destination, now_))
        fwd_route->precursors.insert(rev->next_hop);
    rev->precursors.insert(prev);

    RrepMessage fwd = rrep;
    fwd.hop_count += 1;
    enqueue_control(n, ControlPayload{fwd, rev->next_hop});
}

void Simulation::handle_rerr(NodeState& n, const RerrMessage& rerr, NodeId prev) {
    std::vector<std::pair<NodeId, std::uint32_t>> propagated;
    std::set<NodeId> upstream;
    for (const auto& [dst, seq] : rerr.unreachable) {
        const RouteEntry* e = n.table.find(dst);
        if (e && e->valid && e->next_hop == prev) {
            for (NodeId p : e->precursors)
                if (p != prev) upstream.insert(p);
            n.table.invalidate(dst, seq);
            propagated.emplace_back(dst, seq);
        }
    }
    if (propagated.empty() || upstream.empty()) return;
    RerrMessage fwd{std::move(propagated)};
    for (NodeId up : upstream) enqueue_control(n, ControlPayload{fwd, up});
}

void Simulation::handle_window_close(const EvWindowClose& ev) {
    NodeState& n = nodes_[ev.node];
    auto it = n.windows.find(ev.key);
    if (it == n.windows.end()) return;
    CollectionWindow w = std::move(it->second);
    n.windows.erase(it);
    const RreqCandidate& winner = select_best_rreq(w.candidates);
    reply_as_destination(n, winner);
}

void Simulation::handle_traffic(const EvTraffic& ev) {
    const TrafficFlow& f = cfg_.flows[ev.flow_index];
    SimTime stop = from_seconds(f.stop_s);
    if (now_ >= stop || now_ >= sim_end_) return;

    DataPacket pkt;
    pkt.packet_id = next_packet_id_++;
    pkt.flow_id = f.flow_id;
    pkt.src = f.src;
    pkt.dst = f.dst;
    pkt.cls = registry_.classify(f.flow_id);
    pkt.size_bytes = f.packet_size;
    pkt.created_at = now_;
    pkt.current_hop_enqueued_at = now_;

    NodeState& src = nodes_[f.src];
    if (src.table.lookup(f.dst, now_)) {
        enqueue_data(src, pkt, true);
    } else {
        // Held until route discovery completes; still counted as generated.
        src.pending[f.dst].push_back(pkt);
        record(TraceEvent::Enqueue, src.id, pkt.packet_id, pkt.cls,
               {{"gen", "1"}, {"pend", "1"}});
        start_discovery(src, f.dst);
    }

    SimTime period = from_seconds(1.0 / f.rate_pps);
    if (period < 1) period = 1;
    SimTime next = now_ + period;
    if (next < stop && next < sim_end_) schedule(next, EvTraffic{ev.flow_index});
}

void Simulation::handle_mobility() {
    for (auto& n : nodes_) {
        waypoint_model_.advance(n.mob, now_);
        record(TraceEvent::MobilityUpdate, n.id, -1, std::nullopt,
               {{"x", format_double(n.mob.x)}, {"y", format_double(n.mob.y)}});
    }
    SimTime next = now_ + kMobilityTick;
    if (next < sim_end_) schedule(next, EvMobility{});
}

SimResult Simulation::run() {
    assert(!ran_ && "Simulation::run is single-shot");
    ran_ = true;

    schedule(sim_end_, EvSimEnd{});  // lowest seq: wins ties at sim_end
    if (sim_end_ > 0) {
        schedule(0, EvMobility{});
        for (std::size_t i = 0; i < cfg_.flows.size(); ++i) {
            SimTime start = from_seconds(cfg_.flows[i].start_s);
            if (start < sim_end_) schedule(start, EvTraffic{i});
        }
        for (auto& n : nodes_) ensure_opportunity(n);  // preloaded buffers
    }

    while (!events_.empty()) {
        Event ev = events_.top();
        events_.pop();
        now_ = ev.fire_at;
        if (std::holds_alternative<EvSimEnd>(ev.payload)) break;
        std::visit(
            [this](auto&& p) {
                using T = std::decay_t<decltype(p)>;
                if constexpr (std::is_same_v<T, EvTransmit>) handle_transmit(p);
                else if constexpr (std::is_same_v<T, EvArrival>) handle_arrival(p);
                else if constexpr (std::is_same_v<T, EvWindowClose>) handle_window_close(p);
                else if constexpr (std::is_same_v<T, EvDiscoveryRetry>) {
                    NodeState& n = nodes_[p.node];
                    auto pit = n.pending.find(p.dst);
                    if (pit != n.pending.end() && !pit->second.empty() &&
                        !n.table.lookup(p.dst, now_))
                        start_discovery(n, p.dst);
                } else if constexpr (std::is_same_v<T, EvMobility>) handle_mobility();
                else if constexpr (std::is_same_v<T, EvTraffic>) handle_traffic(p);
            },
            ev.payload);
    }

    return SimResult{std::move(trace_)};
}

SimResult run_scenario(const ScenarioConfig& cfg, double pause_time_s,
                       std::uint64_t seed, RoutingMode mode) {
    Simulation sim(cfg, pause_time_s, seed, mode);
    return sim.run();
}

}  // namespace manet
