#ifndef MANET_ENGINE_HPP
#define MANET_ENGINE_HPP

#include <cstdint>
#include <deque>
#include <map>
#include <queue>
#include <variant>
#include <vector>

#include "manet/buffer.hpp"
#include "manet/flow.hpp"
#include "manet/mobility.hpp"
#include "manet/radio.hpp"
#include "manet/routing.hpp"
#include "manet/scenario.hpp"
#include "manet/trace.hpp"

namespace manet {

struct SimResult {
    std::vector<TraceRecord> trace;
};

// Deterministic single-threaded discrete-event simulation of one scenario
// at one pause time. Identical (scenario, pause, seed, mode) inputs yield
// identical traces.
class Simulation {
public:
    Simulation(const ScenarioConfig& cfg, double pause_time_s, std::uint64_t seed,
               RoutingMode mode);

    // Test hooks; call before run().
    void set_position(NodeId node, double x, double y);
    void preload_data(NodeId node, const DataPacket& pkt);

    SimResult run();

    const RoutingTable& routing_table(NodeId node) const { return nodes_[node].table; }

private:
    struct NodeState {
        NodeId id = 0;
        MobilityState mob;
        Buffer buffer;
        RoutingTable table;
        SeenCache seen;
        std::uint32_t own_seq = 0;
        std::uint32_t next_broadcast_id = 0;
        std::map<std::pair<NodeId, std::uint32_t>, CollectionWindow> windows;
        std::map<NodeId, SimTime> discovery_deadline;
        std::map<NodeId, std::deque<DataPacket>> pending;  // held until a route exists
        SimTime next_free = 0;
        bool opportunity_scheduled = false;
    };

    struct EvTransmit { NodeId node; };
    struct EvArrival {
        NodeId node;
        NodeId prev;
        std::variant<DataPacket, ControlPayload> body;
    };
    struct EvWindowClose { NodeId node; std::pair<NodeId, std::uint32_t> key; };
    struct EvDiscoveryRetry { NodeId node; NodeId dst; };
    struct EvMobility {};
    struct EvTraffic { std::size_t flow_index; };
    struct EvSimEnd {};

    using EventPayload = std::variant<EvTransmit, EvArrival, EvWindowClose,
                                      EvDiscoveryRetry, EvMobility, EvTraffic, EvSimEnd>;

    struct Event {
        SimTime fire_at;
        std::uint64_t seq;
        EventPayload payload;
    };
    struct EventLater {
        bool operator()(const Event& a, const Event& b) const {
            return a.fire_at != b.fire_at ? a.fire_at > b.fire_at : a.seq > b.seq;
        }
    };

    void schedule(SimTime at, EventPayload payload);
    void record(TraceEvent ev, NodeId node, std::int64_t pid,
                std::optional<TrafficClass> cls,
                std::vector<std::pair<std::string, std::string>> extra = {});

    std::pair<double, double> position(NodeId node);
    bool link_up(NodeId a, NodeId b);
    SimTime align_up(SimTime t) const;
    void ensure_opportunity(NodeState& n);

    void enqueue_data(NodeState& n, const DataPacket& pkt, bool at_creation);
    void enqueue_control(NodeState& n, ControlPayload ctl);
    void start_discovery(NodeState& n, NodeId dst);
    void flush_pending(NodeState& n, NodeId dst);
    void reply_as_destination(NodeState& n, const RreqCandidate& winner);
    void link_break(NodeState& n, NodeId dead_neighbor);

    void handle_transmit(const EvTransmit& ev);
    void handle_arrival(const EvArrival& ev);
    void handle_data(NodeState& n, const DataPacket& pkt, NodeId prev);
    void handle_rreq(NodeState& n, const RreqMessage& rreq, NodeId prev);
    void handle_rrep(NodeState& n, const RrepMessage& rrep, NodeId prev);
    void handle_rerr(NodeState& n, const RerrMessage& rerr, NodeId prev);
    void handle_window_close(const EvWindowClose& ev);
    void handle_traffic(const EvTraffic& ev);
    void handle_mobility();

    ScenarioConfig cfg_;
    RoutingMode mode_;
    SchedulerConfig sched_;
    RadioModel radio_;
    RandomWaypoint waypoint_model_;
    FlowRegistry registry_;
    SimTime sim_end_;
    SimTime route_lifetime_;
    SimTime collection_window_;

    std::vector<NodeState> nodes_;
    std::priority_queue<Event, std::vector<Event>, EventLater> events_;
    std::uint64_t next_event_seq_ = 0;
    std::int64_t next_packet_id_ = 1;
    SimTime now_ = 0;
    bool ran_ = false;
    std::vector<TraceRecord> trace_;

    static constexpr SimTime kDiscoveryRetryWait = 100'000;   // 100 ms
    static constexpr SimTime kMobilityTick = 100'000;         // 100 ms
};

// Convenience wrapper: build, run, return the trace.
SimResult run_scenario(const ScenarioConfig& cfg, double pause_time_s,
                       std::uint64_t seed, RoutingMode mode);

}  // namespace manet

#endif
