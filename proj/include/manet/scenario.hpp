#ifndef MANET_SCENARIO_HPP
#define MANET_SCENARIO_HPP

#include <iosfwd>
#include <string>
#include <vector>

#include "manet/buffer.hpp"
#include "manet/flow.hpp"
#include "manet/radio.hpp"
#include "manet/routing.hpp"

namespace manet {

// Full description of one experiment. Defaults reproduce the reference
// 15-node, 700x600 m, 40 s setup with a 20-packet drop-tail queue.
struct ScenarioConfig {
    double area_width = 700.0;
    double area_height = 600.0;
    int node_count = 15;
    double sim_time_s = 40.0;
    std::size_t queue_capacity = 20;
    double radio_range = 250.0;
    double tx_time_s = 0.001;
    std::vector<double> pause_times_s = {0.0, 10.0, 20.0, 40.0};
    double speed_min = 1.0;
    double speed_max = 20.0;
    RoutingMode protocol_mode = RoutingMode::Baseline;
    double rt_slot_s = 0.005;
    double be_slot_s = 0.003;
    bool strict_slots = true;
    double collection_window_s = 0.010;
    double route_lifetime_s = 3.0;
    std::vector<TrafficFlow> flows;
    std::uint64_t seed = 1;

    SchedulerConfig scheduler() const;
    RadioModel radio() const;

    // All fields except protocol_mode; used to guard A/B comparisons.
    std::string fingerprint() const;
};

// Default scenario with the stock flow set: one CBR real-time flow plus
// best-effort flows crossing shared relays.
ScenarioConfig default_scenario();

// Parses `key = value` lines (# comments, blank lines allowed). Keys
// mirror ScenarioConfig field names; unknown keys are rejected; missing
// keys keep their defaults. Flows are given as repeated lines:
//   flow = <rt|be> <src> <dst> <rate_pps> <size_bytes> <start_s> <stop_s>
// Throws ConfigError with line or field context.
ScenarioConfig parse_scenario(std::istream& in);
ScenarioConfig load_scenario(const std::string& path);

void validate(const ScenarioConfig& cfg);

}  // namespace manet

#endif
