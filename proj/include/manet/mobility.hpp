#ifndef MANET_MOBILITY_HPP
#define MANET_MOBILITY_HPP

#include <random>

#include "manet/types.hpp"

namespace manet {

struct MobilityState {
    double x = 0.0, y = 0.0;
    double waypoint_x = 0.0, waypoint_y = 0.0;
    double speed = 0.0;          // m/s toward the waypoint
    SimTime pause_until = 0;
    SimTime updated_at = 0;
    std::mt19937_64 rng;
};

// Random waypoint over a rectangular area. A node starts paused at a
// uniform position, then alternates straight-line legs at a uniform
// random speed with pauses at each waypoint. State advances lazily, so
// positions are available at arbitrary query times.
class RandomWaypoint {
public:
    RandomWaypoint(double width, double height, double speed_min, double speed_max,
                   SimTime pause_time)
        : width_(width), height_(height),
          speed_min_(speed_min), speed_max_(speed_max), pause_time_(pause_time) {}

    MobilityState init(std::uint64_t seed) const;

    void advance(MobilityState& s, SimTime now) const;

    double width() const { return width_; }
    double height() const { return height_; }

private:
    void pick_leg(MobilityState& s) const;

    double width_, height_;
    double speed_min_, speed_max_;
    SimTime pause_time_;
};

}  // namespace manet

#endif
