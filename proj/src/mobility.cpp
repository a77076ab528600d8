#include "manet/mobility.hpp"

#include <algorithm>
#include <cmath>

namespace manet {

MobilityState RandomWaypoint::init(std::uint64_t seed) const {
    MobilityState s;
    s.rng.seed(seed);
    std::uniform_real_distribution<double> ux(0.0, width_);
    std::uniform_real_distribution<double> uy(0.0, height_);
    s.x = ux(s.rng);
    s.y = uy(s.rng);
    s.waypoint_x = s.x;
    s.waypoint_y = s.y;
    s.speed = 0.0;
    s.pause_until = pause_time_;  // initial dwell before the first leg
    s.updated_at = 0;
    return s;
}

void RandomWaypoint::pick_leg(MobilityState& s) const {
    std::uniform_real_distribution<double> ux(0.0, width_);
    std::uniform_real_distribution<double> uy(0.0, height_);
    std::uniform_real_distribution<double> us(speed_min_, speed_max_);
    s.waypoint_x = ux(s.rng);
    s.waypoint_y = uy(s.rng);
    s.speed = us(s.rng);
}

void RandomWaypoint::advance(MobilityState& s, SimTime now) const {
    while (s.updated_at < now) {
        if (s.updated_at < s.pause_until) {
            s.updated_at = std::min(s.pause_until, now);
            if (s.updated_at == s.pause_until) pick_leg(s);
            continue;
        }
        double dx = s.waypoint_x - s.x;
        double dy = s.waypoint_y - s.y;
        double dist = std::hypot(dx, dy);
        if (dist <= 1e-9 || s.speed <= 0.0) {
            // Degenerate leg: treat as arrived.
            s.x = s.waypoint_x;
            s.y = s.waypoint_y;
            s.pause_until = s.updated_at + pause_time_;
            if (pause_time_ == 0) pick_leg(s);
            if (pause_time_ == 0 && s.speed <= 0.0) s.updated_at = now;  // all-zero guard
            continue;
        }
        double travel_s = dist / s.speed;
        SimTime arrival = s.updated_at + from_seconds(travel_s);
        if (arrival <= now) {
            s.x = s.waypoint_x;
            s.y = s.waypoint_y;
            s.updated_at = arrival;
            s.pause_until = arrival + pause_time_;
        } else {
            double frac = to_seconds(now - s.updated_at) * s.speed / dist;
            s.x += dx * frac;
            s.y += dy * frac;
            s.updated_at = now;
        }
    }
    s.x = std::clamp(s.x, 0.0, width_);
    s.y = std::clamp(s.y, 0.0, height_);
}

}  // namespace manet
