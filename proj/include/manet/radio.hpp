#ifndef MANET_RADIO_HPP
#define MANET_RADIO_HPP

#include "manet/types.hpp"

namespace manet {

// Deterministic disk-range radio with a fixed per-packet transmission
// time. Reachability is a closed ball: distance exactly equal to the
// range still counts as in range.
struct RadioModel {
    double range_m = 250.0;
    SimTime tx_time = 1'000;
};

inline bool in_range(double ax, double ay, double bx, double by, const RadioModel& radio) {
    double dx = ax - bx;
    double dy = ay - by;
    return dx * dx + dy * dy <= radio.range_m * radio.range_m;
}

}  // namespace manet

#endif
