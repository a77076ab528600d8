#include <doctest.h>

#include "manet/mobility.hpp"

using namespace manet;

namespace {

MobilityState leg_state(double x, double y, double wx, double wy, double speed) {
    MobilityState s;
    s.x = x;
    s.y = y;
    s.waypoint_x = wx;
    s.waypoint_y = wy;
    s.speed = speed;
    s.pause_until = 0;
    s.updated_at = 0;
    return s;
}

}  // namespace

TEST_CASE("straight leg interpolates linearly at the configured speed") {
    RandomWaypoint model(700.0, 600.0, 1.0, 20.0, 0);
    MobilityState s = leg_state(0.0, 0.0, 300.0, 400.0, 5.0);
    model.advance(s, from_seconds(10.0));
    CHECK(s.x == doctest::Approx(30.0));
    CHECK(s.y == doctest::Approx(40.0));

    // Halfway and endpoint checks along the same leg (distance 500 m).
    model.advance(s, from_seconds(50.0));
    CHECK(s.x == doctest::Approx(150.0));
    CHECK(s.y == doctest::Approx(200.0));
}

TEST_CASE("node dwells at the start for the configured pause time") {
    SimTime pause = from_seconds(30.0);
    RandomWaypoint model(700.0, 600.0, 1.0, 20.0, pause);
    MobilityState s = model.init(12345);
    double x0 = s.x, y0 = s.y;

    model.advance(s, from_seconds(29.9));
    CHECK(s.x == x0);
    CHECK(s.y == y0);

    // After the pause the node is en route toward a fresh waypoint.
    model.advance(s, from_seconds(31.0));
    bool moved = s.x != x0 || s.y != y0;
    // A freshly picked waypoint can coincide with the position only with
    // probability 0; movement is the expected outcome.
    CHECK(moved);
}

TEST_CASE("pause_time equal to sim duration keeps the topology static") {
    SimTime pause = from_seconds(40.0);
    RandomWaypoint model(700.0, 600.0, 1.0, 20.0, pause);
    for (std::uint64_t seed : {1ULL, 7ULL, 99ULL}) {
        MobilityState s = model.init(seed);
        double x0 = s.x, y0 = s.y;
        for (double t : {0.5, 10.0, 25.0, 40.0}) {
            model.advance(s, from_seconds(t));
            CHECK(s.x == x0);
            CHECK(s.y == y0);
        }
    }
}

TEST_CASE("initial positions are uniform within the area and seed-stable") {
    RandomWaypoint model(700.0, 600.0, 1.0, 20.0, 0);
    for (std::uint64_t seed = 1; seed <= 50; ++seed) {
        MobilityState s = model.init(seed);
        CHECK(s.x >= 0.0);
        CHECK(s.x <= 700.0);
        CHECK(s.y >= 0.0);
        CHECK(s.y <= 600.0);
        MobilityState again = model.init(seed);
        CHECK(again.x == s.x);
        CHECK(again.y == s.y);
    }
    // Distinct seeds give distinct draws (collision has probability 0).
    CHECK(model.init(1).x != model.init(2).x);
}

TEST_CASE("positions stay inside the area over a long mobile run") {
    RandomWaypoint model(700.0, 600.0, 1.0, 20.0, 0);
    for (std::uint64_t seed : {3ULL, 17ULL, 42ULL}) {
        MobilityState s = model.init(seed);
        for (SimTime t = 0; t <= from_seconds(120.0); t += from_seconds(0.5)) {
            model.advance(s, t);
            CHECK(s.x >= 0.0);
            CHECK(s.x <= 700.0);
            CHECK(s.y >= 0.0);
            CHECK(s.y <= 600.0);
        }
    }
}

TEST_CASE("advance is query-schedule independent") {
    // Advancing in one jump or in many small steps must land on the same
    // position: lazy evaluation cannot depend on when callers ask.
    RandomWaypoint model(700.0, 600.0, 1.0, 20.0, from_seconds(2.0));
    MobilityState coarse = model.init(77);
    MobilityState fine = model.init(77);

    model.advance(coarse, from_seconds(60.0));
    for (SimTime t = from_seconds(0.1); t <= from_seconds(60.0); t += from_seconds(0.1))
        model.advance(fine, t);

    CHECK(fine.x == doctest::Approx(coarse.x).epsilon(1e-9));
    CHECK(fine.y == doctest::Approx(coarse.y).epsilon(1e-9));
}

TEST_CASE("leg completion snaps to the waypoint, then pauses") {
    RandomWaypoint model(700.0, 600.0, 1.0, 20.0, from_seconds(100.0));
    MobilityState s = leg_state(0.0, 0.0, 300.0, 400.0, 5.0);
    // 500 m at 5 m/s: arrival at t = 100 s; long pause afterwards.
    model.advance(s, from_seconds(150.0));
    CHECK(s.x == doctest::Approx(300.0));
    CHECK(s.y == doctest::Approx(400.0));
    model.advance(s, from_seconds(199.0));
    CHECK(s.x == doctest::Approx(300.0));
    CHECK(s.y == doctest::Approx(400.0));
}
