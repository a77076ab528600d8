#include <random>
#include <sstream>

#include <doctest.h>

#include "helpers.hpp"
#include "manet/flow.hpp"
#include "manet/trace.hpp"

using namespace manet;
using namespace manet::testing;

TEST_CASE("flow registry classifies by flow id and rejects unknown ids") {
    std::vector<TrafficFlow> flows{
        {1, 0, 1, TrafficClass::RealTime, 50.0, 512, 0.0, 10.0},
        {2, 2, 3, TrafficClass::BestEffort, 200.0, 1000, 0.0, 10.0},
    };
    FlowRegistry reg(flows);
    CHECK(reg.classify(1) == TrafficClass::RealTime);
    CHECK(reg.classify(2) == TrafficClass::BestEffort);
    CHECK_THROWS_AS(reg.classify(7), ConfigError);
}

TEST_CASE("traffic class names round-trip through to_string") {
    CHECK(std::string(to_string(TrafficClass::RealTime)) == "RT");
    CHECK(std::string(to_string(TrafficClass::BestEffort)) == "BE");
    CHECK(std::string(to_string(TrafficClass::Control)) == "CTL");
}

TEST_CASE("trace record line format matches the documented layout") {
    TraceRecord rec;
    rec.time = 1'500;
    rec.node = 3;
    rec.event = TraceEvent::Send;
    rec.packet_id = 42;
    rec.cls = TrafficClass::RealTime;
    rec.extra = {{"to", "4"}};
    CHECK(to_line(rec) == "0.001500\t3\tSend\t42\tRT\tto=4");

    TraceRecord bare;
    bare.time = 0;
    bare.node = 0;
    bare.event = TraceEvent::RatioSample;
    CHECK(to_line(bare) == "0.000000\t0\tRatioSample\t-\t-");
}

TEST_CASE("parse_line inverts to_line for hand-written records") {
    TraceRecord rec;
    rec.time = 987'654;
    rec.node = 12;
    rec.event = TraceEvent::Deliver;
    rec.packet_id = 9;
    rec.cls = TrafficClass::BestEffort;
    CHECK(parse_line(to_line(rec)) == rec);

    rec.extra = {{"ratio", format_double(2.0 / 3.0)}, {"origin", "5"}};
    rec.event = TraceEvent::RatioSample;
    rec.cls.reset();
    rec.packet_id = -1;
    CHECK(parse_line(to_line(rec)) == rec);
}

TEST_CASE("double formatting round-trips bit-exactly") {
    std::mt19937_64 rng(99);
    std::uniform_real_distribution<double> unif(-1e6, 1e6);
    for (int i = 0; i < 2000; ++i) {
        double v = unif(rng);
        CHECK(std::stod(format_double(v)) == v);
    }
    CHECK(std::stod(format_double(1.0 / 3.0)) == 1.0 / 3.0);
    CHECK(std::stod(format_double(0.0)) == 0.0);
}

TEST_CASE("trace round-trips through file serialization byte-exactly") {
    std::mt19937_64 rng(5);
    std::uniform_int_distribution<int> ev(0, 10);
    std::uniform_int_distribution<int> cls(0, 3);
    std::uniform_real_distribution<double> unif(0.0, 100.0);

    std::vector<TraceRecord> records;
    SimTime t = 0;
    for (int i = 0; i < 500; ++i) {
        TraceRecord r;
        t += static_cast<SimTime>(rng() % 1000);
        r.time = t;
        r.node = static_cast<NodeId>(rng() % 15);
        r.event = static_cast<TraceEvent>(ev(rng));
        r.packet_id = (rng() % 3 == 0) ? -1 : static_cast<std::int64_t>(rng() % 10000);
        int c = cls(rng);
        if (c < 3) r.cls = static_cast<TrafficClass>(c);
        if (rng() % 2) r.extra.emplace_back("ratio", format_double(unif(rng)));
        if (rng() % 2) r.extra.emplace_back("to", std::to_string(rng() % 15));
        records.push_back(std::move(r));
    }

    const std::string path = "roundtrip_test.trace";
    write_trace(path, records);
    auto back = read_trace(path);
    REQUIRE(back.size() == records.size());
    for (std::size_t i = 0; i < records.size(); ++i) CHECK(back[i] == records[i]);
    std::remove(path.c_str());
}

TEST_CASE("every trace event name parses back to the same event") {
    for (int i = 0; i <= static_cast<int>(TraceEvent::MobilityUpdate); ++i) {
        auto e = static_cast<TraceEvent>(i);
        auto parsed = trace_event_from_string(to_string(e));
        REQUIRE(parsed.has_value());
        CHECK(*parsed == e);
    }
    CHECK_FALSE(trace_event_from_string("NotAnEvent").has_value());
}
