#include "manet/scenario.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>

#include "manet/trace.hpp"

namespace manet {

SchedulerConfig ScenarioConfig::scheduler() const {
    SchedulerConfig s;
    s.rt_slot = from_seconds(rt_slot_s);
    s.be_slot = from_seconds(be_slot_s);
    s.tx_time = from_seconds(tx_time_s);
    s.strict_slots = strict_slots;
    s.slot_phase_origin = 0;
    return s;
}

RadioModel ScenarioConfig::radio() const {
    return RadioModel{radio_range, from_seconds(tx_time_s)};
}

std::string ScenarioConfig::fingerprint() const {
    std::ostringstream os;
    os << area_width << '/' << area_height << '/' << node_count << '/' << sim_time_s
       << '/' << queue_capacity << '/' << radio_range << '/' << tx_time_s << '/';
    for (double p : pause_times_s) os << p << ',';
    os << '/' << speed_min << '/' << speed_max << '/' << rt_slot_s << '/' << be_slot_s
       << '/' << strict_slots << '/' << collection_window_s << '/' << route_lifetime_s
       << '/' << seed << '/';
    for (const auto& f : flows)
        os << f.flow_id << ':' << to_string(f.cls) << ':' << f.src << ':' << f.dst << ':'
           << f.rate_pps << ':' << f.packet_size << ':' << f.start_s << ':' << f.stop_s
           << ';';
    return os.str();
}

ScenarioConfig default_scenario() {
    ScenarioConfig cfg;
    // Stock flow set: a best-effort "data collection" pattern converging on
    // one sink, plus two CBR real-time flows toward the same sink so both
    // classes share the relays near it. Rates are artifact parameters tuned
    // so the best-effort load is visible to both route discovery and the
    // slotted scheduler; they are reported alongside any results.
    int id = 1;
    auto add = [&](TrafficClass cls, NodeId src, NodeId dst, double rate, int size,
                   double start, double stop) {
        cfg.flows.push_back(TrafficFlow{id++, src, dst, cls, rate, size, start, stop});
    };
    add(TrafficClass::BestEffort, 2, 14, 360.0, 1000, 0.20, 40.0);
    add(TrafficClass::BestEffort, 3, 14, 360.0, 1000, 0.30, 40.0);
    add(TrafficClass::BestEffort, 4, 14, 360.0, 1000, 0.40, 40.0);
    add(TrafficClass::BestEffort, 5, 14, 360.0, 1000, 0.50, 40.0);
    add(TrafficClass::BestEffort, 6, 14, 360.0, 1000, 0.60, 40.0);
    add(TrafficClass::BestEffort, 7, 14, 360.0, 1000, 0.70, 40.0);
    add(TrafficClass::BestEffort, 8, 14, 360.0, 1000, 0.80, 40.0);
    add(TrafficClass::RealTime, 0, 14, 150.0, 512, 2.0, 40.0);
    add(TrafficClass::RealTime, 1, 14, 150.0, 512, 2.1, 40.0);
    return cfg;
}

void validate(const ScenarioConfig& cfg) {
    auto fail = [](const std::string& field, const std::string& why) {
        throw ConfigError("scenario: " + field + ": " + why);
    };
    if (cfg.area_width <= 0) fail("area_width", "must be positive");
    if (cfg.area_height <= 0) fail("area_height", "must be positive");
    if (cfg.node_count < 2) fail("node_count", "need at least 2 nodes");
    if (cfg.sim_time_s < 0) fail("sim_time", "must be non-negative");
    if (cfg.queue_capacity == 0) fail("queue_capacity", "must be positive");
    if (cfg.radio_range <= 0) fail("radio_range", "must be positive");
    if (cfg.tx_time_s <= 0) fail("tx_time", "must be positive");
    if (cfg.pause_times_s.empty()) fail("pause_times", "sweep list must be non-empty");
    for (double p : cfg.pause_times_s)
        if (p < 0) fail("pause_times", "pause times must be non-negative");
    if (cfg.speed_min <= 0 || cfg.speed_max < cfg.speed_min)
        fail("speed_min/speed_max", "need 0 < speed_min <= speed_max");
    if (cfg.rt_slot_s <= 0) fail("rt_slot", "must be positive");
    if (cfg.be_slot_s < 0) fail("be_slot", "must be non-negative");
    if (cfg.collection_window_s < 0) fail("collection_window", "must be non-negative");
    if (cfg.route_lifetime_s <= 0) fail("route_lifetime", "must be positive");

    auto mult_of = [&](double slot) {
        double k = slot / cfg.tx_time_s;
        return std::abs(k - std::round(k)) < 1e-9;
    };
    if (!mult_of(cfg.rt_slot_s)) fail("rt_slot", "must be an integer multiple of tx_time");
    if (!mult_of(cfg.be_slot_s)) fail("be_slot", "must be an integer multiple of tx_time");

    for (const auto& f : cfg.flows) {
        std::string name = "flow " + std::to_string(f.flow_id);
        if (f.cls == TrafficClass::Control) fail(name, "flows carry data classes only");
        if (f.src < 0 || f.src >= cfg.node_count) fail(name, "src out of range (ids are 0-based)");
        if (f.dst < 0 || f.dst >= cfg.node_count) fail(name, "dst out of range (ids are 0-based)");
        if (f.src == f.dst) fail(name, "src and dst must differ");
        if (f.rate_pps <= 0) fail(name, "rate must be positive");
        if (f.packet_size <= 0) fail(name, "packet_size must be positive");
        if (!(f.start_s < f.stop_s)) fail(name, "need start < stop");
        if (f.stop_s > cfg.sim_time_s + 1e-9) fail(name, "stop exceeds sim_time");
    }
    for (std::size_t i = 0; i < cfg.flows.size(); ++i)
        for (std::size_t j = i + 1; j < cfg.flows.size(); ++j)
            if (cfg.flows[i].flow_id == cfg.flows[j].flow_id)
                fail("flow " + std::to_string(cfg.flows[i].flow_id), "duplicate flow_id");
}

namespace {

double parse_num(const std::string& v, int line_no) {
    try {
        std::size_t used = 0;
        double d = std::stod(v, &used);
        if (used != v.size()) throw std::invalid_argument(v);
        return d;
    } catch (const std::exception&) {
        throw ConfigError("scenario: line " + std::to_string(line_no) +
                          ": not a number: " + v);
    }
}

TrafficFlow parse_flow(const std::string& v, int line_no, int next_id) {
    std::istringstream is(v);
    std::string cls;
    TrafficFlow f;
    f.flow_id = next_id;
    if (!(is >> cls >> f.src >> f.dst >> f.rate_pps >> f.packet_size >> f.start_s >>
          f.stop_s))
        throw ConfigError("scenario: line " + std::to_string(line_no) +
                          ": flow needs <rt|be> src dst rate size start stop");
    if (cls == "rt")
        f.cls = TrafficClass::RealTime;
    else if (cls == "be")
        f.cls = TrafficClass::BestEffort;
    else
        throw ConfigError("scenario: line " + std::to_string(line_no) +
                          ": flow class must be rt or be, got " + cls);
    std::string rest;
    if (is >> rest)
        throw ConfigError("scenario: line " + std::to_string(line_no) +
                          ": trailing tokens after flow: " + rest);
    return f;
}

std::string trim(const std::string& s) {
    auto b = s.find_first_not_of(" \t\r");
    auto e = s.find_last_not_of(" \t\r");
    return b == std::string::npos ? "" : s.substr(b, e - b + 1);
}

}  // namespace

ScenarioConfig parse_scenario(std::istream& in) {
    ScenarioConfig cfg = default_scenario();
    bool flows_overridden = false;
    std::string line;
    int line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        auto hash = line.find('#');
        if (hash != std::string::npos) line = line.substr(0, hash);
        line = trim(line);
        if (line.empty()) continue;
        auto eq = line.find('=');
        if (eq == std::string::npos)
            throw ConfigError("scenario: line " + std::to_string(line_no) +
                              ": expected key = value");
        std::string key = trim(line.substr(0, eq));
        std::string value = trim(line.substr(eq + 1));

        if (key == "area_width") cfg.area_width = parse_num(value, line_no);
        else if (key == "area_height") cfg.area_height = parse_num(value, line_no);
        else if (key == "node_count") cfg.node_count = static_cast<int>(parse_num(value, line_no));
        else if (key == "sim_time") cfg.sim_time_s = parse_num(value, line_no);
        else if (key == "queue_capacity") cfg.queue_capacity = static_cast<std::size_t>(parse_num(value, line_no));
        else if (key == "radio_range") cfg.radio_range = parse_num(value, line_no);
        else if (key == "tx_time") cfg.tx_time_s = parse_num(value, line_no);
        else if (key == "speed_min") cfg.speed_min = parse_num(value, line_no);
        else if (key == "speed_max") cfg.speed_max = parse_num(value, line_no);
        else if (key == "rt_slot") cfg.rt_slot_s = parse_num(value, line_no);
        else if (key == "be_slot") cfg.be_slot_s = parse_num(value, line_no);
        else if (key == "collection_window") cfg.collection_window_s = parse_num(value, line_no);
        else if (key == "route_lifetime") cfg.route_lifetime_s = parse_num(value, line_no);
        else if (key == "seed") cfg.seed = static_cast<std::uint64_t>(parse_num(value, line_no));
        else if (key == "strict_slots") {
            if (value == "true") cfg.strict_slots = true;
            else if (value == "false") cfg.strict_slots = false;
            else throw ConfigError("scenario: line " + std::to_string(line_no) +
                                   ": strict_slots must be true or false");
        } else if (key == "protocol_mode") {
            if (value == "baseline") cfg.protocol_mode = RoutingMode::Baseline;
            else if (value == "qos") cfg.protocol_mode = RoutingMode::QosImproved;
            else throw ConfigError("scenario: line " + std::to_string(line_no) +
                                   ": protocol_mode must be baseline or qos");
        } else if (key == "pause_times") {
            cfg.pause_times_s.clear();
            std::istringstream vs(value);
            std::string tok;
            while (std::getline(vs, tok, ','))
                cfg.pause_times_s.push_back(parse_num(trim(tok), line_no));
        } else if (key == "flow") {
            if (!flows_overridden) {
                cfg.flows.clear();
                flows_overridden = true;
            }
            cfg.flows.push_back(parse_flow(value, line_no,
                                           static_cast<int>(cfg.flows.size()) + 1));
        } else {
            throw ConfigError("scenario: line " + std::to_string(line_no) +
                              ": unknown key: " + key);
        }
    }
    validate(cfg);
    return cfg;
}

ScenarioConfig load_scenario(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("scenario: cannot open: " + path);
    return parse_scenario(in);
}

}  // namespace manet
