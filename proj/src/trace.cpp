#include "manet/trace.hpp"

#include <array>
#include <charconv>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace manet {

namespace {

constexpr std::array<const char*, 11> kEventNames = {
    "Enqueue",     "Dequeue",  "DropTail",    "DropSource",
    "Send",        "Deliver",  "LinkBreak",   "RreqForward",
    "RrepSend",    "RatioSample", "MobilityUpdate",
};

std::optional<TrafficClass> class_from_string(std::string_view s) {
    if (s == "RT") return TrafficClass::RealTime;
    if (s == "BE") return TrafficClass::BestEffort;
    if (s == "CTL") return TrafficClass::Control;
    return std::nullopt;
}

std::vector<std::string_view> split_tabs(std::string_view line) {
    std::vector<std::string_view> out;
    std::size_t pos = 0;
    while (pos <= line.size()) {
        std::size_t tab = line.find('\t', pos);
        if (tab == std::string_view::npos) {
            out.push_back(line.substr(pos));
            break;
        }
        out.push_back(line.substr(pos, tab - pos));
        pos = tab + 1;
    }
    return out;
}

}  // namespace

const char* to_string(TraceEvent e) { return kEventNames[static_cast<int>(e)]; }

std::optional<TraceEvent> trace_event_from_string(std::string_view s) {
    for (std::size_t i = 0; i < kEventNames.size(); ++i)
        if (s == kEventNames[i]) return static_cast<TraceEvent>(i);
    return std::nullopt;
}

const std::string* TraceRecord::find_extra(std::string_view key) const {
    for (const auto& [k, v] : extra)
        if (k == key) return &v;
    return nullptr;
}

std::string format_double(double v) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

std::string to_line(const TraceRecord& rec) {
    std::string out;
    char head[64];
    std::snprintf(head, sizeof(head), "%.6f\t%d\t", to_seconds(rec.time), rec.node);
    out += head;
    out += to_string(rec.event);
    out += '\t';
    out += rec.packet_id >= 0 ? std::to_string(rec.packet_id) : "-";
    out += '\t';
    out += rec.cls ? to_string(*rec.cls) : "-";
    for (const auto& [k, v] : rec.extra) {
        out += '\t';
        out += k;
        out += '=';
        out += v;
    }
    return out;
}

TraceRecord parse_line(std::string_view line) {
    auto fields = split_tabs(line);
    if (fields.size() < 5)
        throw std::runtime_error("trace: malformed record: " + std::string(line));

    TraceRecord rec;
    rec.time = from_seconds(std::stod(std::string(fields[0])));
    rec.node = std::stoi(std::string(fields[1]));
    auto ev = trace_event_from_string(fields[2]);
    if (!ev) throw std::runtime_error("trace: unknown event: " + std::string(fields[2]));
    rec.event = *ev;
    rec.packet_id = fields[3] == "-" ? -1 : std::stoll(std::string(fields[3]));
    rec.cls = fields[4] == "-" ? std::nullopt : class_from_string(fields[4]);
    for (std::size_t i = 5; i < fields.size(); ++i) {
        auto kv = fields[i];
        std::size_t eq = kv.find('=');
        if (eq == std::string_view::npos)
            throw std::runtime_error("trace: malformed extra: " + std::string(kv));
        rec.extra.emplace_back(std::string(kv.substr(0, eq)), std::string(kv.substr(eq + 1)));
    }
    return rec;
}

void write_trace(const std::string& path, std::span<const TraceRecord> records) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("trace: cannot open for writing: " + path);
    for (const auto& rec : records) out << to_line(rec) << '\n';
    if (!out) throw std::runtime_error("trace: write failed: " + path);
}

std::vector<TraceRecord> read_trace(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("trace: cannot open: " + path);
    std::vector<TraceRecord> out;
    std::string line;
    while (std::getline(in, line))
        if (!line.empty()) out.push_back(parse_line(line));
    return out;
}

}  // namespace manet
