#ifndef MANET_TRACE_HPP
#define MANET_TRACE_HPP

#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "manet/types.hpp"

namespace manet {

enum class TraceEvent {
    Enqueue,
    Dequeue,
    DropTail,
    DropSource,
    Send,
    Deliver,
    LinkBreak,
    RreqForward,
    RrepSend,
    RatioSample,
    MobilityUpdate,
};

const char* to_string(TraceEvent e);
std::optional<TraceEvent> trace_event_from_string(std::string_view s);

// One simulation event for offline metrics. Serialized one record per
// line as tab-separated `time node event packet_id class key=value...`
// with `-` for absent optionals.
struct TraceRecord {
    SimTime time = 0;
    NodeId node = 0;
    TraceEvent event = TraceEvent::Enqueue;
    std::int64_t packet_id = -1;  // -1 = absent
    std::optional<TrafficClass> cls;
    std::vector<std::pair<std::string, std::string>> extra;

    const std::string* find_extra(std::string_view key) const;
    bool operator==(const TraceRecord&) const = default;
};

std::string to_line(const TraceRecord& rec);
TraceRecord parse_line(std::string_view line);

void write_trace(const std::string& path, std::span<const TraceRecord> records);
std::vector<TraceRecord> read_trace(const std::string& path);

// Full-precision formatting for real-valued extras so that round-trips
// are exact.
std::string format_double(double v);

}  // namespace manet

#endif
