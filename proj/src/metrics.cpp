#include "manet/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <limits>
#include <map>
#include <sstream>

namespace manet {

namespace {

struct PacketTrack {
    TrafficClass cls = TrafficClass::BestEffort;
    SimTime created_at = 0;
    SimTime last_enqueue = 0;
    SimTime queue_wait = 0;
    bool created = false;
    bool delivered = false;
};

}  // namespace

RunSummary aggregate(std::span<const TraceRecord> trace, double duration_s,
                     double bucket_width_s) {
    RunSummary out;
    out.bucket_width_s = bucket_width_s;
    out.duration_s = duration_s;

    std::map<std::int64_t, PacketTrack> packets;
    struct Acc {
        std::int64_t delivered = 0;
        double e2e_sum = 0.0, queue_sum = 0.0;
    };
    Acc acc_rt, acc_be;

    int n_buckets = std::max(1, static_cast<int>(std::ceil(duration_s / bucket_width_s)));
    std::vector<std::int64_t> buckets_rt(n_buckets, 0), buckets_be(n_buckets, 0);

    auto class_of = [](const TraceRecord& r) {
        return r.cls.value_or(TrafficClass::BestEffort);
    };

    for (const TraceRecord& r : trace) {
        bool is_data = r.packet_id >= 0 && r.cls && *r.cls != TrafficClass::Control;
        switch (r.event) {
            case TraceEvent::Enqueue: {
                if (!is_data) break;
                auto& p = packets[r.packet_id];
                p.cls = class_of(r);
                p.last_enqueue = r.time;
                if (r.find_extra("gen")) {
                    p.created = true;
                    p.created_at = r.time;
                    (class_of(r) == TrafficClass::RealTime ? out.rt : out.be).generated++;
                }
                break;
            }
            case TraceEvent::Dequeue: {
                if (!is_data) break;
                auto& p = packets[r.packet_id];
                p.queue_wait += r.time - p.last_enqueue;
                break;
            }
            case TraceEvent::DropSource: {
                if (!is_data) break;
                auto& cs = class_of(r) == TrafficClass::RealTime ? out.rt : out.be;
                if (r.find_extra("gen")) {
                    cs.generated++;
                    packets[r.packet_id].created = true;
                    packets[r.packet_id].created_at = r.time;
                }
                cs.dropped++;
                break;
            }
            case TraceEvent::DropTail:
            case TraceEvent::LinkBreak: {
                if (!is_data) break;  // control-side breaks carry no packet
                (class_of(r) == TrafficClass::RealTime ? out.rt : out.be).dropped++;
                break;
            }
            case TraceEvent::Deliver: {
                if (!is_data) break;
                auto it = packets.find(r.packet_id);
                if (it == packets.end() || !it->second.created)
                    throw TraceIntegrityError(
                        "Deliver without matching creation for packet " +
                        std::to_string(r.packet_id));
                PacketTrack& p = it->second;
                if (p.delivered)
                    throw TraceIntegrityError("packet delivered twice: " +
                                              std::to_string(r.packet_id));
                p.delivered = true;
                Acc& a = p.cls == TrafficClass::RealTime ? acc_rt : acc_be;
                a.delivered++;
                a.e2e_sum += to_seconds(r.time - p.created_at);
                a.queue_sum += to_seconds(p.queue_wait);
                auto& buckets =
                    p.cls == TrafficClass::RealTime ? buckets_rt : buckets_be;
                int b = static_cast<int>(to_seconds(r.time) / bucket_width_s);
                b = std::clamp(b, 0, n_buckets - 1);
                buckets[b]++;
                break;
            }
            default:
                break;
        }
    }

    auto finish = [&](ClassSummary& cs, const Acc& a,
                      const std::vector<std::int64_t>& buckets) {
        cs.delivered = a.delivered;
        if (a.delivered > 0) {
            cs.mean_e2e_delay_s = a.e2e_sum / static_cast<double>(a.delivered);
            cs.mean_queue_delay_s = a.queue_sum / static_cast<double>(a.delivered);
        }
        std::int64_t cum = 0;
        for (int i = 0; i < n_buckets; ++i) {
            cum += buckets[i];
            cs.throughput.emplace_back((i + 1) * bucket_width_s, cum);
        }
    };
    finish(out.rt, acc_rt, buckets_rt);
    finish(out.be, acc_be, buckets_be);
    return out;
}

static ComparisonRow make_row(const RunSummary& b, const RunSummary& i) {
    ComparisonRow row;
    row.pause_time_s = b.pause_time_s;
    row.baseline_rt = b.rt.delivered;
    row.improved_rt = i.rt.delivered;
    row.baseline_be = b.be.delivered;
    row.improved_be = i.be.delivered;
    row.baseline_rt_delay_s = b.rt.mean_e2e_delay_s;
    row.improved_rt_delay_s = i.rt.mean_e2e_delay_s;
    return row;
}

ComparisonReport compare_sweep(const std::vector<RunSummary>& baseline,
                               const std::vector<RunSummary>& improved) {
    if (baseline.empty() || baseline.size() != improved.size())
        throw std::invalid_argument("compare: need matching non-empty run lists");
    ComparisonReport rep;
    rep.scenario_fingerprint = baseline.front().scenario_fingerprint;
    double b_delay_sum = 0.0, i_delay_sum = 0.0;
    std::int64_t b_delay_n = 0, i_delay_n = 0;
    for (std::size_t k = 0; k < baseline.size(); ++k) {
        const RunSummary& b = baseline[k];
        const RunSummary& i = improved[k];
        if (b.scenario_fingerprint != i.scenario_fingerprint)
            throw std::invalid_argument(
                "compare: scenario fingerprints differ; runs are not comparable");
        rep.rows.push_back(make_row(b, i));
        rep.baseline_rt += b.rt.delivered;
        rep.improved_rt += i.rt.delivered;
        rep.baseline_be += b.be.delivered;
        rep.improved_be += i.be.delivered;
        if (b.rt.mean_e2e_delay_s) {
            b_delay_sum += *b.rt.mean_e2e_delay_s * static_cast<double>(b.rt.delivered);
            b_delay_n += b.rt.delivered;
        }
        if (i.rt.mean_e2e_delay_s) {
            i_delay_sum += *i.rt.mean_e2e_delay_s * static_cast<double>(i.rt.delivered);
            i_delay_n += i.rt.delivered;
        }
    }
    rep.rt_delivered_ratio =
        rep.baseline_rt > 0
            ? static_cast<double>(rep.improved_rt) / static_cast<double>(rep.baseline_rt)
            : (rep.improved_rt > 0 ? std::numeric_limits<double>::infinity() : 1.0);
    rep.be_delivered_ratio =
        rep.baseline_be > 0
            ? static_cast<double>(rep.improved_be) / static_cast<double>(rep.baseline_be)
            : (rep.improved_be > 0 ? std::numeric_limits<double>::infinity() : 1.0);
    if (b_delay_n > 0 && i_delay_n > 0 && i_delay_sum > 0.0)
        rep.rt_delay_ratio =
            (b_delay_sum / static_cast<double>(b_delay_n)) /
            (i_delay_sum / static_cast<double>(i_delay_n));
    rep.baseline_runs = baseline;
    rep.improved_runs = improved;
    return rep;
}

ComparisonReport compare(const RunSummary& baseline, const RunSummary& improved) {
    return compare_sweep({baseline}, {improved});
}

std::vector<SeriesRow> series_rows(const RunSummary& summary) {
    std::vector<SeriesRow> rows;
    for (TrafficClass cls : {TrafficClass::RealTime, TrafficClass::BestEffort}) {
        const ClassSummary& cs = summary.of(cls);
        for (const auto& [bucket_end, cum] : cs.throughput) {
            SeriesRow row;
            row.series = summary.series_label.empty() ? "run" : summary.series_label;
            row.pause_time_s = summary.pause_time_s;
            row.bucket_end_s = bucket_end;
            row.cls = cls;
            row.cumulative_delivered = cum;
            row.mean_delay_s = cs.mean_e2e_delay_s;
            rows.push_back(std::move(row));
        }
    }
    return rows;
}

std::vector<SeriesRow> series_rows(const ComparisonReport& report) {
    std::vector<SeriesRow> rows;
    for (const auto& run : report.baseline_runs)
        for (auto& r : series_rows(run)) rows.push_back(std::move(r));
    for (const auto& run : report.improved_runs)
        for (auto& r : series_rows(run)) rows.push_back(std::move(r));
    return rows;
}

void export_csv(std::span<const SeriesRow> rows, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("csv: cannot open for writing: " + path);
    out << "series,pause_time_s,bucket_end_s,class,cumulative_delivered,mean_delay_s\n";
    for (const auto& r : rows) {
        out << r.series << ',' << format_double(r.pause_time_s) << ','
            << format_double(r.bucket_end_s) << ',' << to_string(r.cls) << ','
            << r.cumulative_delivered << ','
            << (r.mean_delay_s ? format_double(*r.mean_delay_s) : "") << '\n';
    }
    if (!out) throw std::runtime_error("csv: write failed: " + path);
}

std::vector<SeriesRow> parse_csv(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("csv: cannot open: " + path);
    std::vector<SeriesRow> rows;
    std::string line;
    bool header = true;
    while (std::getline(in, line)) {
        if (header) {
            header = false;
            continue;
        }
        if (line.empty()) continue;
        std::istringstream is(line);
        std::string field;
        SeriesRow row;
        std::getline(is, row.series, ',');
        std::getline(is, field, ',');
        row.pause_time_s = std::stod(field);
        std::getline(is, field, ',');
        row.bucket_end_s = std::stod(field);
        std::getline(is, field, ',');
        row.cls = field == "RT" ? TrafficClass::RealTime : TrafficClass::BestEffort;
        std::getline(is, field, ',');
        row.cumulative_delivered = std::stoll(field);
        if (std::getline(is, field, ',') && !field.empty())
            row.mean_delay_s = std::stod(field);
        rows.push_back(std::move(row));
    }
    return rows;
}

}  // namespace manet
