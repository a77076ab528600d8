#ifndef MANET_METRICS_HPP
#define MANET_METRICS_HPP

#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "manet/trace.hpp"

namespace manet {

struct TraceIntegrityError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct ClassSummary {
    std::int64_t generated = 0;
    std::int64_t delivered = 0;
    std::int64_t dropped = 0;
    std::optional<double> mean_e2e_delay_s;    // absent when nothing delivered
    std::optional<double> mean_queue_delay_s;  // summed per-hop buffer wait
    // (bucket end time, cumulative delivered by that time), fixed width.
    std::vector<std::pair<double, std::int64_t>> throughput;
};

struct RunSummary {
    ClassSummary rt;
    ClassSummary be;
    double bucket_width_s = 5.0;
    double duration_s = 0.0;
    std::string scenario_fingerprint;  // set by the runner; guards compare()
    std::string series_label;
    double pause_time_s = 0.0;

    const ClassSummary& of(TrafficClass c) const {
        return c == TrafficClass::RealTime ? rt : be;
    }
};

// Folds a trace into per-class counts, delays, and throughput series.
// End-to-end delay is Deliver time minus creation time; queuing delay is
// the summed per-hop wait between enqueue and dequeue. A Deliver without
// a matching creation record raises TraceIntegrityError.
RunSummary aggregate(std::span<const TraceRecord> trace, double duration_s,
                     double bucket_width_s = 5.0);

struct ComparisonRow {
    double pause_time_s = 0.0;
    std::int64_t baseline_rt = 0, improved_rt = 0;
    std::int64_t baseline_be = 0, improved_be = 0;
    std::optional<double> baseline_rt_delay_s, improved_rt_delay_s;
};

struct ComparisonReport {
    std::string scenario_fingerprint;
    std::int64_t baseline_rt = 0, improved_rt = 0;
    std::int64_t baseline_be = 0, improved_be = 0;
    double rt_delivered_ratio = 0.0;            // improved / baseline
    double be_delivered_ratio = 0.0;            // improved / baseline
    std::optional<double> rt_delay_ratio;       // baseline / improved
    std::vector<ComparisonRow> rows;
    std::vector<RunSummary> baseline_runs;
    std::vector<RunSummary> improved_runs;
};

// Pairwise comparison of two runs differing only in protocol mode.
ComparisonReport compare(const RunSummary& baseline, const RunSummary& improved);

// Sweep comparison, one (baseline, improved) pair per pause time.
ComparisonReport compare_sweep(const std::vector<RunSummary>& baseline,
                               const std::vector<RunSummary>& improved);

// CSV row schema shared by summary and comparison exports.
struct SeriesRow {
    std::string series;
    double pause_time_s = 0.0;
    double bucket_end_s = 0.0;
    TrafficClass cls = TrafficClass::RealTime;
    std::int64_t cumulative_delivered = 0;
    std::optional<double> mean_delay_s;
};

std::vector<SeriesRow> series_rows(const RunSummary& summary);
std::vector<SeriesRow> series_rows(const ComparisonReport& report);

// Writes header + rows: series,pause_time_s,bucket_end_s,class,
// cumulative_delivered,mean_delay_s. UTF-8, '.' decimals, LF line ends.
void export_csv(std::span<const SeriesRow> rows, const std::string& path);
std::vector<SeriesRow> parse_csv(const std::string& path);

}  // namespace manet

#endif
