#ifndef MANET_RUNNER_HPP
#define MANET_RUNNER_HPP

#include <optional>
#include <string>

#include "manet/engine.hpp"
#include "manet/metrics.hpp"
#include "manet/scenario.hpp"

namespace manet {

struct SingleRunOutput {
    RunSummary summary;
    std::vector<TraceRecord> trace;
};

// One simulation at one pause time, summarized. The summary carries the
// scenario fingerprint (mode excluded) so A/B comparisons can be guarded.
SingleRunOutput run_single(const ScenarioConfig& cfg, double pause_time_s,
                           RoutingMode mode);

// For each configured pause time, runs Baseline and QosImproved with
// identical seed and flows, and assembles the comparison.
ComparisonReport run_ab(const ScenarioConfig& cfg);

std::string summary_text(const RunSummary& s);
std::string report_text(const ComparisonReport& r);

}  // namespace manet

#endif
