#include "manet/runner.hpp"

#include <sstream>

namespace manet {

namespace {

std::string mode_label(RoutingMode mode) {
    return mode == RoutingMode::Baseline ? "baseline" : "qos";
}

std::string fmt_delay(const std::optional<double>& d) {
    if (!d) return "n/a";
    std::ostringstream os;
    os << *d * 1000.0 << " ms";
    return os.str();
}

}  // namespace

SingleRunOutput run_single(const ScenarioConfig& cfg, double pause_time_s,
                           RoutingMode mode) {
    SimResult result = run_scenario(cfg, pause_time_s, cfg.seed, mode);
    RunSummary summary = aggregate(result.trace, cfg.sim_time_s);
    summary.scenario_fingerprint =
        cfg.fingerprint() + "|pause=" + format_double(pause_time_s);
    summary.series_label = mode_label(mode);
    summary.pause_time_s = pause_time_s;
    return SingleRunOutput{std::move(summary), std::move(result.trace)};
}

ComparisonReport run_ab(const ScenarioConfig& cfg) {
    std::vector<RunSummary> baseline, improved;
    for (double pause : cfg.pause_times_s) {
        baseline.push_back(run_single(cfg, pause, RoutingMode::Baseline).summary);
        improved.push_back(run_single(cfg, pause, RoutingMode::QosImproved).summary);
    }
    return compare_sweep(baseline, improved);
}

std::string summary_text(const RunSummary& s) {
    std::ostringstream os;
    os << "series " << s.series_label << ", pause " << s.pause_time_s << " s\n"
       << "  RT: generated " << s.rt.generated << ", delivered " << s.rt.delivered
       << ", dropped " << s.rt.dropped << ", mean delay " << fmt_delay(s.rt.mean_e2e_delay_s)
       << ", mean queue wait " << fmt_delay(s.rt.mean_queue_delay_s) << "\n"
       << "  BE: generated " << s.be.generated << ", delivered " << s.be.delivered
       << ", dropped " << s.be.dropped << ", mean delay " << fmt_delay(s.be.mean_e2e_delay_s)
       << ", mean queue wait " << fmt_delay(s.be.mean_queue_delay_s) << "\n";
    return os.str();
}

std::string report_text(const ComparisonReport& r) {
    std::ostringstream os;
    os << "A/B comparison (improved vs baseline)\n";
    for (const auto& row : r.rows) {
        os << "  pause " << row.pause_time_s << " s: RT " << row.baseline_rt << " -> "
           << row.improved_rt << ", BE " << row.baseline_be << " -> " << row.improved_be
           << ", RT delay " << fmt_delay(row.baseline_rt_delay_s) << " -> "
           << fmt_delay(row.improved_rt_delay_s) << "\n";
    }
    os << "  totals: RT " << r.baseline_rt << " -> " << r.improved_rt << " (x"
       << r.rt_delivered_ratio << "), BE " << r.baseline_be << " -> " << r.improved_be
       << " (x" << r.be_delivered_ratio << ")";
    if (r.rt_delay_ratio) os << ", RT delay improvement x" << *r.rt_delay_ratio;
    os << "\n";
    return os.str();
}

}  // namespace manet
