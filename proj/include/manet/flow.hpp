#ifndef MANET_FLOW_HPP
#define MANET_FLOW_HPP

#include <map>
#include <stdexcept>
#include <vector>

#include "manet/types.hpp"

namespace manet {

struct ConfigError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// One constant-rate traffic source. RealTime flows model CBR; BestEffort
// flows model a backlogged FTP-like source at a fixed rate.
struct TrafficFlow {
    int flow_id = 0;
    NodeId src = 0;
    NodeId dst = 0;
    TrafficClass cls = TrafficClass::BestEffort;
    double rate_pps = 0.0;
    int packet_size = 0;
    double start_s = 0.0;
    double stop_s = 0.0;
};

class FlowRegistry {
public:
    FlowRegistry() = default;
    explicit FlowRegistry(const std::vector<TrafficFlow>& flows) {
        for (const auto& f : flows) classes_[f.flow_id] = f.cls;
    }

    void add(int flow_id, TrafficClass cls) { classes_[flow_id] = cls; }

    TrafficClass classify(int flow_id) const {
        auto it = classes_.find(flow_id);
        if (it == classes_.end())
            throw ConfigError("unknown flow_id " + std::to_string(flow_id));
        return it->second;
    }

private:
    std::map<int, TrafficClass> classes_;
};

}  // namespace manet

#endif
