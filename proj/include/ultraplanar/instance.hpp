#pragma once

#include <map>
#include <string>

#include "ultraplanar/graph.hpp"
#include "ultraplanar/weights.hpp"

namespace ultraplanar {

/// An embedded planar graph with base weights θ_e >= 0 and a level schedule.
struct Instance {
    PlanarGraph graph;
    LevelSchedule schedule;
    std::map<std::string, std::string> metadata;

    LayerWeights layer_weights() const;
};

}  // namespace ultraplanar
