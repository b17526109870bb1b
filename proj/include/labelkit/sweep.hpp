#pragma once

#include <span>
#include <vector>

#include "labelkit/model.hpp"

namespace labelkit {

/// Crossing-free minimum-length assignment of point features to ports with
/// multiplicities. Port j receives exactly capacity[j] features; leaders to
/// the same port are exempt from crossing each other. The result lists, per
/// port, the features in the order the sweep assigned them.
///
/// The leader-length minimum is the one-dimensional transport optimum, so
/// the horizontal flow across every gap between consecutive x-coordinates
/// is fixed. Features feeding ports to their left are handled by a
/// right-to-left sweep that hands each port the lowest waiting feature;
/// rightward leaders get the mirror sweep. Coincident x-coordinates are
/// ordered by a symbolic perturbation.
std::vector<std::vector<FeatureIndex>> crossing_free_assignment(
    const Instance& instance, std::span<const FeatureIndex> features,
    std::span<const int> capacity);

/// Per-port feature counts minimizing total leader length when each port
/// takes at most `per_port` of the given features.
std::vector<int> balanced_port_loads(const Instance& instance,
                                     std::span<const FeatureIndex> features,
                                     int per_port);

/// Sum of leader lengths of a per-port assignment.
double total_leader_length(const Instance& instance,
                           const std::vector<std::vector<FeatureIndex>>& per_port);

}  // namespace labelkit
