#pragma once

#include <string>
#include <tuple>
#include <vector>

#include "labelkit/model.hpp"

namespace labelkit::testing {

struct Spot {
  double x;
  double y;
  double weight = 1.0;
};

/// Features f1, f2, ... at the given spots on a square screen.
inline Instance make_instance(int k, const std::vector<Spot>& spots, double screen = 300.0,
                              double label = 0.0) {
  std::vector<Feature> features;
  for (std::size_t i = 0; i < spots.size(); ++i) {
    Feature f;
    f.id = "f" + std::to_string(i + 1);
    f.x = spots[i].x;
    f.y = spots[i].y;
    f.weight = spots[i].weight;
    features.push_back(f);
  }
  const double w = label > 0.0 ? label : screen / k;
  return Instance({screen, screen}, {w, w}, k, std::move(features));
}

inline State state_of(std::vector<FeatureIndex> assignment, int page = 1) {
  State s;
  s.assignment = std::move(assignment);
  s.page_index = page;
  return s;
}

}  // namespace labelkit::testing
