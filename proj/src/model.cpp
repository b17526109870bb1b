#include "labelkit/model.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <unordered_set>
#include <utility>

#include "labelkit/sliding.hpp"

namespace labelkit {

Instance::Instance(Size screen, Size label, int k, std::vector<Feature> features)
    : screen_(screen), label_(label), k_(k), features_(std::move(features)) {
  if (!(screen_.width > 0.0) || !(screen_.height > 0.0)) {
    throw DataError("screen: width and height must be positive");
  }
  if (!(label_.width > 0.0) || !(label_.height > 0.0)) {
    throw DataError("label: width and height must be positive");
  }
  if (k_ < 1) throw DataError("k: port count must be a positive integer");
  if (k_ * label_.width > screen_.width) {
    throw DataError("k: attached labels overlap (k * label.width > screen.width)");
  }
  std::unordered_set<std::string> ids;
  std::set<std::pair<double, double>> coords;
  for (const Feature& f : features_) {
    if (f.id.empty()) throw DataError("features: empty id");
    if (!ids.insert(f.id).second) {
      throw DataError("features: duplicate id '" + f.id + "'");
    }
    if (!(f.weight >= 0.0 && f.weight <= 1.0)) {
      throw DataError("features: weight of '" + f.id + "' outside [0,1]");
    }
    if (!(f.x >= 0.0 && f.x <= screen_.width)) {
      throw DataError("features: x of '" + f.id + "' outside the screen");
    }
    if (!(f.y >= 0.0 && f.y < screen_.height)) {
      throw DataError("features: y of '" + f.id + "' not above the port line");
    }
    if (!coords.emplace(f.x, f.y).second) {
      throw DataError("features: duplicate coordinates at '" + f.id + "'");
    }
  }
  ports_ = port_positions(screen_, k_);
}

std::string dummy_id(std::size_t dummy_number) {
  return "_dummy" + std::to_string(dummy_number + 1);
}

std::string Instance::id_of(FeatureIndex i) const {
  if (is_dummy(i)) return dummy_id(i - features_.size());
  return features_[i].id;
}

std::optional<FeatureIndex> Instance::find(const std::string& id) const {
  for (std::size_t i = 0; i < features_.size(); ++i) {
    if (features_[i].id == id) return i;
  }
  const std::string prefix = "_dummy";
  if (id.rfind(prefix, 0) == 0 && id.size() > prefix.size()) {
    try {
      std::size_t consumed = 0;
      const unsigned long d = std::stoul(id.substr(prefix.size()), &consumed);
      if (consumed == id.size() - prefix.size() && d >= 1) {
        return features_.size() + d - 1;
      }
    } catch (const std::exception&) {
    }
  }
  return std::nullopt;
}

std::vector<Point> port_positions(const Size& screen, int k) {
  std::vector<Point> ports;
  ports.reserve(static_cast<std::size_t>(k));
  const double cell = screen.width / k;
  for (int j = 0; j < k; ++j) {
    ports.push_back({(j + 0.5) * cell, screen.height});
  }
  return ports;
}

double leader_length(const Point& port, const Point& feature) {
  if (!(feature.y < port.y)) {
    throw DataError("leader_length: feature is not above the port line");
  }
  return std::abs(feature.x - port.x) + (port.y - feature.y);
}

namespace {

// Horizontal of `h` strictly spans the vertical of `v`, and v's feature is
// higher (smaller y) so v's vertical reaches h's height.
bool horizontal_hits_vertical(const Leader& h, const Leader& v) {
  const double lo = std::min(h.feature.x, h.port.x);
  const double hi = std::max(h.feature.x, h.port.x);
  return lo < v.port.x && v.port.x < hi && v.feature.y < h.feature.y;
}

}  // namespace

bool leaders_cross(const Leader& a, const Leader& b) {
  return horizontal_hits_vertical(a, b) || horizontal_hits_vertical(b, a);
}

bool horizontals_overlap(const Leader& a, const Leader& b) {
  const double lo = std::max(std::min(a.feature.x, a.port.x),
                             std::min(b.feature.x, b.port.x));
  const double hi = std::min(std::max(a.feature.x, a.port.x),
                             std::max(b.feature.x, b.port.x));
  return lo < hi;
}

std::string to_string(Method m) {
  switch (m) {
    case Method::kMultipage:
      return "multipage";
    case Method::kSliding:
      return "sliding";
    case Method::kStacking:
      return "stacking";
  }
  return "unknown";
}

Method method_from_string(const std::string& s) {
  if (s == "multipage") return Method::kMultipage;
  if (s == "sliding") return Method::kSliding;
  if (s == "stacking") return Method::kStacking;
  throw UsageError("method: unknown labeling method '" + s + "'");
}

Leader make_leader(const Instance& instance, int j, FeatureIndex i) {
  return {instance.port(j), instance.location(i)};
}

std::string check_labeling(const Labeling& labeling, const Instance& instance) {
  const std::size_t n = instance.size();
  const std::size_t k = static_cast<std::size_t>(instance.k());
  std::vector<int> seen(n, 0);
  for (std::size_t s = 0; s < labeling.states.size(); ++s) {
    const State& state = labeling.states[s];
    if (state.assignment.size() != k) return "state with wrong port count";
    if (state.page_index != static_cast<int>(s) + 1) return "page index out of sequence";
    std::set<FeatureIndex> distinct(state.assignment.begin(), state.assignment.end());
    if (distinct.size() != k) return "state assignment not injective";
    for (FeatureIndex f : state.assignment) {
      if (f < n) ++seen[f];
    }
  }
  for (std::size_t i = 0; i < n; ++i) {
    if (seen[i] == 0) return "feature '" + instance.feature(i).id + "' never labeled";
  }
  if (labeling.method == Method::kSliding) {
    if (n >= k && labeling.states.size() != n - k + 1) return "sliding state count";
    for (std::size_t s = 1; s < labeling.states.size(); ++s) {
      if (!is_valid_transition(labeling.states[s - 1], labeling.states[s])) {
        return "invalid sliding transition at state " + std::to_string(s + 1);
      }
    }
  } else {
    const std::size_t pages = (n + k - 1) / k;
    if (labeling.states.size() != pages) return "page count differs from ceil(n/k)";
    for (std::size_t i = 0; i < n; ++i) {
      if (seen[i] != 1) return "feature '" + instance.feature(i).id + "' labeled twice";
    }
  }
  return {};
}

}  // namespace labelkit
