#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace labelkit {

enum class ErrorKind { kUsage, kData, kBudget };

/// Named error carrying a category that the CLI maps onto exit codes.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(what), kind_(kind) {}
  ErrorKind kind() const { return kind_; }

 private:
  ErrorKind kind_;
};

inline Error DataError(const std::string& what) {
  return Error(ErrorKind::kData, what);
}
inline Error UsageError(const std::string& what) {
  return Error(ErrorKind::kUsage, what);
}

/// Screen coordinates: origin top-left, y grows downward.
struct Point {
  double x = 0.0;
  double y = 0.0;
};

struct Feature {
  std::string id;
  double x = 0.0;
  double y = 0.0;
  double weight = 0.0;
  std::string name;
  std::string category;
};

struct Size {
  double width = 0.0;
  double height = 0.0;
};

/// Index into Instance::features(). Values >= Instance::size() denote
/// padding (dummy) features; dummy number d has index size() + d.
using FeatureIndex = std::size_t;

/// Viewport, label geometry, port count and the weighted point features.
/// Validated on construction and immutable afterwards.
class Instance {
 public:
  Instance(Size screen, Size label, int k, std::vector<Feature> features);

  const Size& screen() const { return screen_; }
  const Size& label() const { return label_; }
  int k() const { return k_; }
  std::size_t size() const { return features_.size(); }
  std::span<const Feature> features() const { return features_; }
  const Feature& feature(FeatureIndex i) const { return features_.at(i); }

  bool is_dummy(FeatureIndex i) const { return i >= features_.size(); }
  /// Stable id for real and dummy features alike.
  std::string id_of(FeatureIndex i) const;
  std::optional<FeatureIndex> find(const std::string& id) const;

  /// Ports in left-to-right order (0-based index j is port j + 1).
  std::span<const Point> ports() const { return ports_; }
  const Point& port(int j) const { return ports_.at(static_cast<std::size_t>(j)); }
  Point location(FeatureIndex i) const {
    const Feature& f = features_.at(i);
    return {f.x, f.y};
  }

  /// Sum of screen width and height, the leader-length normalizer.
  double length_normalizer() const { return screen_.width + screen_.height; }

 private:
  Size screen_;
  Size label_;
  int k_;
  std::vector<Feature> features_;
  std::vector<Point> ports_;
};

std::string dummy_id(std::size_t dummy_number);

/// Evenly spaced ports at the midpoints of k equal cells of the bottom edge.
std::vector<Point> port_positions(const Size& screen, int k);

/// Total length of the po-leader: horizontal from the feature to the
/// port's x, then vertical down to the port.
double leader_length(const Point& port, const Point& feature);

struct Leader {
  Point port;
  Point feature;
};

/// True iff the horizontal segment of one leader properly crosses the
/// vertical segment of the other. Touching and collinear overlaps do not
/// count.
bool leaders_cross(const Leader& a, const Leader& b);

/// True iff the horizontal segments of the two leaders overlap in an
/// x-interval of positive length.
bool horizontals_overlap(const Leader& a, const Leader& b);

/// One display frame: assignment[j] is the feature at port j + 1.
struct State {
  std::vector<FeatureIndex> assignment;
  int page_index = 1;
};

enum class Method { kMultipage, kSliding, kStacking };

std::string to_string(Method m);
Method method_from_string(const std::string& s);

/// For each port j, the ordered stack t_j (front = topmost).
struct StackSet {
  std::vector<std::vector<FeatureIndex>> stacks;
};

struct Labeling {
  Method method = Method::kMultipage;
  double alpha = 0.0;
  std::vector<State> states;
  std::vector<FeatureIndex> dummies;
  bool optimal = true;
  std::optional<StackSet> stacks;
};

/// Leader of port j (0-based) to feature i.
Leader make_leader(const Instance& instance, int j, FeatureIndex i);

/// Checks the page-count/coverage/injectivity invariants for the method.
/// Returns an empty string when valid, otherwise a description.
std::string check_labeling(const Labeling& labeling, const Instance& instance);

}  // namespace labelkit
