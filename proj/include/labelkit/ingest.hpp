#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

#include "labelkit/model.hpp"

namespace labelkit {

/// CSV column names for each record field; name and category optional.
struct ColumnMapping {
  std::string id = "id";
  std::string x = "x";
  std::string y = "y";
  std::string stars = "stars";
  std::string name;
  std::string category;

  /// Parses "id=COL,x=COL,y=COL,stars=COL,name=COL,category=COL"; keys not
  /// mentioned keep their defaults.
  static ColumnMapping parse(const std::string& spec);
};

struct RawRecord {
  std::string id;
  double x = 0.0;  // source coordinates, e.g. longitude
  double y = 0.0;  // e.g. latitude
  double stars = 0.0;
  std::string name;
  std::string category;
};

std::vector<RawRecord> load_csv(const std::filesystem::path& path, const ColumnMapping& mapping);

/// Point collections: a GeoJSON FeatureCollection of Point features (x, y
/// from the coordinates, the other fields from properties, id falling back
/// to the feature's own "id"), or a bare array of flat objects keyed like
/// CSV columns.
std::vector<RawRecord> load_points_json(const std::filesystem::path& path,
                                        const ColumnMapping& mapping);

/// Star rating in {1, 1.5, ..., 5} to a weight in [0,1].
double normalize_weights(double stars);

struct BoundingBox {
  double min_x = 0.0;
  double min_y = 0.0;
  double max_x = 0.0;
  double max_y = 0.0;
};

BoundingBox bounding_box(const std::vector<RawRecord>& records);

struct ProjectionOptions {
  Size screen{300.0, 300.0};
  Size label{60.0, 60.0};
  int k = 5;
  // Latitude-like sources grow upward and are flipped onto screen y.
  bool source_y_up = true;
  std::uint64_t jitter_seed = 0;
};

struct ProjectionReport {
  std::vector<std::string> nudged;    // moved off the bottom edge
  std::vector<std::string> jittered;  // moved to break coordinate ties
};

/// Affine map of the box onto the screen.
Point project_point(double x, double y, const BoundingBox& box, const ProjectionOptions& options);
/// Inverse of project_point.
std::pair<double, double> unproject_point(const Point& p, const BoundingBox& box,
                                          const ProjectionOptions& options);

Instance project_to_screen(const std::vector<RawRecord>& records, const BoundingBox& box,
                           const ProjectionOptions& options,
                           ProjectionReport* report = nullptr);

/// `count` map sections, each drawn uniformly from the cells of a
/// grid x grid partition of the records' extent that hold at least n
/// records, with n records sampled without replacement.
std::vector<Instance> sample_instances(const std::vector<RawRecord>& records, std::size_t count,
                                       std::size_t n, std::uint64_t seed,
                                       const ProjectionOptions& options, int grid = 4);

}  // namespace labelkit
