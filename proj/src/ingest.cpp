#include "labelkit/ingest.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <map>
#include <numeric>
#include <random>
#include <set>
#include <unordered_set>

#include <boost/tokenizer.hpp>

#include "labelkit/json_io.hpp"

namespace labelkit {

namespace {

std::vector<std::string> split_csv_line(const std::string& line) {
  using Tokenizer = boost::tokenizer<boost::escaped_list_separator<char>>;
  Tokenizer tokens(line, boost::escaped_list_separator<char>('\\', ',', '"'));
  return {tokens.begin(), tokens.end()};
}

std::string trim(std::string s) {
  const auto not_space = [](unsigned char c) { return !std::isspace(c); };
  s.erase(s.begin(), std::find_if(s.begin(), s.end(), not_space));
  s.erase(std::find_if(s.rbegin(), s.rend(), not_space).base(), s.end());
  return s;
}

double parse_real(const std::string& text, std::size_t row, const std::string& column) {
  try {
    std::size_t used = 0;
    const double value = std::stod(text, &used);
    if (used != text.size() || !std::isfinite(value)) throw std::invalid_argument(text);
    return value;
  } catch (const std::exception&) {
    throw DataError("csv: unparsable value '" + text + "' in column '" + column +
                    "' at row " + std::to_string(row));
  }
}

}  // namespace

ColumnMapping ColumnMapping::parse(const std::string& spec) {
  ColumnMapping mapping;
  std::map<std::string, std::string*> fields = {
      {"id", &mapping.id},       {"x", &mapping.x},
      {"y", &mapping.y},         {"stars", &mapping.stars},
      {"name", &mapping.name},   {"category", &mapping.category}};
  std::size_t start = 0;
  while (start < spec.size()) {
    std::size_t end = spec.find(',', start);
    if (end == std::string::npos) end = spec.size();
    const std::string entry = spec.substr(start, end - start);
    const std::size_t eq = entry.find('=');
    if (eq == std::string::npos) throw UsageError("map: entry '" + entry + "' lacks '='");
    const std::string key = trim(entry.substr(0, eq));
    auto it = fields.find(key);
    if (it == fields.end()) throw UsageError("map: unknown key '" + key + "'");
    *it->second = trim(entry.substr(eq + 1));
    start = end + 1;
  }
  return mapping;
}

std::vector<RawRecord> load_csv(const std::filesystem::path& path, const ColumnMapping& mapping) {
  std::ifstream in(path);
  if (!in) throw DataError("csv: cannot read " + path.string());
  std::string line;
  if (!std::getline(in, line)) throw DataError("csv: empty file " + path.string());
  if (!line.empty() && line.back() == '\r') line.pop_back();
  std::vector<std::string> header = split_csv_line(line);
  for (auto& h : header) h = trim(h);

  auto column = [&](const std::string& name, bool required) -> std::ptrdiff_t {
    if (name.empty()) return -1;
    auto it = std::find(header.begin(), header.end(), name);
    if (it == header.end()) {
      if (required) throw DataError("csv: missing column '" + name + "'");
      return -1;
    }
    return it - header.begin();
  };
  const auto c_id = column(mapping.id, true);
  const auto c_x = column(mapping.x, true);
  const auto c_y = column(mapping.y, true);
  const auto c_stars = column(mapping.stars, true);
  const auto c_name = column(mapping.name, !mapping.name.empty());
  const auto c_category = column(mapping.category, !mapping.category.empty());

  std::vector<RawRecord> records;
  std::unordered_set<std::string> ids;
  std::size_t row = 0;
  while (std::getline(in, line)) {
    ++row;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (trim(line).empty()) continue;
    std::vector<std::string> cells;
    try {
      cells = split_csv_line(line);
    } catch (const boost::escaped_list_error&) {
      throw DataError("csv: malformed quoting at row " + std::to_string(row));
    }
    if (cells.size() != header.size()) {
      throw DataError("csv: row " + std::to_string(row) + " has " +
                      std::to_string(cells.size()) + " fields, expected " +
                      std::to_string(header.size()));
    }
    RawRecord r;
    r.id = trim(cells[c_id]);
    if (r.id.empty()) throw DataError("csv: empty id at row " + std::to_string(row));
    if (!ids.insert(r.id).second) throw DataError("csv: duplicate id '" + r.id + "'");
    r.x = parse_real(trim(cells[c_x]), row, mapping.x);
    r.y = parse_real(trim(cells[c_y]), row, mapping.y);
    r.stars = parse_real(trim(cells[c_stars]), row, mapping.stars);
    if (c_name >= 0) r.name = trim(cells[c_name]);
    if (c_category >= 0) r.category = trim(cells[c_category]);
    records.push_back(std::move(r));
  }
  return records;
}

namespace {

double json_real(const Json& value, std::size_t index, const std::string& field) {
  if (value.is_number()) return value.get<double>();
  if (value.is_string()) return parse_real(value.get<std::string>(), index, field);
  throw DataError("points: field '" + field + "' of point " + std::to_string(index) +
                  " is not a number");
}

std::string json_text(const Json& value) {
  if (value.is_string()) return value.get<std::string>();
  if (value.is_number_integer()) return std::to_string(value.get<long long>());
  return value.dump();
}

const Json& json_field(const Json& object, const std::string& field, std::size_t index) {
  if (!object.is_object() || !object.contains(field)) {
    throw DataError("points: missing field '" + field + "' in point " + std::to_string(index));
  }
  return object.at(field);
}

}  // namespace

std::vector<RawRecord> load_points_json(const std::filesystem::path& path,
                                        const ColumnMapping& mapping) {
  Json doc;
  try {
    doc = Json::parse(read_text(path));
  } catch (const Json::parse_error& e) {
    throw DataError("points: malformed JSON in " + path.string() + ": " + e.what());
  }
  const bool geojson = doc.is_object() && doc.value("type", "") == "FeatureCollection";
  const Json& items = geojson ? json_field(doc, "features", 0) : doc;
  if (!items.is_array()) throw DataError("points: expected an array of points");

  std::vector<RawRecord> records;
  std::unordered_set<std::string> ids;
  for (std::size_t i = 0; i < items.size(); ++i) {
    const Json& item = items[i];
    RawRecord r;
    const Json* props = &item;
    if (geojson) {
      const Json& geometry = json_field(item, "geometry", i);
      const Json& coords = json_field(geometry, "coordinates", i);
      if (geometry.value("type", "") != "Point" || !coords.is_array() || coords.size() < 2) {
        throw DataError("points: feature " + std::to_string(i) + " is not a Point");
      }
      r.x = json_real(coords[0], i, "coordinates");
      r.y = json_real(coords[1], i, "coordinates");
      props = &json_field(item, "properties", i);
      r.id = props->contains(mapping.id) ? json_text(props->at(mapping.id))
                                         : json_text(json_field(item, "id", i));
    } else {
      r.x = json_real(json_field(item, mapping.x, i), i, mapping.x);
      r.y = json_real(json_field(item, mapping.y, i), i, mapping.y);
      r.id = json_text(json_field(item, mapping.id, i));
    }
    r.stars = json_real(json_field(*props, mapping.stars, i), i, mapping.stars);
    if (!mapping.name.empty()) r.name = json_text(json_field(*props, mapping.name, i));
    if (!mapping.category.empty()) {
      r.category = json_text(json_field(*props, mapping.category, i));
    }
    if (r.id.empty()) throw DataError("points: empty id in point " + std::to_string(i));
    if (!ids.insert(r.id).second) throw DataError("points: duplicate id '" + r.id + "'");
    records.push_back(std::move(r));
  }
  return records;
}

double normalize_weights(double stars) {
  const double doubled = stars * 2.0;
  if (!(stars >= 1.0 && stars <= 5.0) || doubled != std::floor(doubled)) {
    throw DataError("stars: rating " + std::to_string(stars) +
                    " outside {1, 1.5, ..., 5}");
  }
  return (stars - 1.0) / 4.0;
}

BoundingBox bounding_box(const std::vector<RawRecord>& records) {
  if (records.empty()) throw DataError("bbox: no records");
  BoundingBox box{records[0].x, records[0].y, records[0].x, records[0].y};
  for (const RawRecord& r : records) {
    box.min_x = std::min(box.min_x, r.x);
    box.min_y = std::min(box.min_y, r.y);
    box.max_x = std::max(box.max_x, r.x);
    box.max_y = std::max(box.max_y, r.y);
  }
  return box;
}

Point project_point(double x, double y, const BoundingBox& box,
                    const ProjectionOptions& options) {
  const double u = (x - box.min_x) / (box.max_x - box.min_x);
  double v = (y - box.min_y) / (box.max_y - box.min_y);
  if (options.source_y_up) v = 1.0 - v;
  return {u * options.screen.width, v * options.screen.height};
}

std::pair<double, double> unproject_point(const Point& p, const BoundingBox& box,
                                          const ProjectionOptions& options) {
  const double u = p.x / options.screen.width;
  double v = p.y / options.screen.height;
  if (options.source_y_up) v = 1.0 - v;
  return {box.min_x + u * (box.max_x - box.min_x), box.min_y + v * (box.max_y - box.min_y)};
}

Instance project_to_screen(const std::vector<RawRecord>& records, const BoundingBox& box,
                           const ProjectionOptions& options, ProjectionReport* report) {
  if (!(box.max_x > box.min_x) || !(box.max_y > box.min_y)) {
    throw DataError("bbox: degenerate bounding box");
  }
  std::vector<std::string> outside;
  for (const RawRecord& r : records) {
    if (r.x < box.min_x || r.x > box.max_x || r.y < box.min_y || r.y > box.max_y) {
      outside.push_back(r.id);
    }
  }
  if (!outside.empty()) {
    std::string ids;
    for (const auto& id : outside) ids += (ids.empty() ? "" : ", ") + id;
    throw DataError("bbox: records outside the bounding box: " + ids);
  }

  const double width = options.screen.width;
  const double height = options.screen.height;
  std::mt19937_64 rng(options.jitter_seed);
  std::uniform_real_distribution<double> offset(-0.5, 0.5);
  std::set<std::pair<double, double>> taken;
  std::vector<Feature> features;
  features.reserve(records.size());
  for (const RawRecord& r : records) {
    Point p = project_point(r.x, r.y, box, options);
    if (p.y >= height) {
      p.y = height - 1.0;
      if (report) report->nudged.push_back(r.id);
    }
    if (taken.count({p.x, p.y})) {
      do {
        p.x = std::clamp(p.x + offset(rng), 0.0, width);
        p.y = std::clamp(p.y + offset(rng), 0.0, height - 1.0);
      } while (taken.count({p.x, p.y}));
      if (report) report->jittered.push_back(r.id);
    }
    taken.emplace(p.x, p.y);
    Feature f;
    f.id = r.id;
    f.x = p.x;
    f.y = p.y;
    f.weight = normalize_weights(r.stars);
    f.name = r.name;
    f.category = r.category;
    features.push_back(std::move(f));
  }
  return Instance(options.screen, options.label, options.k, std::move(features));
}

std::vector<Instance> sample_instances(const std::vector<RawRecord>& records, std::size_t count,
                                       std::size_t n, std::uint64_t seed,
                                       const ProjectionOptions& options, int grid) {
  if (grid < 1) throw UsageError("grid: must be positive");
  if (records.size() < n) {
    throw DataError("sample: insufficient records (" + std::to_string(records.size()) +
                    " < " + std::to_string(n) + ")");
  }
  const BoundingBox extent = bounding_box(records);
  const double cell_w = (extent.max_x - extent.min_x) / grid;
  const double cell_h = (extent.max_y - extent.min_y) / grid;
  auto cell_of = [&](double v, double lo, double size) {
    if (!(size > 0.0)) return 0;
    return std::min(grid - 1, static_cast<int>((v - lo) / size));
  };
  std::map<std::pair<int, int>, std::vector<std::size_t>> cells;
  for (std::size_t i = 0; i < records.size(); ++i) {
    cells[{cell_of(records[i].x, extent.min_x, cell_w),
           cell_of(records[i].y, extent.min_y, cell_h)}]
        .push_back(i);
  }
  std::vector<std::pair<std::pair<int, int>, const std::vector<std::size_t>*>> eligible;
  for (const auto& [key, members] : cells) {
    if (members.size() >= n) eligible.emplace_back(key, &members);
  }
  if (eligible.empty()) {
    throw DataError("sample: insufficient records, no map section holds " +
                    std::to_string(n) + " records");
  }

  std::mt19937_64 rng(seed);
  std::vector<Instance> instances;
  instances.reserve(count);
  for (std::size_t c = 0; c < count; ++c) {
    std::uniform_int_distribution<std::size_t> pick(0, eligible.size() - 1);
    const auto& [key, members] = eligible[pick(rng)];
    std::vector<std::size_t> chosen;
    std::sample(members->begin(), members->end(), std::back_inserter(chosen), n, rng);
    BoundingBox box;
    box.min_x = extent.min_x + key.first * cell_w;
    box.min_y = extent.min_y + key.second * cell_h;
    box.max_x = key.first == grid - 1 ? extent.max_x : box.min_x + cell_w;
    box.max_y = key.second == grid - 1 ? extent.max_y : box.min_y + cell_h;
    std::vector<RawRecord> subset;
    for (std::size_t i : chosen) {
      subset.push_back(records[i]);
      // Cell edges are recomputed in floating point; never cut off a member.
      box.min_x = std::min(box.min_x, records[i].x);
      box.min_y = std::min(box.min_y, records[i].y);
      box.max_x = std::max(box.max_x, records[i].x);
      box.max_y = std::max(box.max_y, records[i].y);
    }
    ProjectionOptions section = options;
    section.jitter_seed = seed + c;
    instances.push_back(project_to_screen(subset, box, section));
  }
  return instances;
}

}  // namespace labelkit
