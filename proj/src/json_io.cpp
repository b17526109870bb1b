#include "labelkit/json_io.hpp"

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <set>
#include <sstream>

#include "labelkit/costs.hpp"

namespace labelkit {

namespace {

void reject_unknown(const Json& object, const std::set<std::string>& allowed,
                    const std::string& where) {
  if (!object.is_object()) throw DataError(where + ": expected an object");
  for (const auto& item : object.items()) {
    if (!allowed.count(item.key())) {
      throw DataError(where + ": unknown field '" + item.key() + "'");
    }
  }
}

const Json& require(const Json& object, const std::string& key, const std::string& where) {
  auto it = object.find(key);
  if (it == object.end()) throw DataError(where + ": missing field '" + key + "'");
  return *it;
}

double require_number(const Json& object, const std::string& key, const std::string& where) {
  const Json& value = require(object, key, where);
  if (!value.is_number()) throw DataError(where + ": field '" + key + "' must be a number");
  return value.get<double>();
}

Size parse_size(const Json& json, const std::string& where) {
  reject_unknown(json, {"width", "height"}, where);
  return {require_number(json, "width", where), require_number(json, "height", where)};
}

Json size_json(const Size& s) {
  return {{"width", canonical_real(s.width)}, {"height", canonical_real(s.height)}};
}

Json costs_json(const StateCosts& c) {
  return {{"c_w", canonical_real(c.c_w)},
          {"c_c", canonical_real(c.c_c)},
          {"c_d", canonical_real(c.c_d)},
          {"c_l", canonical_real(c.c_l)},
          {"cross_count", c.cross_count}};
}

}  // namespace

double canonical_real(double value) {
  if (!std::isfinite(value)) return value;
  char buffer[32];
  std::snprintf(buffer, sizeof buffer, "%.9g", value);
  return std::strtod(buffer, nullptr);
}

std::string dump_canonical(const Json& json) { return json.dump(2) + "\n"; }

Json instance_to_json(const Instance& instance) {
  Json features = Json::array();
  for (const Feature& f : instance.features()) {
    Json item = {{"id", f.id},
                 {"x", canonical_real(f.x)},
                 {"y", canonical_real(f.y)},
                 {"weight", canonical_real(f.weight)}};
    if (!f.name.empty()) item["name"] = f.name;
    if (!f.category.empty()) item["category"] = f.category;
    features.push_back(std::move(item));
  }
  return {{"screen", size_json(instance.screen())},
          {"label", size_json(instance.label())},
          {"k", instance.k()},
          {"features", std::move(features)}};
}

Instance instance_from_json(const Json& json) {
  reject_unknown(json, {"screen", "label", "k", "features"}, "instance");
  const Size screen = parse_size(require(json, "screen", "instance"), "screen");
  const Size label = parse_size(require(json, "label", "instance"), "label");
  const Json& k = require(json, "k", "instance");
  if (!k.is_number_integer()) throw DataError("instance: field 'k' must be an integer");
  const Json& list = require(json, "features", "instance");
  if (!list.is_array()) throw DataError("instance: field 'features' must be an array");

  std::vector<Feature> features;
  for (const Json& item : list) {
    reject_unknown(item, {"id", "x", "y", "weight", "name", "category"}, "feature");
    Feature f;
    const Json& id = require(item, "id", "feature");
    if (!id.is_string()) throw DataError("feature: field 'id' must be a string");
    f.id = id.get<std::string>();
    f.x = require_number(item, "x", "feature");
    f.y = require_number(item, "y", "feature");
    f.weight = require_number(item, "weight", "feature");
    if (item.contains("name")) f.name = item.at("name").get<std::string>();
    if (item.contains("category")) f.category = item.at("category").get<std::string>();
    features.push_back(std::move(f));
  }
  return Instance(screen, label, k.get<int>(), std::move(features));
}

Instance load_instance(const std::filesystem::path& path) {
  Json json;
  try {
    json = Json::parse(read_text(path));
  } catch (const Json::parse_error& e) {
    throw DataError(path.string() + ": invalid JSON: " + e.what());
  }
  return instance_from_json(json);
}

void save_instance(const Instance& instance, const std::filesystem::path& path) {
  write_text(path, dump_canonical(instance_to_json(instance)));
}

Json labeling_to_json(const Labeling& labeling, const Instance& instance) {
  Json states = Json::array();
  for (const State& state : labeling.states) {
    Json assignment = Json::array();
    for (std::size_t j = 0; j < state.assignment.size(); ++j) {
      assignment.push_back({{"port", j + 1}, {"feature", instance.id_of(state.assignment[j])}});
    }
    states.push_back({{"index", state.page_index},
                      {"assignment", std::move(assignment)},
                      {"costs", costs_json(state_costs(state, instance))}});
  }
  const LabelingCosts totals = labeling_costs(labeling, instance, labeling.alpha);
  Json dummies = Json::array();
  for (FeatureIndex d : labeling.dummies) dummies.push_back(instance.id_of(d));

  Json out = {{"method", to_string(labeling.method)},
              {"alpha", canonical_real(labeling.alpha)},
              {"k", instance.k()},
              {"optimal", labeling.optimal},
              {"states", std::move(states)},
              {"totals",
               {{"c_w", canonical_real(totals.c_w)},
                {"c_c", canonical_real(totals.c_c)},
                {"c_d", canonical_real(totals.c_d)},
                {"c_l", canonical_real(totals.c_l)},
                {"c_mpl", canonical_real(totals.c_mpl)},
                {"c_slid", canonical_real(totals.c_slid)}}},
              {"dummy_ids", std::move(dummies)}};
  if (labeling.stacks) {
    Json stacks = Json::array();
    for (const auto& stack : labeling.stacks->stacks) {
      Json column = Json::array();
      for (FeatureIndex f : stack) column.push_back(instance.id_of(f));
      stacks.push_back(std::move(column));
    }
    out["stacks"] = std::move(stacks);
  }
  return out;
}

Labeling labeling_from_json(const Json& json, const Instance& instance) {
  reject_unknown(json,
                 {"method", "alpha", "k", "optimal", "states", "totals", "stacks", "dummy_ids"},
                 "labeling");
  auto resolve = [&](const Json& id) {
    if (!id.is_string()) throw DataError("labeling: feature ids must be strings");
    auto index = instance.find(id.get<std::string>());
    if (!index) throw DataError("labeling: unknown feature '" + id.get<std::string>() + "'");
    return *index;
  };
  Labeling labeling;
  labeling.method = method_from_string(require(json, "method", "labeling").get<std::string>());
  labeling.alpha = require_number(json, "alpha", "labeling");
  labeling.optimal = require(json, "optimal", "labeling").get<bool>();
  if (require(json, "k", "labeling").get<int>() != instance.k()) {
    throw DataError("labeling: field 'k' does not match the instance");
  }
  for (const Json& s : require(json, "states", "labeling")) {
    State state;
    state.page_index = require(s, "index", "state").get<int>();
    const Json& assignment = require(s, "assignment", "state");
    state.assignment.resize(assignment.size());
    for (const Json& a : assignment) {
      const int port = require(a, "port", "assignment").get<int>();
      if (port < 1 || port > static_cast<int>(assignment.size())) {
        throw DataError("assignment: port out of range");
      }
      state.assignment[static_cast<std::size_t>(port - 1)] = resolve(require(a, "feature", "assignment"));
    }
    labeling.states.push_back(std::move(state));
  }
  for (const Json& id : require(json, "dummy_ids", "labeling")) {
    labeling.dummies.push_back(resolve(id));
  }
  if (json.contains("stacks")) {
    StackSet stacks;
    for (const Json& column : json.at("stacks")) {
      std::vector<FeatureIndex> stack;
      for (const Json& id : column) stack.push_back(resolve(id));
      stacks.stacks.push_back(std::move(stack));
    }
    labeling.stacks = std::move(stacks);
  }
  return labeling;
}

void write_text(const std::filesystem::path& path, const std::string& text) {
  if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
  std::ofstream out(path, std::ios::binary);
  if (!out) throw DataError("cannot write " + path.string());
  out << text;
}

std::string read_text(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw DataError("cannot read " + path.string());
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

}  // namespace labelkit
