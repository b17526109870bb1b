#include "labelkit/service.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <iostream>
#include <set>
#include <system_error>
#include <utility>

#include "labelkit/json_io.hpp"
#include "labelkit/multipage.hpp"
#include "labelkit/sliding.hpp"
#include "labelkit/stacking.hpp"

// After Eigen: <resolv.h>, pulled in here, defines a macro named _res.
#include <httplib.h>

namespace labelkit {

namespace {

HttpReply error_reply(int status, const std::string& message) {
  return {status, dump_canonical(Json{{"error", message}})};
}

// A field failed validation; the message names it.
struct BadField {
  int status;
  std::string message;
};

bool valid_instance_id(const std::string& id) {
  if (id.empty() || id.front() == '.') return false;
  return std::all_of(id.begin(), id.end(), [](char c) {
    return std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '-' || c == '.';
  });
}

struct SolveRequest {
  std::string instance_id;
  Json inline_instance;
  Method method = Method::kMultipage;
  double alpha = 0.0;
  bool exact = false;
  bool hard_c1 = false;
  std::uint64_t seed = 1;
  int iterations = 5000;
};

SolveRequest parse_request(const Json& body) {
  if (!body.is_object()) throw BadField{400, "body: expected a JSON object"};
  static const std::set<std::string> known = {"instance_id", "instance", "method",  "alpha",
                                              "mode",        "hard_c1",  "seed",    "iterations"};
  for (const auto& [key, value] : body.items()) {
    if (!known.count(key)) throw BadField{400, key + ": unknown field"};
  }
  SolveRequest request;
  const bool has_id = body.contains("instance_id");
  const bool has_inline = body.contains("instance");
  if (has_id == has_inline) {
    throw BadField{400, "instance_id: give exactly one of instance_id and instance"};
  }
  if (has_id) {
    if (!body["instance_id"].is_string()) throw BadField{400, "instance_id: expected a string"};
    request.instance_id = body["instance_id"].get<std::string>();
    if (!valid_instance_id(request.instance_id)) {
      throw BadField{400, "instance_id: invalid identifier"};
    }
  } else {
    request.inline_instance = body["instance"];
  }

  if (!body.contains("method") || !body["method"].is_string()) {
    throw BadField{400, "method: expected one of multipage, sliding, stacking"};
  }
  try {
    request.method = method_from_string(body["method"].get<std::string>());
  } catch (const Error&) {
    throw BadField{400, "method: expected one of multipage, sliding, stacking"};
  }

  if (body.contains("alpha")) {
    if (!body["alpha"].is_number()) throw BadField{400, "alpha: expected a number"};
    request.alpha = body["alpha"].get<double>();
    if (!(request.alpha >= 0.0 && request.alpha <= 1.0)) {
      throw BadField{400, "alpha: must lie in [0,1]"};
    }
  } else if (request.method != Method::kStacking) {
    throw BadField{400, "alpha: required"};
  }

  if (body.contains("mode")) {
    if (!body["mode"].is_string()) throw BadField{400, "mode: expected exact or heuristic"};
    const std::string mode = body["mode"].get<std::string>();
    if (mode != "exact" && mode != "heuristic") {
      throw BadField{400, "mode: expected exact or heuristic"};
    }
    if (request.method != Method::kSliding) {
      throw BadField{422, "mode: only valid for method sliding"};
    }
    request.exact = mode == "exact";
  }
  if (body.contains("hard_c1")) {
    if (!body["hard_c1"].is_boolean()) throw BadField{400, "hard_c1: expected a boolean"};
    request.hard_c1 = body["hard_c1"].get<bool>();
  }
  if (body.contains("seed")) {
    if (!body["seed"].is_number_unsigned()) {
      throw BadField{400, "seed: expected a non-negative integer"};
    }
    request.seed = body["seed"].get<std::uint64_t>();
  }
  if (body.contains("iterations")) {
    if (!body["iterations"].is_number_integer() || body["iterations"].get<long long>() < 1 ||
        body["iterations"].get<long long>() > 100'000'000) {
      throw BadField{400, "iterations: expected a positive integer"};
    }
    request.iterations = body["iterations"].get<int>();
  }
  return request;
}

}  // namespace

LabelService::LabelService(std::filesystem::path instances_dir, std::size_t cache_size)
    : dir_(std::move(instances_dir)), capacity_(cache_size) {}

HttpReply LabelService::health() const { return {200, dump_canonical(Json{{"status", "ok"}})}; }

HttpReply LabelService::not_found(const std::string& path) const {
  return error_reply(404, "no such endpoint: " + path);
}

HttpReply LabelService::list_instances() const {
  std::error_code ec;
  std::filesystem::directory_iterator it(dir_, ec);
  if (ec) return error_reply(500, "cannot read instance directory: " + ec.message());
  std::vector<std::filesystem::path> files;
  for (; it != std::filesystem::directory_iterator(); it.increment(ec)) {
    if (ec) return error_reply(500, "cannot read instance directory: " + ec.message());
    if (it->is_regular_file(ec)) files.push_back(it->path());
  }
  std::sort(files.begin(), files.end());
  Json list = Json::array();
  for (const auto& file : files) {
    if (file.extension() != ".json") {
      list.push_back({{"id", file.filename().string()}, {"warning", "not a JSON file, skipped"}});
      continue;
    }
    try {
      const Instance instance = load_instance(file);
      list.push_back({{"id", file.stem().string()},
                      {"n", instance.size()},
                      {"k", instance.k()},
                      {"screen",
                       {{"width", canonical_real(instance.screen().width)},
                        {"height", canonical_real(instance.screen().height)}}}});
    } catch (const std::exception& e) {
      list.push_back({{"id", file.stem().string()}, {"warning", e.what()}});
    }
  }
  return {200, dump_canonical(list)};
}

HttpReply LabelService::solve(const std::string& body) {
  Json parsed;
  try {
    parsed = Json::parse(body);
  } catch (const Json::parse_error&) {
    return error_reply(400, "body: malformed JSON");
  }
  SolveRequest request;
  try {
    request = parse_request(parsed);
  } catch (const BadField& bad) {
    return error_reply(bad.status, bad.message);
  }

  std::optional<Instance> instance;
  std::string source;
  try {
    if (!request.instance_id.empty()) {
      const auto path = dir_ / (request.instance_id + ".json");
      if (!std::filesystem::is_regular_file(path)) {
        return error_reply(404, "instance_id: unknown instance '" + request.instance_id + "'");
      }
      instance.emplace(load_instance(path));
      source = "id:" + request.instance_id;
    } else {
      instance.emplace(instance_from_json(request.inline_instance));
      source = "inline:" + request.inline_instance.dump();
    }
  } catch (const std::exception& e) {
    return error_reply(400, std::string("instance: ") + e.what());
  }

  const std::string key = source + "|" + to_string(request.method) + "|" +
                          Json(request.alpha).dump() + "|" +
                          (request.exact ? "exact" : "heuristic") + "|" +
                          std::to_string(request.hard_c1) + "|" + std::to_string(request.seed) +
                          "|" + std::to_string(request.iterations);
  HttpReply reply;
  if (lookup(key, reply)) return reply;

  try {
    Labeling labeling;
    bool partial = false;
    switch (request.method) {
      case Method::kMultipage:
        labeling = solve_multipage(*instance, request.alpha);
        break;
      case Method::kStacking:
        labeling = solve_stacking_labeling(*instance);
        labeling.alpha = request.alpha;
        break;
      case Method::kSliding:
        if (request.exact) {
          SearchBudget budget;
          budget.max_time = std::chrono::seconds(5);
          labeling =
              solve_sliding_exact(*instance, request.alpha, request.hard_c1, budget).labeling;
          partial = !labeling.optimal;
        } else {
          labeling = solve_sliding_heuristic(*instance, request.alpha, request.hard_c1,
                                             request.iterations, request.seed)
                         .labeling;
        }
        break;
    }
    reply = {partial ? 202 : 200, dump_canonical(labeling_to_json(labeling, *instance))};
  } catch (const Error& e) {
    return error_reply(e.kind() == ErrorKind::kUsage ? 400 : 422, e.what());
  }
  // Time-limited partial results depend on machine load; only complete ones are kept.
  if (reply.status == 200) remember(key, reply);
  return reply;
}

bool LabelService::lookup(const std::string& key, HttpReply& reply) {
  std::lock_guard lock(mutex_);
  const auto it = index_.find(key);
  if (it == index_.end()) return false;
  lru_.splice(lru_.begin(), lru_, it->second);
  reply = it->second->reply;
  return true;
}

void LabelService::remember(const std::string& key, const HttpReply& reply) {
  std::lock_guard lock(mutex_);
  if (capacity_ == 0 || index_.count(key)) return;
  lru_.push_front({key, reply});
  index_[key] = lru_.begin();
  if (lru_.size() > capacity_) {
    index_.erase(lru_.back().key);
    lru_.pop_back();
  }
}

std::size_t LabelService::cached() const {
  std::lock_guard lock(mutex_);
  return lru_.size();
}

void install_routes(httplib::Server& server, LabelService& service) {
  server.set_default_headers({{"Access-Control-Allow-Origin", "*"},
                              {"Access-Control-Allow-Methods", "GET, POST, OPTIONS"},
                              {"Access-Control-Allow-Headers", "Content-Type"}});
  const auto send = [](httplib::Response& res, const HttpReply& reply) {
    res.status = reply.status;
    res.set_content(reply.body, "application/json");
  };
  server.Get("/api/health", [&service, send](const httplib::Request&, httplib::Response& res) {
    send(res, service.health());
  });
  server.Get("/api/instances",
             [&service, send](const httplib::Request&, httplib::Response& res) {
               send(res, service.list_instances());
             });
  server.Post("/api/solve", [&service, send](const httplib::Request& req, httplib::Response& res) {
    send(res, service.solve(req.body));
  });
  server.Options(".*", [](const httplib::Request&, httplib::Response& res) { res.status = 204; });
  server.set_error_handler(
      [&service, send](const httplib::Request& req, httplib::Response& res) {
        if (res.status == 404 && res.body.empty()) send(res, service.not_found(req.path));
      });
}

int run_server(const std::filesystem::path& instances_dir, const std::string& host, int port) {
  LabelService service(instances_dir);
  httplib::Server server;
  install_routes(server, service);
  std::cerr << "labelkit: serving " << instances_dir.string() << " on " << host << ':' << port
            << '\n';
  if (!server.listen(host, port)) {
    std::cerr << "labelkit: cannot listen on " << host << ':' << port << '\n';
    return 1;
  }
  return 0;
}

}  // namespace labelkit
