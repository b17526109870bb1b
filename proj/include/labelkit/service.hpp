#pragma once

#include <cstddef>
#include <filesystem>
#include <list>
#include <mutex>
#include <string>
#include <unordered_map>

namespace httplib {
class Server;
}

namespace labelkit {

struct HttpReply {
  int status = 200;
  std::string body;  // JSON
};

/// Request handling behind the HTTP server, usable without a socket.
/// Responses depend only on the instance directory and the request.
class LabelService {
 public:
  explicit LabelService(std::filesystem::path instances_dir, std::size_t cache_size = 256);

  HttpReply health() const;
  HttpReply list_instances() const;
  HttpReply solve(const std::string& body);
  HttpReply not_found(const std::string& path) const;

  std::size_t cached() const;

 private:
  struct Entry {
    std::string key;
    HttpReply reply;
  };

  bool lookup(const std::string& key, HttpReply& reply);
  void remember(const std::string& key, const HttpReply& reply);

  std::filesystem::path dir_;
  std::size_t capacity_;
  mutable std::mutex mutex_;
  std::list<Entry> lru_;  // most recent first
  std::unordered_map<std::string, std::list<Entry>::iterator> index_;
};

/// Routes, CORS headers and the JSON 404 handler.
void install_routes(httplib::Server& server, LabelService& service);

/// Blocks serving /api/health, /api/instances and /api/solve.
int run_server(const std::filesystem::path& instances_dir, const std::string& host, int port);

}  // namespace labelkit
