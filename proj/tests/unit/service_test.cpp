#include <filesystem>
#include <thread>

#include <gtest/gtest.h>

#include "labelkit/json_io.hpp"
#include "labelkit/service.hpp"
#include "labelkit/synthetic.hpp"

#include <httplib.h>

namespace labelkit {
namespace {

namespace fs = std::filesystem;

class ServiceTest : public ::testing::Test {
 protected:
  void SetUp() override {
    dir_ = fs::temp_directory_path() /
           ("labelkit_service_" +
            std::string(::testing::UnitTest::GetInstance()->current_test_info()->name()));
    fs::remove_all(dir_);
    fs::create_directories(dir_);
  }
  void TearDown() override { fs::remove_all(dir_); }

  void add_instances(std::size_t count, std::size_t n = 12) {
    GeneratorOptions g;
    g.n = n;
    const auto instances = generate_instances(g, count, 1);
    for (std::size_t i = 0; i < count; ++i) {
      char name[32];
      std::snprintf(name, sizeof name, "inst_%03zu.json", i);
      save_instance(instances[i], dir_ / name);
    }
  }

  fs::path dir_;
};

TEST_F(ServiceTest, Health) {
  LabelService s(dir_);
  const HttpReply a = s.health();
  EXPECT_EQ(a.status, 200);
  EXPECT_EQ(Json::parse(a.body), Json({{"status", "ok"}}));
  EXPECT_EQ(s.health().body, a.body);
}

TEST_F(ServiceTest, ListsInstancesSorted) {
  LabelService s(dir_);
  EXPECT_EQ(Json::parse(s.list_instances().body), Json::array());
  add_instances(100);
  write_text(dir_ / "notes.txt", "hello");
  write_text(dir_ / "broken.json", "{");
  const Json list = Json::parse(s.list_instances().body);
  ASSERT_EQ(list.size(), 102u);
  EXPECT_EQ(list[0]["id"], "broken");
  EXPECT_TRUE(list[0].contains("warning"));
  EXPECT_EQ(list[1]["id"], "inst_000");
  EXPECT_EQ(list[1]["n"], 12);
  EXPECT_EQ(list[1]["k"], 5);
  EXPECT_EQ(list[1]["screen"]["width"], 300);
  EXPECT_EQ(list[101]["id"], "notes.txt");
  EXPECT_TRUE(list[101].contains("warning"));
}

TEST_F(ServiceTest, UnreadableDirectory) {
  LabelService s(dir_ / "nope");
  const HttpReply r = s.list_instances();
  EXPECT_EQ(r.status, 500);
  EXPECT_TRUE(Json::parse(r.body).contains("error"));
}

TEST_F(ServiceTest, SolveMultipage) {
  add_instances(1, 12);
  LabelService s(dir_);
  const HttpReply r = s.solve(R"({"instance_id":"inst_000","method":"multipage","alpha":0.5})");
  ASSERT_EQ(r.status, 200) << r.body;
  const Json j = Json::parse(r.body);
  EXPECT_EQ(j["states"].size(), 3u);
  EXPECT_EQ(j["method"], "multipage");
}

TEST_F(ServiceTest, SolveInlineStacking) {
  GeneratorOptions g;
  g.n = 9;
  Json body = {{"instance", instance_to_json(generate_instance(g, 4))},
               {"method", "stacking"}};
  LabelService s(dir_);
  const HttpReply r = s.solve(body.dump());
  ASSERT_EQ(r.status, 200) << r.body;
  EXPECT_TRUE(Json::parse(r.body).contains("stacks"));
}

TEST_F(ServiceTest, ValidationErrors) {
  add_instances(1);
  LabelService s(dir_);
  auto check = [&](const std::string& body, int status, const std::string& field) {
    const HttpReply r = s.solve(body);
    EXPECT_EQ(r.status, status) << body;
    const std::string message = Json::parse(r.body)["error"];
    EXPECT_EQ(message.rfind(field, 0), 0u) << message;
  };
  check(R"({"instance_id":"inst_000","method":"multipage","alpha":1.5})", 400, "alpha");
  check(R"({"instance_id":"inst_000","method":"multipage"})", 400, "alpha");
  check(R"({"instance_id":"inst_000","method":"zoom","alpha":0.5})", 400, "method");
  check(R"({"instance_id":"inst_000","method":"multipage","alpha":0.5,"speed":1})", 400, "speed");
  check(R"({"method":"multipage","alpha":0.5})", 400, "instance_id");
  check(R"({"instance_id":"../etc","method":"multipage","alpha":0.5})", 400, "instance_id");
  check(R"({"instance_id":"ghost","method":"multipage","alpha":0.5})", 404, "instance_id");
  check(R"({"instance_id":"inst_000","method":"multipage","alpha":0.5,"mode":"exact"})", 422,
        "mode");
  check(R"({"instance_id":"inst_000","method":"sliding","alpha":0.5,"seed":-1})", 400, "seed");
  check(R"({"instance_id":"inst_000","method":"sliding","alpha":0.5,"iterations":0})", 400,
        "iterations");
  check(R"({"instance":{"k":5},"method":"sliding","alpha":0.5})", 400, "instance");
  check("{oops", 400, "body");
}

TEST_F(ServiceTest, SlidingDeterministicAndMemoized) {
  add_instances(1, 15);
  LabelService s(dir_);
  const std::string body =
      R"({"instance_id":"inst_000","method":"sliding","alpha":0.3,"seed":7,"hard_c1":true})";
  const HttpReply a = s.solve(body);
  ASSERT_EQ(a.status, 200) << a.body;
  EXPECT_EQ(s.cached(), 1u);
  LabelService fresh(dir_);
  EXPECT_EQ(fresh.solve(body).body, a.body);
  EXPECT_EQ(s.solve(body).body, a.body);
  EXPECT_EQ(s.cached(), 1u);
}

TEST_F(ServiceTest, ExactOverBudgetIsPartial) {
  add_instances(1, 15);
  LabelService s(dir_);
  const HttpReply r =
      s.solve(R"({"instance_id":"inst_000","method":"sliding","alpha":0.3,"mode":"exact"})");
  EXPECT_EQ(r.status, 202);
  EXPECT_EQ(Json::parse(r.body)["optimal"], false);
}

TEST_F(ServiceTest, CacheIsBounded) {
  add_instances(1, 10);
  LabelService s(dir_, 3);
  for (int i = 0; i < 6; ++i) {
    s.solve(R"({"instance_id":"inst_000","method":"multipage","alpha":0.)" + std::to_string(i) +
            "}");
  }
  EXPECT_EQ(s.cached(), 3u);
}

TEST_F(ServiceTest, OverHttp) {
  add_instances(2, 10);
  LabelService service(dir_);
  httplib::Server server;
  install_routes(server, service);
  const int port = server.bind_to_any_port("127.0.0.1");
  ASSERT_GT(port, 0);
  std::thread thread([&] { server.listen_after_bind(); });
  server.wait_until_ready();

  httplib::Client client("127.0.0.1", port);
  auto health = client.Get("/api/health");
  ASSERT_TRUE(health);
  EXPECT_EQ(health->status, 200);
  EXPECT_EQ(health->get_header_value("Access-Control-Allow-Origin"), "*");
  auto list = client.Get("/api/instances");
  ASSERT_TRUE(list);
  EXPECT_EQ(Json::parse(list->body).size(), 2u);
  auto solved = client.Post("/api/solve",
                            R"({"instance_id":"inst_001","method":"multipage","alpha":1})",
                            "application/json");
  ASSERT_TRUE(solved);
  EXPECT_EQ(solved->status, 200);
  auto ghost = client.Post("/api/solve",
                           R"({"instance_id":"ghost","method":"multipage","alpha":1})",
                           "application/json");
  ASSERT_TRUE(ghost);
  EXPECT_EQ(ghost->status, 404);
  EXPECT_NE(ghost->body.find("ghost"), std::string::npos);
  auto missing = client.Get("/api/nothing");
  ASSERT_TRUE(missing);
  EXPECT_EQ(missing->status, 404);
  EXPECT_TRUE(Json::parse(missing->body).contains("error"));

  server.stop();
  thread.join();
}

}  // namespace
}  // namespace labelkit
