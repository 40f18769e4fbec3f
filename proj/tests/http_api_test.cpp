#include <gtest/gtest.h>

#include <thread>

#include <httplib.h>
#include <nlohmann/json.hpp>

#include "fixtures.hpp"
#include "moodcast/error.hpp"
#include "moodcast/http_api.hpp"
#include "moodcast/service.hpp"
#include "paths.hpp"

using namespace moodcast;
using nlohmann::json;

namespace {

class ApiFixture : public ::testing::Test {
 protected:
  void SetUp() override {
    auto store = std::make_shared<ProjectStore>(dir_.path());
    auto pipeline = testkit::mock_pipeline(FixtureSet::load(testkit::test_data("fixtures.json")));
    std::vector<SongEntry> catalog = {{"trk-a", "Quiet Morning", 0.55, 0.15, 40},
                                      {"trk-b", "Rush Hour", 0.8, 0.95, 90}};
    service_ = std::make_shared<CampaignService>(store, pipeline, catalog);
    server_ = std::make_unique<ApiServer>(service_);
    port_ = server_->bind("127.0.0.1", 0);
    thread_ = std::thread([this] { server_->run(); });
    client_ = std::make_unique<httplib::Client>("127.0.0.1", port_);
    client_->set_read_timeout(10, 0);
    // run() may not be listening yet; poll briefly.
    for (int i = 0; i < 100 && !client_->Get("/jobs/none"); ++i) std::this_thread::sleep_for(std::chrono::milliseconds(10));
  }
  void TearDown() override {
    server_->stop();
    thread_.join();
  }

  static json body(const httplib::Result& r) { return json::parse(r->body); }

  std::string create(bool with_mood = true) {
    const json req{{"brief", to_json(testkit::m1_brief())}, {"with_mood", with_mood}, {"seed", 42}};
    auto r = client_->Post("/projects", req.dump(), "application/json");
    EXPECT_EQ(r->status, 201);
    return body(r)["id"];
  }

  json run_stage(const std::string& id, const std::string& stage) {
    auto r = client_->Post("/projects/" + id + "/stages/" + stage, "", "application/json");
    EXPECT_EQ(r->status, 202) << r->body;
    const auto ticket = body(r);
    service_->wait(ticket["job_id"]);
    return body(client_->Get("/jobs/" + ticket["job_id"].get<std::string>()));
  }

  testkit::TempDir dir_;
  std::shared_ptr<CampaignService> service_;
  std::unique_ptr<ApiServer> server_;
  std::unique_ptr<httplib::Client> client_;
  std::thread thread_;
  int port_ = 0;
};

}  // namespace

TEST_F(ApiFixture, FullFlow) {
  const auto id = create();
  auto r = client_->Get("/projects/" + id);
  ASSERT_EQ(r->status, 200);
  EXPECT_EQ(body(r)["revision"], 0);
  EXPECT_EQ(r->get_header_value("Access-Control-Allow-Origin"), "*");

  EXPECT_EQ(run_stage(id, "script")["status"], "done");
  EXPECT_EQ(run_stage(id, "visuals")["status"], "done");
  EXPECT_EQ(run_stage(id, "music")["status"], "done");

  r = client_->Get("/projects/" + id + "/manifest");
  ASSERT_EQ(r->status, 200) << r->body;
  const auto manifest = body(r);
  EXPECT_EQ(manifest["aspect_ratio"], "19.5:9");
  const auto first_image = manifest["scenes"][0]["image"].get<std::string>();

  r = client_->Get("/projects/" + id + "/files/" + first_image);
  ASSERT_EQ(r->status, 200);
  EXPECT_EQ(r->get_header_value("Content-Type"), "image/png");
  EXPECT_NO_THROW(decode_png(r->body));

  r = client_->Get("/projects/" + id + "/songs?rank=popularity");
  ASSERT_EQ(r->status, 200);
  EXPECT_EQ(body(r)["songs"][0]["id"], "trk-b");
  EXPECT_EQ(body(client_->Get("/projects/" + id + "/songs"))["rank"], "match");
  EXPECT_EQ(client_->Get("/projects/" + id + "/songs?rank=loudest")->status, 422);

  r = client_->Post("/projects/" + id + "/selections", json{{"image", {{"scene", 0}, {"candidate", 1}}}}.dump(),
                    "application/json");
  ASSERT_EQ(r->status, 200) << r->body;
  EXPECT_EQ(body(r)["image_selections"]["0"], 1);

  r = client_->Patch("/projects/" + id + "/scenes/0", json{{"positivity", 90}}.dump(), "application/json");
  ASSERT_EQ(r->status, 200) << r->body;
  EXPECT_EQ(body(r)["script"]["scenes"][0]["positivity"], 90);

  r = client_->Post("/projects/" + id + "/scenes/1/regenerate", json{{"goal", "Hope"}, {"positivity", 80}}.dump(),
                    "application/json");
  ASSERT_EQ(r->status, 202) << r->body;
  EXPECT_EQ(body(r)["kind"], "scene_regen");
  EXPECT_EQ(service_->wait(body(r)["job_id"]).status, JobStatus::Done);
}

TEST_F(ApiFixture, ErrorStatusesAndShape) {
  auto r = client_->Get("/projects/0000000000000000");
  EXPECT_EQ(r->status, 404);
  EXPECT_EQ(body(r)["error"]["kind"], "not_found");
  EXPECT_FALSE(body(r)["error"]["message"].get<std::string>().empty());

  r = client_->Post("/projects", "{not json", "application/json");
  EXPECT_EQ(r->status, 422);
  r = client_->Post("/projects", json{{"brief", {{"audience", "x"}}}}.dump(), "application/json");
  EXPECT_EQ(r->status, 422);
  EXPECT_EQ(body(r)["error"]["kind"], "validation");

  const auto id = create();
  r = client_->Post("/projects/" + id + "/stages/visuals", "", "application/json");
  EXPECT_EQ(r->status, 409);
  EXPECT_EQ(body(r)["error"]["kind"], "precondition");
  r = client_->Post("/projects/" + id + "/stages/lyrics", "", "application/json");
  EXPECT_EQ(r->status, 404);
  r = client_->Get("/jobs/job-unknown");
  EXPECT_EQ(r->status, 404);
  r = client_->Get("/no/such/route");
  EXPECT_EQ(r->status, 404);
  EXPECT_EQ(body(r)["error"]["kind"], "not_found");
  r = client_->Patch("/projects/" + id + "/scenes/0", json{{"positivity", 5}}.dump(), "application/json");
  EXPECT_EQ(r->status, 409);
  r = client_->Options("/projects");
  EXPECT_EQ(r->status, 204);
}

TEST_F(ApiFixture, UploadsRawAndMultipart) {
  const auto id = create();
  const auto cat = testkit::slurp(testkit::test_data("cat_window.png"));
  auto r = client_->Post("/projects/" + id + "/uploads", cat, "image/png");
  ASSERT_EQ(r->status, 201) << r->body;
  EXPECT_EQ(body(r)["description"], "A tabby cat sitting on a sunny windowsill.");
  const auto uid = body(r)["upload_id"].get<std::string>();
  EXPECT_EQ(client_->Post("/projects/" + id + "/uploads", cat, "image/png")->status, 409);

  httplib::MultipartFormDataItems items = {
      {"image", testkit::slurp(testkit::test_data("subway_doors.png")), "doors.png", "image/png"}};
  r = client_->Post("/projects/" + id + "/uploads", items);
  ASSERT_EQ(r->status, 201) << r->body;
  EXPECT_EQ(body(r)["description"], "Passengers crowding the doors of a subway car.");

  r = client_->Post("/projects/" + id + "/uploads", testkit::slurp(testkit::test_data("corrupt.png")), "image/png");
  EXPECT_EQ(r->status, 422);
  EXPECT_EQ(body(r)["error"]["kind"], "decode");

  r = client_->Patch("/projects/" + id + "/uploads/" + uid, json{{"description", "a grey cat sleeping"}}.dump(),
                     "application/json");
  ASSERT_EQ(r->status, 200);
  EXPECT_EQ(body(r)["brief"]["uploads"][0]["description"], "a grey cat sleeping");

  r = client_->Get("/projects/" + id + "/files/uploads/" + uid + ".png");
  ASSERT_EQ(r->status, 200);
  EXPECT_EQ(r->body, cat);
  EXPECT_EQ(client_->Get("/projects/" + id + "/files/uploads/..%2Fproject.json")->status, 404);
}

TEST_F(ApiFixture, ConcurrentStageIsConflict) {
  const auto id = create();
  // Two quick requests: at most one can be accepted while the first runs.
  auto a = client_->Post("/projects/" + id + "/stages/script", "", "application/json");
  auto b = client_->Post("/projects/" + id + "/stages/script", "", "application/json");
  ASSERT_EQ(a->status, 202);
  EXPECT_TRUE(b->status == 202 || b->status == 409);
  if (b->status == 409) {
    EXPECT_EQ(body(b)["error"]["kind"], "conflict");
  }
  service_->wait(body(a)["job_id"]);
}

TEST(HttpStatus, Mapping) {
  EXPECT_EQ(http_status(ErrorKind::Validation), 422);
  EXPECT_EQ(http_status(ErrorKind::Range), 422);
  EXPECT_EQ(http_status(ErrorKind::Decode), 422);
  EXPECT_EQ(http_status(ErrorKind::NotFound), 404);
  EXPECT_EQ(http_status(ErrorKind::Conflict), 409);
  EXPECT_EQ(http_status(ErrorKind::Precondition), 409);
  EXPECT_EQ(http_status(ErrorKind::Timeout), 504);
  EXPECT_EQ(http_status(ErrorKind::Transport), 502);
  EXPECT_EQ(http_status(ErrorKind::Io), 500);
}
