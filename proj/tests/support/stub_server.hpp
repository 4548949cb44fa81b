#pragma once

// Local chat-completion endpoint serving scripted replies.

#include <atomic>
#include <functional>
#include <mutex>
#include <string>
#include <thread>
#include <vector>

#include "httplib.h"
#include "json.hpp"

namespace biofact::testing {

// Wraps `content` in an OpenAI-style chat-completion response body.
inline std::string completion_body(const std::string& content) {
  nlohmann::json j = {{"id", "stub"},
                      {"object", "chat.completion"},
                      {"choices",
                       {{{"index", 0},
                         {"message", {{"role", "assistant"}, {"content", content}}},
                         {"finish_reason", "stop"}}}}};
  return j.dump();
}

inline std::string records_content(std::size_t count, const std::string& id_prefix) {
  nlohmann::json arr = nlohmann::json::array();
  for (std::size_t i = 0; i < count; ++i)
    arr.push_back({{"GPT-ID", id_prefix + std::to_string(i)},
                   {"Title", "Stub title " + std::to_string(i)},
                   {"Abstract", "BRCA1 variants in breast cancer cohorts, record " + std::to_string(i)}});
  return arr.dump();
}

struct StubReply {
  int status = 200;
  std::string body;
};

class StubServer {
 public:
  // script(i) gives the reply to the i-th request (0-based).
  explicit StubServer(std::function<StubReply(std::size_t)> script) : script_(std::move(script)) {
    server_.Post("/v1/chat/completions", [this](const httplib::Request& req, httplib::Response& res) {
      std::size_t i;
      {
        std::lock_guard lock(mu_);
        i = requests_.size();
        requests_.push_back(req.body);
        auth_.push_back(req.get_header_value("Authorization"));
      }
      StubReply r = script_(i);
      res.status = r.status;
      res.set_content(r.body, "application/json");
    });
    port_ = server_.bind_to_any_port("127.0.0.1");
    thread_ = std::thread([this] { server_.listen_after_bind(); });
    server_.wait_until_ready();
  }
  ~StubServer() {
    server_.stop();
    thread_.join();
  }
  std::string url() const {
    return "http://127.0.0.1:" + std::to_string(port_) + "/v1/chat/completions";
  }
  std::size_t request_count() const {
    std::lock_guard lock(mu_);
    return requests_.size();
  }
  std::vector<std::string> requests() const {
    std::lock_guard lock(mu_);
    return requests_;
  }
  std::vector<std::string> auth_headers() const {
    std::lock_guard lock(mu_);
    return auth_;
  }

 private:
  std::function<StubReply(std::size_t)> script_;
  httplib::Server server_;
  int port_ = 0;
  std::thread thread_;
  mutable std::mutex mu_;
  std::vector<std::string> requests_;
  std::vector<std::string> auth_;
};

}  // namespace biofact::testing
