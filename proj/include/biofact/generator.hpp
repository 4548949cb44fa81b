#pragma once

#include <chrono>
#include <cstddef>
#include <filesystem>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "json.hpp"

#include "biofact/corpus.hpp"

namespace biofact {

struct PromptSpec {
  std::size_t n = 0;  // abstracts per request
  std::size_t w = 0;  // words per abstract
  std::string system_text;
  std::string user_text;
};

// Throws ValidationError unless n >= 1 and w >= 50.
PromptSpec build_prompt(std::size_t n, std::size_t w);

enum class Rejection {
  NotAnObject,
  MissingId,
  EmptyId,
  IdTooLong,
  IdBadCharacters,
  EmptyTitle,
  EmptyAbstract,
};

std::string_view to_string(Rejection r);

// Accepts iff GPT-ID matches ^[A-Za-z0-9]{1,5}$ and Title and Abstract are
// non-empty after trimming.
std::variant<Record, Rejection> validate_gpt_record(const nlohmann::json& candidate);

struct EndpointConfig {
  std::string url;  // full chat-completions URL
  std::string api_key;
  std::string model;
  double temperature = 1.0;
  std::optional<int> max_tokens;
  std::size_t max_retries = 5;  // failed attempts tolerated before giving up
  std::chrono::milliseconds backoff_base{1000};
  std::chrono::seconds timeout{120};
  std::size_t fanout = 1;  // concurrent requests per round
};

struct HttpReply {
  bool transport_ok = false;
  int status = 0;
  std::string body;
  std::string error;
};

class ChatTransport {
 public:
  virtual ~ChatTransport() = default;
  virtual HttpReply post(const std::string& json_body) = 0;
};

// OpenAI-compatible POST with a bearer token. http:// and https:// URLs.
std::unique_ptr<ChatTransport> make_http_transport(const EndpointConfig& config);

struct ResponseLog {
  std::size_t request_index = 0;  // order requests were issued in
  int status = 0;
  std::string outcome;  // ok | unparseable | http-error | transport-error
  std::size_t parsed = 0;
  std::size_t accepted = 0;
  std::size_t rejected = 0;

  bool operator==(const ResponseLog&) const = default;
};

struct GenerationBatch {
  std::size_t request_count = 0;
  std::string model_name;
  std::vector<std::string> raw_responses;  // verbatim bodies, request order
  std::vector<ResponseLog> log;            // parallel to raw_responses
  RecordCollection accepted{Source::Generated};
  std::size_t rejected_count = 0;
  std::size_t unparseable_responses = 0;
  std::map<std::string, std::size_t> rejections;  // by reason
};

std::string chat_request_body(const EndpointConfig& config, const PromptSpec& prompt);

// Requests until at least target_total records are accepted. Transport and
// HTTP failures back off exponentially; those and unusable responses share
// the max_retries budget, after which RuntimeFailure is thrown. A missing
// URL or credential is a ValidationError raised before any request. When
// transport is null an HTTP transport is built from config.
GenerationBatch generate_corpus(const EndpointConfig& config, const PromptSpec& prompt,
                                std::size_t target_total, ChatTransport* transport = nullptr);

// Re-derives a batch offline from archived response bodies.
GenerationBatch replay_responses(const std::vector<std::string>& bodies,
                                 const std::vector<ResponseLog>& log, std::string model_name);

// Writes <dir>/index.json and one response-NNNN.json per raw body.
void write_archive(const std::filesystem::path& dir, const GenerationBatch& batch,
                   const PromptSpec& prompt, const EndpointConfig& config);
GenerationBatch replay_archive(const std::filesystem::path& dir);

}  // namespace biofact
