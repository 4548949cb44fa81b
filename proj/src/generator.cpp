#include "biofact/generator.hpp"

#include <cstdio>
#include <fstream>
#include <future>
#include <sstream>
#include <thread>

#include "httplib.h"

#include "biofact/error.hpp"
#include "biofact/log.hpp"
#include "biofact/text.hpp"

namespace biofact {

using nlohmann::json;
using ojson = nlohmann::ordered_json;

PromptSpec build_prompt(std::size_t n, std::size_t w) {
  if (n < 1) throw ValidationError("prompt needs at least one abstract per request");
  if (w < 50) throw ValidationError("prompt needs at least 50 words per abstract");
  PromptSpec p;
  p.n = n;
  p.w = w;
  p.system_text =
      "You are a biomedical research assistant. You generate simulated PubMed-style "
      "scientific abstracts about human biology and medicine.";
  const std::string ns = std::to_string(n), ws = std::to_string(w);
  p.user_text = "Generate a list of " + ns + " simulated PubMed-style abstracts.\n" +
                "For each abstract containing three fields: GPT-ID, Title, and Abstract, make it " +
                ws + " words.\n" +
                "Make the GPT-ID random, containing at most five letters and numbers.\n" +
                "Return the abstracts in a valid JSON format as an array of JSON records.\n" +
                "Investigate the biology of human disease-gene associations.\n" +
                "Provide details related to diseases, genes, cells, organisms, and any "
                "FDA-approved drugs, and state any relationships.";
  return p;
}

std::string_view to_string(Rejection r) {
  switch (r) {
    case Rejection::NotAnObject: return "not-an-object";
    case Rejection::MissingId: return "missing-id";
    case Rejection::EmptyId: return "empty-id";
    case Rejection::IdTooLong: return "id-too-long";
    case Rejection::IdBadCharacters: return "id-bad-characters";
    case Rejection::EmptyTitle: return "empty-title";
    case Rejection::EmptyAbstract: return "empty-abstract";
  }
  return "";
}

namespace {

std::string string_field(const json& obj, const char* name, bool& present) {
  auto it = obj.find(name);
  present = it != obj.end() && (it->is_string() || it->is_number());
  if (!present) return {};
  return trim(it->is_string() ? it->get<std::string>() : it->dump());
}

bool is_alnum(char c) {
  return (c >= '0' && c <= '9') || (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z');
}

}  // namespace

std::variant<Record, Rejection> validate_gpt_record(const json& candidate) {
  if (!candidate.is_object()) return Rejection::NotAnObject;
  bool present = false;
  Record r;
  r.source = Source::Generated;
  r.record_id = string_field(candidate, "GPT-ID", present);
  if (!present) return Rejection::MissingId;
  if (r.record_id.empty()) return Rejection::EmptyId;
  for (char c : r.record_id)
    if (!is_alnum(c)) return Rejection::IdBadCharacters;
  if (r.record_id.size() > 5) return Rejection::IdTooLong;
  r.title = string_field(candidate, "Title", present);
  if (r.title.empty()) return Rejection::EmptyTitle;
  r.body = string_field(candidate, "Abstract", present);
  if (r.body.empty()) return Rejection::EmptyAbstract;
  return r;
}

std::string chat_request_body(const EndpointConfig& config, const PromptSpec& prompt) {
  ojson body = {{"model", config.model},
                {"messages",
                 {{{"role", "system"}, {"content", prompt.system_text}},
                  {{"role", "user"}, {"content", prompt.user_text}}}},
                {"temperature", config.temperature}};
  if (config.max_tokens) body["max_tokens"] = *config.max_tokens;
  return body.dump();
}

namespace {

struct Split {
  std::string scheme_host_port;
  std::string path;
};

Split split_url(const std::string& url) {
  auto scheme_end = url.find("://");
  if (scheme_end == std::string::npos) throw ValidationError("endpoint URL needs a scheme: " + url);
  auto path_start = url.find('/', scheme_end + 3);
  if (path_start == std::string::npos) return {url, "/"};
  return {url.substr(0, path_start), url.substr(path_start)};
}

class HttpTransport : public ChatTransport {
 public:
  explicit HttpTransport(const EndpointConfig& config)
      : split_(split_url(config.url)), key_(config.api_key), timeout_(config.timeout) {}

  HttpReply post(const std::string& json_body) override {
    httplib::Client client(split_.scheme_host_port);
    client.set_connection_timeout(timeout_);
    client.set_read_timeout(timeout_);
    client.set_write_timeout(timeout_);
    client.set_bearer_token_auth(key_);
    HttpReply reply;
    auto res = client.Post(split_.path, json_body, "application/json");
    if (!res) {
      reply.error = httplib::to_string(res.error());
      return reply;
    }
    reply.transport_ok = true;
    reply.status = res->status;
    reply.body = res->body;
    return reply;
  }

 private:
  Split split_;
  std::string key_;
  std::chrono::seconds timeout_;
};

// Pulls the JSON array out of assistant text, tolerating code fences or
// prose around it.
std::optional<json> content_array(const std::string& content) {
  json direct = json::parse(content, nullptr, false);
  if (!direct.is_discarded()) {
    if (direct.is_array()) return direct;
    return std::nullopt;
  }
  auto open = content.find('[');
  auto close = content.rfind(']');
  if (open == std::string::npos || close == std::string::npos || close < open) return std::nullopt;
  json inner = json::parse(content.substr(open, close - open + 1), nullptr, false);
  if (inner.is_discarded() || !inner.is_array()) return std::nullopt;
  return inner;
}

class Absorber {
 public:
  explicit Absorber(GenerationBatch& batch) : batch_(batch) {}

  // Returns false if the body is not a usable chat completion.
  bool absorb(const std::string& body, ResponseLog& entry) {
    json doc = json::parse(body, nullptr, false);
    if (doc.is_discarded() || !doc.is_object()) return false;
    auto choices = doc.find("choices");
    if (choices == doc.end() || !choices->is_array() || choices->empty()) return false;
    const json& first = (*choices)[0];
    if (!first.contains("message") || !first["message"].contains("content") ||
        !first["message"]["content"].is_string())
      return false;
    auto arr = content_array(first["message"]["content"].get<std::string>());
    if (!arr) return false;
    for (const auto& item : *arr) {
      ++entry.parsed;
      auto v = validate_gpt_record(item);
      if (auto* why = std::get_if<Rejection>(&v)) {
        ++entry.rejected;
        ++batch_.rejected_count;
        ++batch_.rejections[std::string(to_string(*why))];
        continue;
      }
      Record r = std::get<Record>(std::move(v));
      std::size_t& seen = id_uses_[r.record_id];
      ++seen;
      if (seen > 1) r.record_id += "-" + std::to_string(seen);
      batch_.accepted.add(std::move(r));
      ++entry.accepted;
    }
    return true;
  }

 private:
  GenerationBatch& batch_;
  std::map<std::string, std::size_t> id_uses_;
};

}  // namespace

std::unique_ptr<ChatTransport> make_http_transport(const EndpointConfig& config) {
  return std::make_unique<HttpTransport>(config);
}

GenerationBatch generate_corpus(const EndpointConfig& config, const PromptSpec& prompt,
                                std::size_t target_total, ChatTransport* transport) {
  if (config.url.empty()) throw ValidationError("no endpoint URL configured");
  if (config.api_key.empty()) throw ValidationError("no API credential configured (BIOFACT_API_KEY)");
  if (target_total < 1) throw ValidationError("target total must be at least 1");
  std::unique_ptr<ChatTransport> owned;
  if (!transport) {
    owned = make_http_transport(config);
    transport = owned.get();
  }

  GenerationBatch batch;
  batch.model_name = config.model;
  Absorber absorber(batch);
  const std::string body = chat_request_body(config, prompt);
  std::size_t failures = 0, consecutive = 0;
  const std::size_t fanout = std::max<std::size_t>(1, config.fanout);

  while (batch.accepted.size() < target_total) {
    std::size_t remaining = target_total - batch.accepted.size();
    std::size_t round = std::min(fanout, (remaining + prompt.n - 1) / prompt.n);
    std::vector<HttpReply> replies(round);
    if (round == 1) {
      replies[0] = transport->post(body);
    } else {
      std::vector<std::future<HttpReply>> pending;
      for (std::size_t i = 0; i < round; ++i)
        pending.push_back(std::async(std::launch::async, [&] { return transport->post(body); }));
      for (std::size_t i = 0; i < round; ++i) replies[i] = pending[i].get();
    }

    bool round_failed = false;
    for (auto& reply : replies) {
      ResponseLog entry;
      entry.request_index = batch.request_count++;
      entry.status = reply.status;
      std::string why;
      if (!reply.transport_ok) {
        entry.outcome = "transport-error";
        why = reply.error;
      } else if (reply.status < 200 || reply.status >= 300) {
        entry.outcome = "http-error";
        why = "HTTP " + std::to_string(reply.status);
      } else if (!absorber.absorb(reply.body, entry)) {
        entry.outcome = "unparseable";
        ++batch.unparseable_responses;
        why = "unparseable response body";
      } else if (entry.accepted == 0) {
        entry.outcome = "ok";
        why = "response had no acceptable records";
      } else {
        entry.outcome = "ok";
      }
      log::info("generation.response", {{"request", std::to_string(entry.request_index)},
                                        {"outcome", entry.outcome},
                                        {"accepted", std::to_string(entry.accepted)},
                                        {"rejected", std::to_string(entry.rejected)}});
      batch.raw_responses.push_back(std::move(reply.body));
      batch.log.push_back(entry);
      if (!why.empty()) {
        round_failed = true;
        if (++failures > config.max_retries)
          throw RuntimeFailure("generation retry budget exhausted after " +
                               std::to_string(batch.request_count) + " requests: " + why);
      }
    }
    if (round_failed) {
      ++consecutive;
      auto delay = config.backoff_base * (1LL << std::min<std::size_t>(consecutive - 1, 10));
      std::this_thread::sleep_for(delay);
    } else {
      consecutive = 0;
    }
  }
  return batch;
}

GenerationBatch replay_responses(const std::vector<std::string>& bodies,
                                 const std::vector<ResponseLog>& log, std::string model_name) {
  if (bodies.size() != log.size()) throw ValidationError("archive body count disagrees with its index");
  GenerationBatch batch;
  batch.model_name = std::move(model_name);
  Absorber absorber(batch);
  for (std::size_t i = 0; i < bodies.size(); ++i) {
    ResponseLog entry;
    entry.request_index = log[i].request_index;
    entry.status = log[i].status;
    entry.outcome = log[i].outcome;
    if (entry.outcome == "ok" || entry.outcome == "unparseable") {
      if (!absorber.absorb(bodies[i], entry)) {
        entry.outcome = "unparseable";
        ++batch.unparseable_responses;
      }
    }
    batch.raw_responses.push_back(bodies[i]);
    batch.log.push_back(entry);
    ++batch.request_count;
  }
  return batch;
}

namespace {

std::string response_name(std::size_t i) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "response-%04zu.json", i);
  return buf;
}

}  // namespace

void write_archive(const std::filesystem::path& dir, const GenerationBatch& batch,
                   const PromptSpec& prompt, const EndpointConfig& config) {
  std::filesystem::create_directories(dir);
  ojson entries = ojson::array();
  for (std::size_t i = 0; i < batch.log.size(); ++i) {
    const auto& e = batch.log[i];
    std::string name = response_name(i);
    std::ofstream(dir / name, std::ios::binary) << batch.raw_responses[i];
    entries.push_back({{"file", name},
                       {"request_index", e.request_index},
                       {"status", e.status},
                       {"outcome", e.outcome},
                       {"parsed", e.parsed},
                       {"accepted", e.accepted},
                       {"rejected", e.rejected}});
  }
  ojson index = {{"format", "biofact-generation-archive-v1"},
                 {"model", batch.model_name},
                 {"temperature", config.temperature},
                 {"max_tokens", config.max_tokens ? ojson(*config.max_tokens) : ojson(nullptr)},
                 {"n_per_request", prompt.n},
                 {"words", prompt.w},
                 {"system", prompt.system_text},
                 {"user", prompt.user_text},
                 {"request_count", batch.request_count},
                 {"accepted", batch.accepted.size()},
                 {"rejected", batch.rejected_count},
                 {"responses", std::move(entries)}};
  std::ofstream(dir / "index.json", std::ios::binary) << index.dump(2) << "\n";
}

GenerationBatch replay_archive(const std::filesystem::path& dir) {
  std::ifstream in(dir / "index.json", std::ios::binary);
  if (!in) throw ValidationError("no archive index in " + dir.string());
  json index = json::parse(in, nullptr, false);
  if (index.is_discarded() || index.value("format", "") != "biofact-generation-archive-v1")
    throw ValidationError("malformed archive index in " + dir.string());
  std::vector<std::string> bodies;
  std::vector<ResponseLog> log;
  for (const auto& e : index.at("responses")) {
    std::ifstream body(dir / e.at("file").get<std::string>(), std::ios::binary);
    if (!body) throw ValidationError("archive is missing " + e.at("file").get<std::string>());
    std::ostringstream ss;
    ss << body.rdbuf();
    bodies.push_back(ss.str());
    ResponseLog entry;
    entry.request_index = e.at("request_index").get<std::size_t>();
    entry.status = e.at("status").get<int>();
    entry.outcome = e.at("outcome").get<std::string>();
    log.push_back(entry);
  }
  return replay_responses(bodies, log, index.value("model", ""));
}

}  // namespace biofact
