#include "biofact/log.hpp"

#include <atomic>
#include <cstdio>
#include <mutex>

namespace biofact::log {

namespace {

std::atomic<Level> g_level{Level::Info};
std::mutex g_mu;

std::string_view name(Level l) {
  switch (l) {
    case Level::Debug: return "debug";
    case Level::Info: return "info";
    case Level::Warn: return "warn";
    case Level::Error: return "error";
    case Level::Off: break;
  }
  return "off";
}

std::string quote(std::string_view v) {
  bool plain = !v.empty();
  for (char c : v)
    if (c == ' ' || c == '"' || c == '=' || c == '\n' || c == '\t') plain = false;
  if (plain) return std::string(v);
  std::string out = "\"";
  for (char c : v) {
    if (c == '"' || c == '\\') out += '\\';
    if (c == '\n') {
      out += "\\n";
      continue;
    }
    out += c;
  }
  return out + "\"";
}

}  // namespace

void set_level(Level level) { g_level = level; }
Level level() { return g_level; }

void write(Level l, std::string_view event, std::initializer_list<Field> fields) {
  if (l < g_level.load() || g_level.load() == Level::Off) return;
  std::string line = "level=" + std::string(name(l)) + " event=" + quote(event);
  for (const auto& [k, v] : fields) line += " " + std::string(k) + "=" + quote(v);
  line += "\n";
  std::lock_guard lock(g_mu);
  std::fputs(line.c_str(), stderr);
}

}  // namespace biofact::log
