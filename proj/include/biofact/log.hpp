#pragma once

#include <initializer_list>
#include <string>
#include <string_view>
#include <utility>

namespace biofact::log {

enum class Level { Debug, Info, Warn, Error, Off };

void set_level(Level level);
Level level();

using Field = std::pair<std::string_view, std::string>;

// One logfmt line on stderr: level=info event=... key=value...
void write(Level level, std::string_view event, std::initializer_list<Field> fields = {});

inline void info(std::string_view event, std::initializer_list<Field> fields = {}) {
  write(Level::Info, event, fields);
}
inline void warn(std::string_view event, std::initializer_list<Field> fields = {}) {
  write(Level::Warn, event, fields);
}
inline void error(std::string_view event, std::initializer_list<Field> fields = {}) {
  write(Level::Error, event, fields);
}

}  // namespace biofact::log
