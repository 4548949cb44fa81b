#include "biofact/text.hpp"

namespace biofact {

namespace {

bool is_word_byte(unsigned char c) {
  return (c >= '0' && c <= '9') || (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') ||
         c >= 0x80;
}

bool is_space(unsigned char c) {
  return c == ' ' || c == '\t' || c == '\n' || c == '\r' || c == '\f' || c == '\v';
}

}  // namespace

TokenSeq normalize(std::string_view text) {
  TokenSeq out;
  std::string cur;
  auto flush = [&] {
    if (!cur.empty()) {
      out.push_back(std::move(cur));
      cur.clear();
    }
  };
  for (std::size_t i = 0; i < text.size(); ++i) {
    unsigned char c = static_cast<unsigned char>(text[i]);
    if (is_word_byte(c)) {
      cur += (c >= 'A' && c <= 'Z') ? static_cast<char>(c - 'A' + 'a') : static_cast<char>(c);
    } else if (c == '-' && i > 0 && i + 1 < text.size() &&
               is_word_byte(static_cast<unsigned char>(text[i - 1])) &&
               is_word_byte(static_cast<unsigned char>(text[i + 1]))) {
      cur += '-';
    } else if (is_space(c) || c < 0x80) {
      // ASCII punctuation and control bytes both break tokens.
      flush();
    }
  }
  flush();
  return out;
}

std::string join(const TokenSeq& tokens, std::string_view sep) {
  std::string out;
  for (std::size_t i = 0; i < tokens.size(); ++i) {
    if (i) out += sep;
    out += tokens[i];
  }
  return out;
}

const StopwordSet& default_stopwords() {
  static const StopwordSet words = {
      "a",     "an",    "and",   "are",  "as",    "at",    "be",    "by",    "for",
      "from",  "has",   "have",  "in",   "into",  "is",    "it",    "its",   "of",
      "on",    "or",    "that",  "the",  "their", "this",  "to",    "was",   "were",
      "which", "with",  "without", "not", "other", "due",  "such",  "via",   "type",
      "than",  "these", "those", "but",  "all",   "any",   "can",   "may",   "also",
      "been",  "being", "between", "both", "each", "more",  "most",  "some",  "disease",
      "entity", "anatomical"};
  return words;
}

StopwordSet parse_stopwords(std::string_view text) {
  StopwordSet out;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    std::size_t end = text.find('\n', pos);
    if (end == std::string_view::npos) end = text.size();
    std::string line = trim(text.substr(pos, end - pos));
    if (!line.empty() && line[0] != '#')
      for (auto& tok : normalize(line)) out.insert(tok);
    pos = end + 1;
  }
  return out;
}

std::string trim(std::string_view s) {
  std::size_t b = 0, e = s.size();
  while (b < e && is_space(static_cast<unsigned char>(s[b]))) ++b;
  while (e > b && is_space(static_cast<unsigned char>(s[e - 1]))) --e;
  return std::string(s.substr(b, e - b));
}

}  // namespace biofact

namespace biofact {

std::string csv_field(std::string_view s) {
  if (s.find_first_of(",\"\r\n") == std::string_view::npos) return std::string(s);
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  out += '"';
  return out;
}

std::vector<std::string> parse_csv_line(std::string_view line) {
  std::vector<std::string> out;
  std::string cur;
  bool quoted = false;
  for (std::size_t i = 0; i < line.size(); ++i) {
    char c = line[i];
    if (quoted) {
      if (c == '"' && i + 1 < line.size() && line[i + 1] == '"') {
        cur += '"';
        ++i;
      } else if (c == '"') {
        quoted = false;
      } else {
        cur += c;
      }
    } else if (c == '"') {
      quoted = true;
    } else if (c == ',') {
      out.push_back(std::move(cur));
      cur.clear();
    } else if (c != '\r') {
      cur += c;
    }
  }
  out.push_back(std::move(cur));
  return out;
}

}  // namespace biofact
