#pragma once

#include <string>
#include <string_view>
#include <unordered_set>
#include <vector>

namespace biofact {

using TokenSeq = std::vector<std::string>;

// Lowercases ASCII letters, turns every ASCII punctuation byte into a token
// break except a hyphen with a word byte on both sides, then splits on
// whitespace. Bytes >= 0x80 are word bytes, so UTF-8 text survives intact.
TokenSeq normalize(std::string_view text);

std::string join(const TokenSeq& tokens, std::string_view sep = " ");

// Transparent hashing so string_view keys can probe string-keyed maps.
struct StringHash {
  using is_transparent = void;
  std::size_t operator()(std::string_view s) const noexcept {
    return std::hash<std::string_view>{}(s);
  }
};

using StopwordSet = std::unordered_set<std::string, StringHash, std::equal_to<>>;

// The shipped list of generic English words used by the stop-bigram filter.
const StopwordSet& default_stopwords();

// One word per line; blank lines and lines starting with '#' ignored.
StopwordSet parse_stopwords(std::string_view text);

std::string trim(std::string_view s);

}  // namespace biofact

namespace biofact {

// Quotes a CSV field when it contains a comma, quote or line break.
std::string csv_field(std::string_view s);

// Splits one CSV line, honoring double-quoted fields.
std::vector<std::string> parse_csv_line(std::string_view line);

}  // namespace biofact
