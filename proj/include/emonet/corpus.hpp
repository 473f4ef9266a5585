#pragma once

#include <chrono>
#include <cstddef>
#include <filesystem>
#include <iosfwd>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace emonet {

using Timestamp = std::chrono::sys_seconds;

// Accepts "YYYY-MM-DD", "YYYY-MM-DDTHH:MM[:SS[.fff]]" with an optional "Z" or
// "+HH:MM"/"-HHMM" offset ('T' may be a space). Times without an offset are
// UTC. Fractional seconds are truncated. Throws DataError.
Timestamp parse_timestamp(std::string_view text);

// "YYYY-MM-DDTHH:MM:SSZ"
std::string format_timestamp(Timestamp t);

// Parses "+09:00", "-0530", "Z" into an offset from UTC.
std::chrono::seconds parse_utc_offset(std::string_view text);

struct Post {
  std::string id;
  Timestamp timestamp;
  std::string text;  // NFC

  friend bool operator==(const Post&, const Post&) = default;
};

struct IngestOptions {
  // Abort on the first malformed record instead of counting it.
  bool strict = false;
};

struct IngestResult {
  std::vector<Post> posts;
  std::size_t lines = 0;
  std::size_t malformed = 0;
  std::size_t duplicates = 0;
};

// Reads JSON lines with string fields "id", "created_at" and "text". Blank
// lines are skipped. When an id repeats, the later record replaces the earlier
// one (with a warning).
IngestResult ingest(std::istream& in, const IngestOptions& options = {});
IngestResult ingest_file(const std::filesystem::path& path, const IngestOptions& options = {});

// Keeps a post iff (include is empty or its text contains an include keyword)
// and it contains no exclude keyword. Keywords are matched as raw substrings
// after NFC normalization.
std::vector<Post> filter_keywords(std::span<const Post> posts,
                                  std::span<const std::string> include,
                                  std::span<const std::string> exclude);

}  // namespace emonet
