#include "emonet/corpus.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <istream>
#include <unordered_map>

#include <nlohmann/json.hpp>

#include "emonet/diagnostics.hpp"
#include "emonet/error.hpp"
#include "emonet/unicode.hpp"

namespace emonet {
namespace {

class Cursor {
 public:
  explicit Cursor(std::string_view s) : s_(s) {}

  bool done() const { return pos_ >= s_.size(); }
  char peek() const { return done() ? '\0' : s_[pos_]; }
  bool accept(char c) {
    if (peek() != c) return false;
    ++pos_;
    return true;
  }
  int digits(std::size_t n) {
    int v = 0;
    for (std::size_t i = 0; i < n; ++i) {
      if (done() || s_[pos_] < '0' || s_[pos_] > '9') fail();
      v = v * 10 + (s_[pos_++] - '0');
    }
    return v;
  }
  [[noreturn]] void fail() const {
    throw DataError("invalid timestamp \"" + std::string(s_) + "\"");
  }

 private:
  std::string_view s_;
  std::size_t pos_ = 0;
};

std::chrono::seconds parse_offset(Cursor& c) {
  if (c.accept('Z') || c.accept('z')) return std::chrono::seconds{0};
  int sign = 0;
  if (c.accept('+')) {
    sign = 1;
  } else if (c.accept('-')) {
    sign = -1;
  } else {
    c.fail();
  }
  const int hh = c.digits(2);
  c.accept(':');
  const int mm = c.digits(2);
  if (hh > 23 || mm > 59) c.fail();
  return std::chrono::seconds{sign * (hh * 3600 + mm * 60)};
}

}  // namespace

Timestamp parse_timestamp(std::string_view text) {
  using namespace std::chrono;
  text = trim_ascii(text);
  Cursor c(text);
  const int y = c.digits(4);
  if (!c.accept('-')) c.fail();
  const int mo = c.digits(2);
  if (!c.accept('-')) c.fail();
  const int d = c.digits(2);
  const year_month_day ymd{year{y}, month{static_cast<unsigned>(mo)}, day{static_cast<unsigned>(d)}};
  if (!ymd.ok()) c.fail();
  seconds tod{0};
  seconds offset{0};
  if (!c.done()) {
    if (!(c.accept('T') || c.accept('t') || c.accept(' '))) c.fail();
    const int hh = c.digits(2);
    if (!c.accept(':')) c.fail();
    const int mi = c.digits(2);
    int ss = 0;
    if (c.accept(':')) {
      ss = c.digits(2);
      if (c.accept('.')) {
        while (!c.done() && c.peek() >= '0' && c.peek() <= '9') c.digits(1);
      }
    }
    if (hh > 23 || mi > 59 || ss > 60) c.fail();
    tod = hours{hh} + minutes{mi} + seconds{ss};
    if (!c.done()) offset = parse_offset(c);
  }
  if (!c.done()) c.fail();
  return sys_days{ymd} + tod - offset;
}

std::chrono::seconds parse_utc_offset(std::string_view text) {
  text = trim_ascii(text);
  Cursor c(text);
  const auto off = parse_offset(c);
  if (!c.done()) c.fail();
  return off;
}

std::string format_timestamp(Timestamp t) {
  using namespace std::chrono;
  const auto day_point = floor<days>(t);
  const year_month_day ymd{day_point};
  const hh_mm_ss tod{t - day_point};
  char buf[32];
  std::snprintf(buf, sizeof buf, "%04d-%02u-%02uT%02d:%02d:%02dZ", static_cast<int>(ymd.year()),
                static_cast<unsigned>(ymd.month()), static_cast<unsigned>(ymd.day()),
                static_cast<int>(tod.hours().count()), static_cast<int>(tod.minutes().count()),
                static_cast<int>(tod.seconds().count()));
  return buf;
}

IngestResult ingest(std::istream& in, const IngestOptions& options) {
  IngestResult result;
  std::unordered_map<std::string, std::size_t> position;  // id -> index in posts
  std::vector<bool> superseded;
  std::string line;
  while (std::getline(in, line)) {
    ++result.lines;
    if (trim_ascii(line).empty()) continue;
    std::string problem;
    Post post;
    try {
      const auto rec = nlohmann::json::parse(line);
      if (!rec.is_object()) throw DataError("record is not an object");
      for (const char* field : {"id", "created_at", "text"}) {
        if (!rec.contains(field) || !rec[field].is_string()) {
          throw DataError(std::string("missing or non-string field \"") + field + "\"");
        }
      }
      post.id = rec["id"].get<std::string>();
      if (post.id.empty()) throw DataError("empty id");
      if (post.id.find_first_of("\t\r\n") != std::string::npos) {
        throw DataError("id contains a tab or newline");
      }
      post.timestamp = parse_timestamp(rec["created_at"].get<std::string>());
      post.text = normalize_text(rec["text"].get<std::string>());
    } catch (const nlohmann::json::exception& e) {
      problem = e.what();
    } catch (const DataError& e) {
      problem = e.what();
    }
    if (!problem.empty()) {
      if (options.strict) {
        throw DataError("line " + std::to_string(result.lines) + ": " + problem);
      }
      ++result.malformed;
      continue;
    }
    if (auto it = position.find(post.id); it != position.end()) {
      warn("duplicate post id \"" + post.id + "\" at line " + std::to_string(result.lines) +
           "; keeping the later record");
      ++result.duplicates;
      superseded[it->second] = true;
      it->second = result.posts.size();
    } else {
      position.emplace(post.id, result.posts.size());
    }
    result.posts.push_back(std::move(post));
    superseded.push_back(false);
  }
  if (in.bad()) throw DataError("read error while ingesting posts");
  if (result.duplicates > 0) {
    std::size_t out = 0;
    for (std::size_t i = 0; i < result.posts.size(); ++i) {
      if (!superseded[i]) result.posts[out++] = std::move(result.posts[i]);
    }
    result.posts.resize(out);
  }
  return result;
}

IngestResult ingest_file(const std::filesystem::path& path, const IngestOptions& options) {
  std::ifstream in(path);
  if (!in) throw DataError("cannot open post file " + path.string());
  return ingest(in, options);
}

std::vector<Post> filter_keywords(std::span<const Post> posts,
                                  std::span<const std::string> include,
                                  std::span<const std::string> exclude) {
  auto normalize_all = [](std::span<const std::string> words) {
    std::vector<std::string> out;
    for (const auto& w : words) {
      auto n = normalize_text(w);
      if (!n.empty()) out.push_back(std::move(n));
    }
    return out;
  };
  const auto inc = normalize_all(include);
  const auto exc = normalize_all(exclude);
  auto contains_any = [](const std::string& text, const std::vector<std::string>& keys) {
    return std::any_of(keys.begin(), keys.end(),
                       [&](const std::string& k) { return text.find(k) != std::string::npos; });
  };
  std::vector<Post> out;
  for (const auto& p : posts) {
    if (!inc.empty() && !contains_any(p.text, inc)) continue;
    if (contains_any(p.text, exc)) continue;
    out.push_back(p);
  }
  return out;
}

}  // namespace emonet
