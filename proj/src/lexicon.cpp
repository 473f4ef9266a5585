#include "emonet/lexicon.hpp"

#include <algorithm>
#include <fstream>
#include <istream>
#include <sstream>

#include "emonet/error.hpp"
#include "emonet/rng.hpp"
#include "emonet/unicode.hpp"

namespace emonet {
namespace {

constexpr std::array<std::string_view, kNumDims> kDimNames = {
    "Tension", "Depression", "Anger", "Vigor", "Fatigue", "Confusion"};

bool iequals(std::string_view a, std::string_view b) noexcept {
  if (a.size() != b.size()) return false;
  for (std::size_t i = 0; i < a.size(); ++i) {
    auto lower = [](char c) { return (c >= 'A' && c <= 'Z') ? static_cast<char>(c - 'A' + 'a') : c; };
    if (lower(a[i]) != lower(b[i])) return false;
  }
  return true;
}

}  // namespace

std::string_view to_string(EmotionDim d) noexcept { return kDimNames[index_of(d)]; }

std::optional<EmotionDim> parse_dim(std::string_view label) noexcept {
  for (std::size_t i = 0; i < kNumDims; ++i) {
    if (iequals(label, kDimNames[i])) return kAllDims[i];
  }
  return std::nullopt;
}

Lexicon Lexicon::from_entries(std::vector<LexiconEntry> entries) {
  for (auto& e : entries) {
    e.word = normalize_text(trim_ascii(e.word));
    if (e.word.empty()) throw DataError("lexicon: empty word");
  }
  std::sort(entries.begin(), entries.end(), [](const LexiconEntry& a, const LexiconEntry& b) {
    return a.word < b.word;
  });
  for (std::size_t i = 1; i < entries.size(); ++i) {
    if (entries[i].word == entries[i - 1].word) {
      throw DataError("lexicon: duplicate word \"" + entries[i].word + "\" listed under " +
                      std::string(to_string(entries[i - 1].dim)) + " and " +
                      std::string(to_string(entries[i].dim)));
    }
  }
  std::stable_sort(entries.begin(), entries.end(),
                   [](const LexiconEntry& a, const LexiconEntry& b) { return a.dim < b.dim; });

  Lexicon lex;
  lex.entries_ = std::move(entries);
  lex.index_.reserve(lex.entries_.size());
  for (std::size_t i = 0; i < lex.entries_.size(); ++i) {
    lex.index_.emplace(lex.entries_[i].word, static_cast<WordId>(i));
    ++lex.counts_[index_of(lex.entries_[i].dim)];
  }
  return lex;
}

std::optional<WordId> Lexicon::find(std::string_view word) const {
  const auto it = index_.find(std::string(word));
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

std::uint64_t Lexicon::fingerprint() const { return fnv1a(serialize_lexicon(*this)); }

Lexicon load_lexicon(std::istream& in) {
  std::vector<LexiconEntry> rows;
  std::unordered_map<std::string, std::pair<EmotionDim, std::size_t>> seen;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    const std::string_view view = trim_ascii(line);
    if (view.empty() || view.front() == '#') continue;
    const auto tab = view.find('\t');
    if (tab == std::string_view::npos) {
      throw DataError("lexicon line " + std::to_string(line_no) +
                      ": expected word<TAB>dimension");
    }
    const std::string_view word_field = trim_ascii(view.substr(0, tab));
    const std::string_view dim_field = trim_ascii(view.substr(tab + 1));
    if (word_field.empty()) {
      throw DataError("lexicon line " + std::to_string(line_no) + ": empty word");
    }
    const auto dim = parse_dim(dim_field);
    if (!dim) {
      throw DataError("lexicon line " + std::to_string(line_no) + ": unknown dimension \"" +
                      std::string(dim_field) + "\"");
    }
    std::string word = normalize_text(word_field);
    if (auto [it, inserted] = seen.emplace(word, std::pair{*dim, line_no}); !inserted) {
      throw DataError("lexicon line " + std::to_string(line_no) + ": duplicate word \"" + word +
                      "\" listed under " + std::string(to_string(it->second.first)) +
                      " (line " + std::to_string(it->second.second) + ") and " +
                      std::string(to_string(*dim)));
    }
    rows.push_back({std::move(word), *dim});
  }
  if (in.bad()) throw DataError("lexicon: read error");
  return Lexicon::from_entries(std::move(rows));
}

Lexicon load_lexicon_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw DataError("cannot open lexicon file " + path.string());
  return load_lexicon(in);
}

std::string serialize_lexicon(const Lexicon& lex) {
  std::string out;
  for (const auto& e : lex.entries()) {
    out += e.word;
    out += '\t';
    out += to_string(e.dim);
    out += '\n';
  }
  return out;
}

}  // namespace emonet
