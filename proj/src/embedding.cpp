#include "emonet/embedding.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>

#include "emonet/error.hpp"
#include "emonet/format.hpp"
#include "emonet/unicode.hpp"

namespace emonet {
namespace {

std::vector<std::string_view> split_spaces(std::string_view line) {
  std::vector<std::string_view> out;
  std::size_t i = 0;
  while (i < line.size()) {
    while (i < line.size() && (line[i] == ' ' || line[i] == '\t')) ++i;
    std::size_t j = i;
    while (j < line.size() && line[j] != ' ' && line[j] != '\t') ++j;
    if (j > i) out.push_back(line.substr(i, j - i));
    i = j;
  }
  return out;
}

template <class T>
bool parse_number(std::string_view s, T& out) {
  const auto* end = s.data() + s.size();
  auto [ptr, ec] = std::from_chars(s.data(), end, out);
  return ec == std::errc{} && ptr == end;
}

}  // namespace

void EmbeddingTable::add(std::string word, std::span<const float> vec) {
  if (dim_ == 0) dim_ = vec.size();
  if (vec.size() != dim_ || dim_ == 0) {
    throw DataError("embedding for \"" + word + "\" has " + std::to_string(vec.size()) +
                    " components, expected " + std::to_string(dim_));
  }
  for (float v : vec) {
    if (!std::isfinite(v)) throw DataError("embedding for \"" + word + "\" is not finite");
  }
  word = normalize_text(word);
  if (!index_.emplace(word, words_.size()).second) {
    throw DataError("embedding word \"" + word + "\" appears twice");
  }
  words_.push_back(std::move(word));
  data_.insert(data_.end(), vec.begin(), vec.end());
}

std::optional<std::size_t> EmbeddingTable::find(const std::string& word) const {
  const auto it = index_.find(word);
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

EmbeddingTable load_embeddings(std::istream& in) {
  EmbeddingTable table;
  std::string line;
  std::size_t line_no = 0;
  std::vector<float> vec;
  while (std::getline(in, line)) {
    ++line_no;
    const auto fields = split_spaces(trim_ascii(line));
    if (fields.empty()) continue;
    if (line_no == 1 && fields.size() == 2) {
      std::size_t count = 0, dim = 0;
      if (parse_number(fields[0], count) && parse_number(fields[1], dim)) continue;
    }
    if (fields.size() < 2) {
      throw DataError("embedding line " + std::to_string(line_no) + ": no vector components");
    }
    vec.clear();
    for (std::size_t i = 1; i < fields.size(); ++i) {
      float v = 0;
      if (!parse_number(fields[i], v)) {
        throw DataError("embedding line " + std::to_string(line_no) + ": bad component \"" +
                        std::string(fields[i]) + "\"");
      }
      vec.push_back(v);
    }
    try {
      table.add(std::string(fields[0]), vec);
    } catch (const DataError& e) {
      throw DataError("embedding line " + std::to_string(line_no) + ": " + e.what());
    }
  }
  return table;
}

EmbeddingTable load_embeddings_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw DataError("cannot open embedding file " + path.string());
  return load_embeddings(in);
}

double cosine_similarity(std::span<const float> a, std::span<const float> b) {
  double dot = 0, na = 0, nb = 0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    dot += static_cast<double>(a[i]) * b[i];
    na += static_cast<double>(a[i]) * a[i];
    nb += static_cast<double>(b[i]) * b[i];
  }
  if (na == 0 || nb == 0) return 0.0;
  return dot / std::sqrt(na * nb);
}

ExpansionResult expand_candidates(const Lexicon& seed, const EmbeddingTable& emb,
                                  double threshold) {
  if (!(threshold > 0.0 && threshold <= 1.0)) {
    throw ConfigError("expansion threshold must lie in (0, 1]");
  }
  if (emb.empty()) throw DataError("embedding table is empty");

  std::vector<double> norms(emb.size());
  for (std::size_t i = 0; i < emb.size(); ++i) {
    double s = 0;
    for (float v : emb.vector(i)) s += static_cast<double>(v) * v;
    norms[i] = std::sqrt(s);
  }

  ExpansionResult result;
  // best[i] = index into result.candidates for embedding row i
  std::unordered_map<std::size_t, std::size_t> best;
  for (const auto& entry : seed.entries()) {
    const auto src = emb.find(entry.word);
    if (!src) {
      result.missing_seeds.push_back(entry.word);
      continue;
    }
    const auto sv = emb.vector(*src);
    if (norms[*src] == 0) continue;
    for (std::size_t i = 0; i < emb.size(); ++i) {
      if (i == *src || norms[i] == 0 || seed.find(emb.word(i))) continue;
      const auto cv = emb.vector(i);
      double dot = 0;
      for (std::size_t k = 0; k < emb.dim(); ++k) dot += static_cast<double>(sv[k]) * cv[k];
      const double cos = std::clamp(dot / (norms[*src] * norms[i]), -1.0, 1.0);
      if (!(cos > threshold)) continue;
      if (auto it = best.find(i); it != best.end()) {
        auto& existing = result.candidates[it->second];
        if (cos > existing.cosine) existing = {emb.word(i), entry.word, entry.dim, cos};
      } else {
        best.emplace(i, result.candidates.size());
        result.candidates.push_back({emb.word(i), entry.word, entry.dim, cos});
      }
    }
  }
  std::sort(result.candidates.begin(), result.candidates.end(),
            [](const ExpansionCandidate& a, const ExpansionCandidate& b) {
              if (a.cosine != b.cosine) return a.cosine > b.cosine;
              return a.candidate < b.candidate;
            });
  return result;
}

void write_candidates(std::ostream& out, const ExpansionResult& result) {
  out << "# candidate\tsource\tdimension\tcosine\n";
  for (const auto& c : result.candidates) {
    out << c.candidate << '\t' << c.source << '\t' << to_string(c.dim) << '\t'
        << format_double(c.cosine) << '\n';
  }
}

}  // namespace emonet
