#include "emonet/artifacts.hpp"

#include <fstream>
#include <ostream>
#include <sstream>

#include "emonet/error.hpp"
#include "emonet/format.hpp"

namespace emonet {
namespace {

constexpr std::string_view kPrefix = "# emonet manifest=";

std::vector<std::string> split_tabs(const std::string& line) {
  std::vector<std::string> out;
  std::size_t start = 0;
  while (true) {
    const auto tab = line.find('\t', start);
    out.push_back(line.substr(start, tab == std::string::npos ? std::string::npos : tab - start));
    if (tab == std::string::npos) break;
    start = tab + 1;
  }
  return out;
}

WordId word_id(const Lexicon& lex, const std::string& word, const std::filesystem::path& path) {
  const auto id = lex.find(word);
  if (!id) throw DataError(path.string() + ": word \"" + word + "\" is not in the lexicon");
  return *id;
}

std::string window_attrs_span(const Window& w) {
  return format_timestamp(w.span.start) + "/" + format_timestamp(w.span.end);
}

void expect_columns(const TsvFile& f, std::size_t n, const std::filesystem::path& path) {
  for (std::size_t i = 0; i < f.rows.size(); ++i) {
    if (f.rows[i].size() != n) {
      throw DataError(path.string() + ": row " + std::to_string(i + 1) + " has " +
                      std::to_string(f.rows[i].size()) + " columns, expected " + std::to_string(n));
    }
  }
}

}  // namespace

const std::string& ArtifactHeader::attribute(const std::string& key) const {
  const auto it = attributes.find(key);
  if (it == attributes.end()) throw DataError("artifact header lacks \"" + key + "\"");
  return it->second;
}

std::string format_header(const Stamp& stamp,
                          const std::vector<std::pair<std::string, std::string>>& attributes) {
  std::string line(kPrefix);
  line += to_hex(stamp.manifest);
  line += " seed=" + std::to_string(stamp.seed);
  for (const auto& [k, v] : attributes) line += " " + k + "=" + v;
  return line;
}

ArtifactHeader parse_header(const std::string& line) {
  if (line.rfind(kPrefix, 0) != 0) throw DataError("missing emonet manifest header");
  ArtifactHeader h;
  std::istringstream ss(line.substr(kPrefix.size()));
  std::string hex;
  ss >> hex;
  if (hex.size() != 16) throw DataError("malformed manifest hash \"" + hex + "\"");
  try {
    h.manifest = std::stoull(hex, nullptr, 16);
  } catch (const std::exception&) {
    throw DataError("malformed manifest hash \"" + hex + "\"");
  }
  std::string kv;
  while (ss >> kv) {
    const auto eq = kv.find('=');
    if (eq == std::string::npos) throw DataError("malformed header attribute \"" + kv + "\"");
    h.attributes[kv.substr(0, eq)] = kv.substr(eq + 1);
  }
  return h;
}

TsvFile read_tsv(const std::filesystem::path& path, std::optional<std::uint64_t> expected_manifest) {
  std::ifstream in(path);
  if (!in) throw DataError("cannot open artifact " + path.string());
  TsvFile f;
  std::string line;
  if (!std::getline(in, line)) throw DataError(path.string() + ": empty artifact");
  try {
    f.header = parse_header(line);
  } catch (const DataError& e) {
    throw DataError(path.string() + ": " + e.what());
  }
  if (expected_manifest && f.header.manifest != *expected_manifest) {
    throw DataError("stale artifact " + path.string() + " (manifest " + to_hex(f.header.manifest) +
                    ", expected " + to_hex(*expected_manifest) + "); rerun the earlier stages");
  }
  if (!std::getline(in, line)) throw DataError(path.string() + ": missing column header");
  f.columns = split_tabs(line);
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    f.rows.push_back(split_tabs(line));
  }
  return f;
}

void write_occurrences(std::ostream& out, const OccurrenceTable& table, const Lexicon& lex,
                       const Stamp& stamp, const Window& window, std::size_t posts) {
  out << format_header(stamp, {{"window", window.id},
                                  {"span", window_attrs_span(window)},
                                  {"posts", std::to_string(posts)},
                                  {"rows", std::to_string(table.rows())}})
      << "\npost_id\twords\n";
  for (std::size_t r = 0; r < table.rows(); ++r) {
    out << table.post_id(r);
    for (const auto w : table.row(r)) out << '\t' << lex.word(w);
    out << '\n';
  }
}

OccurrenceArtifact read_occurrences(const std::filesystem::path& path, const Lexicon& lex,
                                    std::uint64_t manifest) {
  const auto f = read_tsv(path, manifest);
  OccurrenceArtifact out;
  out.posts = parse_uint(f.header.attribute("posts"));
  for (const auto& row : f.rows) {
    if (row.size() < 2) throw DataError(path.string() + ": occurrence row without words");
    std::vector<WordId> words;
    for (std::size_t i = 1; i < row.size(); ++i) words.push_back(word_id(lex, row[i], path));
    out.table.add_row(row[0], std::move(words));
  }
  return out;
}

void write_pairs(std::ostream& out, const ConceptPairTable& pairs, const Lexicon& lex,
                 const Stamp& stamp, const Window& window) {
  out << format_header(stamp, {{"window", window.id}}) << "\nword_i\tword_j\tweight\n";
  for (const auto& e : pairs.entries()) {
    out << lex.word(e.pair.first) << '\t' << lex.word(e.pair.second) << '\t' << e.weight << '\n';
  }
}

void write_null_stats(std::ostream& out, const NullStats& stats, const Lexicon& lex,
                      const Stamp& stamp, const Window& window) {
  out << format_header(stamp, {{"window", window.id},
                                  {"replicates", std::to_string(stats.replicates())},
                                  {"null_seed", std::to_string(stats.seed())}})
      << "\nword_i\tword_j\tnull_mean\tnull_std\n";
  for (const auto& e : stats.entries()) {
    out << lex.word(e.pair.first) << '\t' << lex.word(e.pair.second) << '\t'
        << format_double(e.moments.mean) << '\t' << format_double(e.moments.stddev) << '\n';
  }
}

NullStats read_null_stats(const std::filesystem::path& path, const Lexicon& lex,
                          std::uint64_t manifest) {
  const auto f = read_tsv(path, manifest);
  expect_columns(f, 4, path);
  std::vector<NullEntry> entries;
  entries.reserve(f.rows.size());
  for (const auto& row : f.rows) {
    entries.push_back({WordPair(word_id(lex, row[0], path), word_id(lex, row[1], path)),
                       {parse_double(row[2]), parse_double(row[3])}});
  }
  return NullStats(std::move(entries), parse_uint(f.header.attribute("replicates")),
                   parse_uint(f.header.attribute("null_seed")));
}

void write_concept_network(std::ostream& out, const ConceptNetwork& net, const Lexicon& lex,
                           const Stamp& stamp, const Window& window) {
  out << format_header(stamp, {{"window", window.id},
                                  {"weight_cutoff", std::to_string(net.weight_cutoff)},
                                  {"strength", format_double(net.config.strength)},
                                  {"weight_percentile", format_double(net.config.weight_percentile)},
                                  {"significant", std::to_string(net.significant_count())}})
      << "\nword_i\tword_j\tdim_i\tdim_j\tweight\tnull_mean\tnull_std\tstrength\tsignificant\n";
  for (const auto& l : net.links) {
    out << lex.word(l.pair.first) << '\t' << lex.word(l.pair.second) << '\t'
        << to_string(lex.dim(l.pair.first)) << '\t' << to_string(lex.dim(l.pair.second)) << '\t'
        << l.weight << '\t' << format_double(l.null.mean) << '\t' << format_double(l.null.stddev)
        << '\t' << format_double(l.strength) << '\t' << (l.significant ? 1 : 0) << '\n';
  }
}

ConceptLinkSet read_significant_links(const std::filesystem::path& path, std::uint64_t manifest) {
  const auto f = read_tsv(path, manifest);
  expect_columns(f, 9, path);
  std::vector<std::pair<std::string, std::string>> links;
  for (const auto& row : f.rows) {
    if (row[8] == "1") links.emplace_back(row[0], row[1]);
  }
  return make_link_set(std::move(links));
}

void write_emotion_network(std::ostream& out, const EmotionNetwork& net, bool degenerate,
                           const Stamp& stamp, const Window& window) {
  out << format_header(stamp, {{"window", window.id},
                                  {"span", window_attrs_span(window)},
                                  {"degenerate", degenerate ? "1" : "0"},
                                  {"scale", format_double(net.scale)}})
      << "\ndim_i\tdim_j\tsig_links\tpossible_links\traw_strength\trescaled_strength\n";
  for (const auto& key : all_emotion_links()) {
    const auto i = key.index();
    out << to_string(key.a) << '\t' << to_string(key.b) << '\t' << net.sig_links[i] << '\t'
        << net.possible[i] << '\t' << format_double(net.raw[i]) << '\t'
        << (degenerate ? std::string("NA") : format_double(net.rescaled[i])) << '\n';
  }
}

EmotionArtifact read_emotion_network(const std::filesystem::path& path, std::uint64_t manifest) {
  const auto f = read_tsv(path, manifest);
  expect_columns(f, 6, path);
  if (f.rows.size() != kNumEmotionLinks) {
    throw DataError(path.string() + ": expected 21 emotion links");
  }
  EmotionArtifact out;
  out.degenerate = f.header.attribute("degenerate") == "1";
  for (const auto& row : f.rows) {
    const auto a = parse_dim(row[0]);
    const auto b = parse_dim(row[1]);
    if (!a || !b) throw DataError(path.string() + ": unknown dimension");
    const auto i = EmotionLinkKey(*a, *b).index();
    out.sig_links[i] = parse_uint(row[2]);
    out.possible[i] = parse_uint(row[3]);
    out.raw[i] = parse_double(row[4]);
    out.rescaled[i] = parse_double(row[5]);
  }
  return out;
}

void write_matrix(std::ostream& out, std::span<const std::string> labels, const Matrix& m,
                  const Stamp& stamp, const std::string& metric) {
  out << format_header(stamp, {{"metric", metric}}) << "\nlabel";
  for (const auto& l : labels) out << '\t' << l;
  out << '\n';
  for (std::size_t i = 0; i < m.size(); ++i) {
    out << labels[i];
    for (std::size_t j = 0; j < m.size(); ++j) out << '\t' << format_double(m(i, j));
    out << '\n';
  }
}

void write_deltas(std::ostream& out, std::span<const LinkDelta> deltas, const Stamp& stamp,
                  const std::string& a, const std::string& b) {
  out << format_header(stamp, {{"a", a}, {"b", b}})
      << "\ndim_i\tdim_j\tt\tdf\tp_raw\tp_fdr\tcohens_d\tdirection\n";
  for (const auto& d : deltas) {
    const char* direction = d.test.t > 0 ? "+" : (d.test.t < 0 ? "-" : "0");
    out << to_string(d.key.a) << '\t' << to_string(d.key.b) << '\t' << format_double(d.test.t)
        << '\t' << format_double(d.test.df) << '\t' << format_double(d.test.p) << '\t'
        << format_double(d.p_fdr) << '\t' << format_double(d.test.cohens_d) << '\t' << direction
        << '\n';
  }
}

}  // namespace emonet
