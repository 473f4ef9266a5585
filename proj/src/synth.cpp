#include "emonet/synth.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <fstream>
#include <ostream>
#include <sstream>
#include <unordered_map>

#include <nlohmann/json.hpp>

#include "emonet/error.hpp"
#include "emonet/rng.hpp"

namespace emonet {
namespace {

void check_rate(double r, const std::string& what) {
  if (!(r >= 0.0 && r <= 1.0)) throw ConfigError(what + " must be a probability in [0, 1]");
}

}  // namespace

void SynthSpec::validate() const {
  if (!(period.start < period.end)) throw ConfigError("synth: period must have start < end");
  check_rate(base_rate, "synth: base_rate");
  const auto lex = synth_lexicon(*this);
  for (const auto& [word, rate] : word_rates) {
    if (!lex.find(word)) throw ConfigError("synth: word_rates names unknown word \"" + word + "\"");
    check_rate(rate, "synth: rate of \"" + word + "\"");
  }
  for (const auto& p : planted) {
    if (!lex.find(p.a) || !lex.find(p.b)) {
      throw ConfigError("synth: planted pair (" + p.a + ", " + p.b + ") names an unknown word");
    }
    if (p.a == p.b) throw ConfigError("synth: planted pair needs two distinct words");
    check_rate(p.rate, "synth: planted rate");
  }
}

std::string synth_word(EmotionDim dim, std::size_t index) {
  std::string name(to_string(dim));
  std::transform(name.begin(), name.end(), name.begin(),
                 [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  std::string n = std::to_string(index + 1);
  if (n.size() < 2) n.insert(0, 2 - n.size(), '0');
  return name + "_" + n;
}

Lexicon synth_lexicon(const SynthSpec& spec) {
  std::vector<LexiconEntry> entries;
  for (const auto d : kAllDims) {
    for (std::size_t i = 0; i < spec.words_per_dim[index_of(d)]; ++i) {
      entries.push_back({synth_word(d, i), d});
    }
  }
  return Lexicon::from_entries(std::move(entries));
}

std::vector<Post> synthesize(const SynthSpec& spec) {
  spec.validate();
  const auto lex = synth_lexicon(spec);
  std::vector<double> rates(lex.size(), spec.base_rate);
  for (const auto& [word, rate] : spec.word_rates) rates[*lex.find(word)] = rate;
  struct Planted {
    WordId a, b;
    double rate;
  };
  std::vector<Planted> planted;
  for (const auto& p : spec.planted) planted.push_back({*lex.find(p.a), *lex.find(p.b), p.rate});

  Rng rng(spec.seed);
  const auto span_seconds =
      static_cast<std::uint64_t>((spec.period.end - spec.period.start).count());
  std::vector<Timestamp> times(spec.posts);
  for (auto& t : times) t = spec.period.start + std::chrono::seconds(rng.below(span_seconds));
  std::sort(times.begin(), times.end());

  const std::size_t width = std::max<std::size_t>(6, std::to_string(spec.posts).size());
  std::vector<Post> posts(spec.posts);
  std::vector<bool> present(lex.size());
  std::vector<WordId> words;
  for (std::size_t i = 0; i < spec.posts; ++i) {
    std::fill(present.begin(), present.end(), false);
    for (WordId w = 0; w < lex.size(); ++w) present[w] = rng.bernoulli(rates[w]);
    for (const auto& p : planted) {
      if (rng.bernoulli(p.rate)) present[p.a] = present[p.b] = true;
    }
    words.clear();
    for (WordId w = 0; w < lex.size(); ++w) {
      if (present[w]) words.push_back(w);
    }
    rng.shuffle(std::span<WordId>(words));
    std::string text;
    for (const auto w : words) {
      if (!text.empty()) text += ' ';
      text += lex.word(w);
    }
    if (text.empty()) text = "lorem ipsum";
    std::string n = std::to_string(i + 1);
    posts[i] = {"p" + std::string(width - n.size(), '0') + n, times[i], std::move(text)};
  }
  return posts;
}

SynthSpec parse_synth_spec(std::string_view json_text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(json_text);
  } catch (const nlohmann::json::exception& e) {
    throw ConfigError(std::string("synth spec: ") + e.what());
  }
  SynthSpec spec;
  try {
    spec.posts = j.at("posts").get<std::size_t>();
    spec.seed = j.value("seed", std::uint64_t{0});
    if (j.contains("start")) spec.period.start = parse_timestamp(j["start"].get<std::string>());
    if (j.contains("end")) spec.period.end = parse_timestamp(j["end"].get<std::string>());
    const auto& wpd = j.at("words_per_dimension");
    if (wpd.is_number_unsigned()) {
      spec.words_per_dim.fill(wpd.get<std::size_t>());
    } else {
      for (const auto& [label, count] : wpd.items()) {
        const auto dim = parse_dim(label);
        if (!dim) throw ConfigError("synth spec: words_per_dimension: unknown dimension \"" + label + "\"");
        spec.words_per_dim[index_of(*dim)] = count.get<std::size_t>();
      }
    }
    spec.base_rate = j.value("base_rate", spec.base_rate);
    if (j.contains("word_rates")) {
      for (const auto& [word, rate] : j["word_rates"].items()) spec.word_rates[word] = rate.get<double>();
    }
    if (j.contains("planted")) {
      for (const auto& p : j["planted"]) {
        spec.planted.push_back({p.at("a").get<std::string>(), p.at("b").get<std::string>(),
                                p.at("rate").get<double>()});
      }
    }
  } catch (const nlohmann::json::exception& e) {
    throw ConfigError(std::string("synth spec: ") + e.what());
  } catch (const DataError& e) {
    throw ConfigError(std::string("synth spec: ") + e.what());
  }
  spec.validate();
  return spec;
}

SynthSpec load_synth_spec(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open synth spec " + path.string());
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_synth_spec(ss.str());
}

void write_posts(std::ostream& out, std::span<const Post> posts) {
  for (const auto& p : posts) {
    nlohmann::json rec;
    rec["id"] = p.id;
    rec["created_at"] = format_timestamp(p.timestamp);
    rec["text"] = p.text;
    out << rec.dump() << '\n';
  }
}

}  // namespace emonet
