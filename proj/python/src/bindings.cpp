#include <pybind11/pybind11.h>
#include <pybind11/stl.h>
#include <pybind11/stl/filesystem.h>

#include <sstream>

#include "emonet/cli.hpp"
#include "emonet/conceptnet.hpp"
#include "emonet/emotionet.hpp"
#include "emonet/error.hpp"
#include "emonet/lexicon.hpp"
#include "emonet/matcher.hpp"
#include "emonet/stats.hpp"
#include "emonet/synth.hpp"
#include "emonet/unicode.hpp"

namespace py = pybind11;
using namespace emonet;

namespace {

EmotionDim dim_arg(const std::string& label) {
  const auto d = parse_dim(label);
  if (!d) throw ConfigError("unknown emotion dimension \"" + label + "\"");
  return *d;
}

MatchMode mode_arg(const std::string& s) {
  const auto m = parse_match_mode(s);
  if (!m) throw ConfigError("matcher must be \"substring\" or \"token\"");
  return *m;
}

// Lexicon plus a matcher that refers to it; the matcher keeps a pointer, so
// both live together.
struct PyLexicon {
  Lexicon lex;
  explicit PyLexicon(Lexicon l) : lex(std::move(l)) {}

  std::vector<std::string> match(const std::string& text, const std::string& mode) const {
    const ConceptMatcher m(lex, mode_arg(mode));
    std::vector<std::string> out;
    for (auto id : m.match(normalize_text(text))) out.push_back(lex.word(id));
    return out;
  }
};

OccurrenceTable table_from(const std::vector<std::vector<WordId>>& rows) {
  OccurrenceTable t;
  for (std::size_t r = 0; r < rows.size(); ++r) t.add_row(std::to_string(r), rows[r]);
  return t;
}

}  // namespace

PYBIND11_MODULE(_emonet, m) {
  m.doc() = "Emotion co-occurrence networks: null model, significance and comparison statistics";

  py::register_exception<ConfigError>(m, "ConfigError", PyExc_ValueError);
  py::register_exception<DegenerateError>(m, "DegenerateError", PyExc_ArithmeticError);
  py::register_exception<DataError>(m, "DataError", PyExc_ValueError);

  m.attr("DIMENSIONS") = [] {
    std::vector<std::string> v;
    for (std::size_t i = 0; i < kNumDims; ++i) v.emplace_back(to_string(static_cast<EmotionDim>(i)));
    return v;
  }();
  m.attr("EMOTION_LINKS") = [] {
    std::vector<std::pair<std::string, std::string>> v;
    for (const auto& k : all_emotion_links()) v.emplace_back(to_string(k.a), to_string(k.b));
    return v;
  }();

  py::class_<PyLexicon>(m, "Lexicon")
      .def_static("from_tsv", [](const std::string& text) {
        std::istringstream in(text);
        return PyLexicon(load_lexicon(in));
      })
      .def_static("load", [](const std::filesystem::path& p) { return PyLexicon(load_lexicon_file(p)); })
      .def("__len__", [](const PyLexicon& l) { return l.lex.size(); })
      .def("words", [](const PyLexicon& l) {
        std::vector<std::pair<std::string, std::string>> v;
        for (std::size_t i = 0; i < l.lex.size(); ++i) {
          v.emplace_back(l.lex.word(static_cast<WordId>(i)),
                         to_string(l.lex.dim(static_cast<WordId>(i))));
        }
        return v;
      })
      .def("possible_pairs", [](const PyLexicon& l, const std::string& a, const std::string& b) {
        return possible_pairs(l.lex, EmotionLinkKey(dim_arg(a), dim_arg(b)));
      })
      .def("match", &PyLexicon::match, py::arg("text"), py::arg("mode") = "substring");

  m.def(
      "null_moments",
      [](const std::vector<std::vector<WordId>>& rows, std::size_t replicates, std::uint64_t seed,
         unsigned workers) {
        NullModelOptions o;
        o.replicates = replicates;
        o.seed = seed;
        o.workers = workers;
        std::vector<std::tuple<WordId, WordId, double, double>> out;
        const auto stats = [&] {
          py::gil_scoped_release release;
          return null_stats(table_from(rows), o);
        }();
        for (const auto& e : stats.entries()) {
          out.emplace_back(e.pair.first, e.pair.second, e.moments.mean, e.moments.stddev);
        }
        return out;
      },
      py::arg("rows"), py::arg("replicates") = 100, py::arg("seed") = 0, py::arg("workers") = 1,
      "Null-model mean and population std of every pair's weight; rows are lists of word ids.");

  m.def(
      "pair_weights",
      [](const std::vector<std::vector<WordId>>& rows) {
        std::vector<std::tuple<WordId, WordId, std::uint32_t>> out;
        const auto pairs = count_pairs(table_from(rows));
        for (const auto& e : pairs.entries()) {
          out.emplace_back(e.pair.first, e.pair.second, e.weight);
        }
        return out;
      },
      py::arg("rows"));

  m.def("weight_cutoff", [](const std::vector<std::uint32_t>& w, double pct) { return weight_cutoff(w, pct); },
        py::arg("weights"), py::arg("percentile"));

  m.def(
      "spearman",
      [](const std::vector<double>& x, const std::vector<double>& y, bool exact) {
        const auto c = spearman(x, y, exact ? PValueMethod::kExactPermutation : PValueMethod::kTApproximation);
        return std::make_pair(c.rho, c.p);
      },
      py::arg("x"), py::arg("y"), py::arg("exact") = false);
  m.def("fdr_adjust", [](const std::vector<double>& p) { return fdr_adjust(p); }, py::arg("p"));
  m.def(
      "jaccard",
      [](std::vector<std::pair<std::string, std::string>> a, std::vector<std::pair<std::string, std::string>> b) {
        return jaccard(make_link_set(std::move(a)), make_link_set(std::move(b)));
      },
      py::arg("a"), py::arg("b"));
  m.def(
      "ttest",
      [](const std::vector<double>& a, const std::vector<double>& b, bool pooled) {
        const auto t = ttest_two_sample(a, b, pooled);
        py::dict d;
        d["t"] = t.t;
        d["df"] = t.df;
        d["p"] = t.p;
        d["cohens_d"] = t.cohens_d;
        return d;
      },
      py::arg("a"), py::arg("b"), py::arg("pooled") = true);
  m.def(
      "link_stability",
      [](const std::vector<std::vector<bool>>& flags, std::size_t universe, std::size_t resamples,
         std::uint64_t seed) {
        const auto r = link_stability(flags, universe, resamples, seed);
        return std::make_pair(r.repetitions, r.p);
      },
      py::arg("flags"), py::arg("universe"), py::arg("resamples") = 1000, py::arg("seed") = 0);
  m.def("rescale", [](const std::vector<double>& raw) {
    if (raw.size() != kNumEmotionLinks) throw DataError("expected 21 link strengths");
    EmotionNetwork net;
    std::copy(raw.begin(), raw.end(), net.raw.begin());
    const auto r = rescale(net);
    return std::make_pair(std::vector<double>(r.rescaled.begin(), r.rescaled.end()), r.scale);
  });

  m.def(
      "synthesize",
      [](const std::string& spec_json) {
        const auto spec = parse_synth_spec(spec_json);
        std::ostringstream out;
        write_posts(out, synthesize(spec));
        return std::make_pair(out.str(), serialize_lexicon(synth_lexicon(spec)));
      },
      py::arg("spec_json"), "Returns (posts as JSON lines, lexicon TSV).");

  m.def(
      "run_cli",
      [](const std::vector<std::string>& args) {
        std::ostringstream out, err;
        int code;
        {
          py::gil_scoped_release release;
          code = cli::run(args, out, err);
        }
        return std::make_tuple(code, out.str(), err.str());
      },
      py::arg("args"), "Runs a subcommand in process; returns (exit code, stdout, stderr).");
}
