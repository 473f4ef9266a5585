#include <doctest.h>

#include <sstream>

#include "emonet/embedding.hpp"
#include "emonet/error.hpp"
#include "emonet/lexicon.hpp"
#include "emonet/matcher.hpp"
#include "helpers.hpp"

using namespace emonet;

TEST_CASE("lexicon rows load in canonical order regardless of input order") {
  const auto a = testing::lexicon_from("angry\tAnger\ncalm\tTension\n# note\n\ntense\ttension\n");
  const auto b = testing::lexicon_from("tense\tTension\nangry\tanger\ncalm\tTENSION\n");
  CHECK(a == b);
  CHECK(a.size() == 3);
  CHECK(a.word(0) == "calm");
  CHECK(a.word(1) == "tense");
  CHECK(a.word(2) == "angry");
  CHECK(a.count(EmotionDim::kTension) == 2);
  CHECK(a.fingerprint() == b.fingerprint());
  CHECK(testing::lexicon_from(serialize_lexicon(a)) == a);
}

TEST_CASE("lexicon errors name the line and the dimensions involved") {
  try {
    testing::lexicon_from("calm\tTension\nfoo\tJoy\n");
    FAIL("expected an error");
  } catch (const DataError& e) {
    CHECK(std::string(e.what()).find("line 2") != std::string::npos);
  }
  try {
    testing::lexicon_from("calm\tTension\ncalm\tVigor\n");
    FAIL("expected an error");
  } catch (const DataError& e) {
    const std::string what = e.what();
    CHECK(what.find("Tension") != std::string::npos);
    CHECK(what.find("Vigor") != std::string::npos);
  }
  CHECK_THROWS_AS(testing::lexicon_from("\tAnger\n"), DataError);
}

TEST_CASE("lexicon words are NFC normalized") {
  // "café" with a combining acute accent versus the precomposed form
  const auto lex = testing::lexicon_from("cafe\xCC\x81\tVigor\n");
  CHECK(lex.find("caf\xC3\xA9").has_value());
}

TEST_CASE("token matcher reports each word once in lexicon order") {
  const auto lex = testing::lexicon_from("angry\tAnger\ncalm\tTension\nsad\tDepression\n");
  const ConceptMatcher m(lex, MatchMode::kToken);
  const auto ids = m.match("Sad, angry... angry! calm? calmer sad");
  REQUIRE(ids.size() == 3);
  CHECK(lex.word(ids[0]) == "calm");
  CHECK(lex.word(ids[1]) == "sad");
  CHECK(lex.word(ids[2]) == "angry");
  CHECK(m.match("").empty());
  CHECK(m.match("sadness").empty());
}

TEST_CASE("substring matcher is leftmost-longest") {
  const auto lex = testing::lexicon_from("不安\tTension\n不安定\tConfusion\n怒り\tAnger\n");
  const ConceptMatcher m(lex, MatchMode::kSubstring);
  const auto ids = m.match("とても不安定で怒りを感じる");
  REQUIRE(ids.size() == 2);
  CHECK(lex.word(ids[0]) == "怒り");
  CHECK(lex.word(ids[1]) == "不安定");
  CHECK(m.match("不安です").size() == 1);
}

TEST_CASE("embedding expansion keeps candidates strictly above threshold") {
  const auto lex = testing::lexicon_from("angry\tAnger\ncalm\tTension\nghost\tVigor\n");
  std::istringstream in(
      "5 2\nangry 1 0\ncalm 0 1\nfurious 0.99 0.1\nirate 0.8 0.6\nserene 0.05 1\nchair -1 0\n");
  const auto emb = load_embeddings(in);
  const auto res = expand_candidates(lex, emb, 0.7);
  REQUIRE(res.candidates.size() == 3);
  CHECK(res.candidates[0].candidate == "serene");
  CHECK(res.candidates[0].dim == EmotionDim::kTension);
  for (std::size_t i = 0; i < res.candidates.size(); ++i) {
    CHECK(res.candidates[i].cosine > 0.7);
    if (i > 0) CHECK(res.candidates[i - 1].cosine >= res.candidates[i].cosine);
    CHECK(res.candidates[i].candidate != "angry");
  }
  REQUIRE(res.missing_seeds.size() == 1);
  CHECK(res.missing_seeds[0] == "ghost");
  CHECK_THROWS_AS(expand_candidates(lex, emb, 0.0), ConfigError);
  CHECK_THROWS_AS(expand_candidates(lex, emb, 1.5), ConfigError);
}
