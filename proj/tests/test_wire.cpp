#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "testkit.hpp"
#include "tropmarg/fixtures.hpp"
#include "tropmarg/wire.hpp"

using namespace tropmarg;
using fixtures::mp;
using wire::Json;

TEST_CASE("scalar tokens") {
  CHECK(wire::to_json(Scalar(-7)).dump() == "-7");
  CHECK(wire::to_json(Scalar::parse("3/4")).dump() == "\"3/4\"");
  CHECK(wire::to_json(Scalar::pos_infinity()).dump() == "\"inf\"");
  CHECK(wire::to_json(Scalar::neg_infinity()).dump() == "\"-inf\"");
  CHECK(wire::to_json(Scalar::parse("99999999999999999999")).dump() == "\"99999999999999999999\"");
  CHECK(wire::scalar_from_json(Json(9223372036854775807LL)) == Scalar::parse("9223372036854775807"));
  CHECK(wire::scalar_from_json(Json(18446744073709551615ULL)) == Scalar::parse("18446744073709551615"));
  CHECK(wire::scalar_from_json(Json("-inf")) == Scalar::neg_infinity());
  CHECK_THROWS_AS(wire::scalar_from_json(Json(1.5)), wire::MalformedInput);
  CHECK_THROWS_AS(wire::scalar_from_json(Json("x")), wire::MalformedInput);
  CHECK_THROWS_AS(wire::scalar_from_json(Json(nullptr)), wire::MalformedInput);
}

TEST_CASE("matrices") {
  const Matrix m(SemiringKind::min_plus, {{0, Scalar::pos_infinity()}, {Scalar::parse("1/2"), -3}});
  CHECK(wire::to_json(m).dump() == R"([[0,"inf"],["1/2",-3]])");
  CHECK(wire::matrix_from_json(wire::to_json(m), SemiringKind::min_plus) == m);
  CHECK_THROWS_AS(wire::matrix_from_json(Json::parse("[[1,2],[3]]"), SemiringKind::min_plus), wire::MalformedInput);
  CHECK_THROWS_AS(wire::matrix_from_json(Json::parse("[]"), SemiringKind::min_plus), wire::MalformedInput);
  // -inf is not a min-plus entry.
  CHECK_THROWS_AS(wire::matrix_from_json(Json::parse(R"([["-inf"]])"), SemiringKind::min_plus),
                  wire::MalformedInput);
}

TEST_CASE("interval encoding of a box") {
  const auto ex = fixtures::interval_encoding();
  const auto box = wire::encode_interval(ex.matrices);
  REQUIRE(box);
  CHECK(box->dump() == ex.encoded);
  CHECK(wire::decode_interval(Json::parse(ex.encoded), SemiringKind::min_plus) == ex.matrices);
  // Any order of the same members gives the same box.
  std::vector<Matrix> shuffled(ex.matrices.rbegin(), ex.matrices.rend());
  CHECK(wire::encode_interval(shuffled)->dump() == ex.encoded);
}

TEST_CASE("interval encoding refuses non-boxes") {
  auto ex = fixtures::interval_encoding();
  std::vector<Matrix> missing(ex.matrices.begin(), ex.matrices.end() - 1);
  CHECK_FALSE(wire::encode_interval(missing));
  std::vector<Matrix> repeated = ex.matrices;
  repeated.back() = repeated.front();
  CHECK_FALSE(wire::encode_interval(repeated));
  CHECK_FALSE(wire::encode_interval({mp({{Scalar::parse("1/2")}})}));
  CHECK_FALSE(wire::encode_interval({}));

  // Requested interval falls back to delta.
  wire::TupleList list{SemiringKind::min_plus, 2, 1, {}};
  for (const Matrix& m : missing) list.tuples.push_back({m});
  const Json j = wire::encode_tuples(list, wire::SetEncoding::interval);
  CHECK(j["encoding"] == "delta");
  CHECK(wire::decode_tuples(j).tuples == list.tuples);
}

TEST_CASE("delta encoding") {
  const auto ex = fixtures::delta_encoding();
  CHECK(wire::encode_delta(ex.matrices).dump() == ex.encoded);
  CHECK(wire::decode_delta(Json::parse(ex.encoded), SemiringKind::min_plus) == ex.matrices);
  CHECK(wire::encode_delta({ex.matrices[0]}).dump() ==
        R"({"base":[[2,3,4],[4,5,1],[0,8,6]],"diffs":[]})");
  CHECK_THROWS_AS(wire::decode_delta(Json::parse(R"({"base":[[1]],"diffs":[[[[2,1],5]]]})"), SemiringKind::min_plus),
                  wire::MalformedInput);
}

TEST_CASE("set files round-trip byte for byte") {
  for (std::uint64_t seed = 0; seed < 40; ++seed) {
    Rng rng(seed);
    const Matrix a = testkit::random_int_matrix(SemiringKind::max_plus, 3, -20, 20, rng);
    SamplerOptions opts;
    opts.count = 4;
    const MarginalSet set = seed % 2 ? sample_right_marginal(a, opts, rng) : sample_sandwich_marginal(a, opts, rng);
    for (auto enc : {wire::SetEncoding::raw, wire::SetEncoding::interval, wire::SetEncoding::delta}) {
      const std::string text = wire::dump(wire::encode_tuples(wire::tuple_list(set), enc));
      const auto back = wire::decode_tuples(wire::parse(text));
      CHECK(back.tuples == set.tuples());
      CHECK(back.kind == SemiringKind::max_plus);
      CHECK(wire::dump(wire::encode_tuples(back, enc)) == text);
    }
    const std::string word = wire::dump(wire::to_json(set.word()));
    CHECK(wire::word_from_json(wire::parse(word)) == set.word());
    CHECK(wire::dump(wire::to_json(wire::word_from_json(wire::parse(word)))) == word);
  }
}

TEST_CASE("params and transcripts round-trip byte for byte") {
  for (const auto& family : testkit::family_labels()) {
    for (ProtocolKind kind : {ProtocolKind::sidelnikov, ProtocolKind::one_sided, ProtocolKind::sandwich,
                              ProtocolKind::multiblock}) {
      const ProtocolParams params = testkit::make_params(family, 3, 2, 5);
      const std::string ptext = wire::dump(wire::to_json(params));
      CHECK(wire::dump(wire::to_json(wire::params_from_json(wire::parse(ptext)))) == ptext);
      Rng rng(5);
      const auto t = run_protocol(kind, params, rng);
      const std::string text = wire::dump(wire::to_json(t));
      const auto back = wire::transcript_from_json(wire::parse(text));
      CHECK(wire::dump(wire::to_json(back)) == text);
      const auto report = attack_transcript(back, 2);
      const std::string rtext = wire::dump(wire::to_json(report, back, 2));
      CHECK(wire::parse(rtext)["verdict"] == std::string(to_string(report.verdict)));
    }
  }
}

TEST_CASE("secrets stay out of the public section") {
  auto ex = fixtures::sandwich_4x4();
  const Json j = wire::to_json(execute_protocol(ex.kind, ex.params, ex.alice, ex.bob));
  for (const char* who : {"alice", "bob"}) {
    const Json& pub = j["public"][who];
    CHECK(pub.contains("sets"));
    CHECK(pub.contains("messages"));
    CHECK_FALSE(pub.contains("p"));
    CHECK_FALSE(pub.contains("key"));
  }
}

TEST_CASE("tampered transcripts are refused") {
  auto ex = fixtures::sandwich_4x4();
  const Json j = wire::to_json(execute_protocol(ex.kind, ex.params, ex.alice, ex.bob));
  SUBCASE("changed message") {
    Json bad = j;
    bad["public"]["alice"]["messages"][0][0][0] = 0;
    CHECK_THROWS_AS(wire::transcript_from_json(bad), wire::MalformedInput);
  }
  SUBCASE("changed key") {
    Json bad = j;
    bad["secrets"]["bob"]["key"][0][0] = 0;
    CHECK_THROWS_AS(wire::transcript_from_json(bad), wire::MalformedInput);
  }
  SUBCASE("set entry below the table") {
    Json bad = j;
    bad["public"]["alice"]["sets"][0][0][0][0][1] = -1000;
    CHECK_THROWS_AS(wire::transcript_from_json(bad), NotMarginal);
  }
  SUBCASE("wrong format tag") {
    Json bad = j;
    bad["format"] = "something-else";
    CHECK_THROWS_AS(wire::transcript_from_json(bad), wire::MalformedInput);
  }
}

TEST_CASE("malformed documents") {
  CHECK_THROWS_AS(wire::parse("{not json"), wire::MalformedInput);
  CHECK_THROWS_AS(wire::decode_tuples(Json::parse(R"({"format":"tropmarg/marginal-set"})")), wire::MalformedInput);
  CHECK_THROWS_AS(wire::params_from_json(Json::parse("[]")), wire::MalformedInput);
  CHECK_THROWS_AS(wire::word_from_json(Json::parse(
                      R"({"format":"tropmarg/word","semiring":"min-plus","dim":1,"constants":[[[0]]],"products":[["q1"]],"additive_slots":0})")),
                  wire::MalformedInput);
  const Json huge = Json::parse(R"([[[0,1000000],[0,1000000]],[0,0]])");
  CHECK_THROWS_AS(wire::decode_interval(huge, SemiringKind::min_plus), wire::MalformedInput);
}

TEST_CASE("canonical text layout") {
  const Json j = Json::parse(R"({"a":[[1,2],[3,4]],"b":{"c":[]},"d":[{"e":1}]})");
  CHECK(wire::dump(j) == "{\n  \"a\": [[1,2],[3,4]],\n  \"b\": {\n    \"c\": []\n  },\n  \"d\": [\n    {\n      \"e\": 1\n    }\n  ]\n}\n");
  CHECK(wire::error_record(2, "malformed-input", "x").dump() ==
        R"({"error":{"exit_code":2,"kind":"malformed-input","message":"x"}})");
}
