// JSON text crosses the boundary in both directions; the Python package
// turns it into plain lists and dicts.

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <string>
#include <vector>

#include "tropmarg/fixtures.hpp"
#include "tropmarg/golden.hpp"
#include "tropmarg/wire.hpp"

namespace py = pybind11;
using namespace tropmarg;
using wire::Json;

namespace {

Matrix matrix_arg(const std::string& text, const std::string& semiring) {
  return wire::matrix_from_json(Json::parse(text), parse_semiring(semiring));
}

std::vector<Matrix> matrices_arg(const std::string& text, const std::string& semiring) {
  const Json j = Json::parse(text);
  if (!j.is_array() || j.empty()) throw wire::MalformedInput("expected a non-empty list of matrices");
  std::vector<Matrix> out;
  for (const Json& m : j) out.push_back(wire::matrix_from_json(m, parse_semiring(semiring)));
  return out;
}

std::string dump(const Json& j) { return j.dump(); }

std::string residual(const std::string& a, const std::string& semiring, bool right) {
  const Matrix m = matrix_arg(a, semiring);
  return dump(wire::to_json(right ? residual_right(m).bound : residual_left(m).bound));
}

std::string product(const std::string& a, const std::string& b, const std::string& semiring) {
  return dump(wire::to_json(mat_mul(matrix_arg(a, semiring), matrix_arg(b, semiring))));
}

MarginalSet sample(const std::string& word, const std::vector<Matrix>& mats, const SamplerOptions& opts,
                   Rng& rng) {
  auto need = [&](std::size_t n) {
    if (mats.size() != n) {
      throw std::invalid_argument("word " + word + " takes " + std::to_string(n) + " matrices");
    }
  };
  if (word == "right") return need(1), sample_right_marginal(mats[0], opts, rng);
  if (word == "left") return need(1), sample_left_marginal(mats[0], opts, rng);
  if (word == "sandwich") return need(1), sample_sandwich_marginal(mats[0], opts, rng);
  if (word == "additive") return need(1), sample_additive_marginal(mats[0], opts, rng);
  if (word == "five-factor") return need(3), sample_five_factor_marginal(mats[0], mats[1], mats[2], opts, rng);
  if (word == "chain") return sample_chain_marginal(mats, opts, rng);
  throw std::invalid_argument("unknown word " + word);
}

// Returns {"word": ..., "set": ...} in the wire formats.
std::string sample_marginal(const std::string& word, const std::string& matrices, const std::string& semiring,
                            std::size_t count, std::uint64_t seed, const std::string& encoding) {
  SamplerOptions opts;
  opts.count = count;
  Rng rng(seed);
  const MarginalSet set = sample(word, matrices_arg(matrices, semiring), opts, rng);
  Json out = Json::object();
  out["word"] = wire::to_json(set.word());
  out["set"] = wire::encode_tuples(wire::tuple_list(set), wire::parse_set_encoding(encoding));
  return dump(out);
}

// One flag per tuple of the set file, in file order.
std::vector<bool> verify_set(const std::string& set_text, const std::string& word_text) {
  const WordTemplate w = wire::word_from_json(Json::parse(word_text));
  const wire::TupleList list = wire::decode_tuples(Json::parse(set_text));
  std::vector<bool> out;
  for (const Tuple& t : list.tuples) {
    bool ok = false;
    try {
      ok = verify_marginal(w, t);
    } catch (const DimensionMismatch&) {
    }
    out.push_back(ok);
  }
  return out;
}

std::string run(const std::string& protocol, const std::string& params_text, std::uint64_t seed) {
  const ProtocolParams params = wire::params_from_json(Json::parse(params_text));
  Rng rng(seed);
  return dump(wire::to_json(run_protocol(parse_protocol(protocol), params, rng)));
}

std::string run_fixture(const std::string& name) {
  auto ex = fixtures::protocol_example(name);
  return dump(wire::to_json(execute_protocol(ex.kind, ex.params, ex.alice, ex.bob)));
}

std::string attack(const std::string& transcript_text, unsigned degree) {
  const ProtocolTranscript t = wire::transcript_from_json(Json::parse(transcript_text));
  return dump(wire::to_json(attack_transcript(t, degree), t, degree));
}

std::string golden() {
  Json out = Json::array();
  for (const GoldenCheck& c : run_golden_checks()) {
    out.push_back(Json::object({{"group", c.group}, {"name", c.name}, {"passed", c.passed}, {"detail", c.detail}}));
  }
  return dump(out);
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Exact tropical matrix algebra, marginal sets and key-exchange protocols";

  py::register_exception<wire::MalformedInput>(m, "MalformedInput", PyExc_ValueError);
  py::register_exception<SamplerExhausted>(m, "SamplerExhausted", PyExc_RuntimeError);
  py::register_exception<NotMarginal>(m, "NotMarginal", PyExc_ValueError);

  m.def("residual_right", [](const std::string& a, const std::string& s) { return residual(a, s, true); },
        py::arg("a"), py::arg("semiring"));
  m.def("residual_left", [](const std::string& a, const std::string& s) { return residual(a, s, false); },
        py::arg("a"), py::arg("semiring"));
  m.def("mat_mul", &product, py::arg("a"), py::arg("b"), py::arg("semiring"));
  m.def("sample_marginal", &sample_marginal, py::arg("word"), py::arg("matrices"), py::arg("semiring"),
        py::arg("count"), py::arg("seed"), py::arg("encoding"));
  m.def("verify_marginal", &verify_set, py::arg("set"), py::arg("word"));
  m.def("run_protocol", &run, py::arg("protocol"), py::arg("params"), py::arg("seed"));
  m.def("run_fixture", &run_fixture, py::arg("name"));
  m.def("fixture_names", &fixtures::protocol_example_names);
  m.def("attack", &attack, py::arg("transcript"), py::arg("degree"));
  m.def("golden_checks", &golden);
}
