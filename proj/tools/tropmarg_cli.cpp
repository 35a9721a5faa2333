// Command-line front end: parameter generation, marginal sets, protocol runs,
// the decomposition attack and the worked-example selftest.

#include <CLI11.hpp>

#include <charconv>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <unistd.h>

#include "tropmarg/fixtures.hpp"
#include "tropmarg/golden.hpp"
#include "tropmarg/wire.hpp"

namespace {

using namespace tropmarg;
using wire::Json;

constexpr int kOk = 0;
constexpr int kFailed = 1;
constexpr int kMalformed = 2;
constexpr int kExhausted = 3;

constexpr std::string_view kMatricesFormat = "tropmarg/matrices";

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw wire::MalformedInput("cannot read " + path);
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

// Write-then-rename so readers never see a partial file. "-" is stdout.
void write_output(const std::string& path, const std::string& text) {
  if (path.empty() || path == "-") {
    std::cout << text << std::flush;
    return;
  }
  namespace fs = std::filesystem;
  const fs::path target(path);
  fs::path tmp = target;
  tmp += ".tmp." + std::to_string(::getpid());
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw std::runtime_error("cannot write " + tmp.string());
    out << text;
    out.close();
    if (!out) throw std::runtime_error("cannot write " + tmp.string());
  }
  std::error_code ec;
  fs::rename(tmp, target, ec);
  if (ec) {
    fs::remove(tmp);
    throw std::runtime_error("cannot rename onto " + path + ": " + ec.message());
  }
}

IntRange parse_range(const std::string& text) {
  const auto dots = text.find("..");
  if (dots == std::string::npos) throw wire::MalformedInput("range must look like LO..HI");
  auto number = [&](std::string_view s) {
    std::int64_t v = 0;
    auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc{} || ptr != s.data() + s.size()) {
      throw wire::MalformedInput("bad range bound \"" + std::string(s) + "\"");
    }
    return v;
  };
  const IntRange r{number(std::string_view(text).substr(0, dots)),
                   number(std::string_view(text).substr(dots + 2))};
  if (r.lo > r.hi) throw wire::MalformedInput("range is empty");
  return r;
}

std::vector<std::string> split(const std::string& text, char sep) {
  std::vector<std::string> out;
  std::stringstream ss(text);
  for (std::string part; std::getline(ss, part, sep);) out.push_back(part);
  return out;
}

std::int64_t parse_int(const std::string& text, const char* what) {
  std::int64_t v = 0;
  auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
  if (ec != std::errc{} || ptr != text.data() + text.size()) {
    throw wire::MalformedInput(std::string("bad ") + what + " \"" + text + "\"");
  }
  return v;
}

Matrix random_matrix(SemiringKind kind, std::size_t dim, IntRange range, Rng& rng) {
  std::vector<Scalar> e;
  for (std::size_t i = 0; i < dim * dim; ++i) e.emplace_back(static_cast<long>(uniform_int(rng, range.lo, range.hi)));
  return Matrix(kind, dim, std::move(e));
}

// poly:D, circulant, upper-t:T, lower-s:S, jones:N, ldp:R:K
FamilySpec family_from_cli(const std::string& text, SemiringKind kind, std::size_t dim,
                           IntRange range, Rng& rng) {
  const auto parts = split(text, ':');
  const std::string& name = parts.empty() ? text : parts[0];
  auto arg = [&](std::size_t i, const char* what) {
    if (parts.size() <= i) throw wire::MalformedInput("family " + name + " needs " + what);
    return parse_int(parts[i], what);
  };
  auto arity = [&](std::size_t n) {
    if (parts.size() != n) throw wire::MalformedInput("family spec \"" + text + "\" has the wrong shape");
  };
  FamilySpec spec = [&]() -> FamilySpec {
    if (name == "poly") {
      arity(2);
      const std::int64_t d = arg(1, "degree");
      if (d < 0 || d > 64) throw wire::MalformedInput("degree must be in [0, 64]");
      return family::PolyOf{random_matrix(kind, dim, range, rng), static_cast<unsigned>(d), range};
    }
    if (name == "circulant") {
      arity(1);
      return family::Circulant{kind, dim, range};
    }
    if (name == "upper-t") {
      arity(2);
      return family::UpperTCirculant{kind, dim, Scalar(static_cast<long>(arg(1, "t"))), range};
    }
    if (name == "lower-s") {
      arity(2);
      return family::LowerSCirculant{kind, dim, Scalar(static_cast<long>(arg(1, "s"))), range};
    }
    if (name == "jones") {
      arity(2);
      if (kind != SemiringKind::max_plus) throw wire::MalformedInput("Jones families are max-plus");
      const std::int64_t n = arg(1, "alpha denominator");
      if (n < 1 || n > 1'000'000) throw wire::MalformedInput("alpha denominator must be in [1, 1e6]");
      return family::JonesDeform{sample_jones(dim, range, rng), static_cast<unsigned>(n)};
    }
    if (name == "ldp") {
      arity(3);
      if (kind != SemiringKind::min_plus) throw wire::MalformedInput("Linde-de la Puente families are min-plus");
      return family::LindeDeLaPuente{dim, arg(1, "r"), arg(2, "k")};
    }
    throw wire::MalformedInput("unknown family \"" + name + "\"");
  }();
  try {
    validate(spec);
  } catch (const std::invalid_argument& e) {
    throw wire::MalformedInput(e.what());
  }
  return spec;
}

// ---------------------------------------------------------------------------

struct GenParams {
  std::string semiring = "min-plus";
  std::size_t dim = 3;
  std::string range = "-50..50";
  std::string family = "poly:2";
  std::uint64_t seed = 0;
  std::size_t blocks = 1;
  std::string fixture;
  SamplerOptions sampler;
  std::string out;
};

int gen_params(const GenParams& o) {
  ProtocolParams p;
  if (!o.fixture.empty()) {
    try {
      p = fixtures::protocol_example(o.fixture).params;
    } catch (const std::invalid_argument& e) {
      throw wire::MalformedInput(e.what());
    }
    p.seed = o.seed;
  } else {
    p.kind = parse_semiring(o.semiring);
    if (o.dim == 0 || o.dim > 64) throw wire::MalformedInput("dim must be in [1, 64]");
    if (o.blocks == 0 || o.blocks > 64) throw wire::MalformedInput("blocks must be in [1, 64]");
    p.dim = o.dim;
    p.seed = o.seed;
    p.sampler = o.sampler;
    const IntRange range = parse_range(o.range);
    Rng rng(o.seed);
    for (std::size_t i = 0; i < o.blocks; ++i) {
      Matrix w = random_matrix(p.kind, p.dim, range, rng);
      FamilySpec h = family_from_cli(o.family, p.kind, p.dim, range, rng);
      FamilySpec r = family_from_cli(o.family, p.kind, p.dim, range, rng);
      p.blocks.push_back(Block{std::move(w), std::move(h), std::move(r)});
    }
  }
  write_output(o.out, wire::dump(wire::to_json(p)));
  return kOk;
}

struct GenMarginal {
  std::string word;
  std::string in;
  std::size_t count = 3;
  std::string out;
  std::string word_out;
  std::string encoding = "raw";
  std::optional<std::int64_t> l, l1, l2;
  std::optional<std::size_t> retry_budget;
  std::optional<std::uint64_t> seed;
};

int gen_marginal(const GenMarginal& o) {
  const Json doc = wire::parse(read_file(o.in));
  const auto encoding = [&] {
    try {
      return wire::parse_set_encoding(o.encoding);
    } catch (const std::invalid_argument& e) {
      throw wire::MalformedInput(e.what());
    }
  }();

  // Constant matrices of the word plus the sampler settings.
  std::vector<Matrix> mats;
  SamplerOptions opts;
  std::uint64_t seed = 0;
  Rng rng;
  if (doc.is_object() && doc.value("format", "") == kMatricesFormat) {
    const SemiringKind kind = parse_semiring(doc.at("semiring").get<std::string>());
    const Json& list = doc.at("matrices");
    if (!list.is_array()) throw wire::MalformedInput("matrices must be a list");
    for (const Json& m : list) mats.push_back(wire::matrix_from_json(m, kind));
    if (mats.empty()) throw wire::MalformedInput("matrices file is empty");
    for (const Matrix& m : mats) require_compatible(mats.front(), m);
    seed = o.seed.value_or(0);
    rng.seed(seed);
  } else {
    // A parameter file: the word is built on secrets drawn from block 0.
    const ProtocolParams params = wire::params_from_json(doc);
    opts = params.sampler;
    seed = o.seed.value_or(params.seed);
    rng.seed(seed);
    const Block& b = params.blocks.front();
    mats = {sample_family(b.h, rng), b.w, sample_family(b.r, rng)};
  }
  opts.count = o.count;
  if (o.l) opts.l = *o.l;
  if (o.l1) opts.l1 = *o.l1;
  if (o.l2) opts.l2 = *o.l2;
  if (o.retry_budget) opts.retry_budget = *o.retry_budget;

  auto need = [&](std::size_t n) {
    if (mats.size() < n) throw wire::MalformedInput("word " + o.word + " needs " + std::to_string(n) + " matrices");
  };
  // With a parameter file mats = {p, W, q}.
  const bool from_params = !(doc.is_object() && doc.value("format", "") == kMatricesFormat);
  std::optional<MarginalSet> set;
  if (o.word == "right") {
    set = sample_right_marginal(mats[0], opts, rng);
  } else if (o.word == "left") {
    set = sample_left_marginal(from_params ? mats[2] : mats[0], opts, rng);
  } else if (o.word == "sandwich") {
    set = sample_sandwich_marginal(mats[0], opts, rng);
  } else if (o.word == "five-factor") {
    need(3);
    set = sample_five_factor_marginal(mats[0], mats[1], mats[2], opts, rng);
  } else if (o.word == "additive") {
    set = sample_additive_marginal(mats[0], opts, rng);
  } else if (o.word == "chain") {
    need(2);
    set = sample_chain_marginal(mats, opts, rng);
  } else {
    throw wire::MalformedInput("unknown word \"" + o.word + "\"");
  }
  if (!o.word_out.empty()) write_output(o.word_out, wire::dump(wire::to_json(set->word())));
  write_output(o.out, wire::dump(wire::encode_tuples(wire::tuple_list(*set), encoding)));
  return kOk;
}

int verify_marginal_cmd(const std::string& set_path, const std::string& word_path,
                        const std::string& out) {
  const WordTemplate word = wire::word_from_json(wire::parse(read_file(word_path)));
  const wire::TupleList list = wire::decode_tuples(wire::parse(read_file(set_path)));
  if (list.kind != word.kind() || list.dim != word.dim() || list.arity != word.arity()) {
    throw wire::MalformedInput("set file does not fit the word (semiring, dim or arity)");
  }
  Json failed = Json::array();
  for (std::size_t i = 0; i < list.tuples.size(); ++i) {
    if (!verify_marginal(word, list.tuples[i])) failed.push_back(i);
  }
  Json report = Json::object();
  report["format"] = "tropmarg/verify-report";
  report["tuples"] = list.tuples.size();
  report["failed"] = failed;
  report["verified"] = failed.empty();
  write_output(out, wire::dump(report));
  return failed.empty() ? kOk : kFailed;
}

struct RunProtocol {
  std::string protocol;
  std::string params;
  std::string fixture;
  std::optional<std::uint64_t> seed;
  std::optional<std::size_t> blocks;
  std::string out;
};

int run_protocol_cmd(const RunProtocol& o) {
  const ProtocolKind kind = [&] {
    try {
      return parse_protocol(o.protocol);
    } catch (const std::invalid_argument& e) {
      throw wire::MalformedInput(e.what());
    }
  }();
  const ProtocolTranscript t = [&] {
    if (!o.fixture.empty()) {
      if (!o.params.empty()) throw wire::MalformedInput("give either --params or --fixture");
      fixtures::ProtocolExample ex = [&] {
        try {
          return fixtures::protocol_example(o.fixture);
        } catch (const std::invalid_argument& e) {
          throw wire::MalformedInput(e.what());
        }
      }();
      if (ex.kind != kind) {
        throw wire::MalformedInput("fixture " + o.fixture + " is a " + std::string(to_string(ex.kind)) + " run");
      }
      ex.params.seed = o.seed.value_or(0);
      return execute_protocol(kind, ex.params, std::move(ex.alice), std::move(ex.bob));
    }
      if (o.params.empty()) throw wire::MalformedInput("--params or --fixture is required");
      ProtocolParams params = wire::params_from_json(wire::parse(read_file(o.params)));
      if (o.seed) params.seed = *o.seed;
      if (o.blocks) {
        if (*o.blocks == 0 || *o.blocks > params.blocks.size()) {
          throw wire::MalformedInput("--blocks must be between 1 and the " +
                                     std::to_string(params.blocks.size()) + " blocks in the file");
        }
        params.blocks.erase(params.blocks.begin() + static_cast<std::ptrdiff_t>(*o.blocks),
                            params.blocks.end());
      }
      Rng rng(params.seed);
      return run_protocol(kind, params, rng);
  }();
  write_output(o.out, wire::dump(wire::to_json(t)));
  return t.agreed ? kOk : kFailed;
}

int attack_cmd(const std::string& path, unsigned degree, const std::string& out) {
  const ProtocolTranscript t = wire::transcript_from_json(wire::parse(read_file(path)));
  const AttackReport report = attack_transcript(t, degree);
  write_output(out, wire::dump(wire::to_json(report, t, degree)));
  return kOk;
}

int selftest_cmd(bool json) {
  const auto checks = run_golden_checks();
  bool ok = true;
  Json list = Json::array();
  for (const GoldenCheck& c : checks) {
    ok = ok && c.passed;
    if (json) {
      list.push_back(Json::object(
          {{"group", c.group}, {"name", c.name}, {"passed", c.passed}, {"detail", c.detail}}));
    } else {
      std::cout << (c.passed ? "PASS " : "FAIL ") << "[" << c.group << "] " << c.name;
      if (!c.passed) std::cout << ": " << c.detail;
      std::cout << "\n";
    }
  }
  if (json) {
    std::cout << wire::dump(Json::object({{"format", "tropmarg/selftest"}, {"passed", ok}, {"checks", list}}));
  } else {
    std::cout << (ok ? "selftest passed" : "selftest FAILED") << " (" << checks.size() << " checks)\n";
  }
  return ok ? kOk : kFailed;
}

int fail(int code, std::string_view kind, std::string_view message) {
  std::cerr << wire::error_record(code, kind, message).dump() << "\n";
  return code;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Tropical marginal-set toolkit"};
  app.require_subcommand(1);

  GenParams gp;
  auto* gen_params_cmd = app.add_subcommand("gen-params", "Write a protocol parameter file");
  gen_params_cmd->add_option("--semiring", gp.semiring, "min-plus or max-plus")->capture_default_str();
  gen_params_cmd->add_option("--dim", gp.dim, "Matrix dimension")->capture_default_str();
  gen_params_cmd->add_option("--range", gp.range, "Integer range LO..HI for public entries")->capture_default_str();
  gen_params_cmd->add_option("--family", gp.family,
                             "poly:D | circulant | upper-t:T | lower-s:S | jones:N | ldp:R:K")
      ->capture_default_str();
  gen_params_cmd->add_option("--seed", gp.seed, "Seed")->capture_default_str();
  gen_params_cmd->add_option("--blocks", gp.blocks, "Number of public blocks")->capture_default_str();
  gen_params_cmd->add_option("--fixture", gp.fixture, "Parameters of a worked example");
  gen_params_cmd->add_option("--count", gp.sampler.count, "Tuples per published set")->capture_default_str();
  gen_params_cmd->add_option("--l", gp.sampler.l, "Upper offset for one-sided samplers")->capture_default_str();
  gen_params_cmd->add_option("--l1", gp.sampler.l1, "Lower end of random bounds")->capture_default_str();
  gen_params_cmd->add_option("--l2", gp.sampler.l2, "Upper end of random bounds")->capture_default_str();
  gen_params_cmd->add_option("--retry-budget", gp.sampler.retry_budget, "Draws per requested tuple")
      ->capture_default_str();
  gen_params_cmd->add_option("--out,-o", gp.out, "Output file (default stdout)");

  GenMarginal gm;
  auto* gen_marginal_cmd = app.add_subcommand("gen-marginal", "Sample a marginal set");
  gen_marginal_cmd->add_option("--word", gm.word, "right | left | sandwich | five-factor | additive | chain")
      ->required();
  gen_marginal_cmd->add_option("--in", gm.in, "Parameter file or matrices file")->required();
  gen_marginal_cmd->add_option("--count", gm.count, "Number of tuples")->capture_default_str();
  gen_marginal_cmd->add_option("--out,-o", gm.out, "Set file (default stdout)");
  gen_marginal_cmd->add_option("--word-out", gm.word_out, "Also write the word template here");
  gen_marginal_cmd->add_option("--encoding", gm.encoding, "raw | interval | delta")->capture_default_str();
  gen_marginal_cmd->add_option("--l", gm.l, "Upper offset for one-sided samplers");
  gen_marginal_cmd->add_option("--l1", gm.l1, "Lower end of random bounds");
  gen_marginal_cmd->add_option("--l2", gm.l2, "Upper end of random bounds");
  gen_marginal_cmd->add_option("--retry-budget", gm.retry_budget, "Draws per requested tuple");
  gen_marginal_cmd->add_option("--seed", gm.seed, "Seed (default: the parameter file's)");

  std::string set_path, word_path, verify_out;
  auto* verify_cmd = app.add_subcommand("verify-marginal", "Check every tuple of a set file");
  verify_cmd->add_option("--set", set_path, "Set file")->required();
  verify_cmd->add_option("--word", word_path, "Word file")->required();
  verify_cmd->add_option("--out,-o", verify_out, "Report file (default stdout)");

  RunProtocol rp;
  auto* run_cmd = app.add_subcommand("run-protocol", "Run one key exchange");
  run_cmd->add_option("protocol", rp.protocol, "sidelnikov | one-sided | sandwich | multiblock")->required();
  run_cmd->add_option("--params", rp.params, "Parameter file");
  run_cmd->add_option("--fixture", rp.fixture, "Replay a worked example instead");
  run_cmd->add_option("--seed", rp.seed, "Seed (default: the parameter file's)");
  run_cmd->add_option("--blocks", rp.blocks, "Use the first N blocks");
  run_cmd->add_option("--out,-o", rp.out, "Transcript file (default stdout)");

  std::string transcript_path, attack_out;
  unsigned degree = 2;
  auto* attack = app.add_subcommand("attack", "Decomposition attack on a transcript");
  attack->add_option("--transcript", transcript_path, "Transcript file")->required();
  attack->add_option("--degree", degree, "Power basis degree")->capture_default_str();
  attack->add_option("--out,-o", attack_out, "Report file (default stdout)");

  bool selftest_json = false;
  auto* selftest = app.add_subcommand("selftest", "Check the worked examples");
  selftest->add_flag("--json", selftest_json, "Machine-readable output");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    return fail(kMalformed, "usage", e.what());
  }

  try {
    if (*gen_params_cmd) return gen_params(gp);
    if (*gen_marginal_cmd) return gen_marginal(gm);
    if (*verify_cmd) return verify_marginal_cmd(set_path, word_path, verify_out);
    if (*run_cmd) return run_protocol_cmd(rp);
    if (*attack) return attack_cmd(transcript_path, degree, attack_out);
    if (*selftest) return selftest_cmd(selftest_json);
  } catch (const SamplerExhausted& e) {
    return fail(kExhausted, "sampler-exhausted", e.what());
  } catch (const NotMarginal& e) {
    return fail(kFailed, "not-marginal", e.what());
  } catch (const nlohmann::json::exception& e) {
    return fail(kMalformed, "malformed-input", e.what());
  } catch (const std::invalid_argument& e) {
    return fail(kMalformed, "malformed-input", e.what());
  } catch (const std::domain_error& e) {
    return fail(kMalformed, "malformed-input", e.what());
  } catch (const std::exception& e) {
    return fail(kMalformed, "io-error", e.what());
  }
  return kMalformed;
}
