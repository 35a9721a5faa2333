#include "tropmarg/wire.hpp"

#include <algorithm>
#include <limits>
#include <set>
#include <sstream>

namespace tropmarg::wire {

namespace {

constexpr std::string_view kSetFormat = "tropmarg/marginal-set";
constexpr std::string_view kWordFormat = "tropmarg/word";
constexpr std::string_view kParamsFormat = "tropmarg/params";
constexpr std::string_view kTranscriptFormat = "tropmarg/transcript";
constexpr std::string_view kReportFormat = "tropmarg/attack-report";

// Interval decoding refuses boxes with more members than this.
constexpr std::size_t kMaxBoxSize = 1'000'000;

[[noreturn]] void malformed(const std::string& what) { throw MalformedInput(what); }

const Json& field(const Json& j, const char* key) {
  if (!j.is_object()) malformed(std::string("expected an object holding \"") + key + "\"");
  auto it = j.find(key);
  if (it == j.end()) malformed(std::string("missing field \"") + key + "\"");
  return *it;
}

std::int64_t as_int(const Json& j, const char* what) {
  if (j.is_number_integer()) {
    if (j.is_number_unsigned() &&
        j.get<std::uint64_t>() > static_cast<std::uint64_t>(std::numeric_limits<std::int64_t>::max())) {
      malformed(std::string(what) + " is out of range");
    }
    return j.get<std::int64_t>();
  }
  malformed(std::string(what) + " must be an integer");
}

std::size_t as_size(const Json& j, const char* what) {
  const std::int64_t v = as_int(j, what);
  if (v < 0) malformed(std::string(what) + " must be non-negative");
  return static_cast<std::size_t>(v);
}

std::string as_string(const Json& j, const char* what) {
  if (!j.is_string()) malformed(std::string(what) + " must be a string");
  return j.get<std::string>();
}

void expect_format(const Json& j, std::string_view format) {
  if (as_string(field(j, "format"), "format") != format) {
    malformed("expected a " + std::string(format) + " document");
  }
}

SemiringKind kind_from(const Json& j) {
  try {
    return parse_semiring(as_string(field(j, "semiring"), "semiring"));
  } catch (const MalformedInput&) {
    throw;
  } catch (const std::invalid_argument& e) {
    malformed(e.what());
  }
}

Json range_to_json(IntRange r) { return Json::array({r.lo, r.hi}); }

IntRange range_from_json(const Json& j) {
  if (!j.is_array() || j.size() != 2) malformed("range must be [lo, hi]");
  return {as_int(j[0], "range bound"), as_int(j[1], "range bound")};
}

Json tuple_to_json(const Tuple& t) {
  Json out = Json::array();
  for (const Matrix& m : t) out.push_back(to_json(m));
  return out;
}

Tuple tuple_from_json(const Json& j, SemiringKind kind, std::size_t dim, std::size_t arity) {
  if (!j.is_array() || j.size() != arity) malformed("tuple has the wrong arity");
  Tuple t;
  for (const Json& m : j) {
    t.push_back(matrix_from_json(m, kind));
    if (t.back().dim() != dim) malformed("tuple matrix has the wrong dimension");
  }
  return t;
}

Json matrices_to_json(const std::vector<Matrix>& ms) {
  Json out = Json::array();
  for (const Matrix& m : ms) out.push_back(to_json(m));
  return out;
}

std::vector<Matrix> matrices_from_json(const Json& j, SemiringKind kind, std::size_t dim) {
  if (!j.is_array()) malformed("expected a list of matrices");
  std::vector<Matrix> out;
  for (const Json& m : j) {
    out.push_back(matrix_from_json(m, kind));
    if (out.back().dim() != dim) malformed("matrix has the wrong dimension");
  }
  return out;
}

// Compact layout: objects are indented, arrays without objects stay inline.
bool has_object(const Json& j) {
  if (j.is_object()) return true;
  if (j.is_array()) return std::any_of(j.begin(), j.end(), [](const Json& e) { return has_object(e); });
  return false;
}

void write(std::ostream& os, const Json& j, int indent) {
  const std::string pad(static_cast<std::size_t>(indent) + 2, ' ');
  const std::string close(static_cast<std::size_t>(indent), ' ');
  if (j.is_object()) {
    if (j.empty()) {
      os << "{}";
      return;
    }
    os << "{\n";
    bool first = true;
    for (auto it = j.begin(); it != j.end(); ++it) {
      if (!first) os << ",\n";
      first = false;
      os << pad << Json(it.key()).dump() << ": ";
      write(os, it.value(), indent + 2);
    }
    os << "\n" << close << "}";
  } else if (j.is_array() && has_object(j)) {
    os << "[\n";
    for (std::size_t i = 0; i < j.size(); ++i) {
      if (i > 0) os << ",\n";
      os << pad;
      write(os, j[i], indent + 2);
    }
    os << "\n" << close << "]";
  } else {
    os << j.dump();
  }
}

}  // namespace

// ---------------------------------------------------------------------------

Json to_json(const Scalar& s) {
  if (s.is_integer()) {
    const mpz_class& num = s.value().get_num();
    if (num.fits_slong_p()) return Json(static_cast<std::int64_t>(num.get_si()));
  }
  return Json(s.to_string());
}

Scalar scalar_from_json(const Json& j) {
  if (j.is_number_integer()) {
    if (j.is_number_unsigned()) {
      return Scalar(mpq_class(mpz_class(std::to_string(j.get<std::uint64_t>()))));
    }
    return Scalar(static_cast<long>(j.get<std::int64_t>()));
  }
  if (j.is_string()) {
    try {
      return Scalar::parse(j.get<std::string>());
    } catch (const std::invalid_argument& e) {
      malformed(e.what());
    }
  }
  malformed("scalar must be an integer, \"p/q\", \"inf\" or \"-inf\"");
}

Json to_json(const Matrix& m) {
  Json rows = Json::array();
  for (std::size_t i = 0; i < m.dim(); ++i) {
    Json row = Json::array();
    for (std::size_t j = 0; j < m.dim(); ++j) row.push_back(to_json(m(i, j)));
    rows.push_back(std::move(row));
  }
  return rows;
}

Matrix matrix_from_json(const Json& j, SemiringKind kind) {
  if (!j.is_array() || j.empty()) malformed("matrix must be a non-empty list of rows");
  const std::size_t dim = j.size();
  std::vector<Scalar> entries;
  entries.reserve(dim * dim);
  for (const Json& row : j) {
    if (!row.is_array() || row.size() != dim) malformed("matrix must be square");
    for (const Json& e : row) entries.push_back(scalar_from_json(e));
  }
  try {
    return Matrix(kind, dim, std::move(entries));
  } catch (const std::invalid_argument& e) {
    malformed(e.what());
  }
}

Json to_json(const FamilySpec& f) {
  return std::visit(
      [](const auto& s) -> Json {
        using T = std::decay_t<decltype(s)>;
        Json out = Json::object();
        if constexpr (std::is_same_v<T, family::PolyOf>) {
          out["family"] = "poly-of";
          out["base"] = to_json(s.base);
          out["max_degree"] = s.max_degree;
          out["coeffs"] = range_to_json(s.coeffs);
        } else if constexpr (std::is_same_v<T, family::Circulant>) {
          out["family"] = "circulant";
          out["dim"] = s.dim;
          out["values"] = range_to_json(s.values);
        } else if constexpr (std::is_same_v<T, family::UpperTCirculant>) {
          out["family"] = "upper-t-circulant";
          out["dim"] = s.dim;
          out["t"] = to_json(s.t);
          out["values"] = range_to_json(s.values);
        } else if constexpr (std::is_same_v<T, family::LowerSCirculant>) {
          out["family"] = "lower-s-circulant";
          out["dim"] = s.dim;
          out["s"] = to_json(s.s);
          out["values"] = range_to_json(s.values);
        } else if constexpr (std::is_same_v<T, family::JonesDeform>) {
          out["family"] = "jones-deform";
          out["base"] = to_json(s.base);
          out["alpha_denominator"] = s.alpha_denominator;
        } else {
          out["family"] = "linde-de-la-puente";
          out["dim"] = s.dim;
          out["r"] = s.r;
          out["k"] = s.k;
        }
        return out;
      },
      f);
}

FamilySpec family_from_json(const Json& j, SemiringKind kind) {
  const std::string name = as_string(field(j, "family"), "family");
  FamilySpec out = [&]() -> FamilySpec {
    if (name == "poly-of") {
      const std::size_t degree = as_size(field(j, "max_degree"), "max_degree");
      if (degree > 64) malformed("max_degree is too large");
      return family::PolyOf{matrix_from_json(field(j, "base"), kind), static_cast<unsigned>(degree),
                            range_from_json(field(j, "coeffs"))};
    }
    if (name == "circulant") {
      return family::Circulant{kind, as_size(field(j, "dim"), "dim"),
                               range_from_json(field(j, "values"))};
    }
    if (name == "upper-t-circulant") {
      return family::UpperTCirculant{kind, as_size(field(j, "dim"), "dim"),
                                     scalar_from_json(field(j, "t")),
                                     range_from_json(field(j, "values"))};
    }
    if (name == "lower-s-circulant") {
      return family::LowerSCirculant{kind, as_size(field(j, "dim"), "dim"),
                                     scalar_from_json(field(j, "s")),
                                     range_from_json(field(j, "values"))};
    }
    if (name == "jones-deform") {
      const std::size_t den = as_size(field(j, "alpha_denominator"), "alpha_denominator");
      if (den == 0 || den > std::numeric_limits<unsigned>::max()) {
        malformed("alpha_denominator is out of range");
      }
      return family::JonesDeform{matrix_from_json(field(j, "base"), kind),
                                 static_cast<unsigned>(den)};
    }
    if (name == "linde-de-la-puente") {
      return family::LindeDeLaPuente{as_size(field(j, "dim"), "dim"), as_int(field(j, "r"), "r"),
                                     as_int(field(j, "k"), "k")};
    }
    malformed("unknown family \"" + name + "\"");
  }();
  try {
    validate(out);
  } catch (const std::invalid_argument& e) {
    malformed(e.what());
  }
  if (family_kind(out) != kind) malformed("family \"" + name + "\" does not fit the semiring");
  return out;
}

Json to_json(const ProtocolParams& p) {
  Json out = Json::object();
  out["format"] = kParamsFormat;
  out["semiring"] = to_string(p.kind);
  out["dim"] = p.dim;
  out["seed"] = p.seed;
  out["sampler"] = Json::object({{"count", p.sampler.count},
                                 {"l", p.sampler.l},
                                 {"l1", p.sampler.l1},
                                 {"l2", p.sampler.l2},
                                 {"retry_budget", p.sampler.retry_budget}});
  Json blocks = Json::array();
  for (const Block& b : p.blocks) {
    blocks.push_back(Json::object({{"w", to_json(b.w)}, {"h", to_json(b.h)}, {"r", to_json(b.r)}}));
  }
  out["blocks"] = std::move(blocks);
  return out;
}

ProtocolParams params_from_json(const Json& j) {
  expect_format(j, kParamsFormat);
  ProtocolParams p;
  p.kind = kind_from(j);
  p.dim = as_size(field(j, "dim"), "dim");
  const Json& seed = field(j, "seed");
  if (!seed.is_number_integer() || (!seed.is_number_unsigned() && seed.get<std::int64_t>() < 0)) {
    malformed("seed must be a non-negative integer");
  }
  p.seed = seed.get<std::uint64_t>();
  const Json& s = field(j, "sampler");
  p.sampler.count = as_size(field(s, "count"), "count");
  p.sampler.l = as_int(field(s, "l"), "l");
  p.sampler.l1 = as_int(field(s, "l1"), "l1");
  p.sampler.l2 = as_int(field(s, "l2"), "l2");
  p.sampler.retry_budget = as_size(field(s, "retry_budget"), "retry_budget");
  const Json& blocks = field(j, "blocks");
  if (!blocks.is_array()) malformed("blocks must be a list");
  for (const Json& b : blocks) {
    p.blocks.push_back(Block{matrix_from_json(field(b, "w"), p.kind),
                             family_from_json(field(b, "h"), p.kind),
                             family_from_json(field(b, "r"), p.kind)});
  }
  try {
    validate(p);
  } catch (const std::invalid_argument& e) {
    malformed(e.what());
  }
  return p;
}

Json to_json(const WordTemplate& w) {
  Json out = Json::object();
  out["format"] = kWordFormat;
  out["semiring"] = to_string(w.kind());
  out["dim"] = w.dim();
  out["constants"] = matrices_to_json(w.constants());
  Json products = Json::array();
  for (const auto& product : w.products()) {
    Json atoms = Json::array();
    for (const Atom& a : product) {
      atoms.push_back((a.type == Atom::Type::constant ? "c" : "s") + std::to_string(a.index));
    }
    products.push_back(std::move(atoms));
  }
  out["products"] = std::move(products);
  out["additive_slots"] = w.additive_slots();
  return out;
}

WordTemplate word_from_json(const Json& j) {
  expect_format(j, kWordFormat);
  const SemiringKind kind = kind_from(j);
  const std::size_t dim = as_size(field(j, "dim"), "dim");
  std::vector<Matrix> constants = matrices_from_json(field(j, "constants"), kind, dim);
  std::vector<std::vector<Atom>> products;
  const Json& ps = field(j, "products");
  if (!ps.is_array()) malformed("products must be a list");
  for (const Json& p : ps) {
    if (!p.is_array()) malformed("each product must be a list of atoms");
    std::vector<Atom> atoms;
    for (const Json& a : p) {
      const std::string text = as_string(a, "atom");
      if (text.size() < 2 || (text[0] != 'c' && text[0] != 's') ||
          !std::all_of(text.begin() + 1, text.end(), [](char c) { return c >= '0' && c <= '9'; }) ||
          text.size() > 10) {
        malformed("atom must look like c0 or s0, got \"" + text + "\"");
      }
      const std::size_t index = std::stoul(text.substr(1));
      atoms.push_back(text[0] == 'c' ? Atom::constant(index) : Atom::slot(index));
    }
    products.push_back(std::move(atoms));
  }
  try {
    return WordTemplate(std::move(constants), std::move(products),
                        as_size(field(j, "additive_slots"), "additive_slots"));
  } catch (const MalformedInput&) {
    throw;
  } catch (const std::invalid_argument& e) {
    malformed(e.what());
  }
}

// ---------------------------------------------------------------------------

std::string_view to_string(SetEncoding e) {
  switch (e) {
    case SetEncoding::raw:
      return "raw";
    case SetEncoding::interval:
      return "interval";
    case SetEncoding::delta:
      return "delta";
  }
  return "raw";
}

SetEncoding parse_set_encoding(std::string_view text) {
  for (SetEncoding e : {SetEncoding::raw, SetEncoding::interval, SetEncoding::delta}) {
    if (text == to_string(e)) return e;
  }
  throw std::invalid_argument("unknown set encoding: " + std::string(text));
}

TupleList tuple_list(const MarginalSet& set) {
  return {set.word().kind(), set.word().dim(), set.word().arity(), set.tuples()};
}

std::optional<Json> encode_interval(const std::vector<Matrix>& matrices) {
  if (matrices.empty()) return std::nullopt;
  const std::size_t dim = matrices.front().dim();
  const std::size_t n = dim * dim;
  std::vector<std::int64_t> lo(n, std::numeric_limits<std::int64_t>::max());
  std::vector<std::int64_t> hi(n, std::numeric_limits<std::int64_t>::min());
  std::set<std::vector<std::int64_t>> distinct;
  for (const Matrix& m : matrices) {
    if (m.dim() != dim) return std::nullopt;
    std::vector<std::int64_t> values;
    for (std::size_t idx = 0; idx < n; ++idx) {
      const Scalar& s = m.entries()[idx];
      if (!s.is_integer() || !s.value().get_num().fits_slong_p()) return std::nullopt;
      const std::int64_t v = s.to_int64();
      lo[idx] = std::min(lo[idx], v);
      hi[idx] = std::max(hi[idx], v);
      values.push_back(v);
    }
    distinct.insert(std::move(values));
  }
  // Distinct members of the bounding box, as many as the box holds.
  mpz_class volume = 1;
  for (std::size_t idx = 0; idx < n; ++idx) volume *= mpz_class(hi[idx]) - mpz_class(lo[idx]) + 1;
  if (distinct.size() != matrices.size() || volume != mpz_class(std::to_string(matrices.size()))) {
    return std::nullopt;
  }
  Json rows = Json::array();
  for (std::size_t i = 0; i < dim; ++i) {
    Json row = Json::array();
    for (std::size_t j = 0; j < dim; ++j) {
      const std::size_t idx = i * dim + j;
      row.push_back(lo[idx] == hi[idx] ? Json(lo[idx]) : Json::array({lo[idx], hi[idx]}));
    }
    rows.push_back(std::move(row));
  }
  return rows;
}

std::vector<Matrix> decode_interval(const Json& box, SemiringKind kind) {
  if (!box.is_array() || box.empty()) malformed("interval box must be a non-empty list of rows");
  const std::size_t dim = box.size();
  std::vector<std::int64_t> lo;
  std::vector<std::int64_t> hi;
  for (const Json& row : box) {
    if (!row.is_array() || row.size() != dim) malformed("interval box must be square");
    for (const Json& e : row) {
      if (e.is_array()) {
        if (e.size() != 2) malformed("interval entry must be [lo, hi]");
        lo.push_back(as_int(e[0], "interval bound"));
        hi.push_back(as_int(e[1], "interval bound"));
        if (lo.back() >= hi.back()) malformed("interval entry needs lo < hi");
      } else {
        lo.push_back(as_int(e, "interval entry"));
        hi.push_back(lo.back());
      }
    }
  }
  std::size_t total = 1;
  for (std::size_t idx = 0; idx < lo.size(); ++idx) {
    const auto width = static_cast<std::uint64_t>(hi[idx] - lo[idx]) + 1;
    if (width > kMaxBoxSize || total * width > kMaxBoxSize) malformed("interval box is too large");
    total *= static_cast<std::size_t>(width);
  }
  std::vector<Matrix> out;
  out.reserve(total);
  std::vector<std::int64_t> cur = lo;
  for (std::size_t count = 0; count < total; ++count) {
    std::vector<Scalar> e(cur.begin(), cur.end());
    out.emplace_back(kind, dim, std::move(e));
    for (std::size_t idx = 0; idx < cur.size(); ++idx) {
      if (cur[idx] < hi[idx]) {
        ++cur[idx];
        break;
      }
      cur[idx] = lo[idx];
    }
  }
  return out;
}

Json encode_delta(const std::vector<Matrix>& matrices) {
  if (matrices.empty()) throw std::invalid_argument("delta encoding needs at least one matrix");
  Json diffs = Json::array();
  for (std::size_t t = 1; t < matrices.size(); ++t) {
    const Matrix& prev = matrices[t - 1];
    const Matrix& cur = matrices[t];
    require_compatible(prev, cur);
    Json changes = Json::array();
    for (std::size_t i = 0; i < cur.dim(); ++i)
      for (std::size_t j = 0; j < cur.dim(); ++j)
        if (cur(i, j) != prev(i, j)) {
          changes.push_back(Json::array({Json::array({i + 1, j + 1}), to_json(cur(i, j))}));
        }
    diffs.push_back(std::move(changes));
  }
  return Json::object({{"base", to_json(matrices.front())}, {"diffs", std::move(diffs)}});
}

std::vector<Matrix> decode_delta(const Json& j, SemiringKind kind) {
  std::vector<Matrix> out{matrix_from_json(field(j, "base"), kind)};
  const std::size_t dim = out.front().dim();
  const Json& diffs = field(j, "diffs");
  if (!diffs.is_array()) malformed("diffs must be a list");
  for (const Json& changes : diffs) {
    if (!changes.is_array()) malformed("each diff must be a list of changes");
    std::vector<Scalar> e(out.back().entries().begin(), out.back().entries().end());
    for (const Json& c : changes) {
      if (!c.is_array() || c.size() != 2 || !c[0].is_array() || c[0].size() != 2) {
        malformed("change must be [[i, j], value]");
      }
      const std::size_t i = as_size(c[0][0], "row");
      const std::size_t col = as_size(c[0][1], "column");
      if (i < 1 || i > dim || col < 1 || col > dim) malformed("change position is out of range");
      e[(i - 1) * dim + (col - 1)] = scalar_from_json(c[1]);
    }
    try {
      out.emplace_back(kind, dim, std::move(e));
    } catch (const std::invalid_argument& ex) {
      malformed(ex.what());
    }
  }
  return out;
}

Json encode_tuples(const TupleList& list, SetEncoding requested) {
  for (const Tuple& t : list.tuples) {
    if (t.size() != list.arity) throw std::invalid_argument("tuple has the wrong arity");
  }
  SetEncoding used = requested;
  std::optional<Json> box;
  if (used == SetEncoding::interval) {
    if (list.arity == 1) {
      std::vector<Matrix> column;
      for (const Tuple& t : list.tuples) column.push_back(t[0]);
      box = encode_interval(column);
    }
    if (!box) used = SetEncoding::delta;
  }
  if (used == SetEncoding::delta && list.tuples.empty()) used = SetEncoding::raw;

  Json out = Json::object();
  out["format"] = kSetFormat;
  out["semiring"] = to_string(list.kind);
  out["dim"] = list.dim;
  out["arity"] = list.arity;
  out["encoding"] = to_string(used);
  switch (used) {
    case SetEncoding::raw: {
      Json tuples = Json::array();
      for (const Tuple& t : list.tuples) tuples.push_back(tuple_to_json(t));
      out["tuples"] = std::move(tuples);
      break;
    }
    case SetEncoding::interval:
      out["box"] = std::move(*box);
      break;
    case SetEncoding::delta: {
      Json slots = Json::array();
      for (std::size_t s = 0; s < list.arity; ++s) {
        std::vector<Matrix> column;
        for (const Tuple& t : list.tuples) column.push_back(t[s]);
        slots.push_back(encode_delta(column));
      }
      out["slots"] = std::move(slots);
      break;
    }
  }
  return out;
}

TupleList decode_tuples(const Json& j) {
  expect_format(j, kSetFormat);
  TupleList list;
  list.kind = kind_from(j);
  list.dim = as_size(field(j, "dim"), "dim");
  list.arity = as_size(field(j, "arity"), "arity");
  if (list.dim == 0 || list.arity == 0) malformed("dim and arity must be positive");
  SetEncoding encoding;
  try {
    encoding = parse_set_encoding(as_string(field(j, "encoding"), "encoding"));
  } catch (const MalformedInput&) {
    throw;
  } catch (const std::invalid_argument& e) {
    malformed(e.what());
  }
  switch (encoding) {
    case SetEncoding::raw:
      for (const Json& t : field(j, "tuples")) {
        list.tuples.push_back(tuple_from_json(t, list.kind, list.dim, list.arity));
      }
      if (!field(j, "tuples").is_array()) malformed("tuples must be a list");
      break;
    case SetEncoding::interval: {
      if (list.arity != 1) malformed("interval encoding holds single-slot sets only");
      for (Matrix& m : decode_interval(field(j, "box"), list.kind)) {
        if (m.dim() != list.dim) malformed("interval box has the wrong dimension");
        list.tuples.push_back(Tuple{std::move(m)});
      }
      break;
    }
    case SetEncoding::delta: {
      const Json& slots = field(j, "slots");
      if (!slots.is_array() || slots.size() != list.arity) malformed("need one delta per slot");
      std::vector<std::vector<Matrix>> columns;
      for (const Json& s : slots) {
        columns.push_back(decode_delta(s, list.kind));
        if (columns.back().size() != columns.front().size()) malformed("slot lengths differ");
        if (columns.back().front().dim() != list.dim) malformed("delta base has the wrong dimension");
      }
      for (std::size_t t = 0; t < columns.front().size(); ++t) {
        Tuple tuple;
        for (const auto& column : columns) tuple.push_back(column[t]);
        list.tuples.push_back(std::move(tuple));
      }
      break;
    }
  }
  return list;
}

// ---------------------------------------------------------------------------

namespace {

Json party_public(const PartyRecord& r) {
  Json sets = Json::array();
  for (const MarginalSet& s : r.plan.sets) {
    Json tuples = Json::array();
    for (const Tuple& t : s.tuples()) tuples.push_back(tuple_to_json(t));
    sets.push_back(std::move(tuples));
  }
  return Json::object({{"sets", std::move(sets)}, {"messages", matrices_to_json(r.messages)}});
}

Json party_secrets(const PartyRecord& r) {
  return Json::object({{"p", matrices_to_json(r.plan.p)},
                       {"q", matrices_to_json(r.plan.q)},
                       {"choices", r.plan.choices},
                       {"key", to_json(r.key)}});
}

PartyPlan party_plan(ProtocolKind kind, const ProtocolParams& params, const Json& pub,
                     const Json& secret) {
  PartyPlan plan;
  plan.p = matrices_from_json(field(secret, "p"), params.kind, params.dim);
  plan.q = matrices_from_json(field(secret, "q"), params.kind, params.dim);
  if (plan.p.size() != plan.q.size() || plan.p.empty() || plan.p.size() > params.blocks.size()) {
    malformed("secret lists do not match the blocks");
  }
  const auto words = expected_words(kind, params.blocks, plan.p, plan.q);
  const Json& sets = field(pub, "sets");
  if (!sets.is_array() || sets.size() != words.size()) malformed("wrong number of published sets");
  for (std::size_t i = 0; i < words.size(); ++i) {
    MarginalSet set(words[i]);
    if (!sets[i].is_array()) malformed("a published set must be a list of tuples");
    for (const Json& t : sets[i]) {
      if (!set.insert(tuple_from_json(t, params.kind, params.dim, words[i].arity()))) {
        malformed("published set repeats a tuple");
      }
    }
    plan.sets.push_back(std::move(set));
  }
  const Json& choices = field(secret, "choices");
  if (!choices.is_array()) malformed("choices must be a list");
  for (const Json& c : choices) plan.choices.push_back(as_size(c, "choice"));
  return plan;
}

}  // namespace

Json to_json(const ProtocolTranscript& t) {
  Json out = Json::object();
  out["format"] = kTranscriptFormat;
  out["protocol"] = to_string(t.kind);
  out["seed"] = t.params.seed;
  out["params"] = to_json(t.params);
  out["public"] =
      Json::object({{"alice", party_public(t.alice)}, {"bob", party_public(t.bob)}});
  out["secrets"] =
      Json::object({{"alice", party_secrets(t.alice)}, {"bob", party_secrets(t.bob)}});
  out["agreement"] = t.agreed;
  return out;
}

ProtocolTranscript transcript_from_json(const Json& j) {
  expect_format(j, kTranscriptFormat);
  ProtocolKind kind;
  try {
    kind = parse_protocol(as_string(field(j, "protocol"), "protocol"));
  } catch (const MalformedInput&) {
    throw;
  } catch (const std::invalid_argument& e) {
    malformed(e.what());
  }
  ProtocolParams params = params_from_json(field(j, "params"));
  const Json& pub = field(j, "public");
  const Json& sec = field(j, "secrets");
  PartyPlan alice = party_plan(kind, params, field(pub, "alice"), field(sec, "alice"));
  PartyPlan bob = party_plan(kind, params, field(pub, "bob"), field(sec, "bob"));
  ProtocolTranscript replay = [&] {
    try {
      return execute_protocol(kind, params, std::move(alice), std::move(bob));
    } catch (const std::invalid_argument& e) {
      malformed(e.what());
    }
  }();
  if (to_json(replay) != j) malformed("transcript does not match its replay");
  return replay;
}

Json to_json(const AttackReport& r, const ProtocolTranscript& attacked, unsigned degree) {
  Json out = Json::object();
  out["format"] = kReportFormat;
  out["protocol"] = to_string(attacked.kind);
  out["seed"] = attacked.params.seed;
  out["degree"] = degree;
  out["verdict"] = to_string(r.verdict);
  out["candidate"] = r.candidate ? to_json(*r.candidate) : Json(nullptr);
  out["key"] = to_json(attacked.alice.key);
  Json blocks = Json::array();
  for (const auto& b : r.blocks) {
    Json entry = Json::object();
    entry["solved"] = b.has_value();
    if (b) {
      Json z = Json::array();
      for (const auto& row : b->z) {
        Json zr = Json::array();
        for (const Scalar& s : row) zr.push_back(to_json(s));
        z.push_back(std::move(zr));
      }
      entry["z"] = std::move(z);
    }
    blocks.push_back(std::move(entry));
  }
  out["blocks"] = std::move(blocks);
  return out;
}

Json error_record(int exit_code, std::string_view kind, std::string_view message) {
  return Json::object({{"error", Json::object({{"exit_code", exit_code},
                                               {"kind", std::string(kind)},
                                               {"message", std::string(message)}})}});
}

std::string dump(const Json& j) {
  std::ostringstream os;
  write(os, j, 0);
  os << "\n";
  return os.str();
}

Json parse(std::string_view text) {
  try {
    return Json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    malformed(std::string("not valid JSON: ") + e.what());
  }
}

}  // namespace tropmarg::wire
