#pragma once

#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "tropmarg/families.hpp"
#include "tropmarg/marginal.hpp"
#include "tropmarg/matrix.hpp"
#include "tropmarg/protocols.hpp"

namespace tropmarg::wire {

using Json = nlohmann::ordered_json;

/// Input that does not parse or does not fit the expected shape.
class MalformedInput : public std::invalid_argument {
public:
  using std::invalid_argument::invalid_argument;
};

// Integers inside int64 are JSON numbers; larger integers are decimal
// strings, rationals "p/q", infinities "inf" / "-inf".
Json to_json(const Scalar& s);
Scalar scalar_from_json(const Json& j);

/// Nested rows of scalars. The kind comes from the enclosing document.
Json to_json(const Matrix& m);
Matrix matrix_from_json(const Json& j, SemiringKind kind);

Json to_json(const FamilySpec& f);
FamilySpec family_from_json(const Json& j, SemiringKind kind);

Json to_json(const ProtocolParams& p);
ProtocolParams params_from_json(const Json& j);

Json to_json(const WordTemplate& w);
WordTemplate word_from_json(const Json& j);

// ---------------------------------------------------------------------------
// Marginal-set files
// ---------------------------------------------------------------------------

enum class SetEncoding { raw, interval, delta };

std::string_view to_string(SetEncoding e);
SetEncoding parse_set_encoding(std::string_view text);

/// Tuples as stored on the wire; marginality is checked separately.
struct TupleList {
  SemiringKind kind = SemiringKind::min_plus;
  std::size_t dim = 1;
  std::size_t arity = 1;
  std::vector<Tuple> tuples;
};

TupleList tuple_list(const MarginalSet& set);

/// Interval is used only for single-slot sets that fill an integer box
/// exactly; otherwise the encoder falls back to delta.
Json encode_tuples(const TupleList& list, SetEncoding requested);
TupleList decode_tuples(const Json& j);

/// Box form of a set of integer matrices, or nullopt when the set is not
/// exactly an axis-aligned box. Entries are a scalar or [lo, hi].
std::optional<Json> encode_interval(const std::vector<Matrix>& matrices);
/// Enumerates the box with the earliest row-major varying entry fastest.
std::vector<Matrix> decode_interval(const Json& box, SemiringKind kind);

/// {"base": M, "diffs": [[[[i, j], v], ...], ...]} with 1-based positions,
/// each diff against the predecessor.
Json encode_delta(const std::vector<Matrix>& matrices);
std::vector<Matrix> decode_delta(const Json& j, SemiringKind kind);

// ---------------------------------------------------------------------------
// Transcripts and reports
// ---------------------------------------------------------------------------

Json to_json(const ProtocolTranscript& t);
/// Rebuilds both plans and replays the exchange. Throws MalformedInput when
/// the recorded messages or keys differ from the replay.
ProtocolTranscript transcript_from_json(const Json& j);

Json to_json(const AttackReport& r, const ProtocolTranscript& attacked, unsigned degree);

Json error_record(int exit_code, std::string_view kind, std::string_view message);

/// Canonical text: two-space indent, trailing newline.
std::string dump(const Json& j);
Json parse(std::string_view text);

}  // namespace tropmarg::wire
