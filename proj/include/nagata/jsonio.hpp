#pragma once

// JSON views of every report type, for the CLI and the caches.  The encoding
// is fully deterministic: objects keep a fixed, code-defined key order,
// integers that fit 64 bits are JSON numbers and anything larger becomes a
// decimal string, rationals are {num, den} strings, and quadratic expressions
// carry their exact terms plus a fixed 30-digit decimal rendering.  No
// floating-point value ever enters a document.

#include <string>
#include <vector>

#include "json.hpp"
#include "nagata/coverage.hpp"
#include "nagata/cremona.hpp"
#include "nagata/interp.hpp"
#include "nagata/mosaic.hpp"
#include "nagata/picard.hpp"
#include "nagata/quadratic.hpp"
#include "nagata/trace.hpp"

namespace nagata {

using Json = nlohmann::ordered_json;

Json json_of(const Int& x);
Json json_of(const Rat& q);
Json json_of(const QuadraticExpr& e);

Json json_of(const PicardClass& c);   // canonical string
Json json_of(const RuledClass& c);    // canonical string
Json json_of(const DeficitCertificate& c);
Json json_of(const TransformStep& s);  // {kind, params, before, after}
Json json_of(const TransformLog& log);
Json json_of(const ReduceResult& r);
Json json_of(const NefVerdict& v);
Json json_of(const TwoPointNefReport& r);

Json json_of(const Mosaic& m);
Json json_of(const MosaicBundle& l);
Json json_of(const CandidateCycle& z);
Json json_of(const ConservationReport& r);
Json json_of(const GoodnessReport& r);

Json json_of(const SqrtProfile& p);
Json json_of(const CorollaryResult& r);
Json json_of(const NefTarget& t);

Json json_of(const TraceReport& r);

Json json_of(const H0Result& r);
Json json_of(const HrCheck& r);
Json json_of(const InvarianceResult& r);
Json json_of(const NefCrossCheck& r);

// Readers for the mosaic-check document {mosaic, bundle, cycle}; malformed
// documents raise std::invalid_argument or nlohmann's type errors.
Int int_from_json(const Json& j);
Mosaic mosaic_from_json(const Json& j);
MosaicBundle bundle_from_json(const Json& j);
CandidateCycle cycle_from_json(const Json& j, const Mosaic& m);

// dump(2) plus trailing newline: the byte-identical output format.
std::string dump_json(const Json& j);

// Fixed-point CSV for profile scans: r,k,alpha,epsilon,coverage.
std::string csv_of_profiles(const std::vector<SqrtProfile>& rows);

}  // namespace nagata
