#ifndef QINDEP_REPORT_HPP
#define QINDEP_REPORT_HPP

#include <json.hpp>

#include <string>

#include "qindep/proofkit.hpp"
#include "qindep/relations.hpp"
#include "qindep/theorems.hpp"

namespace qindep {

using Json = nlohmann::json;

/* Exact fixed-notation decimal of a (dyadic) mpfr value; no exponent form,
 * no rounding, so equal values always render identically. */
std::string decimal_string(mpfr_srcptr x);

std::string rational_string(const mpq_class& v);

// {"mid": "...", "rad": "..."}
Json ball_json(const RealBall& b);
// Real enclosures collapse to the real form; otherwise {"re": ..., "im": ...}.
Json ball_json(const ComplexBall& b);

Json element_json(const FieldElement& a);  // power-basis rationals, low to high

Json verdict_json(const HypothesisVerdict& v);
Json trace_json(const XNTrace& t);
Json dichotomy_json(const DichotomyReport& r);
Json elimination_json(const std::vector<EliminationTerm>& terms);
Json relation_json(const RelationResult& r);

Json make_report(const std::string& command, Json inputs, Json result,
                 unsigned precision_bits);

/* Byte-deterministic rendering: nlohmann objects keep keys sorted, dump is
 * compact, trailing newline. */
std::string render_json(const Json& j);

// Aligned key/value rendering of a report for terminal output.
std::string render_text(const Json& report);

} // namespace qindep

#endif
