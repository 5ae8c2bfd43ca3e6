#pragma once

#include <string_view>

#include "json.hpp"
#include "misere/monoid.hpp"
#include "misere/octal.hpp"
#include "misere/quotient.hpp"

namespace misere {

using Json = nlohmann::ordered_json;

// Parses a document, turning syntax errors into ParseError.
Json parse_json(std::string_view text);

// {"order", "identity", "labels", "p", "table"}; readers validate the axioms.
Json to_json(const BipartiteMonoid& m);
BipartiteMonoid monoid_from_json(const Json& j);

Json to_json(const StructureReport& r, const BipartiteMonoid& m);

// {"status", "monoid", "elements", "phi", "phi_labels", "generators", "evidence"}.
// `ctx` supplies element names; the reader ignores them.
Json to_json(const QuotientResult& r, const ClosedContext& ctx);
QuotientResult quotient_from_json(const Json& j);

Json to_json(const NormalPeriodCertificate& c);
NormalPeriodCertificate normal_certificate_from_json(const Json& j);
Json to_json(const MisereCertificate& c);
MisereCertificate misere_certificate_from_json(const Json& j);

Json to_json(const PretendingData& d);

}  // namespace misere
