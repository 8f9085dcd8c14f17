#pragma once

#include <optional>

#include <nlohmann/json.hpp>

#include "cpmarg/channels.hpp"
#include "cpmarg/extremality.hpp"
#include "cpmarg/separability.hpp"

namespace cpmarg {

using nlohmann::json;

/// {"rows": n, "cols": m, "entries": [[re, im], ...]} in row-major order.
json matrix_to_json(const ComplexMatrix& m);

/// Exact entries are written as "p/q" strings.
json matrix_to_json(const RationalMatrix& m);

/// A parsed matrix. `exact` is set when every entry was given as a "p/q" string.
struct ParsedMatrix {
  ComplexMatrix numeric;
  std::optional<RationalMatrix> exact;
};

/// Throws std::invalid_argument on malformed documents or entry-count mismatch.
ParsedMatrix matrix_from_json(const json& doc);

/// {"d_in": n, "d_out": m, "ops": [matrix, ...], "hermitian_kraus": bool}
json family_to_json(const KrausFamily& family);

/// Families whose operators are all exact keep a rational form (weight 1).
/// A stated "hermitian_kraus" that disagrees with the operators is rejected.
KrausFamily family_from_json(const json& doc);

json certificate_to_json(const ExtremalityCertificate& cert);
json verdict_to_json(const SeparabilityVerdict& verdict);

}  // namespace cpmarg
