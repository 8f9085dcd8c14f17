#include "cpmarg/json_io.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace cpmarg {

namespace {

// JSON has no infinity; unbounded gaps are written as null.
json finite_or_null(double x) { return std::isfinite(x) ? json(x) : json(nullptr); }

std::size_t positive_size(const json& doc, const char* key) {
  if (!doc.contains(key) || !doc.at(key).is_number_integer())
    throw std::invalid_argument(std::string("missing integer field '") + key + "'");
  const auto value = doc.at(key).get<long long>();
  if (value < 1) throw std::invalid_argument(std::string("field '") + key + "' must be positive");
  return static_cast<std::size_t>(value);
}

}  // namespace

json matrix_to_json(const ComplexMatrix& m) {
  json entries = json::array();
  for (Eigen::Index i = 0; i < m.rows(); ++i)
    for (Eigen::Index j = 0; j < m.cols(); ++j) entries.push_back({m(i, j).real(), m(i, j).imag()});
  return {{"rows", m.rows()}, {"cols", m.cols()}, {"entries", std::move(entries)}};
}

json matrix_to_json(const RationalMatrix& m) {
  json entries = json::array();
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) entries.push_back(m(i, j).get_str());
  return {{"rows", m.rows()}, {"cols", m.cols()}, {"entries", std::move(entries)}};
}

ParsedMatrix matrix_from_json(const json& doc) {
  if (!doc.is_object()) throw std::invalid_argument("matrix must be a JSON object");
  const std::size_t rows = positive_size(doc, "rows");
  const std::size_t cols = positive_size(doc, "cols");
  if (!doc.contains("entries") || !doc.at("entries").is_array())
    throw std::invalid_argument("missing 'entries' array");
  const json& entries = doc.at("entries");
  if (entries.size() != rows * cols)
    throw std::invalid_argument("expected " + std::to_string(rows * cols) + " entries, got " +
                                std::to_string(entries.size()));

  ParsedMatrix parsed{ComplexMatrix(static_cast<Eigen::Index>(rows), static_cast<Eigen::Index>(cols)),
                      RationalMatrix(rows, cols)};
  bool all_exact = true;
  for (std::size_t k = 0; k < entries.size(); ++k) {
    const json& e = entries[k];
    const auto i = static_cast<Eigen::Index>(k / cols);
    const auto j = static_cast<Eigen::Index>(k % cols);
    if (e.is_string()) {
      const mpq_class q = parse_rational(e.get<std::string>());
      (*parsed.exact)(k / cols, k % cols) = q;
      parsed.numeric(i, j) = q.get_d();
    } else if (e.is_array() && e.size() == 2 && e[0].is_number() && e[1].is_number()) {
      parsed.numeric(i, j) = Complex(e[0].get<double>(), e[1].get<double>());
      all_exact = false;
    } else {
      throw std::invalid_argument("entry " + std::to_string(k) + " is neither [re, im] nor \"p/q\"");
    }
  }
  if (!all_exact) parsed.exact.reset();
  return parsed;
}

json family_to_json(const KrausFamily& family) {
  json ops = json::array();
  for (const auto& k : family.ops()) ops.push_back(matrix_to_json(k));
  return {{"d_in", family.d_in()},
          {"d_out", family.d_out()},
          {"ops", std::move(ops)},
          {"hermitian_kraus", family.hermitian_kraus()}};
}

KrausFamily family_from_json(const json& doc) {
  if (!doc.is_object()) throw std::invalid_argument("family must be a JSON object");
  const std::size_t d_in = positive_size(doc, "d_in");
  const std::size_t d_out = positive_size(doc, "d_out");
  if (!doc.contains("ops") || !doc.at("ops").is_array() || doc.at("ops").empty())
    throw std::invalid_argument("family needs a non-empty 'ops' array");

  std::vector<ComplexMatrix> numeric;
  std::vector<RationalMatrix> exact;
  bool all_exact = true;
  for (const json& op : doc.at("ops")) {
    ParsedMatrix parsed = matrix_from_json(op);
    if (static_cast<std::size_t>(parsed.numeric.rows()) != d_out ||
        static_cast<std::size_t>(parsed.numeric.cols()) != d_in)
      throw DimensionError("operator shape differs from d_out x d_in");
    if (parsed.exact) {
      exact.push_back(std::move(*parsed.exact));
    } else {
      all_exact = false;
    }
    numeric.push_back(std::move(parsed.numeric));
  }
  KrausFamily family = all_exact ? KrausFamily::from_exact(std::move(exact), 1) : KrausFamily(std::move(numeric));
  if (doc.contains("hermitian_kraus") && doc.at("hermitian_kraus").get<bool>() != family.hermitian_kraus())
    throw std::invalid_argument("'hermitian_kraus' disagrees with the operators");
  return family;
}

json certificate_to_json(const ExtremalityCertificate& cert) {
  json doc = {{"r", cert.r},
              {"gram_size", cert.gram_size},
              {"gram_rank", cert.gram_rank.rank},
              {"extremal", cert.extremal},
              {"mode", to_string(cert.mode)},
              {"gap", finite_or_null(cert.gram_rank.gap_ratio())},
              {"borderline", cert.borderline},
              {"marginal_residual", cert.has_targets ? json(cert.marginal_residual) : json(nullptr)},
              {"marginals_valid", cert.marginals_valid}};
  if (cert.mode == RankMode::Numerical) {
    doc["threshold"] = cert.gram_rank.threshold;
    doc["smallest_kept_singular_value"] = cert.gram_rank.smallest_kept;
    doc["largest_discarded_singular_value"] = cert.gram_rank.largest_discarded;
  }
  return doc;
}

json verdict_to_json(const SeparabilityVerdict& verdict) {
  return {{"ppt", verdict.ppt},
          {"min_pt_eigenvalue", verdict.min_pt_eigenvalue},
          {"choi_rank", verdict.choi_rank},
          {"criterion_applicable", verdict.criterion_applicable},
          {"conclusion", to_string(verdict.conclusion)},
          {"eb_rank_note", verdict.eb_rank_note ? json(*verdict.eb_rank_note) : json(nullptr)},
          {"borderline", verdict.borderline}};
}

}  // namespace cpmarg
