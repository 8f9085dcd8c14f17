#include "cpmarg/commands.hpp"

#include <algorithm>
#include <array>
#include <chrono>
#include <cmath>
#include <utility>

#include "cpmarg/families.hpp"
#include "cpmarg/random.hpp"
#include "cpmarg/reductions.hpp"

namespace cpmarg {

namespace {

constexpr int kTableMaxD = 6;
constexpr int kTableMaxSide = 12;

class ReportBuilder {
public:
  ReportBuilder(std::string command, json inputs) {
    doc_ = {{"command", std::move(command)},
            {"inputs", std::move(inputs)},
            {"certificates", json::array()},
            {"verdicts", json::array()},
            {"assertions", json::array()},
            {"warnings", json::array()},
            {"timings_ms", json::object()}};
  }

  json& doc() { return doc_; }

  void check(const std::string& name, bool passed, json detail = nullptr) {
    json entry = {{"name", name}, {"passed", passed}};
    if (!detail.is_null()) entry["detail"] = std::move(detail);
    doc_["assertions"].push_back(std::move(entry));
    failed_ = failed_ || !passed;
  }

  void warn(const std::string& message) { doc_["warnings"].push_back(message); }

  void borderline(const std::string& what) {
    borderline_ = true;
    warn("borderline numerical verdict: " + what);
  }

  void add_certificate(const ExtremalityCertificate& cert, const std::string& label) {
    json c = certificate_to_json(cert);
    c["label"] = label;
    doc_["certificates"].push_back(std::move(c));
    check(label + ": certificate invariants", cert.consistent());
    if (cert.borderline) borderline(label + " extremality gap ratio below 10");
  }

  void add_verdict(const SeparabilityVerdict& verdict, const std::string& label) {
    json v = verdict_to_json(verdict);
    v["label"] = label;
    doc_["verdicts"].push_back(std::move(v));
    check(label + ": verdict invariants", verdict.consistent());
    if (verdict.borderline) borderline(label + " PPT eigenvalue near tolerance");
  }

  template <class Fn>
  auto timed(const std::string& step, Fn&& fn) {
    const auto start = std::chrono::steady_clock::now();
    auto result = fn();
    const auto stop = std::chrono::steady_clock::now();
    const double ms = std::chrono::duration<double, std::milli>(stop - start).count();
    json& slot = doc_["timings_ms"][step];
    slot = slot.is_number() ? slot.get<double>() + ms : ms;
    return result;
  }

  Report finish() {
    int code = kExitPass;
    std::string status = "pass";
    if (failed_) {
      code = kExitAssertionFailure;
      status = "fail";
    } else if (borderline_) {
      code = kExitBorderline;
      status = "borderline";
    }
    doc_["status"] = status;
    doc_["exit_code"] = code;
    return {std::move(doc_), code};
  }

private:
  json doc_;
  bool failed_ = false;
  bool borderline_ = false;
};

void require_params(const std::string& name, const std::vector<int>& params, std::size_t count) {
  if (params.size() != count)
    throw UsageError("family '" + name + "' takes " + std::to_string(count) + " integer parameter(s), got " +
                     std::to_string(params.size()));
}

MarginalPair maximally_mixed_pair(int d) {
  const ComplexMatrix flat = ComplexMatrix::Identity(d, d) / static_cast<double>(d);
  return {flat, flat};
}

void guard_gram(std::size_t r, const GlobalOptions& options) {
  if (r * r > options.max_dim)
    throw UsageError("block Gram side " + std::to_string(r * r) + " exceeds --max-dim " +
                     std::to_string(options.max_dim));
}

ExtremalityOptions extremality_options(const KrausFamily& family, const GlobalOptions& options) {
  if (options.mode == RankMode::Exact && !family.exact())
    throw UsageError("--exact requested but the family has irrational entries");
  return {options.mode, options.tol};
}

json options_json(const GlobalOptions& options) {
  return {{"mode", options.mode ? json(to_string(*options.mode)) : json("auto")},
          {"tol", options.tol ? json(*options.tol) : json(nullptr)},
          {"seed", options.seed},
          {"max_dim", options.max_dim}};
}

// Dimension of the span of the blocks diag(K_i^dagger K_j, K_j K_i^dagger) by
// rank-revealing QR on the stacked vectors, without forming a Gram.
std::size_t span_dimension(const KrausFamily& family) {
  const std::size_t r = family.size();
  const Eigen::Index in_sq = static_cast<Eigen::Index>(family.d_in()) * family.d_in();
  const Eigen::Index out_sq = static_cast<Eigen::Index>(family.d_out()) * family.d_out();
  ComplexMatrix stack(in_sq + out_sq, static_cast<Eigen::Index>(r * r));
  for (std::size_t i = 0; i < r; ++i)
    for (std::size_t j = 0; j < r; ++j) {
      const auto col = static_cast<Eigen::Index>(i * r + j);
      stack.col(col) << vec(family.op(i).adjoint() * family.op(j)), vec(family.op(j) * family.op(i).adjoint());
    }
  Eigen::ColPivHouseholderQR<ComplexMatrix> qr(stack);
  qr.setThreshold(1e-10);
  return static_cast<std::size_t>(qr.rank());
}

bool is_diagonal(const ComplexMatrix& m, double tol) {
  ComplexMatrix off = m;
  off.diagonal().setZero();
  return off.size() == 0 || off.cwiseAbs().maxCoeff() <= tol;
}

bool nondecreasing(const RealVector& v) {
  for (Eigen::Index k = 1; k < v.size(); ++k)
    if (v(k) < v(k - 1)) return false;
  return true;
}

// Random family whose marginals may be rank deficient: a smaller family padded
// with zeros and rotated by random local unitaries.
KrausFamily random_padded_family(Rng& rng, int d_in, int d_out, int r) {
  const int inner_in = std::max(1, d_in - 1);
  const int inner_out = std::max(1, d_out - 1);
  const KrausFamily inner = random_family(rng, inner_in, inner_out, r);
  const ComplexMatrix u = random_unitary(rng, d_in);
  const ComplexMatrix v = random_unitary(rng, d_out);
  std::vector<ComplexMatrix> ops;
  for (const auto& k : inner.ops()) {
    ComplexMatrix padded = ComplexMatrix::Zero(d_out, d_in);
    padded.topLeftCorner(inner_out, inner_in) = k;
    ops.push_back(v * padded * u.adjoint());
  }
  return KrausFamily(std::move(ops));
}

void run_family_checks(ReportBuilder& report, const NamedFamily& named, const GlobalOptions& options) {
  const KrausFamily& family = named.family;
  guard_gram(family.size(), options);
  const ExtremalityOptions ext_options = extremality_options(family, options);

  const MarginalPair marg = report.timed("marginals", [&] { return marginals(family); });
  report.doc()["marginals"] = {{"rho1", matrix_to_json(marg.rho1)}, {"rho2", matrix_to_json(marg.rho2)}};

  const ExtremalityCertificate cert =
      report.timed("is_extremal", [&] { return is_extremal(family, named.targets, ext_options); });
  report.add_certificate(cert, named.name);
  report.check("extremal", cert.extremal,
               {{"gram_rank", cert.gram_rank.rank}, {"gram_size", cert.gram_size}});
  if (named.targets) {
    report.check("marginals match declared targets", cert.marginals_valid,
                 {{"residual", cert.marginal_residual}});
  }

  const RankResult crank = report.timed("choi_rank", [&] { return choi_rank(family, options.mode, options.tol); });
  report.doc()["choi_rank"] = crank.rank;
  if (named.expected_choi_rank) {
    report.check("choi rank", crank.rank == *named.expected_choi_rank,
                 {{"expected", *named.expected_choi_rank}, {"got", crank.rank}});
  }

  const SeparabilityVerdict verdict =
      report.timed("separability_verdict", [&] { return separability_verdict(family); });
  report.add_verdict(verdict, named.name);
  if (named.expected_conclusion) {
    report.check("separability conclusion", verdict.conclusion == *named.expected_conclusion,
                 {{"expected", to_string(*named.expected_conclusion)}, {"got", to_string(verdict.conclusion)}});
  }
}

}  // namespace

NamedFamily make_named_family(const std::string& name, const std::vector<int>& params) {
  try {
    if (name == "paper") {
      require_params(name, params, 2);
      const int d = params[0];
      const int m = params[1];
      KrausFamily family = paper_family(d, m);
      const ExactMarginalPair t = paper_family_targets(d, m);
      NamedFamily out{name, std::move(family), MarginalPair{t.rho1.to_complex(), t.rho2.to_complex()},
                      static_cast<std::size_t>(d + m), Conclusion::Separable};
      out.notes = {{"d", d}, {"m", m}, {"marginals", "(Z1, I/(d+m)), Z1 = pI/d + (1-p)J/d, p = (d+1)/(d+m)"}};
      return out;
    }
    if (name == "sigma2") {
      require_params(name, params, 0);
      return {name, sigma_rank2(), MarginalPair{sigma_state(), sigma_state()}, 2, std::nullopt,
              {{"marginals", "(sigma, sigma), sigma = diag(1/3, 2/3)"}}};
    }
    if (name == "ohno4") {
      require_params(name, params, 0);
      return {name, ohno_rank4(), maximally_mixed_pair(3), 4, std::nullopt, {{"marginals", "(I/3, I/3)"}}};
    }
    if (name == "ohno-d") {
      require_params(name, params, 1);
      const int d = params[0];
      return {name, ohno_rank_d(d), maximally_mixed_pair(d), static_cast<std::size_t>(d), std::nullopt,
              {{"d", d}, {"marginals", "(I/d, I/d)"}}};
    }
    if (name == "rank8-66") {
      require_params(name, params, 0);
      return {name, rank8_66(), MarginalPair{rank8_marginal(), rank8_marginal()}, 8, std::nullopt,
              {{"marginals", "(D, D), D = sigma (x) I/3"}}};
    }
    if (name == "rank8k") {
      require_params(name, params, 1);
      const int k = params[0];
      KrausFamily family = rank8k_6k(k);
      const ComplexMatrix target =
          kron(ComplexMatrix::Identity(k, k) / static_cast<double>(k), rank8_marginal());
      return {name, std::move(family), MarginalPair{target, target}, static_cast<std::size_t>(8 * k), std::nullopt,
              {{"k", k},
               {"marginals", "(I/k (x) D, I/k (x) D)"},
               {"factor_order", {"k", "2", "3"}},
               {"sigma_first_permutation", kRank8kToSigmaFirst}}};
    }
  } catch (const UsageError&) {
    throw;
  } catch (const std::invalid_argument& e) {
    throw UsageError(e.what());
  }
  throw UsageError("unknown family '" + name + "' (expected paper, sigma2, ohno4, ohno-d, rank8-66, rank8k)");
}

Report usage_error_report(const std::string& command, const std::string& message) {
  json doc = {{"command", command}, {"status", "usage-error"}, {"error", message}, {"exit_code", kExitUsageError}};
  return {std::move(doc), kExitUsageError};
}

Report cmd_verify(const std::string& family_name, const std::vector<int>& params, const GlobalOptions& options) {
  ReportBuilder report("verify", {{"family", family_name}, {"params", params}, {"options", options_json(options)}});
  const NamedFamily named = report.timed("construct", [&] { return make_named_family(family_name, params); });
  report.doc()["inputs"]["notes"] = named.notes;
  report.doc()["family"] = {{"d_in", named.family.d_in()},
                            {"d_out", named.family.d_out()},
                            {"r", named.family.size()},
                            {"hermitian_kraus", named.family.hermitian_kraus()},
                            {"rational_form", named.family.exact().has_value()}};

  run_family_checks(report, named, options);

  if (family_name == "paper") {
    const auto exact = exact_marginals(named.family);
    const ExactMarginalPair targets = paper_family_targets(params[0], params[1]);
    report.check("marginals equal (Z1, I/(d+m)) in rational arithmetic",
                 exact && exact->rho1 == targets.rho1 && exact->rho2 == targets.rho2);
  }
  if (family_name == "rank8k") {
    const int k = params[0];
    const ComplexMatrix rho = marginals(named.family).rho1;
    const std::array<int, 3> dims{k, 2, 3};
    const ComplexMatrix reordered = permute_subsystems(rho, dims, kRank8kToSigmaFirst);
    const double dev = max_abs_diff(reordered, rank8k_marginal_sigma_first(k));
    report.check("marginal equals sigma (x) I/3 (x) I/k after factor reordering", dev <= kEqualityTol,
                 {{"deviation", dev}});
  }
  return report.finish();
}

Report cmd_verify_family(const KrausFamily& family, const GlobalOptions& options) {
  ReportBuilder report("verify", {{"family", "input"}, {"options", options_json(options)}});
  report.doc()["family"] = {{"d_in", family.d_in()},
                            {"d_out", family.d_out()},
                            {"r", family.size()},
                            {"hermitian_kraus", family.hermitian_kraus()},
                            {"rational_form", family.exact().has_value()}};
  run_family_checks(report, NamedFamily{"input", family, std::nullopt, std::nullopt, std::nullopt}, options);
  return report.finish();
}

Report cmd_table(const TableRange& range, const GlobalOptions& options) {
  if (range.d_min < 2 || range.m_min < 1 || range.d_max < range.d_min || range.m_max < range.m_min)
    throw UsageError("table range needs 2 <= d_min <= d_max and 1 <= m_min <= m_max");
  if (!range.allow_large && (range.d_max > kTableMaxD || range.d_max + range.m_max > kTableMaxSide))
    throw UsageError("table range exceeds d <= 6, d + m <= 12; pass --allow-large to override");
  const auto side = static_cast<std::size_t>(range.d_max + range.m_max);
  guard_gram(side, options);

  ReportBuilder report("table", {{"d_min", range.d_min},
                                 {"d_max", range.d_max},
                                 {"m_min", range.m_min},
                                 {"m_max", range.m_max},
                                 {"options", options_json(options)}});
  json rows = json::array();
  for (int d = range.d_min; d <= range.d_max; ++d) {
    for (int m = range.m_min; m <= range.m_max; ++m) {
      const std::string label = "paper(" + std::to_string(d) + "," + std::to_string(m) + ")";
      const KrausFamily family = paper_family(d, m);
      const ExtremalityCertificate cert = report.timed(
          "is_extremal", [&] { return is_extremal(family, std::nullopt, extremality_options(family, options)); });
      report.add_certificate(cert, label);
      const std::size_t constructed = report.timed("choi_rank", [&] { return choi_rank(family).rank; });
      const std::int64_t bound = parthasarathy_bound(d, d + m);
      const bool attained = static_cast<std::int64_t>(constructed) == bound;
      const bool predicted = bound_attained_inequality(d, m);
      rows.push_back({{"d1", d},
                      {"d2", d + m},
                      {"marginal_name", "(Z1, I/" + std::to_string(d + m) + ")"},
                      {"constructed_rank", constructed},
                      {"bound", bound},
                      {"attained", attained},
                      {"extremal", cert.extremal}});
      report.check(label + ": extremal with rank d+m", cert.extremal && constructed == static_cast<std::size_t>(d + m));
      report.check(label + ": attainment matches m > (d^2-2d-2)/2", attained == predicted);
    }
  }

  if (range.fixed_rows) {
    struct Fixed {
      std::string label;
      KrausFamily family;
      std::string marginal_name;
    };
    std::vector<Fixed> fixed;
    fixed.push_back({"rank8-66", rank8_66(), "(D, D)"});
    fixed.push_back({"rank8k(3)", rank8k_6k(3), "(D1, D1)"});
    for (const auto& f : fixed) {
      guard_gram(f.family.size(), options);
      const ExtremalityCertificate cert = report.timed(
          "is_extremal", [&] { return is_extremal(f.family, std::nullopt, extremality_options(f.family, options)); });
      report.add_certificate(cert, f.label);
      const std::size_t constructed = report.timed("choi_rank", [&] { return choi_rank(f.family).rank; });
      const std::int64_t bound = parthasarathy_bound(f.family.d_in(), f.family.d_out());
      rows.push_back({{"d1", f.family.d_in()},
                      {"d2", f.family.d_out()},
                      {"marginal_name", f.marginal_name},
                      {"constructed_rank", constructed},
                      {"bound", bound},
                      {"attained", static_cast<std::int64_t>(constructed) == bound},
                      {"extremal", cert.extremal}});
      report.check(f.label + ": extremal with rank " + std::to_string(f.family.size()),
                   cert.extremal && constructed == f.family.size());
    }
  }
  report.doc()["table_rows"] = std::move(rows);
  return report.finish();
}

Report cmd_oracle(int d, int m, const GlobalOptions& options) {
  if (d < 2 || m < 1) throw UsageError("oracle needs d >= 2 and m >= 1");
  guard_gram(static_cast<std::size_t>(d + m), options);

  ReportBuilder report("oracle", {{"d", d}, {"m", m}, {"options", options_json(options)}});
  const KrausFamily family = paper_family(d, m);

  const RationalMatrix gram = report.timed("block_gram", [&] { return *exact_block_gram(family); });
  report.check("unscaled block Gram is integer-valued", gram.is_integral());
  const RankResult gram_rank = report.timed("gram_rank", [&] { return exact_rank(gram); });
  const auto full = static_cast<std::size_t>((d + m) * (d + m));
  report.doc()["gram_rank"] = gram_rank.rank;
  report.doc()["gram_rank_mode"] = to_string(gram_rank.mode);
  report.check("block Gram has full rank (d+m)^2", gram_rank.rank == full,
               {{"rank", gram_rank.rank}, {"expected", full}});

  const ComplexMatrix closed_gram = report.timed("closed_form_gram", [&] { return closed_form_gram(d, m); });
  const double gram_dev = max_abs_diff(gram.to_complex(), closed_gram);
  if (gram_dev > 0)
    report.warn("closed-form Gram deviates from the direct Gram (max abs " + std::to_string(gram_dev) + ")");

  const ComplexMatrix pt =
      report.timed("partial_transpose", [&] { return partial_transpose(choi(family), d, d + m, Subsystem::First); });
  const ComplexMatrix closed_pt = report.timed("closed_form_choi_pt", [&] { return closed_form_choi_pt(d, m); });
  const double pt_dev = max_abs_diff(pt, closed_pt);
  if (pt_dev > kEqualityTol)
    report.warn("closed-form partial transpose deviates by " + std::to_string(pt_dev));

  const double lowest = min_eigenvalue(pt);
  const double lowest_closed = min_eigenvalue(closed_pt);
  report.doc()["min_pt_eigenvalue"] = lowest;
  report.doc()["min_closed_form_pt_eigenvalue"] = lowest_closed;
  report.check("Choi state is PPT", lowest >= -kPptTol, {{"min_pt_eigenvalue", lowest}});

  report.doc()["oracle_deviations"] = {{"gram_vs_closed_form", gram_dev}, {"choi_pt_vs_closed_form", pt_dev}};
  return report.finish();
}

Report cmd_proptest(std::size_t count, const GlobalOptions& options) {
  ReportBuilder report("proptest", {{"count", count}, {"options", options_json(options)}});
  Rng rng(options.seed);
  std::uniform_int_distribution<int> dim(1, 4);
  std::uniform_int_distribution<int> rank_pick(1, 5);
  std::uniform_int_distribution<int> shape(0, 2);

  std::size_t adjoint_ok = 0, canonical_ok = 0, diagonal_ok = 0, swap_ok = 0, restrict_ok = 0;
  std::size_t span_checked = 0, span_ok = 0, borderline = 0;
  json failures = json::array();

  for (std::size_t trial = 0; trial < count; ++trial) {
    const int d_in = dim(rng);
    const int d_out = dim(rng);
    const int r = rank_pick(rng);
    const int kind = shape(rng);
    const KrausFamily family = kind == 0   ? random_padded_family(rng, d_in, d_out, r)
                               : kind == 1 ? random_integer_family(rng, d_in, d_out, r)
                                           : random_family(rng, d_in, d_out, r);
    const json where = {{"trial", trial}, {"d_in", d_in}, {"d_out", d_out}, {"r", r}, {"kind", kind}};

    const ExtremalityCertificate base = is_extremal(family, std::nullopt, {RankMode::Numerical, options.tol});
    if (base.borderline) ++borderline;

    const KrausFamily dual = adjoint(family);
    const bool same_dual = is_extremal(dual, std::nullopt, {RankMode::Numerical, options.tol}).extremal == base.extremal;

    const CanonicalizationRecord canon = diagonalize_marginals(family);
    const bool same_canon =
        is_extremal(canon.family, std::nullopt, {RankMode::Numerical, options.tol}).extremal == base.extremal;
    const MarginalPair cm = marginals(canon.family);
    const bool diagonal = is_diagonal(cm.rho1, kEqualityTol) && is_diagonal(cm.rho2, kEqualityTol) &&
                          nondecreasing(canon.d1_diag) && nondecreasing(canon.d2_diag);

    const CanonicalizationRecord dual_canon = diagonalize_marginals(dual);
    const bool swapped = dual_canon.d1_diag.size() == canon.d2_diag.size() &&
                         (dual_canon.d1_diag - canon.d2_diag).cwiseAbs().maxCoeff() <= 1e-10;

    const KrausFamily once = restrict_to_support(family);
    const KrausFamily twice = restrict_to_support(once);
    bool idempotent = once.size() == twice.size() && once.d_in() == twice.d_in() && once.d_out() == twice.d_out();
    for (std::size_t i = 0; idempotent && i < once.size(); ++i)
      idempotent = max_abs_diff(once.op(i), twice.op(i)) <= kEqualityTol;
    idempotent = idempotent &&
                 is_extremal(once, std::nullopt, {RankMode::Numerical, options.tol}).gram_rank.rank ==
                     base.gram_rank.rank;

    adjoint_ok += same_dual;
    canonical_ok += same_canon;
    diagonal_ok += diagonal;
    swap_ok += swapped;
    restrict_ok += idempotent;
    if (!(same_dual && same_canon && diagonal && swapped && idempotent)) {
      failures.push_back({{"at", where},
                          {"adjoint_invariant", same_dual},
                          {"canonical_invariant", same_canon},
                          {"canonical_diagonal", diagonal},
                          {"adjoint_swaps_diagonals", swapped},
                          {"restrict_idempotent", idempotent}});
    }

    if (r <= 3 && d_in <= 3 && d_out <= 3) {
      ++span_checked;
      const bool agrees = span_dimension(family) == base.gram_rank.rank;
      span_ok += agrees;
      if (!agrees) failures.push_back({{"at", where}, {"span_dimension_matches_gram_rank", false}});
    }
  }

  report.check("extremality invariant under adjoint", adjoint_ok == count, {{"passed", adjoint_ok}});
  report.check("extremality invariant under canonicalization", canonical_ok == count, {{"passed", canonical_ok}});
  report.check("canonical marginals diagonal and sorted", diagonal_ok == count, {{"passed", diagonal_ok}});
  report.check("adjoint swaps canonical diagonals", swap_ok == count, {{"passed", swap_ok}});
  report.check("restrict_to_support idempotent, Gram rank kept", restrict_ok == count, {{"passed", restrict_ok}});
  report.check("span dimension equals Gram rank", span_ok == span_checked,
               {{"checked", span_checked}, {"passed", span_ok}});
  if (borderline > 0) report.borderline(std::to_string(borderline) + " random families near threshold");
  report.doc()["failures"] = std::move(failures);
  return report.finish();
}

}  // namespace cpmarg
