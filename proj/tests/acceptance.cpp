// One line per acceptance criterion; exit status is nonzero if any fails.
#include <chrono>
#include <cstdio>
#include <functional>
#include <sstream>
#include <string>

#include "cpmarg/commands.hpp"
#include "cpmarg/extremality.hpp"
#include "cpmarg/families.hpp"
#include "cpmarg/reductions.hpp"
#include "cpmarg/separability.hpp"
#include "fixtures.hpp"
#include "oracles.hpp"

using namespace cpmarg;

namespace {

struct Outcome {
  bool ok = true;
  std::ostringstream detail;

  void expect(bool condition, const std::string& what) {
    if (!condition) {
      if (ok) detail << "first failure: " << what << "; ";
      ok = false;
    }
  }
};

double seconds_since(std::chrono::steady_clock::time_point start) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
}

std::string cell(int d, int m) { return "(" + std::to_string(d) + "," + std::to_string(m) + ")"; }

void paper_grid(Outcome& out) {
  const auto start = std::chrono::steady_clock::now();
  double worst_pt = 0.0;
  for (int d = 2; d <= 5; ++d) {
    for (int m = 1; m <= 5; ++m) {
      const KrausFamily f = paper_family(d, m);
      const auto got = exact_marginals(f);
      const ExactMarginalPair want = paper_family_targets(d, m);
      mpq_class p(d + 1, d + m);
      p.canonicalize();
      bool z_ok = true;
      for (int i = 0; i < d; ++i)
        for (int j = 0; j < d; ++j)
          z_ok = z_ok && want.rho1(i, j) == (i == j ? mpq_class(p / d) : mpq_class(0)) + (1 - p) / d;
      out.expect(z_ok, "Z formula " + cell(d, m));
      out.expect(want.rho2 == RationalMatrix::identity(d + m).scaled(mpq_class(1, d + m)), "I/(d+m) " + cell(d, m));
      out.expect(got && got->rho1 == want.rho1 && got->rho2 == want.rho2, "exact marginals " + cell(d, m));

      const auto gram = exact_block_gram(f);
      out.expect(gram && gram->is_integral(), "integral Gram " + cell(d, m));
      out.expect(gram && exact_rank(*gram).rank == static_cast<std::size_t>((d + m) * (d + m)),
                 "Gram rank " + cell(d, m));

      const SeparabilityVerdict v = separability_verdict(f);
      out.expect(v.choi_rank == static_cast<std::size_t>(d + m), "Choi rank " + cell(d, m));
      out.expect(v.ppt && v.min_pt_eigenvalue >= -1e-10, "PPT " + cell(d, m));
      out.expect(v.conclusion == Conclusion::Separable, "separable " + cell(d, m));
      worst_pt = std::min(worst_pt, v.min_pt_eigenvalue);
    }
  }
  const double elapsed = seconds_since(start);
  out.expect(elapsed < 60.0, "runtime under 60 s");
  out.detail << "20 cells, min PT eigenvalue " << worst_pt << ", " << elapsed << " s";
}

void bound_attainment(Outcome& out) {
  int attained = 0;
  for (int d = 2; d <= 5; ++d) {
    for (int m = 1; m <= 5; ++m) {
      const std::int64_t bound = parthasarathy_bound(d, d + m);
      const std::int64_t constructed = d + m;
      out.expect(bound >= constructed, "bound below construction " + cell(d, m));
      if (2 * m > d * d - 2 * d - 2) {
        out.expect(constructed == bound, "attainment " + cell(d, m));
        ++attained;
      } else {
        out.expect(constructed < bound, "strictly below " + cell(d, m));
      }
    }
  }
  out.expect(parthasarathy_bound(4, 6) == 7 && !bound_attained(4, 2), "(4,2) strictly below");
  out.expect(parthasarathy_bound(5, 8) == 9 && !bound_attained(5, 3), "(5,3) strictly below");
  out.detail << attained << " of 20 cells attain the bound; (4,2): 6 < 7; (5,3): 8 < 9";
}

void section_four(Outcome& out) {
  auto check = [&](const std::string& name, const KrausFamily& f, std::size_t rank) {
    const ExtremalityCertificate cert = is_extremal(f);
    out.expect(cert.extremal && !cert.borderline, name + " extremal");
    out.expect(choi_rank(f).rank == rank, name + " Choi rank");
  };
  check("sigma_rank2", sigma_rank2(), 2);
  check("ohno_rank4", ohno_rank4(), 4);
  out.expect(parthasarathy_bound(3, 3) == 4, "floor(sqrt(17)) = 4");
  for (int d = 3; d <= 6; ++d) check("ohno_rank_d(" + std::to_string(d) + ")", ohno_rank_d(d), d);
  const KrausFamily r8 = rank8_66();
  check("rank8_66", r8, 8);
  out.expect(parthasarathy_bound(6, 6) == 8, "floor(sqrt(71)) = 8");
  const MarginalPair p = marginals(r8);
  out.expect(max_abs_diff(p.rho1, rank8_marginal()) <= 1e-12 && max_abs_diff(p.rho2, rank8_marginal()) <= 1e-12,
             "rank8_66 marginals (D,D)");

  const auto start = std::chrono::steady_clock::now();
  const KrausFamily big = rank8k_6k(3);
  const ExtremalityCertificate cert = is_extremal(big);
  const std::size_t crank = choi_rank(big).rank;
  const double elapsed = seconds_since(start);
  out.expect(cert.gram_size == 576 && cert.mode == RankMode::Numerical, "rank8k(3) numerical Gram of side 576");
  out.expect(cert.extremal, "rank8k(3) extremal");
  out.expect(crank == 24, "rank8k(3) Choi rank 24");
  out.expect(cert.gram_rank.gap_ratio() >= 1e3, "rank8k(3) gap ratio >= 1e3");
  out.expect(elapsed < 120.0, "rank8k(3) under 120 s");
  out.detail << "rank8k(3) gap ratio " << cert.gram_rank.gap_ratio() << ", " << elapsed << " s";
}

void negative_controls(Outcome& out) {
  const ExtremalityCertificate e = is_extremal(fixture::e_basis());
  out.expect(!e.extremal && e.gram_rank.rank <= 8 && e.gram_size == 16, "E-basis family non-extremal");
  Rng rng(3);
  const ComplexMatrix k = random_unitary(rng, 2) / 2.0;
  out.expect(!is_extremal(fixture::duplicated(k)).extremal, "duplicated family non-extremal");
  const PptResult bell = ppt(choi(fixture::identity_channel(2)), 2, 2);
  out.expect(!bell.ppt && std::abs(bell.min_eigenvalue + 0.5) <= 1e-10, "identity channel NPT at -1/2");
  out.detail << "E-basis Gram rank " << e.gram_rank.rank << "/16, identity min PT eigenvalue " << bell.min_eigenvalue;
}

void oracle_agreement(Outcome& out) {
  double worst = 0.0;
  for (int d = 2; d <= 5; ++d) {
    for (int m = 1; m <= 5; ++m) {
      const ComplexMatrix pt = partial_transpose(choi(paper_family(d, m)), d, d + m, Subsystem::First);
      const double dev = max_abs_diff(pt, closed_form_choi_pt(d, m));
      out.expect(dev <= 1e-12, "PT oracle " + cell(d, m));
      worst = std::max(worst, dev);
    }
  }
  out.detail << "max PT deviation " << worst << "; Gram deviation";
  for (const auto& [d, m] : {std::pair{2, 1}, std::pair{2, 2}, std::pair{3, 2}, std::pair{3, 3}}) {
    const Report r = cmd_oracle(d, m, {});
    out.expect(r.exit_code == kExitPass, "oracle command " + cell(d, m));
    out.detail << " " << cell(d, m) << "=" << r.doc["oracle_deviations"]["gram_vs_closed_form"].get<double>();
  }
  out.detail << " (warnings)";
}

void reduction_properties(Outcome& out) {
  Rng rng(20240601);
  std::uniform_int_distribution<int> dim(1, 4);
  std::uniform_int_distribution<int> rank(1, 5);
  int extremal_count = 0;
  for (int trial = 0; trial < 50; ++trial) {
    const int d1 = dim(rng);
    const int d2 = dim(rng);
    const KrausFamily f = random_family(rng, d1, d2, rank(rng));
    const std::string at = "trial " + std::to_string(trial);
    const bool verdict = is_extremal(f).extremal;
    extremal_count += verdict;
    out.expect(is_extremal(adjoint(f)).extremal == verdict, "adjoint invariance " + at);
    const CanonicalizationRecord rec = diagonalize_marginals(f);
    out.expect(is_extremal(rec.family).extremal == verdict, "canonical invariance " + at);
    const MarginalPair p = marginals(rec.family);
    ComplexMatrix off1 = p.rho1;
    ComplexMatrix off2 = p.rho2;
    off1.diagonal().setZero();
    off2.diagonal().setZero();
    out.expect(off1.cwiseAbs().maxCoeff() <= 1e-12 && off2.cwiseAbs().maxCoeff() <= 1e-12, "diagonal " + at);
  }
  for (int trial = 0; trial < 50; ++trial) {
    const int d = dim(rng);
    const KrausFamily f =
        fixture::conjugated(fixture::padded(random_family(rng, d, d, rank(rng))), random_unitary(rng, d + 1),
                            random_unitary(rng, d + 1));
    const KrausFamily once = restrict_to_support(f);
    const KrausFamily twice = restrict_to_support(once);
    bool same = once.d_in() == twice.d_in() && once.d_out() == twice.d_out();
    for (std::size_t i = 0; same && i < once.size(); ++i) same = max_abs_diff(once.op(i), twice.op(i)) <= 1e-12;
    out.expect(same, "restrict idempotent trial " + std::to_string(trial));
  }
  std::uniform_int_distribution<int> small(1, 3);
  for (int trial = 0; trial < 50; ++trial) {
    const KrausFamily f = random_family(rng, small(rng), small(rng), small(rng));
    out.expect(oracle::span_dimension_lu(f.ops()) == numerical_rank(block_gram(f)).rank,
               "span dimension trial " + std::to_string(trial));
  }
  out.detail << "150 seeded families, " << extremal_count << "/50 extremal in the invariance set";
}

void table_reproduction(Outcome& out) {
  const Report r = cmd_table({}, {});
  out.expect(r.exit_code == kExitPass, "table command passes");
  int rows = 0;
  for (const auto& row : r.doc["table_rows"]) {
    const int d1 = row["d1"];
    const int d2 = row["d2"];
    const bool attained = row["attained"];
    if (row["marginal_name"] == "(D, D)") {
      out.expect(d1 == 6 && row["constructed_rank"] == 8 && row["bound"] == 8 && attained, "(6,6) row gives 8");
    } else if (row["marginal_name"] == "(D1, D1)") {
      out.expect(d1 == 18 && row["constructed_rank"] == 24 && row["extremal"] == true, "(18,18) row rank 24");
    } else {
      const int m = d2 - d1;
      const bool predicted = d1 == 2 || 2 * m > d1 * d1 - 2 * d1 - 2;
      out.expect(attained == predicted, "row " + cell(d1, d2));
      out.expect(row["extremal"] == true && row["constructed_rank"] == d2, "row rank " + cell(d1, d2));
    }
    ++rows;
  }
  out.expect(rows == 22, "22 rows");
  out.detail << rows << " rows";
}

}  // namespace

int main() {
  const std::pair<const char*, std::function<void(Outcome&)>> criteria[] = {
      {"C1 paper_family grid", paper_grid},
      {"C2 bound attainment", bound_attainment},
      {"C3 tensor-product constructions", section_four},
      {"C4 negative controls", negative_controls},
      {"C5 oracle agreement", oracle_agreement},
      {"C6 reduction properties", reduction_properties},
      {"C7 table reproduction", table_reproduction},
  };
  int failures = 0;
  for (const auto& [name, run] : criteria) {
    Outcome out;
    try {
      run(out);
    } catch (const std::exception& e) {
      out.ok = false;
      out.detail << "exception: " << e.what();
    }
    std::printf("[%s] %s: %s\n", out.ok ? "PASS" : "FAIL", name, out.detail.str().c_str());
    std::fflush(stdout);
    failures += !out.ok;
  }
  return failures == 0 ? 0 : 1;
}
