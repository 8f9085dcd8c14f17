#include "cpmarg/separability.hpp"

#include <algorithm>

namespace cpmarg {

std::string to_string(Conclusion conclusion) {
  switch (conclusion) {
    case Conclusion::Separable:
      return "separable";
    case Conclusion::Entangled:
      return "entangled";
    case Conclusion::Undetermined:
      break;
  }
  return "undetermined";
}

PptResult ppt(const ComplexMatrix& state, int d1, int d2) {
  const ComplexMatrix pt = partial_transpose(state, d1, d2, Subsystem::First);
  const double lowest = min_eigenvalue(pt);
  return {lowest >= -kPptTol, lowest};
}

bool SeparabilityVerdict::consistent() const {
  if (ppt != (min_pt_eigenvalue >= -kPptTol)) return false;
  switch (conclusion) {
    case Conclusion::Separable:
      return ppt && criterion_applicable;
    case Conclusion::Entangled:
      return !ppt;
    case Conclusion::Undetermined:
      return ppt && !criterion_applicable;
  }
  return false;
}

SeparabilityVerdict separability_verdict(const KrausFamily& family) {
  const int d1 = family.d_in();
  const int d2 = family.d_out();
  const ComplexMatrix c = choi(family);

  SeparabilityVerdict verdict;
  const PptResult test = ppt(c, d1, d2);
  verdict.ppt = test.ppt;
  verdict.min_pt_eigenvalue = test.min_eigenvalue;
  verdict.borderline = test.min_eigenvalue > -10 * kPptTol && test.min_eigenvalue < -kPptTol / 10;
  verdict.choi_rank = choi_rank(family).rank;

  const MarginalPair marg = marginals(family);
  const std::size_t local_rank =
      std::max(numerical_rank(marg.rho1).rank, numerical_rank(marg.rho2).rank);
  verdict.criterion_applicable = verdict.choi_rank <= local_rank;

  if (!verdict.ppt) {
    verdict.conclusion = Conclusion::Entangled;
  } else if (verdict.criterion_applicable) {
    verdict.conclusion = Conclusion::Separable;
  } else {
    verdict.conclusion = Conclusion::Undetermined;
  }

  if (verdict.conclusion == Conclusion::Separable &&
      verdict.choi_rank == static_cast<std::size_t>(d2)) {
    const double trace = marg.rho2.trace().real();
    const ComplexMatrix flat = ComplexMatrix::Identity(d2, d2) * (trace / d2);
    if (trace > 0 && max_abs_diff(marg.rho2, flat) <= kEqualityTol) verdict.eb_rank_note = verdict.choi_rank;
  }
  return verdict;
}

}  // namespace cpmarg
