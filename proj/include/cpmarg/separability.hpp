#pragma once

#include <cstddef>
#include <optional>
#include <string>

#include "cpmarg/channels.hpp"

namespace cpmarg {

/// Minimum partial-transpose eigenvalue accepted as positive.
inline constexpr double kPptTol = 1e-10;

enum class Conclusion { Separable, Entangled, Undetermined };

std::string to_string(Conclusion conclusion);

struct PptResult {
  bool ppt = false;
  double min_eigenvalue = 0.0;
};

/// PPT test on the first-factor partial transpose of a state on C^d1 (x) C^d2.
PptResult ppt(const ComplexMatrix& state, int d1, int d2);

struct SeparabilityVerdict {
  bool ppt = false;
  double min_pt_eigenvalue = 0.0;
  std::size_t choi_rank = 0;
  // rank of the Choi state <= max(rank rho1, rank rho2)
  bool criterion_applicable = false;
  Conclusion conclusion = Conclusion::Undetermined;
  // Reported from the known result for unital entanglement-breaking maps whose
  // Kraus rank equals d_out. Not independently computed.
  std::optional<std::size_t> eb_rank_note;
  // min PT eigenvalue within a factor 10 of the tolerance on either side.
  bool borderline = false;

  bool consistent() const;
};

SeparabilityVerdict separability_verdict(const KrausFamily& family);

}  // namespace cpmarg
