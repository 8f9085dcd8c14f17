#include <string>
#include <vector>

#include <pybind11/complex.h>
#include <pybind11/eigen.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "cpmarg/commands.hpp"
#include "cpmarg/families.hpp"
#include "cpmarg/reductions.hpp"

namespace py = pybind11;
using namespace cpmarg;

namespace {

Subsystem parse_subsystem(const std::string& name) {
  if (name == "first") return Subsystem::First;
  if (name == "second") return Subsystem::Second;
  throw std::invalid_argument("subsystem must be 'first' or 'second'");
}

std::optional<RankMode> parse_mode(const std::optional<std::string>& name) {
  if (!name) return std::nullopt;
  if (*name == "exact") return RankMode::Exact;
  if (*name == "numerical") return RankMode::Numerical;
  throw std::invalid_argument("mode must be 'exact' or 'numerical'");
}

// Reports cross the boundary as JSON text; the package decodes them.
std::string report_text(const Report& report) { return report.doc.dump(); }

}  // namespace

PYBIND11_MODULE(_cpmarg, m) {
  m.doc() = "Extremality certificates for Kraus families with fixed marginals";

  py::class_<KrausFamily>(m, "KrausFamily")
      .def(py::init<std::vector<ComplexMatrix>>(), py::arg("ops"))
      .def_property_readonly("d_in", &KrausFamily::d_in)
      .def_property_readonly("d_out", &KrausFamily::d_out)
      .def_property_readonly("ops", &KrausFamily::ops)
      .def_property_readonly("hermitian_kraus", &KrausFamily::hermitian_kraus)
      .def_property_readonly("has_rational_form", [](const KrausFamily& f) { return f.exact().has_value(); })
      .def("is_normalized", &KrausFamily::is_normalized, py::arg("tol") = kEqualityTol)
      .def("__len__", &KrausFamily::size)
      .def("to_json", [](const KrausFamily& f) { return family_to_json(f).dump(); })
      .def_static("from_json", [](const std::string& text) { return family_from_json(json::parse(text)); });

  py::class_<ExtremalityCertificate>(m, "ExtremalityCertificate")
      .def_readonly("r", &ExtremalityCertificate::r)
      .def_readonly("gram_size", &ExtremalityCertificate::gram_size)
      .def_property_readonly("gram_rank", [](const ExtremalityCertificate& c) { return c.gram_rank.rank; })
      .def_property_readonly("gap", [](const ExtremalityCertificate& c) { return c.gram_rank.gap_ratio(); })
      .def_property_readonly("mode", [](const ExtremalityCertificate& c) { return to_string(c.mode); })
      .def_readonly("extremal", &ExtremalityCertificate::extremal)
      .def_readonly("borderline", &ExtremalityCertificate::borderline)
      .def_readonly("marginal_residual", &ExtremalityCertificate::marginal_residual)
      .def_readonly("marginals_valid", &ExtremalityCertificate::marginals_valid)
      .def("to_json", [](const ExtremalityCertificate& c) { return certificate_to_json(c).dump(); });

  py::class_<SeparabilityVerdict>(m, "SeparabilityVerdict")
      .def_readonly("ppt", &SeparabilityVerdict::ppt)
      .def_readonly("min_pt_eigenvalue", &SeparabilityVerdict::min_pt_eigenvalue)
      .def_readonly("choi_rank", &SeparabilityVerdict::choi_rank)
      .def_readonly("criterion_applicable", &SeparabilityVerdict::criterion_applicable)
      .def_property_readonly("conclusion", [](const SeparabilityVerdict& v) { return to_string(v.conclusion); })
      .def_readonly("eb_rank_note", &SeparabilityVerdict::eb_rank_note)
      .def("to_json", [](const SeparabilityVerdict& v) { return verdict_to_json(v).dump(); });

  // linalg
  m.def("partial_trace",
        [](const ComplexMatrix& x, int d1, int d2, const std::string& sub) {
          return partial_trace(x, d1, d2, parse_subsystem(sub));
        },
        py::arg("m"), py::arg("d1"), py::arg("d2"), py::arg("sub"));
  m.def("partial_transpose",
        [](const ComplexMatrix& x, int d1, int d2, const std::string& sub) {
          return partial_transpose(x, d1, d2, parse_subsystem(sub));
        },
        py::arg("m"), py::arg("d1"), py::arg("d2"), py::arg("sub") = "first");
  m.def("min_eigenvalue", &min_eigenvalue, py::arg("h"));
  m.def("numerical_rank", [](const ComplexMatrix& x, std::optional<double> tol) { return numerical_rank(x, tol).rank; },
        py::arg("m"), py::arg("tol") = py::none());

  // channels
  m.def("apply", &apply, py::arg("family"), py::arg("x"));
  m.def("marginals", [](const KrausFamily& f) {
    const MarginalPair p = marginals(f);
    return py::make_tuple(p.rho1, p.rho2);
  });
  m.def("choi", &choi);
  m.def("choi_rank",
        [](const KrausFamily& f, std::optional<std::string> mode) { return choi_rank(f, parse_mode(mode)).rank; },
        py::arg("family"), py::arg("mode") = py::none());
  m.def("adjoint", &adjoint);
  m.def("tensor", &tensor);
  m.def("is_minimal", &is_minimal);

  // extremality
  m.def("block_gram", &block_gram);
  m.def("is_extremal",
        [](const KrausFamily& f, std::optional<std::string> mode, std::optional<double> tol) {
          return is_extremal(f, std::nullopt, ExtremalityOptions{parse_mode(mode), tol});
        },
        py::arg("family"), py::arg("mode") = py::none(), py::arg("tol") = py::none());
  m.def("parthasarathy_bound", &parthasarathy_bound);
  m.def("bound_attained", &bound_attained);

  // families
  m.def("shift_matrix", [](int d, int mm) { return shift_matrix(d, mm).matrix; });
  m.def("paper_family", &paper_family, py::arg("d"), py::arg("m"));
  m.def("closed_form_gram", &closed_form_gram);
  m.def("closed_form_choi_pt", &closed_form_choi_pt);
  m.def("sigma_rank2", &sigma_rank2);
  m.def("ohno_rank4", &ohno_rank4);
  m.def("ohno_rank_d", &ohno_rank_d);
  m.def("rank8_66", &rank8_66);
  m.def("rank8k_6k", &rank8k_6k);

  // separability
  m.def("ppt", [](const ComplexMatrix& c, int d1, int d2) {
    const PptResult r = ppt(c, d1, d2);
    return py::make_tuple(r.ppt, r.min_eigenvalue);
  });
  m.def("separability_verdict", &separability_verdict);

  // reductions
  m.def("diagonalize_marginals", [](const KrausFamily& f) {
    const CanonicalizationRecord rec = diagonalize_marginals(f);
    return py::make_tuple(rec.family, rec.u, rec.v, rec.d1_diag, rec.d2_diag);
  });
  m.def("adjoint_duality_check", &adjoint_duality_check);
  m.def("restrict_to_support", &restrict_to_support);

  // commands
  m.def("_verify", [](const std::string& name, const std::vector<int>& params) {
    return report_text(cmd_verify(name, params, GlobalOptions{}));
  });
  m.def("_oracle", [](int d, int mm) { return report_text(cmd_oracle(d, mm, GlobalOptions{})); });
  m.def("_table", [](int d_min, int d_max, int m_min, int m_max, bool fixed_rows) {
    TableRange range{d_min, d_max, m_min, m_max, false, fixed_rows};
    return report_text(cmd_table(range, GlobalOptions{}));
  });
}
