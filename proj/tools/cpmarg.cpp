#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "cpmarg/commands.hpp"

namespace {

using cpmarg::Report;

int emit(const Report& report, const std::string& json_path) {
  const std::string text = report.doc.dump(2);
  std::cout << text << '\n';
  if (!json_path.empty()) {
    std::ofstream out(json_path);
    if (!out) {
      std::cerr << "cannot write report to " << json_path << '\n';
      return cpmarg::kExitUsageError;
    }
    out << text << '\n';
  }
  return report.exit_code;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Certify extremality of Kraus families with fixed marginals"};
  app.require_subcommand(1);
  app.fallthrough();

  std::string json_path;
  bool exact = false;
  bool numerical = false;
  double tol = 0.0;
  cpmarg::GlobalOptions options;
  app.add_option("--json", json_path, "Also write the JSON report to this path");
  auto* exact_flag = app.add_flag("--exact", exact, "Force exact rational rank");
  app.add_flag("--numerical", numerical, "Force numerical rank")->excludes(exact_flag);
  auto* tol_opt = app.add_option("--tol", tol, "Singular-value threshold for numerical rank")
                      ->check(CLI::PositiveNumber);
  app.add_option("--seed", options.seed, "Seed for property tests");
  app.add_option("--max-dim", options.max_dim, "Largest block Gram side allowed")->check(CLI::PositiveNumber);

  auto* verify = app.add_subcommand("verify", "Construct a family and certify it");
  std::string family;
  std::vector<int> params;
  std::string input_path;
  std::string dump_path;
  verify->add_option("family", family, "paper | sigma2 | ohno4 | ohno-d | rank8-66 | rank8k");
  verify->add_option("params", params, "Integer parameters of the family");
  verify->add_option("--input", input_path, "Load a family from a JSON file instead");
  verify->add_option("--dump-family", dump_path, "Write the constructed family as JSON");

  auto* table = app.add_subcommand("table", "Bound-attainment table over a (d, m) grid");
  cpmarg::TableRange range;
  table->add_option("--d-min", range.d_min);
  table->add_option("--d-max", range.d_max);
  table->add_option("--m-min", range.m_min);
  table->add_option("--m-max", range.m_max);
  table->add_flag("--allow-large", range.allow_large, "Lift the desk-scale range guard");
  bool no_fixed = false;
  table->add_flag("--no-fixed-rows", no_fixed, "Skip the (6,6) and (18,18) rows");

  auto* oracle = app.add_subcommand("oracle", "Compare the (d, d+m) family against its closed forms");
  int oracle_d = 0;
  int oracle_m = 0;
  oracle->add_option("d", oracle_d)->required();
  oracle->add_option("m", oracle_m)->required();

  auto* proptest = app.add_subcommand("proptest", "Seeded reduction properties on random families");
  std::size_t count = 50;
  proptest->add_option("--count", count, "Number of random families");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : cpmarg::kExitUsageError;
  }

  if (exact) options.mode = cpmarg::RankMode::Exact;
  if (numerical) options.mode = cpmarg::RankMode::Numerical;
  if (tol_opt->count() > 0) options.tol = tol;

  const std::string command = app.get_subcommands().front()->get_name();
  try {
    if (*verify) {
      if (!input_path.empty()) {
        std::ifstream in(input_path);
        if (!in) throw cpmarg::UsageError("cannot read " + input_path);
        const auto doc = cpmarg::json::parse(in);
        return emit(cpmarg::cmd_verify_family(cpmarg::family_from_json(doc), options), json_path);
      }
      if (family.empty()) throw cpmarg::UsageError("verify needs a family name or --input");
      if (!dump_path.empty()) {
        std::ofstream out(dump_path);
        out << cpmarg::family_to_json(cpmarg::make_named_family(family, params).family).dump(2) << '\n';
      }
      return emit(cpmarg::cmd_verify(family, params, options), json_path);
    }
    if (*table) {
      range.fixed_rows = !no_fixed;
      return emit(cpmarg::cmd_table(range, options), json_path);
    }
    if (*oracle) return emit(cpmarg::cmd_oracle(oracle_d, oracle_m, options), json_path);
    return emit(cpmarg::cmd_proptest(count, options), json_path);
  } catch (const std::exception& e) {
    // Bad parameters, malformed JSON input and exact-mode misuse are all usage errors.
    std::cerr << "error: " << e.what() << '\n';
    return emit(cpmarg::usage_error_report(command, e.what()), json_path);
  }
}
