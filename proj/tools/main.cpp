// qfsplit: Frobenius-splitting invariants of hypersurfaces over finite
// fields, plus a scenario runner that re-verifies the bundled computations.

#include <fstream>
#include <iostream>

#include <CLI11.hpp>

#include "qfs/runner.hpp"
#include "qfs/version.hpp"

namespace {

using qfs::Budget;
using qfs::CheckSpec;
using qfs::Report;

struct CommonFlags {
  std::string p;
  std::string ext_degree = "1";
  std::string modulus;
  std::string vars;
  std::string format = "json";
  std::string output;
  uint64_t budget_terms = Budget{}.max_term_pairs;
  double budget_seconds = 0;
};

void add_ring_flags(CLI::App* cmd, CommonFlags& flags) {
  cmd->add_option("--p", flags.p, "characteristic (prime)")->required();
  cmd->add_option("--ext-degree", flags.ext_degree, "field extension degree e (default 1)");
  cmd->add_option("--modulus", flags.modulus,
                  "modulus coefficients mod p, constant term first (required when e > 1)");
  cmd->add_option("--vars", flags.vars, "comma-separated variable names")->required();
}

void add_output_flags(CLI::App* cmd, CommonFlags& flags) {
  cmd->add_option("--format", flags.format, "report format: json, tsv, text")
      ->check(CLI::IsMember({"json", "tsv", "text"}));
  cmd->add_option("--output", flags.output, "write the report to a file instead of stdout");
  cmd->add_option("--budget-terms", flags.budget_terms,
                  "cap on cumulative term-pair products per check");
  cmd->add_option("--budget-seconds", flags.budget_seconds,
                  "wall-clock cap per check (0 = unlimited)");
}

Budget make_budget(const CommonFlags& flags) {
  Budget budget;
  budget.max_term_pairs = flags.budget_terms;
  budget.max_seconds = flags.budget_seconds;
  return budget;
}

void fill_ring_params(CheckSpec& spec, const CommonFlags& flags) {
  spec.params["p"] = flags.p;
  spec.params["e"] = flags.ext_degree;
  if (!flags.modulus.empty()) spec.params["modulus"] = flags.modulus;
  spec.params["vars"] = flags.vars;
}

int emit(const Report& report, const CommonFlags& flags) {
  std::string text = report.render(flags.format);
  if (flags.output.empty()) {
    std::cout << text;
  } else {
    std::ofstream out(flags.output);
    if (!out) {
      std::cerr << "cannot write " << flags.output << "\n";
      return 2;
    }
    out << text;
  }
  return 0;
}

// single-shot commands: run one check and map its status to the exit-code
// contract (0 completed, 1 expectation failed, 2 usage/config, 3 budget)
int run_single(const CheckSpec& spec, const CommonFlags& flags) {
  qfs::CheckResult result = qfs::run_check(spec, make_budget(flags));
  Report report;
  report.scenario = "adhoc";
  report.config["command"] = spec.kind;
  for (const auto& [k, v] : spec.params) report.config[k] = v;
  report.checks.push_back(result);
  int io = emit(report, flags);
  if (io != 0) return io;
  if (result.status == "error") {
    std::cerr << result.detail.dump() << "\n";
    return 2;
  }
  if (result.status == "skipped-budget") return 3;
  if (result.status == "fail") return 1;
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{std::string(qfs::kToolVersion) +
               " - quasi-F-split heights, theta-chain certificates, and "
               "Frobenius-power membership over finite fields"};
  app.require_subcommand(1);
  app.set_version_flag("--version", qfs::kToolVersion);

  CommonFlags flags;
  int exit_code = 0;
  auto run = [&](const CheckSpec& spec) { exit_code = run_single(spec, flags); };

  // height
  auto* height = app.add_subcommand("height", "quasi-F-split height search via level elements");
  static std::string h_poly, h_cap, h_variant = "delta-fpow", h_backend = "combinatorial-prescreen";
  add_ring_flags(height, flags);
  add_output_flags(height, flags);
  height->add_option("--poly", h_poly, "the hypersurface polynomial f")->required();
  height->add_option("--cap", h_cap, "largest level to test")->required();
  height->add_option("--variant", h_variant, "level variant: delta-f or delta-fpow")
      ->check(CLI::IsMember({"delta-f", "delta-fpow"}));
  height->add_option("--backend", h_backend, "poly, combinatorial, combinatorial-prescreen")
      ->check(CLI::IsMember({"poly", "combinatorial", "combinatorial-prescreen"}));
  height->callback([&] {
    CheckSpec spec;
    spec.name = "height";
    spec.kind = "height";
    fill_ring_params(spec, flags);
    spec.params["poly"] = h_poly;
    spec.params["cap"] = h_cap;
    spec.params["variant"] = h_variant;
    spec.params["backend"] = h_backend;
    run(spec);
  });

  // chain
  auto* chain = app.add_subcommand("chain", "verify a theta-chain certificate");
  static std::string c_g, c_a, c_n;
  add_ring_flags(chain, flags);
  add_output_flags(chain, flags);
  chain->add_option("--g", c_g, "the deformed polynomial g")->required();
  chain->add_option("--a", c_a, "the multiplier a")->required();
  chain->add_option("--n", c_n, "chain length")->required();
  chain->callback([&] {
    CheckSpec spec;
    spec.name = "chain";
    spec.kind = "chain";
    fill_ring_params(spec, flags);
    spec.params["g"] = c_g;
    spec.params["a"] = c_a;
    spec.params["n"] = c_n;
    run(spec);
  });

  // chain-search
  auto* csearch = app.add_subcommand("chain-search", "search for a chain certificate multiplier");
  static std::string cs_g, cs_nmax, cs_bounds;
  add_ring_flags(csearch, flags);
  add_output_flags(csearch, flags);
  csearch->add_option("--g", cs_g, "the deformed polynomial g")->required();
  csearch->add_option("--n-max", cs_nmax, "largest chain length to try")->required();
  csearch->add_option("--bounds", cs_bounds, "per-variable exponent bounds, comma-separated")
      ->required();
  csearch->callback([&] {
    CheckSpec spec;
    spec.name = "chain-search";
    spec.kind = "chain-search";
    fill_ring_params(spec, flags);
    spec.params["g"] = cs_g;
    spec.params["n-max"] = cs_nmax;
    spec.params["bounds"] = cs_bounds;
    run(spec);
  });

  // delta / trace / fedder
  auto* delta_cmd = app.add_subcommand("delta", "apply the carry operator to a polynomial");
  auto* trace_cmd = app.add_subcommand("trace", "apply the trace map u to a polynomial");
  auto* fedder_cmd = app.add_subcommand("fedder", "Fedder F-purity test at the origin");
  static std::string op_poly;
  for (auto* cmd : {delta_cmd, trace_cmd, fedder_cmd}) {
    add_ring_flags(cmd, flags);
    add_output_flags(cmd, flags);
    cmd->add_option("--poly", op_poly, "input polynomial")->required();
  }
  delta_cmd->callback([&] {
    CheckSpec spec;
    spec.name = "delta";
    spec.kind = "delta";
    fill_ring_params(spec, flags);
    spec.params["poly"] = op_poly;
    run(spec);
  });
  trace_cmd->callback([&] {
    CheckSpec spec;
    spec.name = "trace";
    spec.kind = "trace";
    fill_ring_params(spec, flags);
    spec.params["poly"] = op_poly;
    run(spec);
  });
  fedder_cmd->callback([&] {
    CheckSpec spec;
    spec.name = "fedder";
    spec.kind = "fedder";
    fill_ring_params(spec, flags);
    spec.params["poly"] = op_poly;
    run(spec);
  });

  // claims
  auto* claims = app.add_subcommand("claims", "gamma-infeasibility sweeps");
  static std::string cl_sweep, cl_qmax;
  add_output_flags(claims, flags);
  claims->add_option("--sweep", cl_sweep, "preset: 26mod27 (sum q-2) or not1mod27 (sum q-1)")
      ->required()
      ->check(CLI::IsMember({"26mod27", "not1mod27"}));
  claims->add_option("--qmax", cl_qmax, "largest q to sweep");
  claims->callback([&] {
    CheckSpec spec;
    spec.name = "claims-" + cl_sweep;
    spec.kind = "claims-sweep";
    spec.params["p"] = "2";
    spec.params["vars"] = "x,y,z,w";
    spec.params["f"] = "x^4+x*y^3+y*z^3+z*w^3";
    spec.params["q-min"] = "2";
    spec.params["mod"] = "27";
    if (cl_sweep == "26mod27") {
      spec.params["q-max"] = cl_qmax.empty() ? "2000" : cl_qmax;
      spec.params["residue"] = "26";
      spec.params["residue-op"] = "eq";
      spec.params["s-rule"] = "q-2";
    } else {
      spec.params["q-max"] = cl_qmax.empty() ? "1500" : cl_qmax;
      spec.params["residue"] = "1";
      spec.params["residue-op"] = "ne";
      spec.params["s-rule"] = "q-1";
    }
    spec.params["expect"] = "no-contradictions";
    run(spec);
  });

  // lambda
  auto* lambda_cmd = app.add_subcommand("lambda", "search for the quartic pencil parameter");
  static std::string l_p;
  add_output_flags(lambda_cmd, flags);
  lambda_cmd->add_option("--p", l_p, "prime with p = 1 mod 4, p > 5")->required();
  lambda_cmd->callback([&] {
    CheckSpec spec;
    spec.name = "lambda";
    spec.kind = "lambda";
    spec.params["p"] = l_p;
    run(spec);
  });

  // scan-family
  auto* family = app.add_subcommand(
      "scan-family", "per-m table of chain certificates and level verdicts for f + t^m");
  static std::string sf_m, sf_cap = "9", sf_nmax = "10";
  static std::string sf_f = "x^4+x*y^3+y*z^3+z*w^3";
  add_output_flags(family, flags);
  family->add_option("--p", flags.p, "characteristic (prime)")->required();
  family->add_option("--vars", flags.vars, "variables (default x,y,z,w,t)");
  family->add_option("--f", sf_f, "base polynomial");
  family->add_option("--m", sf_m, "range lo..hi of deformation exponents")->required();
  family->add_option("--cap", sf_cap, "largest level to test per m");
  family->add_option("--n-max", sf_nmax, "largest chain length to try per m");
  family->callback([&] {
    CheckSpec spec;
    spec.name = "scan-family";
    spec.kind = "scan-family";
    spec.params["p"] = flags.p;
    spec.params["vars"] = flags.vars.empty() ? "x,y,z,w,t" : flags.vars;
    spec.params["f"] = sf_f;
    spec.params["m"] = sf_m;
    spec.params["cap"] = sf_cap;
    spec.params["n-max"] = sf_nmax;
    run(spec);
  });

  // singular-scan
  auto* scan = app.add_subcommand("singular-scan",
                                  "projective singular-point scan over small extension fields");
  static std::string sc_poly, sc_emax;
  add_ring_flags(scan, flags);
  add_output_flags(scan, flags);
  scan->add_option("--poly", sc_poly, "homogeneous polynomial")->required();
  scan->add_option("--emax", sc_emax, "largest extension degree to scan")->required();
  scan->callback([&] {
    CheckSpec spec;
    spec.name = "singular-scan";
    spec.kind = "singular-scan";
    fill_ring_params(spec, flags);
    spec.params["poly"] = sc_poly;
    spec.params["emax"] = sc_emax;
    run(spec);
  });

  // verify-paper
  auto* verify = app.add_subcommand("verify-paper",
                                    "run the bundled verification scenario end to end");
  static std::string v_scenario, v_section, v_tier = "default";
  static int v_threads = 1;
  add_output_flags(verify, flags);
  verify->add_option("--scenario", v_scenario, "scenario file (default: the bundled scenario)");
  verify->add_option("--section", v_section, "run only checks from this section");
  verify->add_option("--tier", v_tier, "default (skip slow checks) or full")
      ->check(CLI::IsMember({"default", "full"}));
  verify->add_option("--threads", v_threads, "number of worker threads");
  verify->callback([&] {
    std::string text;
    if (v_scenario.empty()) {
      text = qfs::builtin_paper_scenario();
    } else {
      std::ifstream in(v_scenario);
      if (!in) {
        std::cerr << "cannot read scenario file " << v_scenario << "\n";
        exit_code = 2;
        return;
      }
      text.assign(std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>());
    }
    qfs::Scenario scenario = qfs::parse_scenario(text);
    qfs::RunOptions options;
    options.threads = v_threads;
    options.section = v_section;
    options.tier = v_tier;
    options.budget = make_budget(flags);
    options.format = flags.format;
    Report report = qfs::run_scenario(scenario, options);
    int io = emit(report, flags);
    exit_code = io != 0 ? io : report.exit_code();
  });

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  } catch (const qfs::Error& e) {
    std::cerr << e.what() << "\n";
    return 2;
  }
  return exit_code;
}
