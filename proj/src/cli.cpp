#include "qcorr/cli.hpp"

#include <CLI11.hpp>

#include <cstdlib>
#include <iostream>
#include <optional>

#include "qcorr/io.hpp"
#include "qcorr/report.hpp"
#include "qcorr/zoo.hpp"

namespace qcorr {

namespace {

struct CommonOptions {
  std::uint64_t seed = 42;
  int starts = 24;
  double ftol = 1e-8;
  int max_iterations = 2000;
  int threads = 1;
  std::string partition_mode = "per-cut";
  std::string sides = "both";
  bool json = false;
  bool no_timing = false;
  std::string output;
};

void add_common(CLI::App* cmd, CommonOptions& o, bool optimizer) {
  cmd->add_option("--seed", o.seed, "Random seed (default 42, or $QCORR_SEED)");
  if (optimizer) {
    cmd->add_option("--starts", o.starts, "Random optimizer starts")->check(CLI::PositiveNumber);
    cmd->add_option("--ftol", o.ftol, "Simplex objective tolerance")->check(CLI::PositiveNumber);
    cmd->add_option("--max-iter", o.max_iterations, "Iterations per local search")->check(CLI::PositiveNumber);
    cmd->add_option("--threads", o.threads, "Worker threads, 0 = all cores")->check(CLI::NonNegativeNumber);
    cmd->add_option("--partition-mode", o.partition_mode, "Block basis parameterization")
        ->check(CLI::IsMember({"per-cut", "per-site"}));
    cmd->add_option("--sides", o.sides, "Measured blocks of each cut")->check(CLI::IsMember({"both", "gamma"}));
  }
  cmd->add_flag("--json", o.json, "Emit JSON instead of text");
  cmd->add_flag("--no-timing", o.no_timing, "Omit wall times from the report");
  cmd->add_option("-o,--output", o.output, "Write the report to a file");
}

OptimizerConfig make_config(const CommonOptions& o) {
  OptimizerConfig cfg;
  cfg.seed = o.seed;
  cfg.n_random_starts = o.starts;
  cfg.ftol = o.ftol;
  cfg.max_iterations = o.max_iterations;
  cfg.threads = o.threads;
  cfg.mode = o.partition_mode == "per-site" ? BasisMode::PerSite : BasisMode::PerCut;
  cfg.sides = o.sides == "gamma" ? MeasurementSides::GammaOnly : MeasurementSides::Both;
  return cfg;
}

void emit(const std::string& text, const std::string& path, std::ostream& out) {
  if (path.empty()) {
    out << text;
  } else {
    write_text(path, text);
  }
}

void emit_report(const AnalysisReport& r, const CommonOptions& o, std::ostream& out) {
  emit(o.json ? report_to_json(r).dump(2) + "\n" : report_to_text(r), o.output, out);
}

int exit_code_for(const Error& e) {
  if (e.is_validation()) return kExitValidation;
  return kExitUsage;
}

std::uint64_t default_seed() {
  if (const char* env = std::getenv("QCORR_SEED")) {
    try {
      return std::stoull(env);
    } catch (const std::exception&) {
      throw Error(ErrorCode::BadParams, std::string("QCORR_SEED is not an unsigned integer: ") + env);
    }
  }
  return 42;
}

}  // namespace

int cli_main(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Quantum correlation measures for multipartite states", "qcorr"};
  app.require_subcommand(1);

  CommonOptions common;
  std::string state_path;
  try {
    common.seed = default_seed();
  } catch (const Error& e) {
    err << "qcorr: " << e.what() << '\n';
    return kExitUsage;
  }

  // zoo
  auto* zoo_cmd = app.add_subcommand("zoo", "Write a named test state as a state file");
  std::string zoo_name;
  ZooParams zp;
  int zoo_n = 0;
  double zoo_p = 0.0;
  Dims zoo_dims;
  int zoo_rank = 0;
  zoo_cmd->add_option("name", zoo_name, "State name")->required();
  auto* n_opt = zoo_cmd->add_option("--n", zoo_n, "Number of parties (ghz, w)");
  auto* p_opt = zoo_cmd->add_option("--p", zoo_p, "Mixing parameter (werner)");
  auto* dims_opt = zoo_cmd->add_option("--dims", zoo_dims, "Subsystem dimensions, e.g. 2,2,3")->delimiter(',');
  auto* rank_opt = zoo_cmd->add_option("--rank", zoo_rank, "Rank (random-mixed)");
  zoo_cmd->add_option("--seed", common.seed, "Random seed (default 42, or $QCORR_SEED)");
  zoo_cmd->add_option("-o,--output", common.output, "Output path (default: stdout)");

  // analyze
  auto* analyze_cmd = app.add_subcommand("analyze", "Witness, classicality checks, entropies and optional discord");
  std::vector<std::string> measures{"witness", "gmc", "entropy"};
  analyze_cmd->add_option("state", state_path, "State file")->required();
  analyze_cmd->add_option("--measures", measures, "Comma list of witness,gmc,entropy,discord,concurrence")
      ->delimiter(',')
      ->check(CLI::IsMember({"witness", "gmc", "entropy", "discord", "concurrence"}));
  std::string analyze_cut;
  analyze_cmd->add_option("--cut", analyze_cut, "Restrict discord to one cut, e.g. \"1|23\"");
  add_common(analyze_cmd, common, true);

  // witness
  auto* witness_cmd = app.add_subcommand("witness", "W(rho) = min over cuts of D2(rho, rho_g x rho_g')");
  witness_cmd->add_option("state", state_path, "State file")->required();
  add_common(witness_cmd, common, false);

  // discord
  auto* discord_cmd = app.add_subcommand("discord", "gamma-discord of one cut, or genuine discord over all cuts");
  discord_cmd->add_option("state", state_path, "State file")->required();
  std::string discord_cut;
  discord_cmd->add_option("--cut", discord_cut, "Cut, e.g. \"1|23\" (default: all cuts)");
  add_common(discord_cmd, common, true);

  // gmc
  auto* gmc_cmd = app.add_subcommand("gmc", "Classicality checks: commutator condition and measurement fixed point");
  gmc_cmd->add_option("state", state_path, "State file")->required();
  std::vector<std::string> basis_files;
  std::string gmc_cut;
  gmc_cmd->add_option("--fixed-point", basis_files, "Basis files for the gamma and gamma' blocks")->expected(2);
  gmc_cmd->add_option("--cut", gmc_cut, "Cut the fixed-point bases refer to");
  add_common(gmc_cmd, common, false);

  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "qcorr: " << e.what() << '\n';
    if (auto* sub = app.get_subcommands().empty() ? nullptr : app.get_subcommands().front()) {
      err << sub->help();
    }
    return kExitUsage;
  }

  try {
    if (zoo_cmd->parsed()) {
      if (*n_opt) zp.n = zoo_n;
      if (*p_opt) zp.p = zoo_p;
      if (*dims_opt) zp.dims = zoo_dims;
      if (*rank_opt) zp.rank = zoo_rank;
      zp.seed = common.seed;
      const StateFile f = zoo(zoo_name, zp);
      to_density(f);
      emit(to_json(f).dump(2) + "\n", common.output, out);
      return kExitOk;
    }

    const DensityMatrix rho = parse_state(state_path);
    AnalysisRequest req;
    req.config = make_config(common);
    req.timing = !common.no_timing;
    std::string command;

    if (analyze_cmd->parsed()) {
      command = "analyze";
      auto has = [&](const char* m) { return std::find(measures.begin(), measures.end(), m) != measures.end(); };
      req.witness = has("witness");
      req.gmc = has("gmc");
      req.entropy = has("entropy");
      req.discord = has("discord");
      req.concurrence = has("concurrence");
      if (!analyze_cut.empty()) req.cut = Partition::parse(analyze_cut, rho.dims());
    } else if (witness_cmd->parsed()) {
      command = "witness";
      req.entropy = req.gmc = false;
    } else if (discord_cmd->parsed()) {
      command = "discord";
      req.entropy = req.gmc = req.witness = false;
      req.discord = true;
      if (!discord_cut.empty()) req.cut = Partition::parse(discord_cut, rho.dims());
    } else {
      command = "gmc";
      req.entropy = req.witness = false;
      if (!basis_files.empty()) {
        if (gmc_cut.empty()) throw Error(ErrorCode::BadParams, "--fixed-point needs --cut");
        const Partition cut = Partition::parse(gmc_cut, rho.dims());
        req.fixed_point.emplace(cut, read_basis_file(basis_files[0]), read_basis_file(basis_files[1]));
      }
    }

    AnalysisReport report = analyze(rho, req);
    report.command = command;
    emit_report(report, common, out);
    return kExitOk;
  } catch (const Error& e) {
    err << "qcorr: " << e.what() << '\n';
    return exit_code_for(e);
  }
}

}  // namespace qcorr
