#include "qcorr/report.hpp"

#include <algorithm>
#include <chrono>
#include <iomanip>
#include <sstream>

namespace qcorr {

namespace {

template <typename F>
auto timed(AnalysisReport& report, const std::string& section, F&& fn) {
  const auto start = std::chrono::steady_clock::now();
  auto result = fn();
  const std::chrono::duration<double> dt = std::chrono::steady_clock::now() - start;
  report.wall_times.emplace_back(section, dt.count());
  return result;
}

std::string_view mode_name(BasisMode m) { return m == BasisMode::PerSite ? "per-site" : "per-cut"; }
std::string_view sides_name(MeasurementSides s) { return s == MeasurementSides::GammaOnly ? "gamma" : "both"; }

json partition_values(const std::vector<PartitionValue>& values, const char* key) {
  json arr = json::array();
  for (const auto& pv : values) arr.push_back(json{{"partition", pv.cut.to_string()}, {key, pv.value}});
  return arr;
}

json discord_json(const PartitionDiscord& pd) {
  const DiscordResult& r = pd.result;
  json j{{"partition", pd.cut.to_string()},
         {"value", r.value},
         {"raw_value", r.raw_value},
         {"converged", r.converged},
         {"evaluations", r.evaluations},
         {"per_start_values", r.per_start_values}};
  if (r.argmin) {
    j["argmin"] = json{{"basis_gamma", basis_to_json(r.argmin->basis_gamma())},
                       {"basis_gamma_prime", basis_to_json(r.argmin->basis_gamma_prime())}};
  }
  return j;
}

bool matches_min(double reported, const std::vector<double>& values) {
  if (values.empty()) return false;
  return reported == *std::min_element(values.begin(), values.end());
}

class TextWriter {
 public:
  TextWriter() { os_ << std::setprecision(6); }

  void heading(const std::string& h) { os_ << "\n[" << h << "]\n"; }
  template <typename T>
  void field(const std::string& name, const T& value) {
    os_ << "  " << std::left << std::setw(28) << name << value << '\n';
  }
  void row(const std::string& cut, double value) {
    os_ << "    " << std::left << std::setw(12) << cut << std::right << std::setw(14) << value << '\n';
  }
  void line(const std::string& s) { os_ << s << '\n'; }
  std::string str() const { return os_.str(); }

 private:
  std::ostringstream os_;
};

std::string dims_text(const Dims& dims) {
  std::string s;
  for (std::size_t i = 0; i < dims.size(); ++i) s += (i ? "x" : "") + std::to_string(dims[i]);
  return s;
}

}  // namespace

AnalysisReport analyze(const DensityMatrix& rho, const AnalysisRequest& request) {
  request.config.validate();
  AnalysisReport report;
  report.label = rho.label();
  report.dims = rho.dims();
  report.config = request.config;
  report.timing = request.timing;

  if (request.entropy) {
    report.entropy = timed(report, "entropy", [&] {
      EntropySummary s;
      s.entropy = von_neumann_entropy(rho);
      s.purity = rho.purity();
      for (const auto& cut : enumerate_bipartitions(rho.dims())) {
        s.mutual_information.push_back(PartitionValue{cut, mutual_information(rho, cut)});
      }
      return s;
    });
  }
  if (request.witness) report.witness = timed(report, "witness", [&] { return witness_W(rho); });
  if (request.gmc) {
    report.gmc = timed(report, "gmc", [&] {
      GmcCheckReport g = gmc_commutator_check(rho);
      if (request.fixed_point) g.fixed_point = gmc_fixed_point(rho, *request.fixed_point);
      return g;
    });
  }
  if (request.discord) {
    if (request.cut) {
      report.cut_discord = timed(report, "discord", [&] {
        const auto cuts = enumerate_bipartitions(rho.dims());
        const auto it = std::find(cuts.begin(), cuts.end(), *request.cut);
        const auto index = static_cast<std::uint64_t>(it - cuts.begin());
        return PartitionDiscord{*request.cut, gamma_discord(rho, *request.cut, request.config, index)};
      });
    } else {
      report.discord = timed(report, "discord", [&] { return genuine_discord(rho, request.config); });
    }
  }
  if (request.concurrence) {
    report.concurrence = timed(report, "concurrence", [&] { return gme_concurrence_upper(rho, request.config); });
  }
  return report;
}

bool minima_consistent(const AnalysisReport& report) {
  if (report.witness) {
    std::vector<double> v;
    for (const auto& pv : report.witness->per_partition) v.push_back(pv.value);
    if (!matches_min(report.witness->value, v)) return false;
  }
  if (report.gmc) {
    std::vector<double> v;
    for (const auto& pv : report.gmc->commutator_norms) v.push_back(pv.value);
    if (!matches_min(report.gmc->min_norm, v)) return false;
  }
  if (report.discord) {
    std::vector<double> v;
    for (const auto& pd : report.discord->per_partition) {
      v.push_back(pd.result.value);
      if (!matches_min(pd.result.raw_value, pd.result.per_start_values)) return false;
    }
    if (!matches_min(report.discord->value, v)) return false;
  }
  if (report.cut_discord) {
    const auto& r = report.cut_discord->result;
    if (!matches_min(r.raw_value, r.per_start_values)) return false;
  }
  if (report.concurrence) {
    const auto& c = report.concurrence;
    if (!matches_min(c->value, c->per_start_values) && !(c->value == 0.0)) return false;
  }
  return true;
}

json report_to_json(const AnalysisReport& report) {
  json j;
  j["command"] = report.command;
  j["input"] = json{{"label", report.label}, {"dims", report.dims}};
  const OptimizerConfig& c = report.config;
  j["config"] = json{{"seed", c.seed},
                     {"starts", c.n_random_starts},
                     {"canonical_starts", c.include_canonical_starts},
                     {"max_iterations", c.max_iterations},
                     {"ftol", c.ftol},
                     {"step", c.step},
                     {"partition_mode", mode_name(c.mode)},
                     {"sides", sides_name(c.sides)},
                     {"tolerances",
                      json{{"validation", tol::kValidation},
                           {"eigenvalue_clip", tol::kClip},
                           {"commutator", kCommutatorThreshold},
                           {"fixed_point", kFixedPointThreshold}}}};

  if (report.entropy) {
    j["entropy"] = json{{"von_neumann_entropy", report.entropy->entropy},
                        {"purity", report.entropy->purity},
                        {"mutual_information", partition_values(report.entropy->mutual_information, "value")}};
  }
  if (report.witness) {
    const WitnessReport& w = *report.witness;
    json s{{"per_partition", partition_values(w.per_partition, "d2")},
           {"value", w.value},
           {"best_partition", w.best_partition().to_string()}};
    if (w.gme_concurrence) {
      s["gme_concurrence"] = *w.gme_concurrence;
      s["sqrt2_gme_concurrence"] = *w.sqrt2_gme_concurrence;
      s["note"] =
          "pure input: W equals sqrt(2) * C_GME with C_GME^2 = min over cuts of 1 - Tr rho_g^2; "
          "W and C_GME themselves differ by the factor sqrt(2)";
    }
    j["witness"] = std::move(s);
  }
  if (report.gmc) {
    const GmcCheckReport& g = *report.gmc;
    json s{{"commutator_norms", partition_values(g.commutator_norms, "norm")},
           {"min_norm", g.min_norm},
           {"best_partition", g.best_partition().to_string()},
           {"verdict", g.verdict},
           {"caveat", g.caveat}};
    if (g.fixed_point) {
      s["fixed_point"] = json{{"distance", g.fixed_point->distance},
                              {"max_commutator", g.fixed_point->max_commutator},
                              {"certified", g.fixed_point->certified}};
    }
    j["gmc"] = std::move(s);
  }
  if (report.discord) {
    json per = json::array();
    for (const auto& pd : report.discord->per_partition) per.push_back(discord_json(pd));
    j["discord"] = json{{"per_partition", std::move(per)},
                        {"genuine_discord", report.discord->value},
                        {"best_partition", report.discord->best_partition().to_string()}};
  }
  if (report.cut_discord) j["discord"] = json{{"cut", discord_json(*report.cut_discord)}};
  if (report.concurrence) {
    const ConvexRoofResult& r = *report.concurrence;
    j["concurrence"] = json{{"gme_concurrence_upper_bound", r.value},
                            {"eigen_decomposition_value", r.eigen_decomposition_value},
                            {"rank", r.rank},
                            {"ensemble_size", r.ensemble_size},
                            {"converged", r.converged},
                            {"evaluations", r.evaluations},
                            {"per_start_values", r.per_start_values}};
  }
  if (report.timing) {
    json t = json::object();
    for (const auto& [name, secs] : report.wall_times) t[name] = secs;
    j["wall_time_seconds"] = std::move(t);
  }
  return j;
}

std::string report_to_text(const AnalysisReport& report) {
  TextWriter w;
  w.line("qcorr " + report.command + ": " + (report.label.empty() ? "(unlabelled)" : report.label) + "  dims " +
         dims_text(report.dims));
  w.field("seed", report.config.seed);
  w.field("random starts", report.config.n_random_starts);
  w.field("ftol", report.config.ftol);
  w.field("partition mode", mode_name(report.config.mode));

  if (report.entropy) {
    w.heading("entropy");
    w.field("S(rho) [bits]", report.entropy->entropy);
    w.field("purity", report.entropy->purity);
    w.line("  mutual information [bits]:");
    for (const auto& pv : report.entropy->mutual_information) w.row(pv.cut.to_string(), pv.value);
  }
  if (report.witness) {
    w.heading("witness");
    w.line("  D2(rho, rho_g x rho_g'):");
    for (const auto& pv : report.witness->per_partition) w.row(pv.cut.to_string(), pv.value);
    w.field("W", report.witness->value);
    w.field("best partition", report.witness->best_partition().to_string());
    if (report.witness->gme_concurrence) {
      w.field("C_GME (pure)", *report.witness->gme_concurrence);
      w.field("sqrt(2) * C_GME", *report.witness->sqrt2_gme_concurrence);
    }
  }
  if (report.gmc) {
    w.heading("gmc");
    w.line("  ||[rho, rho_g x rho_g']||_F:");
    for (const auto& pv : report.gmc->commutator_norms) w.row(pv.cut.to_string(), pv.value);
    w.field("min norm", report.gmc->min_norm);
    w.field("verdict", report.gmc->verdict);
    w.line("  note: " + report.gmc->caveat);
    if (report.gmc->fixed_point) {
      w.field("fixed-point distance", report.gmc->fixed_point->distance);
      w.field("max ||[rho, Pi_j]||_F", report.gmc->fixed_point->max_commutator);
      w.field("fixed point certified", report.gmc->fixed_point->certified ? "yes" : "no");
    }
  }
  if (report.discord) {
    w.heading("discord");
    w.line("  gamma-discord [bits]:");
    for (const auto& pd : report.discord->per_partition) w.row(pd.cut.to_string(), pd.result.value);
    w.field("genuine discord", report.discord->value);
    w.field("best partition", report.discord->best_partition().to_string());
  }
  if (report.cut_discord) {
    const auto& r = report.cut_discord->result;
    w.heading("discord");
    w.field("cut", report.cut_discord->cut.to_string());
    w.field("gamma-discord [bits]", r.value);
    w.field("converged", r.converged ? "yes" : "no");
    w.field("evaluations", r.evaluations);
    w.field("starts", r.per_start_values.size());
  }
  if (report.concurrence) {
    w.heading("concurrence");
    w.field("C_GME upper bound", report.concurrence->value);
    w.field("eigen-decomposition value", report.concurrence->eigen_decomposition_value);
    w.field("rank", report.concurrence->rank);
  }
  if (report.timing && !report.wall_times.empty()) {
    w.heading("wall time [s]");
    for (const auto& [name, secs] : report.wall_times) w.field(name, secs);
  }
  return w.str();
}

}  // namespace qcorr
