#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "qcorr/correlations.hpp"
#include "qcorr/io.hpp"
#include "qcorr/witness.hpp"

namespace qcorr {

struct EntropySummary {
  double entropy = 0.0;
  double purity = 0.0;
  std::vector<PartitionValue> mutual_information;
};

struct AnalysisRequest {
  bool entropy = true;
  bool witness = true;
  bool gmc = true;
  bool discord = false;
  bool concurrence = false;
  /// Restricts the discord section to one cut.
  std::optional<Partition> cut;
  /// Adds a fixed-point distance for this measurement to the gmc section.
  std::optional<CutMeasurement> fixed_point;
  OptimizerConfig config;
  bool timing = true;
};

struct AnalysisReport {
  std::string command = "analyze";
  std::string label;
  Dims dims;
  OptimizerConfig config;
  std::optional<EntropySummary> entropy;
  std::optional<WitnessReport> witness;
  std::optional<GmcCheckReport> gmc;
  std::optional<GenuineDiscordResult> discord;
  std::optional<PartitionDiscord> cut_discord;
  std::optional<ConvexRoofResult> concurrence;
  bool timing = true;
  std::vector<std::pair<std::string, double>> wall_times;
};

AnalysisReport analyze(const DensityMatrix& rho, const AnalysisRequest& request);

/// Every reported minimum equals the minimum of its per-partition list.
bool minima_consistent(const AnalysisReport& report);

/// Full-precision JSON; wall times only when report.timing is set.
json report_to_json(const AnalysisReport& report);
/// Aligned plain text, 6 significant digits.
std::string report_to_text(const AnalysisReport& report);

}  // namespace qcorr
