#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "knotlab/experiment.hpp"

namespace knotlab {

struct EmitOptions {
  bool accuracy = true;   ///< accuracy.csv and overall_accuracy.csv
  bool ppv = true;        ///< ppv.csv and mean_ppv.csv
  bool thresholds = true; ///< threshold50.csv
  bool gnuplot = false;   ///< also write whitespace-separated .dat files
};

void write_accuracy_csv(const MetricsTable &m, std::ostream &out);
void write_overall_accuracy_csv(const MetricsTable &m, std::ostream &out);
void write_ppv_csv(const MetricsTable &m, std::ostream &out);
void write_mean_ppv_csv(const MetricsTable &m, std::ostream &out);
void write_threshold_csv(const MetricsTable &m, std::ostream &out);

/// Writes the selected files into `dir` (created if missing) and returns
/// their paths.
std::vector<std::string> emit_metrics(const MetricsTable &m, const std::string &dir,
                                      const EmitOptions &options = {});

/// Reads back whichever metric CSV files exist in `dir`.
MetricsTable read_metrics(const std::string &dir);

} // namespace knotlab
