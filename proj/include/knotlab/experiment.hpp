#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <tuple>
#include <utility>
#include <vector>

#include "knotlab/classify.hpp"
#include "knotlab/direction_set.hpp"
#include "knotlab/geometry.hpp"
#include "knotlab/knot_table.hpp"

namespace knotlab {

struct HostSample {
  int host_id = 0;
  Polygon3 polygon;
  KnotLabel true_label;
};

struct HarvestBudgetExceeded : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct HarvestOptions {
  long max_draws = 10'000'000;
  int batch = 512;            ///< draws identified per parallel batch
  bool allow_partial = false; ///< return what was found instead of throwing
  int threads = 0;            ///< 0: OpenMP default
};

struct HarvestResult {
  std::vector<HostSample> hosts;
  /// Label counts over every draw, in display order.
  std::vector<std::pair<KnotLabel, long>> frequency;
  long draws = 0;
  bool complete = true;
};

/// Rejection-samples closed equilateral n-gons until `per_label` hosts of
/// each target label are found. Draw i uses its own stream, and hosts are
/// accepted in draw order, so the result does not depend on threads.
HarvestResult harvest_hosts(const std::vector<KnotLabel> &targets, int per_label, int n,
                            std::uint64_t seed, const KnotTable &table,
                            const HarvestOptions &options = {});

/// The first `count` draws, whatever their knot type.
HarvestResult sample_mixed_hosts(int count, int n, std::uint64_t seed, const KnotTable &table,
                                 const HarvestOptions &options = {});

/// Subarc of k edges starting at vertex `start` (indices mod n). For k = n
/// the chain returns to its first vertex.
OpenArc subchain(const Polygon3 &polygon, int start, int k);
/// All n cyclic subarcs with k edges.
std::vector<OpenArc> enumerate_subchains(const Polygon3 &polygon, int k);

struct TrialRecord {
  int host_id = 0;
  int k = 0;
  int start = 0;
  Method method = Method::pu;
  KnotLabel true_label;
  KnotLabel predicted;
  bool correct = false;
  double top_weight = 0.0;
  bool tie_broken = false;
};

struct CampaignConfig {
  int n = 100;
  std::vector<Method> methods{Method::su, Method::pu, Method::sr, Method::pr};
  std::vector<int> k_list;
  int starts_per_k = 100; ///< subsampled without replacement when < n
  int closures = 100;     ///< PR closures per subarc
  std::uint64_t seed = 1;
  int threads = 0; ///< 0: OpenMP default
};

/// Subchain starts used for (host, k): all n, or a seeded subset.
std::vector<int> campaign_starts(const CampaignConfig &config, int host_id, int k);

/// Runs every (host, k, start, method) trial in parallel. Each trial owns a
/// stream derived from its coordinates and records land at fixed indices,
/// so the output is identical for any thread count.
std::vector<TrialRecord> run_accuracy(const std::vector<HostSample> &hosts,
                                      const CampaignConfig &config, const KnotTable &table,
                                      const DirectionSet &directions);

/// Single-threaded reference implementation of run_accuracy.
std::vector<TrialRecord> run_accuracy_serial(const std::vector<HostSample> &hosts,
                                             const CampaignConfig &config,
                                             const KnotTable &table,
                                             const DirectionSet &directions);

// ------------------------------------------------------------ aggregation

struct RateCell {
  long hits = 0;
  long total = 0;
  double value() const { return total ? static_cast<double>(hits) / total : 0.0; }
  /// Binomial standard error.
  double std_error() const;
  friend bool operator==(const RateCell &, const RateCell &) = default;
};

using MethodLabelK = std::tuple<Method, std::string, int>;
using MethodK = std::pair<Method, int>;
using MethodLabel = std::pair<Method, std::string>;

struct MeanPpv {
  double mean = 0.0;
  int labels = 0;
  double mean_nontrivial = 0.0; ///< excluding 0_1 predictions
  int labels_nontrivial = 0;
  friend bool operator==(const MeanPpv &, const MeanPpv &) = default;
};

/// Prior-weighted accuracy at one (method, k).
struct WeightedAccuracy {
  double over_sampled = 0.0; ///< divided by the prior mass of the labels present
  double prior_mass = 0.0;   ///< summed prior of the labels present
  /// Normalized over all knot types, counting unsampled types as misses.
  double over_all() const { return over_sampled * prior_mass; }
  friend bool operator==(const WeightedAccuracy &, const WeightedAccuracy &) = default;
};

struct MetricsTable {
  std::map<MethodLabelK, RateCell> accuracy; ///< by true label
  std::map<MethodLabelK, RateCell> ppv;      ///< by predicted label
  std::map<MethodK, WeightedAccuracy> overall_accuracy;
  std::map<MethodK, MeanPpv> mean_ppv;
  std::map<MethodLabel, std::optional<int>> threshold50;
  friend bool operator==(const MetricsTable &, const MetricsTable &) = default;
};

/// Knot-type probabilities for reweighting stratified campaigns.
class KnotFrequencyPrior {
public:
  KnotFrequencyPrior() = default;
  explicit KnotFrequencyPrior(std::map<std::string, double> probabilities);

  /// Percentages from the 5,000,000-sample census of random 100-gons,
  /// extended to mirror images (P(-K) = P(+K)).
  static KnotFrequencyPrior random_100gon_census();
  /// Empirical frequencies, e.g. from a harvest frequency report.
  static KnotFrequencyPrior from_counts(const std::vector<std::pair<KnotLabel, long>> &counts);

  std::optional<double> probability(const KnotLabel &label) const;
  /// 1 minus the listed probabilities.
  double remainder() const;
  const std::map<std::string, double> &entries() const { return probabilities_; }

private:
  std::map<std::string, double> probabilities_;
};

struct MissingPrior : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

std::map<MethodLabelK, RateCell> accuracy_table(const std::vector<TrialRecord> &records);
/// Accuracy over all trials regardless of label (for naturally mixed hosts).
std::map<MethodK, RateCell> pooled_accuracy(const std::vector<TrialRecord> &records);
/// Sum_K prior(K) * accuracy(K) over the true labels present, divided by
/// the sum of their priors (which is kept as prior_mass). Throws
/// MissingPrior for an unlisted label.
std::map<MethodK, WeightedAccuracy> weighted_overall_accuracy(const std::vector<TrialRecord> &records,
                                                    const KnotFrequencyPrior &prior);
std::map<MethodLabelK, RateCell> compute_ppv(const std::vector<TrialRecord> &records);
/// Unweighted mean PPV over the labels each method emitted at each k.
std::map<MethodK, MeanPpv> mean_ppv(const std::map<MethodLabelK, RateCell> &ppv);
/// Smallest k with accuracy >= 0.5 per (method, label); nullopt if none.
std::map<MethodLabel, std::optional<int>>
threshold_50(const std::map<MethodLabelK, RateCell> &accuracy);

MetricsTable build_metrics(const std::vector<TrialRecord> &records,
                           const KnotFrequencyPrior &prior);

} // namespace knotlab
