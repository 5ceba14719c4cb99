#include "knotlab/experiment.hpp"

#include <algorithm>
#include <cmath>
#include <exception>
#include <numeric>
#include <unordered_map>

#include <omp.h>

#include "knotlab/sampling.hpp"

namespace knotlab {
namespace {

// Stream-id tags separating the random streams of different campaign steps.
constexpr std::uint64_t kHostTag = 0x686f7374;   // host draws
constexpr std::uint64_t kStartTag = 0x73746172;  // start subsampling
constexpr std::uint64_t kTrialTag = 0x7472696c;  // classifier trials

int thread_count(int requested) { return requested > 0 ? requested : omp_get_max_threads(); }

struct Draw {
  Polygon3 polygon;
  KnotLabel label;
};

Draw draw_host(int n, std::uint64_t seed, long index, const KnotTable &table,
               HomflyEngine &engine) {
  RngStream rng(seed, derive_stream_id({kHostTag, static_cast<std::uint64_t>(index)}));
  Polygon3 p = sample_closed_equilateral(n, rng);
  KnotLabel label = identify(p, table, rng, engine);
  return {std::move(p), std::move(label)};
}

// Draws [first, first + count) in parallel, results in draw order.
std::vector<Draw> draw_batch(int n, std::uint64_t seed, long first, int count,
                             const KnotTable &table, int threads) {
  std::vector<std::optional<Draw>> slots(count);
  std::exception_ptr error;
#pragma omp parallel num_threads(threads)
  {
    HomflyEngine engine;
#pragma omp for schedule(dynamic, 8)
    for (int i = 0; i < count; ++i) {
      try {
        slots[i] = draw_host(n, seed, first + i, table, engine);
      } catch (...) {
#pragma omp critical
        if (!error)
          error = std::current_exception();
      }
    }
  }
  if (error)
    std::rethrow_exception(error);
  std::vector<Draw> out;
  out.reserve(count);
  for (auto &s : slots)
    out.push_back(std::move(*s));
  return out;
}

std::vector<std::pair<KnotLabel, long>>
sorted_counts(const std::unordered_map<KnotLabel, long, KnotLabelHash> &counts) {
  std::vector<std::pair<KnotLabel, long>> out(counts.begin(), counts.end());
  std::sort(out.begin(), out.end(),
            [](const auto &a, const auto &b) { return label_display_less(a.first, b.first); });
  return out;
}

} // namespace

HarvestResult harvest_hosts(const std::vector<KnotLabel> &targets, int per_label, int n,
                            std::uint64_t seed, const KnotTable &table,
                            const HarvestOptions &options) {
  if (per_label < 0)
    throw std::invalid_argument("per_label must be non-negative");
  for (const auto &t : targets)
    if (!table.find(t))
      throw std::invalid_argument("target label " + t.str() + " is not in the knot table");
  HarvestResult result;
  std::unordered_map<KnotLabel, long, KnotLabelHash> counts;
  std::unordered_map<KnotLabel, int, KnotLabelHash> found;
  auto done = [&] {
    for (const auto &t : targets)
      if (found[t] < per_label)
        return false;
    return true;
  };
  const int threads = thread_count(options.threads);
  while (!done() && result.draws < options.max_draws) {
    const int batch =
        static_cast<int>(std::min<long>(options.batch, options.max_draws - result.draws));
    auto draws = draw_batch(n, seed, result.draws, batch, table, threads);
    for (auto &d : draws) {
      ++counts[d.label];
      ++result.draws;
      const bool wanted = std::find(targets.begin(), targets.end(), d.label) != targets.end();
      if (wanted && found[d.label] < per_label) {
        ++found[d.label];
        const int id = static_cast<int>(result.hosts.size());
        result.hosts.push_back({id, std::move(d.polygon), d.label});
      }
      if (done())
        break;
    }
  }
  result.frequency = sorted_counts(counts);
  result.complete = done();
  if (!result.complete && !options.allow_partial)
    throw HarvestBudgetExceeded("sample budget of " + std::to_string(options.max_draws) +
                                " draws exhausted before every target label was found");
  return result;
}

HarvestResult sample_mixed_hosts(int count, int n, std::uint64_t seed, const KnotTable &table,
                                 const HarvestOptions &options) {
  HarvestResult result;
  std::unordered_map<KnotLabel, long, KnotLabelHash> counts;
  const int threads = thread_count(options.threads);
  while (result.draws < count) {
    const int batch = static_cast<int>(std::min<long>(options.batch, count - result.draws));
    for (auto &d : draw_batch(n, seed, result.draws, batch, table, threads)) {
      ++counts[d.label];
      const int id = static_cast<int>(result.draws++);
      result.hosts.push_back({id, std::move(d.polygon), std::move(d.label)});
    }
  }
  result.frequency = sorted_counts(counts);
  return result;
}

OpenArc subchain(const Polygon3 &polygon, int start, int k) {
  const int n = static_cast<int>(polygon.size());
  if (k < 1 || k > n)
    throw std::out_of_range("subchain length must be in [1, n]");
  std::vector<Vec3> v;
  v.reserve(k + 1);
  for (int i = 0; i <= k; ++i)
    v.push_back(polygon.vertex(static_cast<std::size_t>(((start + i) % n + n) % n)));
  return OpenArc(std::move(v));
}

std::vector<OpenArc> enumerate_subchains(const Polygon3 &polygon, int k) {
  const int n = static_cast<int>(polygon.size());
  if (k < 1 || k > n)
    throw std::out_of_range("subchain length must be in [1, n]");
  std::vector<OpenArc> out;
  out.reserve(n);
  for (int s = 0; s < n; ++s)
    out.push_back(subchain(polygon, s, k));
  return out;
}

std::vector<int> campaign_starts(const CampaignConfig &config, int host_id, int k) {
  const int n = config.n;
  std::vector<int> all(n);
  std::iota(all.begin(), all.end(), 0);
  if (config.starts_per_k >= n)
    return all;
  if (config.starts_per_k < 1)
    throw std::invalid_argument("starts_per_k must be positive");
  RngStream rng(config.seed, derive_stream_id({kStartTag, static_cast<std::uint64_t>(host_id),
                                               static_cast<std::uint64_t>(k)}));
  // Partial Fisher-Yates: a uniform subset without replacement.
  for (int i = 0; i < config.starts_per_k; ++i) {
    const int j = i + static_cast<int>(rng.below(n - i));
    std::swap(all[i], all[j]);
  }
  all.resize(config.starts_per_k);
  std::sort(all.begin(), all.end());
  return all;
}

namespace {

struct TrialTask {
  std::size_t host;
  int k;
  int start;
  Method method;
};

std::vector<TrialTask> plan_trials(const std::vector<HostSample> &hosts,
                                   const CampaignConfig &config) {
  for (int k : config.k_list)
    if (k < 1 || k > config.n)
      throw std::out_of_range("k-grid value " + std::to_string(k) + " outside [1, n]");
  std::vector<TrialTask> tasks;
  for (std::size_t h = 0; h < hosts.size(); ++h) {
    if (static_cast<int>(hosts[h].polygon.size()) != config.n)
      throw std::invalid_argument("host polygon size differs from n");
    for (int k : config.k_list)
      for (int start : campaign_starts(config, hosts[h].host_id, k))
        for (Method m : config.methods)
          tasks.push_back({h, k, start, m});
  }
  return tasks;
}

TrialRecord run_trial(const TrialTask &task, const HostSample &host, const CampaignConfig &config,
                      const ClassifierContext &ctx) {
  RngStream rng(config.seed,
                derive_stream_id({kTrialTag, static_cast<std::uint64_t>(host.host_id),
                                  static_cast<std::uint64_t>(task.k),
                                  static_cast<std::uint64_t>(task.start),
                                  static_cast<std::uint64_t>(task.method)}));
  const OpenArc arc = subchain(host.polygon, task.start, task.k);
  const Prediction p = classify(task.method, arc, config.n, ctx, rng);
  TrialRecord r;
  r.host_id = host.host_id;
  r.k = task.k;
  r.start = task.start;
  r.method = task.method;
  r.true_label = host.true_label;
  r.predicted = p.label;
  r.correct = p.label == host.true_label && !p.label.is_unknown();
  r.top_weight = p.top_weight();
  r.tie_broken = p.tie_broken;
  return r;
}

} // namespace

std::vector<TrialRecord> run_accuracy(const std::vector<HostSample> &hosts,
                                      const CampaignConfig &config, const KnotTable &table,
                                      const DirectionSet &directions) {
  const auto tasks = plan_trials(hosts, config);
  std::vector<TrialRecord> records(tasks.size());
  std::exception_ptr error;
  const long count = static_cast<long>(tasks.size());
#pragma omp parallel num_threads(thread_count(config.threads))
  {
    HomflyEngine engine;
    const ClassifierContext ctx{table, directions, engine, config.closures};
#pragma omp for schedule(dynamic, 1)
    for (long i = 0; i < count; ++i) {
      try {
        records[i] = run_trial(tasks[i], hosts[tasks[i].host], config, ctx);
      } catch (...) {
#pragma omp critical
        if (!error)
          error = std::current_exception();
      }
    }
  }
  if (error)
    std::rethrow_exception(error);
  return records;
}

std::vector<TrialRecord> run_accuracy_serial(const std::vector<HostSample> &hosts,
                                             const CampaignConfig &config,
                                             const KnotTable &table,
                                             const DirectionSet &directions) {
  const auto tasks = plan_trials(hosts, config);
  HomflyEngine engine;
  const ClassifierContext ctx{table, directions, engine, config.closures};
  std::vector<TrialRecord> records;
  records.reserve(tasks.size());
  for (const auto &t : tasks)
    records.push_back(run_trial(t, hosts[t.host], config, ctx));
  return records;
}

// ------------------------------------------------------------ aggregation

double RateCell::std_error() const {
  if (total == 0)
    return 0.0;
  const double p = value();
  return std::sqrt(p * (1.0 - p) / static_cast<double>(total));
}

KnotFrequencyPrior::KnotFrequencyPrior(std::map<std::string, double> probabilities)
    : probabilities_(std::move(probabilities)) {
  double total = 0.0;
  for (const auto &[name, p] : probabilities_) {
    if (!(p >= 0.0 && p <= 1.0))
      throw std::invalid_argument("prior probability of " + name + " outside [0, 1]");
    total += p;
  }
  if (total > 1.0 + 1e-9)
    throw std::invalid_argument("prior probabilities sum above 1");
}

KnotFrequencyPrior KnotFrequencyPrior::random_100gon_census() {
  const std::pair<const char *, double> percent[] = {
      {"0_1", 70.6613},      {"+3_1", 8.4252},     {"4_1", 3.2827},   {"+5_1", 0.4994},
      {"+5_2", 0.8546},      {"+6_1", 0.2066},     {"+6_2", 0.2358},  {"6_3", 0.2694},
      {"+3_1#+3_1", 0.3865}, {"+3_1#-3_1", 0.7738}, {"+7_1", 0.0234}, {"+7_2", 0.0499},
      {"+8_2", 0.0113},      {"+8_8", 0.0201},     {"+8_16", 0.0039}, {"+8_19", 0.0263},
      {"+8_20", 0.0518},     {"+8_21", 0.0293},    {"+9_2", 0.0024},  {"+9_15", 0.0035},
      {"+9_21", 0.0028},     {"+9_36", 0.0023},    {"+9_43", 0.0107}, {"+9_44", 0.0162},
      {"+9_46", 0.0054}};
  std::map<std::string, double> probs;
  for (const auto &[name, pct] : percent) {
    const KnotLabel label = KnotLabel::parse(name);
    probs[label.str()] = pct / 100.0;
    probs[label.mirrored().str()] = pct / 100.0;
  }
  return KnotFrequencyPrior(std::move(probs));
}

KnotFrequencyPrior
KnotFrequencyPrior::from_counts(const std::vector<std::pair<KnotLabel, long>> &counts) {
  long total = 0;
  for (const auto &[l, c] : counts)
    total += c;
  std::map<std::string, double> probs;
  if (total > 0)
    for (const auto &[l, c] : counts)
      probs[l.str()] = static_cast<double>(c) / static_cast<double>(total);
  return KnotFrequencyPrior(std::move(probs));
}

std::optional<double> KnotFrequencyPrior::probability(const KnotLabel &label) const {
  const auto it = probabilities_.find(label.str());
  if (it == probabilities_.end())
    return std::nullopt;
  return it->second;
}

double KnotFrequencyPrior::remainder() const {
  double total = 0.0;
  for (const auto &[name, p] : probabilities_)
    total += p;
  return std::max(0.0, 1.0 - total);
}

std::map<MethodLabelK, RateCell> accuracy_table(const std::vector<TrialRecord> &records) {
  std::map<MethodLabelK, RateCell> out;
  for (const auto &r : records) {
    auto &cell = out[{r.method, r.true_label.str(), r.k}];
    ++cell.total;
    if (r.correct)
      ++cell.hits;
  }
  return out;
}

std::map<MethodK, RateCell> pooled_accuracy(const std::vector<TrialRecord> &records) {
  std::map<MethodK, RateCell> out;
  for (const auto &r : records) {
    auto &cell = out[{r.method, r.k}];
    ++cell.total;
    if (r.correct)
      ++cell.hits;
  }
  return out;
}

std::map<MethodK, WeightedAccuracy> weighted_overall_accuracy(const std::vector<TrialRecord> &records,
                                                    const KnotFrequencyPrior &prior) {
  std::map<MethodK, std::pair<double, double>> sums; // weighted accuracy, weight
  for (const auto &[key, cell] : accuracy_table(records)) {
    const auto &[method, label, k] = key;
    const auto p = prior.probability(KnotLabel::parse(label));
    if (!p)
      throw MissingPrior("no prior probability for " + label);
    auto &s = sums[{method, k}];
    s.first += *p * cell.value();
    s.second += *p;
  }
  std::map<MethodK, WeightedAccuracy> out;
  for (const auto &[key, s] : sums)
    out[key] = {s.second > 0.0 ? s.first / s.second : 0.0, s.second};
  return out;
}

std::map<MethodLabelK, RateCell> compute_ppv(const std::vector<TrialRecord> &records) {
  std::map<MethodLabelK, RateCell> out;
  for (const auto &r : records) {
    auto &cell = out[{r.method, r.predicted.str(), r.k}];
    ++cell.total;
    if (r.correct)
      ++cell.hits;
  }
  return out;
}

std::map<MethodK, MeanPpv> mean_ppv(const std::map<MethodLabelK, RateCell> &ppv) {
  std::map<MethodK, std::pair<double, int>> all, nontrivial;
  for (const auto &[key, cell] : ppv) {
    const auto &[method, label, k] = key;
    if (cell.total == 0)
      continue;
    auto &a = all[{method, k}];
    a.first += cell.value();
    ++a.second;
    if (label != "0_1") {
      auto &b = nontrivial[{method, k}];
      b.first += cell.value();
      ++b.second;
    }
  }
  std::map<MethodK, MeanPpv> out;
  for (const auto &[key, a] : all) {
    MeanPpv m;
    m.labels = a.second;
    m.mean = a.first / a.second;
    if (auto it = nontrivial.find(key); it != nontrivial.end()) {
      m.labels_nontrivial = it->second.second;
      m.mean_nontrivial = it->second.first / it->second.second;
    }
    out[key] = m;
  }
  return out;
}

std::map<MethodLabel, std::optional<int>>
threshold_50(const std::map<MethodLabelK, RateCell> &accuracy) {
  std::map<MethodLabel, std::optional<int>> out;
  for (const auto &[key, cell] : accuracy) {
    const auto &[method, label, k] = key;
    auto &slot = out[{method, label}];
    if (cell.total > 0 && 2 * cell.hits >= cell.total && (!slot || k < *slot))
      slot = k;
  }
  return out;
}

MetricsTable build_metrics(const std::vector<TrialRecord> &records,
                           const KnotFrequencyPrior &prior) {
  MetricsTable t;
  t.accuracy = accuracy_table(records);
  t.ppv = compute_ppv(records);
  t.overall_accuracy = weighted_overall_accuracy(records, prior);
  t.mean_ppv = mean_ppv(t.ppv);
  t.threshold50 = threshold_50(t.accuracy);
  return t;
}

} // namespace knotlab
