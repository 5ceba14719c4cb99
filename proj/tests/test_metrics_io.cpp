#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include "knotlab/metrics_io.hpp"

using namespace knotlab;

namespace {

TrialRecord rec(Method m, const char *truth, const char *pred, int k) {
  TrialRecord r;
  r.method = m;
  r.k = k;
  r.true_label = KnotLabel::parse(truth);
  r.predicted = KnotLabel::parse(pred);
  r.correct = r.true_label == r.predicted;
  return r;
}

std::string fresh_dir(const std::string &name) {
  const auto p = std::filesystem::temp_directory_path() / name;
  std::filesystem::remove_all(p);
  return p.string();
}

std::string slurp(const std::string &path) {
  std::ifstream in(path);
  return {std::istreambuf_iterator<char>(in), {}};
}

std::vector<TrialRecord> sample_records() {
  std::vector<TrialRecord> r;
  for (int k : {10, 50, 90})
    for (int i = 0; i < 6; ++i) {
      r.push_back(rec(Method::pu, "+3_1", i < k / 20 ? "+3_1" : "0_1", k));
      r.push_back(rec(Method::pu, "0_1", "0_1", k));
      r.push_back(rec(Method::sr, "4_1", i % 3 ? "4_1" : "unknown", k));
      r.push_back(rec(Method::sr, "+3_1", "0_1", k));
    }
  return r;
}

} // namespace

TEST_CASE("empty metrics produce header-only files") {
  const auto dir = fresh_dir("knotlab_empty_metrics");
  const auto files = emit_metrics(MetricsTable{}, dir);
  CHECK(files.size() == 5);
  for (const auto &f : files) {
    const auto text = slurp(f);
    CHECK(std::count(text.begin(), text.end(), '\n') == 1);
  }
  CHECK(read_metrics(dir) == MetricsTable{});
}

TEST_CASE("metric files round trip") {
  const auto m = build_metrics(sample_records(), KnotFrequencyPrior::random_100gon_census());
  const auto dir = fresh_dir("knotlab_metrics");
  EmitOptions opts;
  opts.gnuplot = true;
  const auto files = emit_metrics(m, dir, opts);
  CHECK(files.size() == 9);
  CHECK(read_metrics(dir) == m);

  // One threshold row per (method, true label) pair.
  std::ostringstream th;
  write_threshold_csv(m, th);
  const auto text = th.str();
  CHECK(std::count(text.begin(), text.end(), '\n') == 1 + 4);
  CHECK(text.find("PU,+3_1,") != std::string::npos);
  CHECK(text.find("SR,+3_1,\n") != std::string::npos);

  const auto dat = slurp(dir + "/accuracy.dat");
  CHECK(dat.find("# method=PU label=+3_1") != std::string::npos);
  CHECK(slurp(dir + "/threshold50.dat").find("NaN") != std::string::npos);
}

TEST_CASE("emit options select files") {
  const auto m = build_metrics(sample_records(), KnotFrequencyPrior::random_100gon_census());
  const auto dir = fresh_dir("knotlab_ppv_only");
  EmitOptions opts;
  opts.accuracy = false;
  opts.thresholds = false;
  const auto files = emit_metrics(m, dir, opts);
  CHECK(files.size() == 2);
  const auto back = read_metrics(dir);
  CHECK(back.ppv == m.ppv);
  CHECK(back.accuracy.empty());
}
