// knotlab command-line front end.
#include <CLI11.hpp>
#include <json.hpp>

#include <omp.h>

#include <algorithm>
#include <chrono>
#include <cstdint>
#include <exception>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "knotlab/classify.hpp"
#include "knotlab/diagram.hpp"
#include "knotlab/direction_set.hpp"
#include "knotlab/experiment.hpp"
#include "knotlab/homfly.hpp"
#include "knotlab/knot_table.hpp"
#include "knotlab/metrics_io.hpp"
#include "knotlab/ndjson.hpp"
#include "knotlab/sampling.hpp"

#ifndef KNOTLAB_VERSION
#define KNOTLAB_VERSION "0.0.0"
#endif

namespace fs = std::filesystem;
using namespace knotlab;

namespace {

// Stream tags so that each subcommand draws from its own family of streams.
constexpr std::uint64_t kSampleTag = 0x73616d706c65ULL;
constexpr std::uint64_t kProjectTag = 0x70726f6a656374ULL;
constexpr std::uint64_t kIdentifyTag = 0x6964656e74ULL;
constexpr std::uint64_t kClassifyTag = 0x636c617373ULL;

const char *const kDeskLabels = "0_1,+3_1,4_1,+5_1,+5_2,+6_1,+6_2,6_3,+3_1#+3_1,+3_1#-3_1";

std::vector<std::string> split_list(const std::string &text) {
  std::vector<std::string> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    const auto b = item.find_first_not_of(" \t");
    const auto e = item.find_last_not_of(" \t");
    if (b != std::string::npos)
      out.push_back(item.substr(b, e - b + 1));
  }
  return out;
}

/// "a", "a:b" or "a:b:step" items separated by commas, inclusive ranges.
std::vector<int> parse_k_grid(const std::string &spec, int n) {
  std::vector<int> ks;
  for (const auto &item : split_list(spec)) {
    std::vector<int> parts;
    std::stringstream ss(item);
    std::string p;
    while (std::getline(ss, p, ':'))
      parts.push_back(std::stoi(p));
    if (parts.empty() || parts.size() > 3)
      throw std::invalid_argument("bad k-grid item: " + item);
    const int lo = parts[0];
    const int hi = parts.size() > 1 ? parts[1] : lo;
    const int step = parts.size() > 2 ? parts[2] : 1;
    if (step <= 0 || hi < lo)
      throw std::invalid_argument("bad k-grid item: " + item);
    for (int k = lo; k <= hi; k += step)
      ks.push_back(k);
  }
  std::sort(ks.begin(), ks.end());
  ks.erase(std::unique(ks.begin(), ks.end()), ks.end());
  for (int k : ks)
    if (k < 1 || k > n)
      throw std::invalid_argument("k-grid value " + std::to_string(k) + " outside [1, n]");
  if (ks.empty())
    throw std::invalid_argument("empty k-grid");
  return ks;
}

std::vector<ShapeRecord> read_records(const std::string &path) {
  std::ifstream in(path);
  if (!in)
    throw std::runtime_error("cannot open " + path);
  return read_ndjson(in);
}

std::ofstream open_out(const std::string &path) {
  if (const auto parent = fs::path(path).parent_path(); !parent.empty())
    fs::create_directories(parent);
  std::ofstream out(path);
  if (!out)
    throw std::runtime_error("cannot write " + path);
  return out;
}

/// Runs body(i) for i in [0, count) in parallel, rethrowing the first error.
template <class Body> void parallel_for(int count, int threads, Body body) {
  std::exception_ptr error;
  const int nt = threads > 0 ? threads : omp_get_max_threads();
#pragma omp parallel for schedule(dynamic, 1) num_threads(nt)
  for (int i = 0; i < count; ++i) {
    try {
      body(i);
    } catch (...) {
#pragma omp critical(knotlab_cli_error)
      if (!error)
        error = std::current_exception();
    }
  }
  if (error)
    std::rethrow_exception(error);
}

// ------------------------------------------------------------------ sample

struct SampleArgs {
  int n = 100;
  int count = 1;
  std::uint64_t seed = 1;
  int arc = 0;
  std::string out;
  int threads = 0;
};

void run_sample(const SampleArgs &a) {
  if (a.arc < 0 || a.arc > a.n)
    throw std::invalid_argument("--arc must lie in [1, n]");
  std::vector<std::string> lines(a.count);
  parallel_for(a.count, a.threads, [&](int i) {
    RngStream rng(a.seed, derive_stream_id({kSampleTag, static_cast<std::uint64_t>(i)}));
    const Polygon3 poly = sample_closed_equilateral(a.n, rng);
    lines[i] = a.arc > 0 ? to_ndjson(subchain(poly, 0, a.arc)) : to_ndjson(poly);
  });
  auto out = open_out(a.out);
  for (const auto &l : lines)
    out << l << '\n';
}

// ----------------------------------------------------------------- project

struct ProjectArgs {
  std::string in;
  std::uint64_t seed = 1;
  std::string out;
  bool simplify = false;
};

void run_project(const ProjectArgs &a) {
  const auto records = read_records(a.in);
  std::ostream *out = &std::cout;
  std::ofstream file;
  if (!a.out.empty()) {
    file = open_out(a.out);
    out = &file;
  }
  for (std::size_t i = 0; i < records.size(); ++i) {
    Polygon3 poly = records[i].as_polygon();
    if (a.simplify)
      poly = kmt_simplify(poly);
    RngStream rng(a.seed, derive_stream_id({kProjectTag, i}));
    const auto proj = generic_project(poly, rng);
    auto j = nlohmann::json::parse(diagram_to_json(proj.diagram));
    j["record"] = i;
    j["vertices"] = poly.size();
    j["writhe"] = writhe(proj.diagram);
    *out << j.dump() << '\n';
  }
}

// ---------------------------------------------------------------- identify

struct IdentifyArgs {
  std::string in;
  std::uint64_t seed = 1;
  std::string table;
  std::string out;
  int threads = 0;
};

void run_identify(const IdentifyArgs &a) {
  const auto records = read_records(a.in);
  const KnotTable table = build_table(a.table.empty() ? default_table_path() : a.table);
  const int count = static_cast<int>(records.size());
  std::vector<std::string> labels(count), polys(count);
  parallel_for(count, a.threads, [&](int i) {
    thread_local HomflyEngine engine;
    RngStream rng(a.seed, derive_stream_id({kIdentifyTag, static_cast<std::uint64_t>(i)}));
    const auto p = polygon_homfly(records[i].as_polygon(), rng, engine);
    labels[i] = p ? table.lookup(*p).str() : KnotLabel::unknown().str();
    polys[i] = p ? p->to_string() : "";
  });
  std::ostream *out = &std::cout;
  std::ofstream file;
  if (!a.out.empty()) {
    file = open_out(a.out);
    out = &file;
  }
  *out << "record_id,label,homfly\n";
  for (int i = 0; i < count; ++i)
    *out << i << ',' << labels[i] << ",\"" << polys[i] << "\"\n";
}

// ---------------------------------------------------------------- classify

struct ClassifyArgs {
  std::string method = "pu";
  std::string in;
  int n = 100;
  std::uint64_t seed = 1;
  std::string table;
  std::string out;
  int closures = 100;
  int threads = 0;
};

void run_classify(const ClassifyArgs &a) {
  const Method method = parse_method(a.method);
  const auto records = read_records(a.in);
  const KnotTable table = build_table(a.table.empty() ? default_table_path() : a.table);
  const DirectionSet directions = build_direction_set(100);
  const int count = static_cast<int>(records.size());
  std::vector<Prediction> results(count);
  parallel_for(count, a.threads, [&](int i) {
    thread_local HomflyEngine engine;
    const auto &rec = records[i];
    // A closed polygon is classified as its full chain (k = n).
    const OpenArc arc = rec.kind == ShapeRecord::Kind::arc
                            ? rec.as_arc()
                            : subchain(rec.as_polygon(), 0, static_cast<int>(rec.vertices.size()));
    if (static_cast<int>(arc.num_edges()) > a.n)
      throw std::invalid_argument("arc " + std::to_string(i) + " has more than n edges");
    ClassifierContext ctx{table, directions, engine, a.closures};
    RngStream rng(a.seed, derive_stream_id({kClassifyTag, static_cast<std::uint64_t>(i),
                                            static_cast<std::uint64_t>(method)}));
    results[i] = classify(method, arc, a.n, ctx, rng);
  });
  auto out = open_out(a.out);
  out << "arc_id,method,predicted_label,top_weight,tie_broken\n";
  for (int i = 0; i < count; ++i)
    out << i << ',' << to_string(method) << ',' << results[i].label.str() << ','
        << format_double(results[i].top_weight()) << ',' << (results[i].tie_broken ? 1 : 0)
        << '\n';
}

// -------------------------------------------------------------- experiment

struct ExperimentArgs {
  std::string mode;
  int n = 100;
  int hosts_per_knot = 25;
  std::string labels = kDeskLabels;
  int mixed_hosts = 0;
  std::string k_grid = "1:100";
  int starts = 20;
  int closures = 100;
  std::uint64_t seed = 1;
  std::string table;
  std::string out = "results";
  std::string methods = "su,pu,sr,pr";
  int threads = 0;
  std::string prior = "census";
  bool gnuplot = false;
  long max_draws = 10'000'000;
  bool allow_partial = false;
};

std::string host_line(const HostSample &h) {
  std::string s = to_ndjson(h.polygon);
  const std::string extra = "\"host_id\":" + std::to_string(h.host_id) + ",\"label\":\"" +
                            h.true_label.str() + "\",";
  s.insert(1, extra);
  return s;
}

void run_experiment(const ExperimentArgs &a) {
  const auto t0 = std::chrono::steady_clock::now();
  const std::string table_path = a.table.empty() ? default_table_path() : a.table;
  const KnotTable table = build_table(table_path);
  const DirectionSet directions = build_direction_set(100);

  CampaignConfig config;
  config.n = a.n;
  config.methods.clear();
  for (const auto &m : split_list(a.methods))
    config.methods.push_back(parse_method(m));
  config.k_list = parse_k_grid(a.k_grid, a.n);
  config.starts_per_k = a.starts;
  config.closures = a.closures;
  config.seed = a.seed;
  config.threads = a.threads;

  HarvestOptions hopt;
  hopt.max_draws = a.max_draws;
  hopt.allow_partial = a.allow_partial;
  hopt.threads = a.threads;

  std::vector<KnotLabel> targets;
  HarvestResult harvest;
  if (a.mixed_hosts > 0) {
    harvest = sample_mixed_hosts(a.mixed_hosts, a.n, a.seed, table, hopt);
  } else {
    for (const auto &l : split_list(a.labels))
      targets.push_back(KnotLabel::parse(l));
    harvest = harvest_hosts(targets, a.hosts_per_knot, a.n, a.seed, table, hopt);
  }
  if (!harvest.complete)
    std::cerr << "warning: harvest stopped after " << harvest.draws
              << " draws before every label was filled\n";

  // Mixed hosts already follow the natural distribution, so their
  // reweighting uses the observed frequencies.
  const bool empirical = a.prior == "empirical" || a.mixed_hosts > 0;
  const KnotFrequencyPrior prior = empirical ? KnotFrequencyPrior::from_counts(harvest.frequency)
                                             : KnotFrequencyPrior::random_100gon_census();

  const auto records = run_accuracy(harvest.hosts, config, table, directions);
  const MetricsTable metrics = build_metrics(records, prior);

  EmitOptions emit;
  emit.accuracy = a.mode == "accuracy" || a.mode == "all";
  emit.ppv = a.mode == "ppv" || a.mode == "all";
  emit.thresholds = a.mode == "thresholds" || a.mode == "all";
  emit.gnuplot = a.gnuplot;
  std::vector<std::string> files = emit_metrics(metrics, a.out, emit);

  {
    const std::string path = (fs::path(a.out) / "hosts.ndjson").string();
    auto out = open_out(path);
    for (const auto &h : harvest.hosts)
      out << host_line(h) << '\n';
    files.push_back(path);
  }

  const double seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  nlohmann::json manifest;
  manifest["tool"] = "knotlab";
  manifest["version"] = KNOTLAB_VERSION;
  manifest["mode"] = a.mode;
  manifest["seed"] = a.seed;
  std::vector<int> ks = config.k_list;
  std::vector<std::string> method_names;
  for (Method m : config.methods)
    method_names.push_back(to_string(m));
  std::vector<std::string> label_names;
  for (const auto &l : targets)
    label_names.push_back(l.str());
  manifest["config"] = {
      {"n", a.n},
      {"hosts_per_knot", a.mixed_hosts > 0 ? 0 : a.hosts_per_knot},
      {"labels", label_names},
      {"mixed_hosts", a.mixed_hosts},
      {"k_grid", a.k_grid},
      {"k_values", ks},
      {"starts", a.starts},
      {"closures", a.closures},
      {"methods", method_names},
      {"prior", empirical ? "empirical" : "census"},
      {"max_draws", a.max_draws},
      {"allow_partial", a.allow_partial},
      {"directions", directions.size()},
  };
  manifest["table"] = {{"path", table_path}, {"entries", table.entries().size()}};
  nlohmann::json freq = nlohmann::json::array();
  for (const auto &[label, count] : harvest.frequency)
    freq.push_back({{"label", label.str()}, {"count", count}});
  manifest["harvest"] = {{"draws", harvest.draws},
                         {"complete", harvest.complete},
                         {"hosts", harvest.hosts.size()},
                         {"frequency", freq}};
  manifest["trials"] = records.size();
  manifest["threads"] = a.threads > 0 ? a.threads : omp_get_max_threads();
  manifest["versions"] = {{"knotlab", KNOTLAB_VERSION},
                          {"compiler", __VERSION__},
                          {"cplusplus", __cplusplus},
                          {"openmp", _OPENMP},
                          {"rng", "mt19937_64 seeded by seed_seq(seed, stream id)"}};
  manifest["elapsed_seconds"] = seconds;
  std::vector<std::string> names;
  for (const auto &f : files)
    names.push_back(fs::path(f).filename().string());
  names.push_back("run_manifest.json");
  manifest["outputs"] = names;
  auto out = open_out((fs::path(a.out) / "run_manifest.json").string());
  out << manifest.dump(2) << '\n';

  std::cerr << "wrote " << names.size() << " files to " << a.out << " (" << records.size()
            << " trials, " << harvest.hosts.size() << " hosts, " << seconds << " s)\n";
}

// ------------------------------------------------------------------- table

struct TableArgs {
  std::string primes;
  std::string out;
  std::string table;
  int composite_max = 7;
};

void run_table_build(const TableArgs &a) {
  const auto entries = generate_table(a.primes, a.composite_max);
  write_table(entries, a.out);
  const KnotTable check = build_table(a.out);
  std::cerr << "wrote " << check.entries().size() << " entries to " << a.out << '\n';
}

void run_table_check(const TableArgs &a) {
  const std::string path = a.table.empty() ? default_table_path() : a.table;
  const KnotTable table = build_table(path);
  std::size_t sets = 0;
  for (const auto &e : table.entries())
    if (table.lookup(e.polynomial).is_ambiguous())
      ++sets;
  std::cout << path << ": " << table.entries().size() << " entries verified, " << sets
            << " share a polynomial with another entry\n";
}

/// Applies `key = value` items from a TOML/INI file to the options of `app`
/// that were not given on the command line. Keys are long option names,
/// optionally inside an [experiment] section.
void apply_config_file(CLI::App &app, const std::string &path) {
  const auto items = CLI::ConfigTOML().from_file(path);
  for (const auto &item : items) {
    if (item.name == "++" || item.name == "--")
      continue; // section markers
    if (!item.parents.empty() && !(item.parents.size() == 1 && item.parents[0] == app.get_name()))
      throw std::invalid_argument("config: unknown section for key " + item.fullname());
    CLI::Option *opt = app.get_option_no_throw("--" + item.name);
    if (opt == nullptr || item.name == "config")
      throw std::invalid_argument("config: unknown key " + item.name);
    if (opt->count() > 0)
      continue; // the command line wins
    opt->add_result(item.inputs);
    opt->run_callback();
  }
}

} // namespace

int main(int argc, char **argv) {
  CLI::App app{"Knot identification and open-arc classification experiments"};
  app.set_version_flag("--version", KNOTLAB_VERSION);
  app.require_subcommand(1);

  SampleArgs sample;
  auto *s = app.add_subcommand("sample", "Sample closed equilateral polygons as NDJSON");
  s->add_option("--n", sample.n, "edges per polygon")->check(CLI::Range(3, 100000));
  s->add_option("--count", sample.count, "number of records")->check(CLI::PositiveNumber);
  s->add_option("--seed", sample.seed, "random seed");
  s->add_option("--arc", sample.arc, "emit the first K edges of each polygon as an arc");
  s->add_option("--out", sample.out, "output file")->required();
  s->add_option("--threads", sample.threads, "worker threads (0: default)");
  s->callback([&] { run_sample(sample); });

  ProjectArgs project;
  auto *p = app.add_subcommand("project", "Print the crossing diagram of each polygon");
  p->add_option("--in", project.in, "polygon NDJSON")->required();
  p->add_option("--seed", project.seed, "random seed for projection directions");
  p->add_option("--out", project.out, "output file (default stdout)");
  p->add_flag("--simplify", project.simplify, "apply vertex-removal simplification first");
  p->callback([&] { run_project(project); });

  IdentifyArgs ident;
  auto *id = app.add_subcommand("identify", "Identify the knot type of each polygon");
  id->add_option("--in", ident.in, "polygon NDJSON")->required();
  id->add_option("--seed", ident.seed, "random seed for projection directions");
  id->add_option("--table", ident.table, "knot table (default: shipped table)");
  id->add_option("--out", ident.out, "CSV output (default stdout)");
  id->add_option("--threads", ident.threads, "worker threads (0: default)");
  id->callback([&] { run_identify(ident); });

  ClassifyArgs cls;
  auto *c = app.add_subcommand("classify", "Classify open arcs by closure");
  c->add_option("--method", cls.method, "su, pu, sr or pr")
      ->check(CLI::IsMember({"su", "pu", "sr", "pr", "SU", "PU", "SR", "PR"}));
  c->add_option("--in", cls.in, "arc NDJSON")->required();
  c->add_option("--n", cls.n, "host polygon size for random closures");
  c->add_option("--seed", cls.seed, "random seed");
  c->add_option("--table", cls.table, "knot table (default: shipped table)");
  c->add_option("--out", cls.out, "CSV output")->required();
  c->add_option("--closures", cls.closures, "random closures for PR")->check(CLI::PositiveNumber);
  c->add_option("--threads", cls.threads, "worker threads (0: default)");
  c->callback([&] { run_classify(cls); });

  ExperimentArgs exp;
  auto *e = app.add_subcommand("experiment", "Run an accuracy/PPV campaign");
  std::string config_path;
  e->add_option("--config", config_path, "key = value configuration file")
      ->check(CLI::ExistingFile);
  e->add_option("mode", exp.mode, "accuracy, ppv, thresholds or all")
      ->required()
      ->check(CLI::IsMember({"accuracy", "ppv", "thresholds", "all"}));
  e->add_option("--n", exp.n, "host polygon size")->check(CLI::Range(4, 100000));
  e->add_option("--hosts-per-knot", exp.hosts_per_knot, "hosts harvested per label")
      ->check(CLI::PositiveNumber);
  e->add_option("--labels", exp.labels, "comma-separated target labels");
  e->add_option("--mixed-hosts", exp.mixed_hosts,
                "use this many hosts of any knot type instead of --labels");
  e->add_option("--k-grid", exp.k_grid, "subarc lengths, e.g. 1:99:2,100");
  e->add_option("--starts", exp.starts, "subarc starts per (host, k)")
      ->check(CLI::PositiveNumber);
  e->add_option("--closures", exp.closures, "random closures for PR")
      ->check(CLI::PositiveNumber);
  e->add_option("--seed", exp.seed, "random seed");
  e->add_option("--table", exp.table, "knot table (default: shipped table)");
  e->add_option("--out", exp.out, "output directory");
  e->add_option("--methods", exp.methods, "comma-separated subset of su,pu,sr,pr");
  e->add_option("--threads", exp.threads, "worker threads (0: default)");
  e->add_option("--prior", exp.prior, "weights for overall accuracy")
      ->check(CLI::IsMember({"census", "empirical"}));
  e->add_flag("--gnuplot", exp.gnuplot, "also write gnuplot .dat files");
  e->add_option("--max-draws", exp.max_draws, "harvest draw budget");
  e->add_flag("--allow-partial", exp.allow_partial,
              "keep going with the hosts found when the draw budget runs out");
  e->callback([&] {
    if (!config_path.empty())
      apply_config_file(*e, config_path);
    run_experiment(exp);
  });

  TableArgs tab;
  auto *t = app.add_subcommand("table", "Build or verify the knot table");
  t->require_subcommand(1);
  auto *tb = t->add_subcommand("build", "Regenerate the table from prime PD codes");
  tb->add_option("--primes", tab.primes, "prime PD list")
      ->default_val(std::string(KNOTLAB_DATA_DIR) + "/prime_knots.tsv");
  tb->add_option("--out", tab.out, "table file")
      ->default_val(std::string(KNOTLAB_DATA_DIR) + "/knot_table.tsv");
  tb->add_option("--composite-max", tab.composite_max,
                 "largest prime crossing number used in composites");
  tb->callback([&] { run_table_build(tab); });
  auto *tc = t->add_subcommand("check", "Recompute and verify every table row");
  tc->add_option("--table", tab.table, "table file (default: shipped table)");
  tc->callback([&] { run_table_check(tab); });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError &err) {
    return app.exit(err);
  } catch (const std::exception &err) {
    std::cerr << "error: " << err.what() << '\n';
    return 1;
  }
  return 0;
}
