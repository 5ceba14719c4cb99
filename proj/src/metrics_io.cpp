#include "knotlab/metrics_io.hpp"

#include <filesystem>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include "knotlab/ndjson.hpp"

namespace knotlab {
namespace {

std::string opt_int(const std::optional<int> &v) { return v ? std::to_string(*v) : ""; }

std::ofstream open_out(const std::filesystem::path &p) {
  std::ofstream out(p, std::ios::binary);
  if (!out)
    throw std::runtime_error("cannot write " + p.string());
  return out;
}

std::vector<std::string> split_csv(const std::string &line) {
  std::vector<std::string> out;
  std::string cur;
  std::istringstream ss(line);
  while (std::getline(ss, cur, ','))
    out.push_back(cur);
  if (!line.empty() && line.back() == ',')
    out.emplace_back();
  return out;
}

template <class Fn> void read_rows(const std::filesystem::path &p, std::size_t columns, Fn fn) {
  std::ifstream in(p);
  if (!in)
    return;
  std::string line;
  bool header = true;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (header) {
      header = false;
      continue;
    }
    if (line.empty())
      continue;
    const auto f = split_csv(line);
    if (f.size() != columns)
      throw std::runtime_error(p.string() + ":" + std::to_string(line_no) +
                               ": wrong number of columns");
    fn(f);
  }
}

void write_gnuplot_rates(const std::map<MethodLabelK, RateCell> &cells, const std::string &what,
                         std::ostream &out) {
  bool first = true;
  const std::pair<Method, std::string> *current = nullptr;
  std::pair<Method, std::string> key;
  for (const auto &[k, cell] : cells) {
    const auto &[method, label, kk] = k;
    if (!current || key != std::make_pair(method, label)) {
      if (!first)
        out << "\n\n";
      first = false;
      key = {method, label};
      current = &key;
      out << "# method=" << to_string(method) << " label=" << label << "\n# k " << what
          << " std_error hits total\n";
    }
    out << kk << ' ' << format_double(cell.value()) << ' ' << format_double(cell.std_error())
        << ' ' << cell.hits << ' ' << cell.total << '\n';
  }
}

} // namespace

void write_accuracy_csv(const MetricsTable &m, std::ostream &out) {
  out << "method,label,k,correct,trials,accuracy,std_error\n";
  for (const auto &[key, c] : m.accuracy) {
    const auto &[method, label, k] = key;
    out << to_string(method) << ',' << label << ',' << k << ',' << c.hits << ',' << c.total
        << ',' << format_double(c.value()) << ',' << format_double(c.std_error()) << '\n';
  }
}

void write_overall_accuracy_csv(const MetricsTable &m, std::ostream &out) {
  out << "method,k,weighted_accuracy,prior_mass,weighted_accuracy_all_types\n";
  for (const auto &[key, v] : m.overall_accuracy)
    out << to_string(key.first) << ',' << key.second << ',' << format_double(v.over_sampled)
        << ',' << format_double(v.prior_mass) << ',' << format_double(v.over_all()) << '\n';
}

void write_ppv_csv(const MetricsTable &m, std::ostream &out) {
  out << "method,label,k,correct,predicted,ppv,std_error\n";
  for (const auto &[key, c] : m.ppv) {
    const auto &[method, label, k] = key;
    out << to_string(method) << ',' << label << ',' << k << ',' << c.hits << ',' << c.total
        << ',' << format_double(c.value()) << ',' << format_double(c.std_error()) << '\n';
  }
}

void write_mean_ppv_csv(const MetricsTable &m, std::ostream &out) {
  out << "method,k,mean_ppv,labels,mean_ppv_nontrivial,labels_nontrivial\n";
  for (const auto &[key, v] : m.mean_ppv)
    out << to_string(key.first) << ',' << key.second << ',' << format_double(v.mean) << ','
        << v.labels << ',' << format_double(v.mean_nontrivial) << ',' << v.labels_nontrivial
        << '\n';
}

void write_threshold_csv(const MetricsTable &m, std::ostream &out) {
  out << "method,label,k50\n";
  for (const auto &[key, v] : m.threshold50)
    out << to_string(key.first) << ',' << key.second << ',' << opt_int(v) << '\n';
}

std::vector<std::string> emit_metrics(const MetricsTable &m, const std::string &dir,
                                      const EmitOptions &options) {
  namespace fs = std::filesystem;
  fs::create_directories(dir);
  std::vector<std::string> written;
  auto emit = [&](const std::string &name, auto writer) {
    const fs::path p = fs::path(dir) / name;
    auto out = open_out(p);
    writer(m, out);
    written.push_back(p.string());
  };
  if (options.accuracy) {
    emit("accuracy.csv", write_accuracy_csv);
    emit("overall_accuracy.csv", write_overall_accuracy_csv);
  }
  if (options.ppv) {
    emit("ppv.csv", write_ppv_csv);
    emit("mean_ppv.csv", write_mean_ppv_csv);
  }
  if (options.thresholds)
    emit("threshold50.csv", write_threshold_csv);
  if (options.gnuplot) {
    if (options.accuracy)
      emit("accuracy.dat", [](const MetricsTable &t, std::ostream &o) {
        write_gnuplot_rates(t.accuracy, "accuracy", o);
      });
    if (options.ppv) {
      emit("ppv.dat", [](const MetricsTable &t, std::ostream &o) {
        write_gnuplot_rates(t.ppv, "ppv", o);
      });
      emit("mean_ppv.dat", [](const MetricsTable &t, std::ostream &o) {
        bool first = true;
        Method current{};
        for (const auto &[key, v] : t.mean_ppv) {
          if (first || key.first != current) {
            if (!first)
              o << "\n\n";
            first = false;
            current = key.first;
            o << "# method=" << to_string(current)
              << "\n# k mean_ppv labels mean_ppv_nontrivial labels_nontrivial\n";
          }
          o << key.second << ' ' << format_double(v.mean) << ' ' << v.labels << ' '
            << format_double(v.mean_nontrivial) << ' ' << v.labels_nontrivial << '\n';
        }
      });
    }
    if (options.thresholds)
      emit("threshold50.dat", [](const MetricsTable &t, std::ostream &o) {
        o << "# method label k50 (NaN when never reached)\n";
        for (const auto &[key, v] : t.threshold50)
          o << to_string(key.first) << ' ' << key.second << ' '
            << (v ? std::to_string(*v) : std::string("NaN")) << '\n';
      });
  }
  return written;
}

MetricsTable read_metrics(const std::string &dir) {
  namespace fs = std::filesystem;
  MetricsTable m;
  const fs::path base(dir);
  read_rows(base / "accuracy.csv", 7, [&](const auto &f) {
    m.accuracy[{parse_method(f[0]), f[1], std::stoi(f[2])}] = {std::stol(f[3]), std::stol(f[4])};
  });
  read_rows(base / "overall_accuracy.csv", 5, [&](const auto &f) {
    m.overall_accuracy[{parse_method(f[0]), std::stoi(f[1])}] = {std::stod(f[2]),
                                                                 std::stod(f[3])};
  });
  read_rows(base / "ppv.csv", 7, [&](const auto &f) {
    m.ppv[{parse_method(f[0]), f[1], std::stoi(f[2])}] = {std::stol(f[3]), std::stol(f[4])};
  });
  read_rows(base / "mean_ppv.csv", 6, [&](const auto &f) {
    m.mean_ppv[{parse_method(f[0]), std::stoi(f[1])}] = {std::stod(f[2]), std::stoi(f[3]),
                                                         std::stod(f[4]), std::stoi(f[5])};
  });
  read_rows(base / "threshold50.csv", 3, [&](const auto &f) {
    std::optional<int> v;
    if (!f[2].empty())
      v = std::stoi(f[2]);
    m.threshold50[{parse_method(f[0]), f[1]}] = v;
  });
  return m;
}

} // namespace knotlab
