#include "knotlab/knot_table.hpp"

#include <algorithm>
#include <cstdlib>
#include <fstream>
#include <map>
#include <sstream>
#include <tuple>

#include "knotlab/diagram.hpp"

namespace knotlab {

// ---------------------------------------------------------------- labels

std::string PrimeFactor::name() const {
  return std::to_string(crossing_number) + "_" + std::to_string(index);
}

std::string PrimeFactor::to_string() const {
  switch (chirality) {
  case Chirality::plus:
    return "+" + name();
  case Chirality::minus:
    return "-" + name();
  default:
    return name();
  }
}

PrimeFactor PrimeFactor::mirrored() const {
  PrimeFactor f = *this;
  if (chirality == Chirality::plus)
    f.chirality = Chirality::minus;
  else if (chirality == Chirality::minus)
    f.chirality = Chirality::plus;
  return f;
}

KnotLabel KnotLabel::unknown() {
  KnotLabel l;
  l.kind_ = Kind::unknown;
  l.text_ = "unknown";
  return l;
}

KnotLabel KnotLabel::prime(int crossing_number, int index, Chirality chirality) {
  return from_factors({PrimeFactor{crossing_number, index, chirality}});
}

KnotLabel KnotLabel::from_factors(std::vector<PrimeFactor> factors) {
  for (const auto &f : factors)
    if (f.crossing_number < 3 || f.index < 1)
      throw std::invalid_argument("invalid prime factor " + f.to_string());
  std::sort(factors.begin(), factors.end());
  KnotLabel l;
  l.factors_ = std::move(factors);
  if (l.factors_.empty()) {
    l.text_ = "0_1";
  } else {
    l.text_.clear();
    for (std::size_t i = 0; i < l.factors_.size(); ++i) {
      if (i)
        l.text_ += '#';
      l.text_ += l.factors_[i].to_string();
    }
  }
  return l;
}

KnotLabel KnotLabel::ambiguous(std::vector<KnotLabel> alternatives) {
  std::vector<KnotLabel> flat;
  for (auto &a : alternatives) {
    if (a.is_ambiguous())
      flat.insert(flat.end(), a.alternatives_.begin(), a.alternatives_.end());
    else
      flat.push_back(std::move(a));
  }
  if (flat.empty())
    throw std::invalid_argument("empty label set");
  std::sort(flat.begin(), flat.end(), label_display_less);
  flat.erase(std::unique(flat.begin(), flat.end()), flat.end());
  if (flat.size() == 1)
    return flat.front();
  KnotLabel l;
  l.kind_ = Kind::set;
  l.text_.clear();
  for (std::size_t i = 0; i < flat.size(); ++i) {
    if (i)
      l.text_ += '/';
    l.text_ += flat[i].str();
  }
  l.alternatives_ = std::move(flat);
  return l;
}

namespace {

int parse_positive(std::string_view s, std::string_view whole) {
  if (s.empty() || s.size() > 6)
    throw std::invalid_argument("malformed knot name: " + std::string(whole));
  int v = 0;
  for (char ch : s) {
    if (ch < '0' || ch > '9')
      throw std::invalid_argument("malformed knot name: " + std::string(whole));
    v = v * 10 + (ch - '0');
  }
  return v;
}

std::vector<std::string_view> split(std::string_view s, char sep) {
  std::vector<std::string_view> out;
  std::size_t start = 0;
  for (;;) {
    const auto pos = s.find(sep, start);
    out.push_back(s.substr(start, pos == std::string_view::npos ? pos : pos - start));
    if (pos == std::string_view::npos)
      return out;
    start = pos + 1;
  }
}

} // namespace

KnotLabel KnotLabel::parse(std::string_view text) {
  if (text == "unknown")
    return unknown();
  if (text == "0_1")
    return unknot();
  if (text.find('/') != std::string_view::npos) {
    std::vector<KnotLabel> alts;
    for (auto part : split(text, '/'))
      alts.push_back(parse(part));
    return ambiguous(std::move(alts));
  }
  std::vector<PrimeFactor> factors;
  for (auto part : split(text, '#')) {
    PrimeFactor f;
    if (!part.empty() && (part.front() == '+' || part.front() == '-')) {
      f.chirality = part.front() == '+' ? Chirality::plus : Chirality::minus;
      part.remove_prefix(1);
    }
    const auto us = part.find('_');
    if (us == std::string_view::npos)
      throw std::invalid_argument("malformed knot name: " + std::string(text));
    f.crossing_number = parse_positive(part.substr(0, us), text);
    f.index = parse_positive(part.substr(us + 1), text);
    factors.push_back(f);
  }
  return from_factors(std::move(factors));
}

int KnotLabel::crossing_number() const {
  switch (kind_) {
  case Kind::unknown:
    return -1;
  case Kind::set: {
    int best = alternatives_.front().crossing_number();
    for (const auto &a : alternatives_)
      best = std::min(best, a.crossing_number());
    return best;
  }
  default: {
    int total = 0;
    for (const auto &f : factors_)
      total += f.crossing_number;
    return total;
  }
  }
}

KnotLabel KnotLabel::mirrored() const {
  switch (kind_) {
  case Kind::unknown:
    return *this;
  case Kind::set: {
    std::vector<KnotLabel> alts;
    for (const auto &a : alternatives_)
      alts.push_back(a.mirrored());
    return ambiguous(std::move(alts));
  }
  default: {
    std::vector<PrimeFactor> fs;
    for (const auto &f : factors_)
      fs.push_back(f.mirrored());
    return from_factors(std::move(fs));
  }
  }
}

bool label_display_less(const KnotLabel &a, const KnotLabel &b) {
  auto key = [](const KnotLabel &l) {
    return std::tuple<bool, int, bool, std::size_t, const std::string &>(
        l.is_unknown(), l.crossing_number(), l.is_ambiguous(), l.factors().size(), l.str());
  };
  return key(a) < key(b);
}

// ----------------------------------------------------------------- table

KnotTable::KnotTable(std::vector<TableEntry> entries) : entries_(std::move(entries)) {
  std::unordered_map<LaurentPoly2, std::vector<KnotLabel>, LaurentPoly2Hash> groups;
  for (std::size_t i = 0; i < entries_.size(); ++i) {
    const auto &e = entries_[i];
    if (!by_name_.emplace(e.label.str(), i).second)
      throw TableError("duplicate table entry " + e.label.str());
    groups[e.polynomial].push_back(e.label);
  }
  for (auto &[poly, labels] : groups)
    by_poly_.emplace(poly, KnotLabel::ambiguous(std::move(labels)));
}

const TableEntry *KnotTable::find(const KnotLabel &label) const {
  const auto it = by_name_.find(label.str());
  return it == by_name_.end() ? nullptr : &entries_[it->second];
}

KnotLabel KnotTable::lookup(const LaurentPoly2 &poly) const {
  const auto it = by_poly_.find(poly);
  return it == by_poly_.end() ? KnotLabel::unknown() : it->second;
}

namespace {

constexpr int kTableCrossingCap = 1000;

LaurentPoly2 table_homfly(HomflyEngine &engine, const LinkDiagram &d, const std::string &name) {
  auto p = engine.compute(d);
  if (!p)
    throw TableError("polynomial of " + name + " exceeds the crossing cap");
  return *p;
}

std::string chirality_text(const KnotLabel &label) {
  if (label.is_composite())
    return label.mirrored() == label ? "none" : "chiral";
  if (label.is_unknot())
    return "none";
  switch (label.factors().front().chirality) {
  case Chirality::plus:
    return "+";
  case Chirality::minus:
    return "-";
  default:
    return "none";
  }
}

struct OrientedPrime {
  PrimeFactor factor;
  LinkDiagram diagram;
  LaurentPoly2 polynomial;
};

} // namespace

std::vector<TableEntry> generate_table(const std::string &prime_pd_path,
                                       int composite_max_crossings) {
  std::ifstream in(prime_pd_path);
  if (!in)
    throw TableError("cannot open " + prime_pd_path);
  HomflyEngine engine(kTableCrossingCap);
  std::vector<TableEntry> out;
  out.push_back({KnotLabel::unknot(), 0, "none", {}, LaurentPoly2::constant(1)});

  std::vector<OrientedPrime> primes;
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty() || line.front() == '#')
      continue;
    const auto fields = split(line, '\t');
    if (fields.size() != 4)
      throw TableError(prime_pd_path + ":" + std::to_string(line_no) + ": expected 4 fields");
    const KnotLabel base = KnotLabel::parse(fields[0]);
    if (base.factors().size() != 1)
      throw TableError("prime list entry is not a prime name: " + std::string(fields[0]));
    const bool chiral = fields[2] == "chiral";
    LinkDiagram d = LinkDiagram::from_pd(parse_pd(fields[3]));
    if (chiral && d.writhe() < 0)
      d = d.mirrored();
    PrimeFactor f = base.factors().front();
    f.chirality = chiral ? Chirality::plus : Chirality::none;
    const LaurentPoly2 p = table_homfly(engine, d, f.to_string());
    primes.push_back({f, d, p});
    if (chiral)
      primes.push_back({f.mirrored(), d.mirrored(), p.mirrored()});
  }
  for (const auto &pr : primes) {
    const KnotLabel label = KnotLabel::from_factors({pr.factor});
    out.push_back({label, pr.factor.crossing_number, chirality_text(label), pr.diagram.to_pd(),
                   pr.polynomial});
  }

  std::vector<const OrientedPrime *> small;
  for (const auto &pr : primes)
    if (pr.factor.crossing_number <= composite_max_crossings)
      small.push_back(&pr);
  auto add_composite = [&](std::vector<const OrientedPrime *> parts) {
    std::vector<PrimeFactor> fs;
    LinkDiagram d = parts.front()->diagram;
    LaurentPoly2 product = parts.front()->polynomial;
    fs.push_back(parts.front()->factor);
    for (std::size_t i = 1; i < parts.size(); ++i) {
      d = LinkDiagram::connected_sum(d, parts[i]->diagram);
      product = product * parts[i]->polynomial;
      fs.push_back(parts[i]->factor);
    }
    const KnotLabel label = KnotLabel::from_factors(fs);
    if (table_homfly(engine, d, label.str()) != product)
      throw TableError("product rule fails for " + label.str());
    out.push_back({label, label.crossing_number(), chirality_text(label), d.to_pd(), product});
  };
  for (std::size_t i = 0; i < small.size(); ++i)
    for (std::size_t j = i; j < small.size(); ++j)
      add_composite({small[i], small[j]});

  const OrientedPrime *trefoils[2] = {nullptr, nullptr};
  for (const auto &pr : primes)
    if (pr.factor.crossing_number == 3 && pr.factor.index == 1)
      trefoils[pr.factor.chirality == Chirality::minus ? 1 : 0] = &pr;
  if (trefoils[0] && trefoils[1])
    for (int plus = 3; plus >= 0; --plus) {
      std::vector<const OrientedPrime *> parts;
      for (int i = 0; i < 3; ++i)
        parts.push_back(i < plus ? trefoils[0] : trefoils[1]);
      add_composite(parts);
    }
  return out;
}

void write_table(const std::vector<TableEntry> &entries, const std::string &path) {
  std::ofstream out(path);
  if (!out)
    throw TableError("cannot write " + path);
  out << "# Knot table: name, crossing number, chirality, PD code, HOMFLYPT polynomial.\n"
         "# Polynomial convention: a*P(L+) - a^-1*P(L-) = z*P(L0), P(unknot) = 1.\n"
         "# Polynomial text lists terms c a^i z^j sorted by (i, j), e.g.\n"
         "#   -1a^-4z^0 + 2a^-2z^0 + 1a^-2z^2\n"
         "# PD code: X[i,j,k,l] counter-clockwise from the incoming under-strand;\n"
         "# the crossing is positive when j = l + 1 (mod 2n).\n"
         "# Chirality: \"+\" marks the version whose listed diagram has positive writhe\n"
         "# (for a chiral knot whose source diagram has writhe zero, the source\n"
         "# diagram), \"-\" its mirror, \"none\" amphichiral. Composite rows say\n"
         "# \"chiral\" or \"none\" for the factor multiset as a whole.\n"
         "# name\tcrossing_number\tchirality\tpd_code\thomfly\n";
  for (const auto &e : entries)
    out << e.label.str() << '\t' << e.crossing_number << '\t' << e.chirality << '\t'
        << format_pd(e.pd) << '\t' << e.polynomial.to_string() << '\n';
}

KnotTable build_table(const std::string &path) {
  std::ifstream in(path);
  if (!in)
    throw TableError("cannot open knot table " + path);
  HomflyEngine engine(kTableCrossingCap);
  std::vector<TableEntry> entries;
  std::string line;
  int line_no = 0;
  auto fail = [&](const std::string &msg) {
    throw TableError(path + ":" + std::to_string(line_no) + ": " + msg);
  };
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty() || line.front() == '#')
      continue;
    const auto fields = split(line, '\t');
    if (fields.size() != 5)
      fail("expected 5 tab-separated fields");
    TableEntry e;
    try {
      e.label = KnotLabel::parse(fields[0]);
      e.crossing_number = std::stoi(std::string(fields[1]));
      e.chirality = std::string(fields[2]);
      e.pd = parse_pd(fields[3]);
      e.polynomial = LaurentPoly2::parse(fields[4]);
    } catch (const std::exception &ex) {
      fail(ex.what());
    }
    if (e.label.is_unknown() || e.label.is_ambiguous())
      fail("table names must be single knot types");
    if (e.crossing_number != e.label.crossing_number())
      fail("crossing number does not match the name");
    const LaurentPoly2 computed = table_homfly(engine, LinkDiagram::from_pd(e.pd), e.label.str());
    if (computed != e.polynomial)
      fail("stored polynomial of " + e.label.str() + " differs from its PD code");
    entries.push_back(std::move(e));
  }

  KnotTable table(std::move(entries));
  for (const auto &e : table.entries()) {
    const TableEntry *partner = table.find(e.label.mirrored());
    if (!partner)
      throw TableError("mirror partner of " + e.label.str() + " is missing");
    if (partner->polynomial != e.polynomial.mirrored())
      throw TableError("mirror rule fails for " + e.label.str());
    if (e.label.is_composite()) {
      LaurentPoly2 product = LaurentPoly2::constant(1);
      for (const auto &f : e.label.factors()) {
        const TableEntry *fe = table.find(KnotLabel::from_factors({f}));
        if (!fe)
          throw TableError("factor " + f.to_string() + " of " + e.label.str() + " is missing");
        product = product * fe->polynomial;
      }
      if (product != e.polynomial)
        throw TableError("product rule fails for " + e.label.str());
    }
  }
  return table;
}

std::string default_table_path() {
  if (const char *env = std::getenv("KNOTLAB_TABLE"))
    return env;
  return std::string(KNOTLAB_DATA_DIR) + "/knot_table.tsv";
}

// -------------------------------------------------------- identification

std::optional<LaurentPoly2> polygon_homfly(const Polygon3 &polygon, RngStream &rng,
                                           HomflyEngine &engine, const IdentifyOptions &options) {
  const Polygon3 simple = kmt_simplify(polygon);
  for (int attempt = 0; attempt <= options.extra_projections; ++attempt) {
    const auto proj = generic_project(simple, rng);
    if (auto p = engine.compute(LinkDiagram::from_knot_diagram(proj.diagram)))
      return p;
  }
  return std::nullopt;
}

KnotLabel identify(const Polygon3 &polygon, const KnotTable &table, RngStream &rng,
                   HomflyEngine &engine, const IdentifyOptions &options) {
  const auto p = polygon_homfly(polygon, rng, engine, options);
  return p ? table.lookup(*p) : KnotLabel::unknown();
}

KnotLabel identify(const Polygon3 &polygon, const KnotTable &table, RngStream &rng) {
  HomflyEngine engine;
  return identify(polygon, table, rng, engine);
}

} // namespace knotlab
