#include "qcb/data.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <numeric>
#include <set>
#include <sstream>

#include "qcb/classical/mutual_info.hpp"
#include "qcb/errors.hpp"
#include "qcb/rng.hpp"

namespace qcb::data {

std::string to_string(Severity s) {
  switch (s) {
    case Severity::Low: return "Low";
    case Severity::Medium: return "Medium";
    case Severity::High: return "High";
    case Severity::Critical: return "Critical";
  }
  return "?";
}

CrimeSchema CrimeSchema::default_schema() {
  CrimeSchema s;
  s.crime_types = {"Dacoity",       "Robbery",       "Murder",      "Speedy Trial", "Riot",
                   "Woman & Child Repression",       "Kidnapping",  "Police Assault", "Burglary",
                   "Theft",         "Other Cases",   "Arms Act",    "Explosive",    "Narcotics",
                   "Smuggling",     "Cyber Crime"};
  s.violent = {"Murder", "Dacoity", "Robbery", "Kidnapping", "Riot"};
  s.property = {"Theft", "Robbery", "Dacoity", "Burglary"};
  s.social = {"Woman & Child Repression", "Riot", "Narcotics", "Smuggling"};
  s.raw_features = {"Woman & Child Repression", "Other Cases", "Murder", "Theft", "Robbery"};
  return s;
}

void CrimeSchema::validate() const {
  if (crime_types.empty()) throw ConfigError("schema: no crime types");
  std::set<std::string> known(crime_types.begin(), crime_types.end());
  if (known.size() != crime_types.size()) throw ConfigError("schema: duplicate crime type");
  for (const auto* list : {&violent, &property, &social, &raw_features})
    for (const auto& t : *list)
      if (!known.count(t)) throw ConfigError("schema: aggregate member '" + t + "' is not a crime type");
  for (const auto& [alias, target] : aliases)
    if (!known.count(target)) throw ConfigError("schema: alias target '" + target + "' is not a crime type");
}

std::int64_t CrimeRecord::count(const std::string& type) const {
  auto it = counts.find(type);
  return it == counts.end() ? 0 : it->second;
}

void LabeledDataset::validate() const {
  if (X.rows() != y.size()) throw DataError("dataset: row and label counts differ");
  if (X.cols() != feature_names.size()) throw DataError("dataset: feature name count differs from columns");
  for (double v : X.data())
    if (!std::isfinite(v)) throw DataError("dataset: non-finite feature value");
  for (int v : y)
    if (v < 0 || v >= kSeverityClasses) throw DataError("dataset: label outside severity range");
}

SeverityInputs SeverityInputs::from_counts(double violent_total, double total_cases) {
  if (violent_total < 0 || total_cases < 0 || violent_total > total_cases)
    throw UsageError("severity inputs: need 0 <= violent <= total");
  if (total_cases == 0) return {0.0, 0.0};
  return {violent_total / total_cases, total_cases};
}

Severity severity_label(const SeverityInputs& s) {
  const double r = s.violent_ratio, c = s.total_cases;
  if (r > 0.3 || c > 30000) return Severity::Critical;
  if (r > 0.15 || c > 15000) return Severity::High;
  if (r > 0.05 || c > 5000) return Severity::Medium;
  return Severity::Low;
}

namespace {

std::vector<std::string> split_line(const std::string& line) {
  std::vector<std::string> out;
  std::string cell;
  std::istringstream ss(line);
  while (std::getline(ss, cell, ',')) out.push_back(cell);
  if (!line.empty() && line.back() == ',') out.emplace_back();
  return out;
}

std::string trim(std::string s) {
  const auto ws = " \t\r\n";
  s.erase(0, s.find_first_not_of(ws));
  const auto last = s.find_last_not_of(ws);
  s.erase(last == std::string::npos ? 0 : last + 1);
  return s;
}

bool parse_int(const std::string& s, std::int64_t& out) {
  if (s.empty()) return false;
  std::size_t pos = 0;
  try {
    out = std::stoll(s, &pos);
  } catch (...) {
    return false;
  }
  return pos == s.size();
}

}  // namespace

std::vector<CrimeRecord> parse_csv(const std::string& text, const CrimeSchema& schema) {
  schema.validate();
  std::istringstream in(text);
  std::string line;
  if (!std::getline(in, line)) throw DataError("CSV: missing header row", 0);
  if (line.size() >= 3 && line.compare(0, 3, "\xEF\xBB\xBF") == 0) line.erase(0, 3);
  auto header = split_line(line);
  for (auto& h : header) h = trim(h);

  int unit_col = -1, year_col = -1;
  std::vector<std::string> column_type(header.size());
  std::set<std::string> seen;
  const std::set<std::string> known(schema.crime_types.begin(), schema.crime_types.end());
  for (std::size_t c = 0; c < header.size(); ++c) {
    const auto& h = header[c];
    if (h == "Unit") {
      unit_col = static_cast<int>(c);
      continue;
    }
    if (h == "Year") {
      year_col = static_cast<int>(c);
      continue;
    }
    std::string canonical = h;
    if (auto a = schema.aliases.find(h); a != schema.aliases.end()) canonical = a->second;
    if (!known.count(canonical)) throw DataError("CSV: unknown column '" + h + "'", 0, h);
    if (!seen.insert(canonical).second) throw DataError("CSV: duplicate column '" + h + "'", 0, h);
    column_type[c] = canonical;
  }
  if (unit_col < 0) throw DataError("CSV: missing required column 'Unit'", 0, "Unit");
  if (year_col < 0) throw DataError("CSV: missing required column 'Year'", 0, "Year");
  for (const auto& t : schema.crime_types)
    if (!seen.count(t)) throw DataError("CSV: missing required column '" + t + "'", 0, t);

  std::vector<CrimeRecord> records;
  long row = 0;
  while (std::getline(in, line)) {
    ++row;
    if (trim(line).empty()) continue;
    auto cells = split_line(line);
    if (cells.size() != header.size())
      throw DataError("CSV row " + std::to_string(row) + ": expected " + std::to_string(header.size()) +
                          " fields, found " + std::to_string(cells.size()),
                      row);
    CrimeRecord rec;
    rec.source_row = row;
    rec.unit = trim(cells[static_cast<std::size_t>(unit_col)]);
    std::int64_t year = 0;
    if (!parse_int(trim(cells[static_cast<std::size_t>(year_col)]), year))
      throw DataError("CSV row " + std::to_string(row) + ", column 'Year': not an integer", row, "Year");
    rec.year = static_cast<int>(year);
    for (std::size_t c = 0; c < header.size(); ++c) {
      if (column_type[c].empty()) continue;
      std::int64_t v = 0;
      const auto cell = trim(cells[c]);
      if (!parse_int(cell, v))
        throw DataError("CSV row " + std::to_string(row) + ", column '" + header[c] + "': non-integer count '" +
                            cell + "'",
                        row, header[c]);
      if (v < 0)
        throw DataError("CSV row " + std::to_string(row) + ", column '" + header[c] + "': negative count " + cell,
                        row, header[c]);
      rec.counts[column_type[c]] = v;
    }
    records.push_back(std::move(rec));
  }
  return records;
}

std::vector<CrimeRecord> ingest_csv(const std::filesystem::path& path, const CrimeSchema& schema) {
  std::ifstream f(path, std::ios::binary);
  if (!f) throw DataError("cannot open '" + path.string() + "'");
  std::ostringstream ss;
  ss << f.rdbuf();
  return parse_csv(ss.str(), schema);
}

std::string format_csv(const std::vector<CrimeRecord>& records, const CrimeSchema& schema) {
  std::ostringstream out;
  out << "Unit,Year";
  for (const auto& t : schema.crime_types) out << ',' << t;
  out << '\n';
  for (const auto& r : records) {
    out << r.unit << ',' << r.year;
    for (const auto& t : schema.crime_types) out << ',' << r.count(t);
    out << '\n';
  }
  return out.str();
}

void write_csv(const std::filesystem::path& path, const std::vector<CrimeRecord>& records, const CrimeSchema& schema) {
  std::ofstream f(path, std::ios::binary);
  if (!f) throw DataError("cannot write '" + path.string() + "'");
  f << format_csv(records, schema);
  if (!f) throw DataError("write failed for '" + path.string() + "'");
}

LabeledDataset engineer_features(const std::vector<CrimeRecord>& records, const CrimeSchema& schema) {
  schema.validate();
  if (records.empty()) throw DataError("no records to engineer");
  LabeledDataset d;
  d.feature_names = {"Total Cases",         "Violent Crime Total", "Property Crime Total",
                     "Social Crime Total",  "Crime Std",           "Crime Diversity"};
  for (const auto& r : schema.raw_features) d.feature_names.push_back(r);
  d.aggregates = {{"Violent Crime Total", schema.violent},
                  {"Property Crime Total", schema.property},
                  {"Social Crime Total", schema.social}};
  d.X = Matrix(records.size(), d.feature_names.size());
  d.y.resize(records.size());

  auto sum_of = [](const CrimeRecord& r, const std::vector<std::string>& types) {
    double s = 0.0;
    for (const auto& t : types) s += static_cast<double>(r.count(t));
    return s;
  };
  for (std::size_t i = 0; i < records.size(); ++i) {
    const auto& r = records[i];
    const double total = sum_of(r, schema.crime_types);
    const double violent = sum_of(r, schema.violent);
    const double n = static_cast<double>(schema.crime_types.size());
    const double mean = total / n;
    double var = 0.0;
    int diversity = 0;
    for (const auto& t : schema.crime_types) {
      const double c = static_cast<double>(r.count(t));
      var += (c - mean) * (c - mean);
      diversity += c > 0 ? 1 : 0;
    }
    auto row = d.X.row(i);
    row[0] = total;
    row[1] = violent;
    row[2] = sum_of(r, schema.property);
    row[3] = sum_of(r, schema.social);
    row[4] = std::sqrt(var / n);
    row[5] = diversity;
    for (std::size_t k = 0; k < schema.raw_features.size(); ++k)
      row[6 + k] = static_cast<double>(r.count(schema.raw_features[k]));
    d.y[i] = static_cast<int>(severity_label(SeverityInputs::from_counts(violent, total)));
  }
  return d;
}

std::vector<double> feature_scores(const LabeledDataset& d, int n_bins) {
  std::vector<double> s(d.X.cols());
  for (std::size_t c = 0; c < d.X.cols(); ++c) s[c] = classical::mutual_information(d.X.column(c), d.y, n_bins);
  return s;
}

LabeledDataset select_features(const LabeledDataset& d, int k, int n_bins) {
  if (k < 1 || static_cast<std::size_t>(k) > d.X.cols())
    throw UsageError("select_features: k must be in [1, " + std::to_string(d.X.cols()) + "]");
  const auto scores = feature_scores(d, n_bins);
  std::vector<std::size_t> order(scores.size());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return scores[a] > scores[b]; });
  order.resize(static_cast<std::size_t>(k));
  LabeledDataset out = d;
  out.X = d.X.select_columns(order);
  out.feature_names.clear();
  for (std::size_t c : order) out.feature_names.push_back(d.feature_names[c]);
  return out;
}

namespace {

std::int64_t poisson(Rng& rng, double lambda) {
  if (lambda <= 0) return 0;
  if (lambda < 30) {
    const double l = std::exp(-lambda);
    std::int64_t k = 0;
    double p = rng.uniform();
    while (p > l) {
      ++k;
      p *= rng.uniform();
    }
    return k;
  }
  return std::max<std::int64_t>(0, std::llround(lambda + std::sqrt(lambda) * rng.normal()));
}

}  // namespace

namespace {
constexpr double kSynthScale = 5000.0;
constexpr double kSynthScaleSpread = 1.1;
constexpr double kSynthViolentShare = 0.07;
constexpr double kSynthViolentSpread = 1.0;
// Larger units skew violent.
constexpr double kSynthScaleViolence = 0.7;
}  // namespace

std::vector<CrimeRecord> synthesize(const SynthParams& p, const CrimeSchema& schema) {
  schema.validate();
  if (p.n_units < 1 || p.n_years < 1) throw ConfigError("synthesize: sizes must be positive");
  Rng rng(derive_seed(p.seed, {hash_string("synth")}));
  const std::size_t nt = schema.crime_types.size();
  const std::set<std::string> violent(schema.violent.begin(), schema.violent.end());

  // Type mix within the violent and non-violent groups, heavy-tailed.
  std::vector<double> base_share(nt);
  std::vector<bool> is_violent(nt);
  for (std::size_t t = 0; t < nt; ++t) {
    base_share[t] = std::exp(1.1 * rng.normal());
    is_violent[t] = violent.count(schema.crime_types[t]) > 0;
  }

  std::vector<double> year_effect(static_cast<std::size_t>(p.n_years));
  for (auto& e : year_effect) e = 0.08 * rng.normal();

  std::vector<CrimeRecord> out;
  out.reserve(static_cast<std::size_t>(p.n_units * p.n_years));
  for (int u = 0; u < p.n_units; ++u) {
    const double z_scale = rng.normal();
    const double scale = kSynthScale * std::exp(kSynthScaleSpread * z_scale);
    const double trend = 0.04 * rng.normal();
    // Units differ in how violent their case mix is.
    const double violence = std::clamp(
        kSynthViolentShare * std::exp(kSynthViolentSpread * (kSynthScaleViolence * z_scale +
                                                             std::sqrt(1.0 - kSynthScaleViolence * kSynthScaleViolence) *
                                                                 rng.normal())),
        0.005, 0.9);
    std::vector<double> unit_share(nt);
    double vs = 0.0, ns = 0.0;
    for (std::size_t t = 0; t < nt; ++t) {
      unit_share[t] = base_share[t] * std::exp(0.25 * rng.normal());
      (is_violent[t] ? vs : ns) += unit_share[t];
    }
    const double year_mid = 0.5 * (p.n_years - 1);
    for (int yi = 0; yi < p.n_years; ++yi) {
      CrimeRecord rec;
      rec.unit = "Unit-" + std::to_string(u + 1);
      rec.year = p.first_year + yi;
      const double level =
          scale * std::exp(trend * (yi - year_mid) + year_effect[static_cast<std::size_t>(yi)] + 0.12 * rng.normal());
      const double r = std::clamp(violence * std::exp(0.2 * rng.normal()), 0.0, 0.95);
      for (std::size_t t = 0; t < nt; ++t) {
        const double group = is_violent[t] ? r / vs : (1.0 - r) / ns;
        const double lambda = level * unit_share[t] * group * std::exp(0.15 * rng.normal());
        rec.counts[schema.crime_types[t]] = poisson(rng, lambda);
      }
      out.push_back(std::move(rec));
    }
  }
  return out;
}

}  // namespace qcb::data
