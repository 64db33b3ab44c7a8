#include "qcb/report.hpp"

#include <cmath>
#include <fstream>
#include <iomanip>
#include <limits>
#include <sstream>

#include <json.hpp>

#include "qcb/data.hpp"
#include "qcb/errors.hpp"

namespace qcb::eval {

using nlohmann::ordered_json;

ReportFormat parse_report_format(const std::string& s) {
  if (s == "json") return ReportFormat::Json;
  if (s == "csv") return ReportFormat::Csv;
  if (s == "both") return ReportFormat::Both;
  throw UsageError("unknown report format '" + s + "' (json, csv, both)");
}

namespace {

ordered_json num(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  return v;
}

double to_num(const ordered_json& j) {
  if (j.is_string()) {
    const auto s = j.get<std::string>();
    if (s == "inf") return std::numeric_limits<double>::infinity();
    if (s == "-inf") return -std::numeric_limits<double>::infinity();
    if (s == "nan") return std::numeric_limits<double>::quiet_NaN();
    throw DataError("report: bad number '" + s + "'");
  }
  return j.get<double>();
}

ordered_json opt(const std::optional<double>& v) { return v ? num(*v) : ordered_json(nullptr); }

std::optional<double> to_opt(const ordered_json& j) {
  if (j.is_null()) return std::nullopt;
  return to_num(j);
}

ordered_json interval(const Interval& i) { return {{"mean", num(i.mean)}, {"ci95", num(i.half_width)}}; }

Interval to_interval(const ordered_json& j) { return {to_num(j.at("mean")), to_num(j.at("ci95"))}; }

ordered_json nums(const std::vector<double>& v) {
  auto a = ordered_json::array();
  for (double x : v) a.push_back(num(x));
  return a;
}

std::vector<double> to_nums(const ordered_json& j) {
  std::vector<double> v;
  for (const auto& x : j) v.push_back(to_num(x));
  return v;
}

ordered_json to_json(const MetricsReport& r, bool with_timing) {
  ordered_json j;
  j["schema"] = r.schema;
  j["master_seed"] = r.master_seed;
  j["reference"] = r.reference;
  j["plan"] = {{"n_folds", r.plan.n_folds},
               {"seeds", r.plan.seeds},
               {"stratified", r.plan.stratified},
               {"holdout_fraction", num(r.plan.holdout_fraction)}};
  j["dataset"] = {{"n_samples", r.dataset.n_samples},
                  {"feature_names", r.dataset.feature_names},
                  {"class_counts", r.dataset.class_counts},
                  {"provenance", r.dataset.provenance}};
  j["stratification_ok"] = r.stratification_ok;
  j["failed_cells"] = r.failed_cells();
  j["deviations"] = r.deviations;

  auto models = ordered_json::array();
  for (const auto& m : r.models) {
    ordered_json o;
    o["id"] = m.id;
    o["display"] = m.display;
    o["category"] = m.category;
    o["n_qubits"] = m.n_qubits;
    o["layers"] = m.layers;
    o["cells_ok"] = m.cells_ok;
    o["cells_failed"] = m.cells_failed;
    o["accuracy"] = interval(m.accuracy);
    o["precision"] = interval(m.precision);
    o["recall"] = interval(m.recall);
    o["f1"] = interval(m.f1);
    o["per_class_f1"] = nums(m.per_class_f1);
    o["per_class_accuracy"] = nums(m.per_class_accuracy);
    o["param_count"] = num(m.param_count);
    o["circuit_depth"] = opt(m.circuit_depth);
    o["intermediate_features"] = m.intermediate_features;
    o["qubit_efficiency"] = opt(m.qubit_efficiency);
    o["gap_vs_reference"] = opt(m.gap_vs_reference);
    if (with_timing)
      o["timing"] = {{"train_seconds", interval(m.train_seconds)}, {"speedup", opt(m.speedup_vs_reference)}};
    models.push_back(std::move(o));
  }
  j["models"] = std::move(models);

  auto pairs = ordered_json::array();
  for (const auto& p : r.pairwise)
    pairs.push_back({{"a", p.a},
                     {"b", p.b},
                     {"n", p.n},
                     {"t", num(p.t)},
                     {"p", num(p.p)},
                     {"cohens_d", num(p.cohens_d)},
                     {"branch", p.branch},
                     {"stars", p.stars}});
  j["pairwise"] = std::move(pairs);

  auto cells = ordered_json::array();
  for (const auto& c : r.cells) {
    ordered_json o;
    o["model"] = c.model;
    o["seed_index"] = c.seed_index;
    o["fold"] = c.fold;
    o["ok"] = c.ok;
    o["error"] = c.error;
    o["accuracy"] = num(c.accuracy);
    o["precision"] = num(c.precision);
    o["recall"] = num(c.recall);
    o["f1"] = num(c.f1);
    o["per_class_f1"] = nums(c.per_class_f1);
    o["per_class_recall"] = nums(c.per_class_recall);
    // Hex keeps 64-bit checksums exact for readers that parse numbers as doubles.
    std::ostringstream hex;
    hex << std::hex << std::setw(16) << std::setfill('0') << c.checksum;
    o["checksum"] = hex.str();
    o["circuit_depth"] = c.circuit_depth;
    o["fitted_params"] = c.fitted_params;
    o["intermediate_features"] = c.intermediate_features;
    if (with_timing) o["timing"] = {{"train_seconds", num(c.train_seconds)}};
    cells.push_back(std::move(o));
  }
  j["cells"] = std::move(cells);

  auto ex = ordered_json::array();
  for (const auto& e : r.expressibility)
    ex.push_back({{"n_qubits", e.n_qubits},
                  {"layers", e.layers},
                  {"score", num(e.score)},
                  {"kl_divergence", num(e.kl_divergence)},
                  {"n_pairs", e.n_pairs}});
  j["expressibility"] = std::move(ex);
  return j;
}

std::string fmt(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  std::ostringstream os;
  os << std::setprecision(10) << v;
  return os.str();
}

std::string fmt(const std::optional<double>& v) { return v ? fmt(*v) : ""; }

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char ch : s) {
    if (ch == '"') out += '"';
    out += ch;
  }
  return out + "\"";
}

}  // namespace

std::string report_to_json(const MetricsReport& r, int indent) { return to_json(r, true).dump(indent) + "\n"; }

std::string report_without_timing(const MetricsReport& r) { return to_json(r, false).dump(2) + "\n"; }

MetricsReport report_from_json(const std::string& text) {
  ordered_json j;
  try {
    j = ordered_json::parse(text);
  } catch (const std::exception& e) {
    throw DataError(std::string("report: invalid JSON: ") + e.what());
  }
  try {
    MetricsReport r;
    r.schema = j.at("schema").get<std::string>();
    if (r.schema != kReportSchema) throw DataError("report: unsupported schema '" + r.schema + "'");
    r.master_seed = j.at("master_seed").get<std::uint64_t>();
    r.reference = j.at("reference").get<std::string>();
    const auto& p = j.at("plan");
    r.plan.n_folds = p.at("n_folds").get<int>();
    r.plan.seeds = p.at("seeds").get<std::vector<std::uint64_t>>();
    r.plan.stratified = p.at("stratified").get<bool>();
    r.plan.holdout_fraction = to_num(p.at("holdout_fraction"));
    const auto& d = j.at("dataset");
    r.dataset.n_samples = d.at("n_samples").get<std::size_t>();
    r.dataset.feature_names = d.at("feature_names").get<std::vector<std::string>>();
    r.dataset.class_counts = d.at("class_counts").get<std::vector<std::size_t>>();
    r.dataset.provenance = d.at("provenance").get<std::string>();
    r.stratification_ok = j.at("stratification_ok").get<bool>();
    r.deviations = j.at("deviations").get<std::map<std::string, std::string>>();

    for (const auto& o : j.at("models")) {
      ModelSummary m;
      m.id = o.at("id").get<std::string>();
      m.display = o.at("display").get<std::string>();
      m.category = o.at("category").get<std::string>();
      m.n_qubits = o.at("n_qubits").get<int>();
      m.layers = o.at("layers").get<int>();
      m.cells_ok = o.at("cells_ok").get<int>();
      m.cells_failed = o.at("cells_failed").get<int>();
      m.accuracy = to_interval(o.at("accuracy"));
      m.precision = to_interval(o.at("precision"));
      m.recall = to_interval(o.at("recall"));
      m.f1 = to_interval(o.at("f1"));
      m.per_class_f1 = to_nums(o.at("per_class_f1"));
      m.per_class_accuracy = to_nums(o.at("per_class_accuracy"));
      m.param_count = to_num(o.at("param_count"));
      m.circuit_depth = to_opt(o.at("circuit_depth"));
      m.intermediate_features = o.at("intermediate_features").get<int>();
      m.qubit_efficiency = to_opt(o.at("qubit_efficiency"));
      m.gap_vs_reference = to_opt(o.at("gap_vs_reference"));
      if (o.contains("timing")) {
        m.train_seconds = to_interval(o["timing"].at("train_seconds"));
        m.speedup_vs_reference = to_opt(o["timing"].at("speedup"));
      }
      r.models.push_back(std::move(m));
    }
    for (const auto& o : j.at("pairwise")) {
      PairwiseTest t;
      t.a = o.at("a").get<std::string>();
      t.b = o.at("b").get<std::string>();
      t.n = o.at("n").get<int>();
      t.t = to_num(o.at("t"));
      t.p = to_num(o.at("p"));
      t.cohens_d = to_num(o.at("cohens_d"));
      t.branch = o.at("branch").get<std::string>();
      t.stars = o.at("stars").get<std::string>();
      r.pairwise.push_back(std::move(t));
    }
    for (const auto& o : j.at("cells")) {
      CellResult c;
      c.model = o.at("model").get<std::string>();
      c.seed_index = o.at("seed_index").get<int>();
      c.fold = o.at("fold").get<int>();
      c.ok = o.at("ok").get<bool>();
      c.error = o.at("error").get<std::string>();
      c.accuracy = to_num(o.at("accuracy"));
      c.precision = to_num(o.at("precision"));
      c.recall = to_num(o.at("recall"));
      c.f1 = to_num(o.at("f1"));
      c.per_class_f1 = to_nums(o.at("per_class_f1"));
      c.per_class_recall = to_nums(o.at("per_class_recall"));
      c.checksum = std::stoull(o.at("checksum").get<std::string>(), nullptr, 16);
      c.circuit_depth = o.at("circuit_depth").get<int>();
      c.fitted_params = o.at("fitted_params").get<std::size_t>();
      c.intermediate_features = o.at("intermediate_features").get<int>();
      if (o.contains("timing")) c.train_seconds = to_num(o["timing"].at("train_seconds"));
      r.cells.push_back(std::move(c));
    }
    for (const auto& o : j.at("expressibility")) {
      ExpressibilityPoint e;
      e.n_qubits = o.at("n_qubits").get<int>();
      e.layers = o.at("layers").get<int>();
      e.score = to_num(o.at("score"));
      e.kl_divergence = to_num(o.at("kl_divergence"));
      e.n_pairs = o.at("n_pairs").get<int>();
      r.expressibility.push_back(e);
    }
    return r;
  } catch (const DataError&) {
    throw;
  } catch (const std::exception& e) {
    throw DataError(std::string("report: malformed field: ") + e.what());
  }
}

MetricsReport load_report(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw DataError("cannot read report " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return report_from_json(ss.str());
}

std::string summary_csv(const MetricsReport& r) {
  std::ostringstream os;
  os << "model,display,category,n_qubits,layers,cells_ok,cells_failed,accuracy,accuracy_ci95,precision,"
        "precision_ci95,recall,recall_ci95,f1,f1_ci95,params,circuit_depth,intermediate_features,"
        "qubit_efficiency,gap_vs_reference,train_seconds,speedup,p_vs_reference,significance\n";
  for (const auto& m : r.models) {
    std::string p, stars;
    for (const auto& t : r.pairwise) {
      if ((t.a == m.id && t.b == r.reference) || (t.b == m.id && t.a == r.reference)) {
        p = fmt(t.p);
        stars = t.stars;
      }
    }
    os << csv_field(m.id) << ',' << csv_field(m.display) << ',' << csv_field(m.category) << ',' << m.n_qubits << ','
       << m.layers << ',' << m.cells_ok << ',' << m.cells_failed << ',' << fmt(m.accuracy.mean) << ','
       << fmt(m.accuracy.half_width) << ',' << fmt(m.precision.mean) << ',' << fmt(m.precision.half_width) << ','
       << fmt(m.recall.mean) << ',' << fmt(m.recall.half_width) << ',' << fmt(m.f1.mean) << ','
       << fmt(m.f1.half_width) << ',' << fmt(m.param_count) << ',' << fmt(m.circuit_depth) << ','
       << m.intermediate_features << ',' << fmt(m.qubit_efficiency) << ',' << fmt(m.gap_vs_reference) << ','
       << fmt(m.train_seconds.mean) << ',' << fmt(m.speedup_vs_reference) << ',' << p << ',' << stars << '\n';
  }
  return os.str();
}

std::string per_class_csv(const MetricsReport& r) {
  std::ostringstream os;
  os << "model";
  for (int k = 0; k < data::kSeverityClasses; ++k) os << ',' << data::to_string(static_cast<data::Severity>(k));
  os << '\n';
  for (const auto& m : r.models) {
    os << csv_field(m.id);
    for (int k = 0; k < data::kSeverityClasses; ++k) {
      os << ',';
      if (static_cast<std::size_t>(k) < m.per_class_accuracy.size())
        os << fmt(m.per_class_accuracy[static_cast<std::size_t>(k)]);
    }
    os << '\n';
  }
  return os.str();
}

std::string expressibility_csv(const std::vector<ExpressibilityPoint>& points) {
  std::ostringstream os;
  os << "n_qubits,layers,score,kl_divergence,n_pairs\n";
  for (const auto& e : points)
    os << e.n_qubits << ',' << e.layers << ',' << fmt(e.score) << ',' << fmt(e.kl_divergence) << ',' << e.n_pairs
       << '\n';
  return os.str();
}

void write_text(const std::filesystem::path& path, const std::string& text) {
  std::error_code ec;
  if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path(), ec);
  std::ofstream out(path, std::ios::binary);
  if (!out) throw DataError("cannot write " + path.string());
  out << text;
  if (!out) throw DataError("write failed: " + path.string());
}

std::vector<std::filesystem::path> emit_report(const MetricsReport& r, const std::filesystem::path& dir,
                                               ReportFormat format) {
  std::vector<std::filesystem::path> written;
  auto put = [&](const char* name, const std::string& text) {
    write_text(dir / name, text);
    written.push_back(dir / name);
  };
  if (format != ReportFormat::Csv) put("report.json", report_to_json(r));
  if (format != ReportFormat::Json) {
    put("summary.csv", summary_csv(r));
    put("per_class.csv", per_class_csv(r));
    if (!r.expressibility.empty()) put("expressibility.csv", expressibility_csv(r.expressibility));
  }
  return written;
}

}  // namespace qcb::eval
