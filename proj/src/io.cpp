#include "confid/io.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <ostream>
#include <sstream>

#include <nlohmann/json.hpp>

#include "confid/elicitation.hpp"

namespace confid {

namespace {

// Shortest decimal form that parses back to the same double.
std::string format_double(double v) {
  char buf[32];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, ptr);
}

}  // namespace

void dump_curve_csv(const SignificanceCurve& curve, std::ostream& out) {
  out << "theta,cdf\n";
  const auto& x = curve.grid().nodes();
  const auto& y = curve.cdf_values();
  for (std::size_t i = 0; i < x.size(); ++i)
    out << format_double(x[i]) << ',' << format_double(y[i]) << '\n';
}

SignificanceCurve load_curve_csv(std::istream& in, std::string provenance) {
  std::string line;
  if (!std::getline(in, line) || line != "theta,cdf")
    throw validation_error("curve csv: expected header 'theta,cdf'");
  std::vector<double> nodes, values;
  int lineno = 1;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty()) continue;
    auto comma = line.find(',');
    if (comma == std::string::npos)
      throw validation_error("curve csv: line " + std::to_string(lineno) +
                             " has no comma");
    try {
      nodes.push_back(std::stod(line.substr(0, comma)));
      values.push_back(std::stod(line.substr(comma + 1)));
    } catch (const std::exception&) {
      throw validation_error("curve csv: line " + std::to_string(lineno) +
                             " is not numeric");
    }
  }
  if (nodes.size() < 2)
    throw validation_error("curve csv: need at least 2 rows");
  TailPolicy tails{values.front(), values.back()};
  return SignificanceCurve(ParameterGrid(std::move(nodes)), std::move(values),
                           tails, std::move(provenance));
}

namespace {

using nlohmann::json;

double require_number(const json& obj, const char* field, int index) {
  if (!obj.contains(field) || !obj[field].is_number()) {
    std::ostringstream msg;
    msg << "evidence: source " << index << " needs numeric field '" << field
        << "'";
    throw validation_error(msg.str());
  }
  return obj[field].get<double>();
}

std::vector<double> require_array(const json& obj, const char* field,
                                  int index) {
  if (!obj.contains(field) || !obj[field].is_array()) {
    std::ostringstream msg;
    msg << "evidence: source " << index << " needs array field '" << field
        << "'";
    throw validation_error(msg.str());
  }
  std::vector<double> out;
  for (const auto& v : obj[field]) {
    if (!v.is_number()) {
      std::ostringstream msg;
      msg << "evidence: source " << index << " field '" << field
          << "' must contain numbers";
      throw validation_error(msg.str());
    }
    out.push_back(v.get<double>());
  }
  return out;
}

ElicitedPoints parse_points(const json& obj, const char* field, int index) {
  if (!obj.contains(field) || !obj[field].is_array()) {
    std::ostringstream msg;
    msg << "evidence: source " << index << " needs array field '" << field
        << "'";
    throw validation_error(msg.str());
  }
  ElicitedPoints pts;
  for (const auto& pair : obj[field]) {
    if (!pair.is_array() || pair.size() != 2 || !pair[0].is_number() ||
        !pair[1].is_number()) {
      std::ostringstream msg;
      msg << "evidence: source " << index << " field '" << field
          << "' must contain [theta, p] pairs";
      throw validation_error(msg.str());
    }
    pts.points.emplace_back(pair[0].get<double>(), pair[1].get<double>());
  }
  return pts;
}

SignificanceCurve build_source(const json& src, int index) {
  if (!src.is_object() || !src.contains("kind") || !src["kind"].is_string()) {
    std::ostringstream msg;
    msg << "evidence: source " << index << " needs a string field 'kind'";
    throw validation_error(msg.str());
  }
  const std::string kind = src["kind"].get<std::string>();

  if (kind == "normal_sample") {
    auto data = require_array(src, "data", index);
    SampleSummary s = summarize(data);
    if (src.contains("sigma"))
      return sf_normal_known_sigma(s, require_number(src, "sigma", index));
    return sf_student_t(s);
  }
  if (kind == "summary_t") {
    SampleSummary s;
    s.n = static_cast<int>(require_number(src, "n", index));
    s.mean = require_number(src, "mean", index);
    s.sd = require_number(src, "sd", index);
    return sf_student_t(s);
  }
  if (kind == "subjective_normal") {
    return sf_normal_direct(require_number(src, "mean", index),
                            require_number(src, "sd", index));
  }
  if (kind == "elicited_pvalues") {
    return sf_from_elicited_pvalues(parse_points(src, "points", index));
  }
  if (kind == "elicited_intervals") {
    double median = require_number(src, "median", index);
    ElicitedIntervals entries;
    if (!src.contains("entries") || !src["entries"].is_array())
      throw validation_error("evidence: source " + std::to_string(index) +
                             " needs array field 'entries'");
    for (const auto& e : src["entries"]) {
      if (!e.is_array() || e.size() != 3)
        throw validation_error("evidence: source " + std::to_string(index) +
                               " entries must be [level, lo, hi] triples");
      entries.entries.push_back({e[0].get<double>(), e[1].get<double>(),
                                 e[2].get<double>()});
    }
    return sf_from_elicited_intervals(entries, median);
  }
  if (kind == "hypothetical_data") {
    if (!src.contains("model") || !src["model"].is_object())
      throw validation_error("evidence: source " + std::to_string(index) +
                             " needs object field 'model'");
    const auto& m = src["model"];
    HypotheticalModel model;
    std::string family =
        m.contains("family") ? m["family"].get<std::string>() : "normal";
    if (family == "normal" || family == "normal_known_sigma") {
      model.family = HypotheticalModel::Family::NormalKnownSigma;
      if (!m.contains("sigma") || !m["sigma"].is_number())
        throw validation_error("evidence: source " + std::to_string(index) +
                               " normal model needs numeric 'sigma'");
      model.sigma = m["sigma"].get<double>();
    } else if (family == "student_t") {
      model.family = HypotheticalModel::Family::StudentT;
    } else {
      throw validation_error("evidence: source " + std::to_string(index) +
                             " unknown model family '" + family + "'");
    }
    auto data = require_array(src, "data", index);
    return sf_from_hypothetical_data(model, data);
  }
  if (kind == "posterior") {
    bool matching = src.contains("matching") && src["matching"].is_boolean() &&
                    src["matching"].get<bool>();
    return sf_from_bayes_posterior(parse_points(src, "points", index),
                                   matching);
  }
  throw validation_error("evidence: source " + std::to_string(index) +
                         " has unknown kind '" + kind + "'");
}

}  // namespace

EvidenceFile parse_evidence(const json& doc) {
  if (!doc.is_object() || !doc.contains("sources") ||
      !doc["sources"].is_array() || doc["sources"].empty())
    throw validation_error("evidence: need a non-empty 'sources' array");

  EvidenceFile file;
  int index = 0;
  for (const auto& src : doc["sources"])
    file.curves.push_back(build_source(src, index++));

  if (doc.contains("grid")) {
    const auto& g = doc["grid"];
    if (!g.is_object())
      throw validation_error("evidence: 'grid' must be an object");
    file.has_grid = true;
    file.grid_min = require_number(g, "min", -1);
    file.grid_max = require_number(g, "max", -1);
    if (!g.contains("points") || !g["points"].is_number_integer())
      throw validation_error("evidence: grid needs integer 'points'");
    file.grid_points = g["points"].get<int>();
    if (!(file.grid_min < file.grid_max) || file.grid_points < 2)
      throw validation_error("evidence: grid needs min < max and points >= 2");
    for (auto& curve : file.curves)
      curve = resample(curve, file.grid_min, file.grid_max, file.grid_points);
  }
  return file;
}

EvidenceFile load_evidence_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw validation_error("cannot open evidence file: " + path);
  json doc;
  try {
    doc = json::parse(in);
  } catch (const json::parse_error& e) {
    throw validation_error("evidence: JSON parse error: " +
                           std::string(e.what()));
  }
  return parse_evidence(doc);
}

nlohmann::ordered_json game_report_json(const GameReport& report) {
  nlohmann::ordered_json out;
  out["seed"] = report.seed;
  out["replicates"] = report.replicates;
  out["estimator"] = report.estimator;
  out["model"] = {{"theta", report.model.theta},
                  {"gamma", report.model.gamma},
                  {"n", report.model.n}};
  auto records = nlohmann::ordered_json::array();
  for (const auto& rec : report.records) {
    nlohmann::ordered_json r;
    r["b"] = rec.label;
    r["level"] = rec.level;
    r["coverage"] = rec.coverage;
    r["coverage_se"] = rec.coverage_se;
    if (rec.fair_odds) {
      r["fair_odds"] = *rec.fair_odds;
      r["fair_odds_se"] = rec.odds_se;
    } else {
      r["fair_odds"] = nullptr;
      r["fair_odds_bound"] = rec.odds_bound;
    }
    r["expected_loss"] = rec.expected_loss;
    r["expected_loss_se"] = rec.loss_se;
    r["excluded"] = rec.excluded;
    records.push_back(std::move(r));
  }
  out["per_b"] = std::move(records);
  out["max_risk"] = report.max_risk;
  out["max_risk_b"] = report.max_risk_label;
  return out;
}

}  // namespace confid
