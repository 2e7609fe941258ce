#include "accrit/serialization.hpp"

#include <stdexcept>
#include <utility>

#include <json.hpp>

namespace accrit {
namespace {

using nlohmann::json;

json metric_to_obj(const MetricSpace& s) {
  json o;
  switch (s.kind()) {
    case MetricKind::Euclidean:
      o["kind"] = "euclidean";
      o["dim"] = s.dimension();
      break;
    case MetricKind::Snowflake:
      o["kind"] = "snowflake";
      o["alpha"] = s.snowflake_alpha();
      o["base"] = metric_to_obj(s.snowflake_base());
      break;
    case MetricKind::Graph: {
      o["kind"] = "graph";
      o["nodes"] = s.point_count();
      json edges = json::array();
      for (const auto& e : s.graph_edges()) {
        edges.push_back(json::array({e.u, e.v, e.weight}));
      }
      o["edges"] = std::move(edges);
      break;
    }
    case MetricKind::Discrete:
      o["kind"] = "discrete";
      o["points"] = s.point_count();
      break;
    case MetricKind::Table:
      o["kind"] = "table";
      o["matrix"] = s.distance_matrix();
      break;
  }
  return o;
}

MetricSpace metric_from_obj(const json& o) {
  const std::string kind = o.at("kind").get<std::string>();
  if (kind == "euclidean") {
    return MetricSpace::euclidean(o.at("dim").get<std::size_t>());
  }
  if (kind == "snowflake") {
    return MetricSpace::snowflake(metric_from_obj(o.at("base")),
                                  o.at("alpha").get<double>());
  }
  if (kind == "graph") {
    std::vector<GraphEdge> edges;
    for (const auto& e : o.at("edges")) {
      edges.push_back({e.at(0).get<std::size_t>(), e.at(1).get<std::size_t>(),
                       e.at(2).get<double>()});
    }
    return MetricSpace::graph(o.at("nodes").get<std::size_t>(),
                              std::move(edges));
  }
  if (kind == "discrete") {
    return MetricSpace::discrete(o.at("points").get<std::size_t>());
  }
  if (kind == "table") {
    auto matrix = o.at("matrix").get<std::vector<std::vector<double>>>();
    auto mode = TableValidation::Strict;
    if (o.contains("validation") &&
        o.at("validation").get<std::string>() == "permissive") {
      mode = TableValidation::Permissive;
    }
    return MetricSpace::table(std::move(matrix), mode);
  }
  throw std::invalid_argument("unknown metric kind: " + kind);
}

json partial_fn_to_obj(const PartialLipschitzFunction& f, double constant) {
  json o;
  o["metric"] = metric_to_obj(f.space());
  o["support"] = f.support();
  o["values"] = f.values();
  o["constant"] = constant;
  return o;
}

PartialFunctionData partial_fn_from_obj(const json& o) {
  PartialLipschitzFunction f(metric_from_obj(o.at("metric")),
                             o.at("support").get<std::vector<Point>>(),
                             o.at("values").get<std::vector<double>>());
  return {std::move(f), o.at("constant").get<double>()};
}

json span_params(const SampledCurve& curve, std::size_t i, std::size_t j) {
  return json::array({curve.param(i), curve.param(j)});
}

json carrier_to_obj(const CarrierSet& carrier, const SampledCurve& curve) {
  json o;
  o["grid_size"] = carrier.grid_size();
  json ranges = json::array();
  for (const auto& r : carrier.ranges()) {
    ranges.push_back(span_params(curve, r[0], r[1]));
  }
  json holes = json::array();
  for (const auto& h : carrier.holes()) {
    holes.push_back(span_params(curve, h[0], h[1]));
  }
  o["ranges"] = std::move(ranges);
  o["holes"] = std::move(holes);
  return o;
}

json family_intervals_obj(const SampledCurve& curve,
                          const IntervalFamily& family) {
  json arr = json::array();
  for (const auto& iv : family.intervals) {
    arr.push_back(span_params(curve, iv[0], iv[1]));
  }
  return arr;
}

}  // namespace

std::string to_json(const MetricSpace& space) {
  return metric_to_obj(space).dump(2);
}

MetricSpace metric_from_json(const std::string& text) {
  return metric_from_obj(json::parse(text));
}

std::string to_json(const SampledCurve& curve) {
  json o;
  o["metric"] = metric_to_obj(curve.space());
  o["params"] = curve.params();
  o["points"] = curve.points();
  return o.dump(2);
}

SampledCurve curve_from_json(const std::string& text) {
  json o = json::parse(text);
  return SampledCurve(metric_from_obj(o.at("metric")),
                      o.at("params").get<std::vector<double>>(),
                      o.at("points").get<std::vector<Point>>());
}

std::string to_json(const PartialLipschitzFunction& f, double constant) {
  return partial_fn_to_obj(f, constant).dump(2);
}

PartialFunctionData partial_fn_from_json(const std::string& text) {
  return partial_fn_from_obj(json::parse(text));
}

std::vector<Point> points_from_json(const std::string& text) {
  json o = json::parse(text);
  if (o.is_object() && o.contains("points")) o = o.at("points");
  if (!o.is_array()) {
    throw std::invalid_argument("points file must hold an array");
  }
  std::vector<Point> pts;
  for (const auto& e : o) {
    if (e.is_number()) {
      pts.push_back({e.get<double>()});
    } else {
      pts.push_back(e.get<Point>());
    }
  }
  return pts;
}

std::vector<std::vector<double>> matrix_from_json(const std::string& text) {
  json o = json::parse(text);
  if (o.is_object() && o.contains("matrix")) o = o.at("matrix");
  if (!o.is_array()) {
    throw std::invalid_argument("matrix file must hold an array of rows");
  }
  return o.get<std::vector<std::vector<double>>>();
}

std::string to_json(const AxiomReport& report) {
  json o;
  o["pass"] = report.pass;
  o["max_symmetry_gap"] = report.max_symmetry_gap;
  o["symmetry_pair"] = report.symmetry_pair;
  o["max_triangle_excess"] = report.max_triangle_excess;
  o["triangle_triple"] = report.triangle_triple;
  o["max_identity_gap"] = report.max_identity_gap;
  o["identity_index"] = report.identity_index;
  o["min_offdiagonal"] = report.min_offdiagonal;
  o["min_pair"] = report.min_pair;
  return o.dump(2);
}

std::string to_json(const CarrierSet& carrier, const SampledCurve& curve) {
  return carrier_to_obj(carrier, curve).dump(2);
}

CarrierSet carrier_from_json(const std::string& text,
                             const SampledCurve& curve) {
  json o = json::parse(text);
  if (o.at("grid_size").get<std::size_t>() != curve.size()) {
    throw std::invalid_argument("carrier grid size does not match the curve");
  }
  auto carrier = CarrierSet::full(curve.size());
  for (const auto& h : o.at("holes")) {
    const auto c = curve.locate_param(h.at(0).get<double>(), 1e-9);
    const auto d = curve.locate_param(h.at(1).get<double>(), 1e-9);
    if (!c || !d) {
      throw std::invalid_argument("carrier hole end is not a grid parameter");
    }
    carrier.puncture(*c, *d);
  }
  if (o.contains("ranges")) {
    const auto& stored = o.at("ranges");
    const auto& actual = carrier.ranges();
    bool match = stored.size() == actual.size();
    for (std::size_t k = 0; match && k < actual.size(); ++k) {
      match = std::abs(stored.at(k).at(0).get<double>() -
                       curve.param(actual[k][0])) <= 1e-9 &&
              std::abs(stored.at(k).at(1).get<double>() -
                       curve.param(actual[k][1])) <= 1e-9;
    }
    if (!match) {
      throw std::invalid_argument("carrier ranges do not match its holes");
    }
  }
  return carrier;
}

std::string to_json(const ModificationResult& result,
                    const InjectivityReport& report,
                    const SampledCurve& curve) {
  json o;
  o["carrier"] = carrier_to_obj(result.carrier, curve);
  o["removed_count"] = result.removed_count;
  json log = json::array();
  for (const auto& h : result.removal_log) {
    log.push_back(json::array({h[0], h[1]}));
  }
  o["removal_log"] = std::move(log);
  json rep;
  rep["pass"] = report.pass;
  rep["max_multiplicity"] = report.max_multiplicity;
  rep["max_jump"] = report.max_jump;
  json viols = json::array();
  for (const auto& v : report.violations) {
    viols.push_back(json::array({v[0], v[1]}));
  }
  rep["violations"] = std::move(viols);
  o["report"] = std::move(rep);
  return o.dump(2);
}

std::string to_json(const GeneralStagedResult& result,
                    const SampledCurve& curve) {
  const auto walked = result.modification.carrier.indices();
  const StagedResult& staged = result.staged;
  json o;
  o["constant"] = staged.constant;
  o["theta"] = staged.theta;
  o["target"] = staged.target;
  o["achieved_variation"] = staged.achieved_variation;
  o["total_slack"] = staged.total_slack;
  o["ladder"] = staged.ladder;
  json segs = json::array();
  for (const auto& run : staged.runs) {
    const auto& seg = run.segment;
    json s;
    s["outer_span"] =
        span_params(curve, walked[seg.outer_begin], walked[seg.outer_end]);
    s["outer_gap"] = seg.outer_gap;
    s["zero_gap"] = seg.zero_gap;
    s["selected"] = seg.selected;
    s["ratio"] = seg.ratio;
    s["constant"] = run.constant;
    s["skipped"] = run.skipped;
    s["slack_charge"] = run.slack_charge;
    if (seg.selected) {
      s["inner_span"] = span_params(curve, walked[seg.begin], walked[seg.end]);
    } else {
      s["inner_span"] = nullptr;
    }
    if (run.run) {
      json z;
      z["partition"] = run.run->partition_params;
      z["values"] = run.run->values;
      z["target"] = run.run->target;
      z["achieved_variation"] = run.run->achieved_variation;
      z["total_slack"] = run.run->total_slack;
      s["run"] = std::move(z);
    } else {
      s["run"] = nullptr;
    }
    segs.push_back(std::move(s));
  }
  o["segments"] = std::move(segs);
  json mod;
  mod["removed_count"] = result.modification.removed_count;
  mod["carrier"] = carrier_to_obj(result.modification.carrier, curve);
  o["modification"] = std::move(mod);
  o["extended"] = partial_fn_to_obj(staged.extended, staged.constant);
  return o.dump(2);
}

std::string to_json(const ACReport& report, const SampledCurve& curve) {
  json o;
  o["epsilon"] = report.epsilon;
  o["verdict"] = report.violation ? "violation" : "no-violation";
  json entries = json::array();
  for (const auto& e : report.entries) {
    json je;
    je["delta"] = e.delta;
    je["best_gap"] = e.best_gap;
    je["budget_used"] = e.budget_used;
    je["intervals"] = family_intervals_obj(curve, e.family);
    entries.push_back(std::move(je));
  }
  o["entries"] = std::move(entries);
  return o.dump(2);
}

std::string to_json(const FamilySearchResult& search,
                    const SampledCurve& curve) {
  json o;
  o["n_cap"] = search.n_cap;
  o["all_found"] = search.all_found;
  json entries = json::array();
  for (const auto& e : search.entries) {
    json je;
    je["n"] = e.n;
    je["found"] = e.found;
    je["capped"] = e.capped;
    je["best_gap"] = e.best_gap;
    je["total_length"] = e.family.total_length;
    je["total_gap"] = e.family.total_gap;
    je["intervals"] = family_intervals_obj(curve, e.family);
    entries.push_back(std::move(je));
  }
  o["entries"] = std::move(entries);
  return o.dump(2);
}

std::string analysis_to_json(const ACReport& report,
                             const FamilySearchResult& search, double theta,
                             const SampledCurve& curve) {
  json o = json::parse(to_json(report, curve));
  o["theta"] = theta;
  o["family_search"] = json::parse(to_json(search, curve));
  // A violation verdict needs both signals: the gap surviving every budget in
  // the scan and a family found for every n.
  o["verdict"] = report.violation && search.all_found ? "violation"
                                                      : "no-violation";
  return o.dump(2);
}

std::string to_json(const WitnessCertificate& cert) {
  json o;
  o["version"] = cert.version;
  o["epsilon"] = cert.epsilon;
  o["theta"] = cert.theta;
  o["ladder"] = cert.ladder;
  o["witness"] = partial_fn_to_obj(cert.witness, cert.witness_constant);
  json fams = json::array();
  for (const auto& fam : cert.families) {
    json jf;
    jf["n"] = fam.n;
    jf["total_length"] = fam.total_length;
    jf["total_gap"] = fam.total_gap;
    jf["variation_sum"] = fam.variation_sum;
    jf["slack"] = fam.slack;
    json ivs = json::array();
    for (const auto& ci : fam.intervals) {
      json ji;
      ji["span"] = ci.span;
      ji["gap"] = ci.gap;
      ji["length"] = ci.length;
      ji["constant"] = ci.constant;
      ji["skipped"] = ci.skipped;
      ji["note"] = ci.note;
      if (ci.skipped) {
        ji["partitions"] = nullptr;
      } else {
        ji["partitions"] = ci.partitions;
      }
      ji["variation"] = ci.variation;
      ji["slack"] = ci.slack;
      ivs.push_back(std::move(ji));
    }
    jf["intervals"] = std::move(ivs);
    fams.push_back(std::move(jf));
  }
  o["families"] = std::move(fams);
  return o.dump(2);
}

WitnessCertificate certificate_from_json(const std::string& text) {
  json o = json::parse(text);
  auto witness = partial_fn_from_obj(o.at("witness"));
  std::vector<CertFamily> families;
  for (const auto& jf : o.at("families")) {
    CertFamily fam;
    fam.n = jf.at("n").get<std::size_t>();
    fam.total_length = jf.at("total_length").get<double>();
    fam.total_gap = jf.at("total_gap").get<double>();
    fam.variation_sum = jf.at("variation_sum").get<double>();
    fam.slack = jf.at("slack").get<double>();
    for (const auto& ji : jf.at("intervals")) {
      CertInterval ci;
      ci.span = ji.at("span").get<std::array<double, 2>>();
      ci.gap = ji.at("gap").get<double>();
      ci.length = ji.at("length").get<double>();
      ci.constant = ji.at("constant").get<double>();
      ci.skipped = ji.at("skipped").get<bool>();
      ci.note = ji.at("note").get<std::string>();
      const auto& parts = ji.at("partitions");
      if (!parts.is_null()) {
        ci.partitions = parts.get<std::vector<std::vector<double>>>();
      }
      ci.variation = ji.at("variation").get<double>();
      ci.slack = ji.at("slack").get<double>();
      fam.intervals.push_back(std::move(ci));
    }
    families.push_back(std::move(fam));
  }
  return WitnessCertificate{o.at("version").get<int>(),
                            o.at("epsilon").get<double>(),
                            o.at("theta").get<double>(),
                            o.at("ladder").get<std::vector<double>>(),
                            witness.constant,
                            std::move(witness.function),
                            std::move(families),
                            {}};
}

std::string to_json(const VerifyResult& result) {
  json o;
  o["pass"] = result.pass;
  json fails = json::array();
  for (const auto& f : result.failures) {
    json jf;
    jf["check"] = f.check;
    jf["detail"] = f.detail;
    fails.push_back(std::move(jf));
  }
  o["failures"] = std::move(fails);
  return o.dump(2);
}

}  // namespace accrit
