#include "tailcond/serialization.hpp"

#include <cmath>
#include <set>
#include <string>

#include "tailcond/error.hpp"

namespace tailcond {

namespace {

json limit_json(const LimitEstimate& e) { return {{"value", e.value}, {"converged", e.converged}}; }

json finite_or_null(double v) { return std::isfinite(v) ? json(v) : json(nullptr); }

template <class T>
T field(const json& doc, const char* key) {
  if (!doc.contains(key)) throw InvalidParameter(std::string("json: missing key '") + key + "'");
  try {
    return doc.at(key).get<T>();
  } catch (const nlohmann::json::exception&) {
    throw InvalidParameter(std::string("json: key '") + key + "' has the wrong type");
  }
}

}  // namespace

json to_json(const Generator& g) {
  json out{{"family", family_name(g.family())}, {"theta", g.theta()}};
  if (g.exponent() != 1.0) out["exponent"] = g.exponent();
  return out;
}

json to_json(const DNorm& norm) {
  json out{{"kind", norm_kind_name(norm.kind())}};
  if (norm.kind() == NormKind::Logistic) out["q"] = norm.q();
  out["d"] = norm.dimension();
  return out;
}

json to_json(const CopulaModel& model) {
  return {{"generator", to_json(model.generator())},
          {"dnorm", to_json(model.dnorm())},
          {"dim", model.dim()},
          {"lower_valid", model.lower_valid()}};
}

json to_json(const ConditionReport& report) {
  return {{"p", report.p},
          {"slope_const", report.slope_const ? json(*report.slope_const) : json(nullptr)},
          {"C1", limit_json(report.c1)},
          {"C2", limit_json(report.c2)},
          {"C3", limit_json(report.c3)},
          {"C1_holds", report.c1_holds},
          {"C2_holds", report.c2_holds},
          {"C3_limit", report.c3_limit}};
}

json to_json(const CriticalSource& source) {
  if (source.kind == CriticalSourceKind::BuiltIn) return {{"kind", "builtin"}};
  return {{"kind", "montecarlo"}, {"reps", source.reps}, {"seed", source.seed}};
}

json to_json(const TailTestResult& result) {
  return {{"statistic", result.statistic},
          {"critical_value", result.critical_value},
          {"alpha", result.alpha},
          {"reject", result.reject},
          {"sample_size", result.sample_size},
          {"dim", result.dim},
          {"grid_mesh", result.grid_mesh},
          {"grid_points", result.grid_points},
          {"critical_source", to_json(result.source)}};
}

json to_json(const ExperimentConfig& config) {
  return {{"family", family_name(config.family)},
          {"theta", config.theta},
          {"d", config.dim},
          {"n", config.sample_size},
          {"u", config.level},
          {"epsilon", config.half_width},
          {"k", config.slice_size},
          {"j", config.conditioned_index() + 1},
          {"N", config.maxima_count},
          {"M", config.runs},
          {"alpha", config.alpha},
          {"seed", config.seed},
          {"critical_source", config.critical.kind == CriticalSourceKind::BuiltIn ? "builtin" : "montecarlo"},
          {"critical_reps", config.critical.reps},
          {"critical_seed", config.critical.seed},
          {"slice_mode", slice_mode_name(config.slice_mode)},
          {"maxima_scale", maxima_scale_name(config.scale)}};
}

json to_json(const ExperimentReport& report) {
  return {{"config", to_json(report.config)},
          {"critical_unconditional", report.critical.unconditional},
          {"critical_conditional", report.critical.conditional},
          {"runs", report.runs.size()},
          {"rejection_rate_unconditional", report.rejection_rate_unconditional},
          {"rejection_rate_conditional", finite_or_null(report.rejection_rate_conditional)},
          {"shortfall_count", report.shortfall_count}};
}

Generator generator_from_json(const json& doc) {
  Generator g(parse_family(field<std::string>(doc, "family")), field<double>(doc, "theta"));
  if (doc.contains("exponent")) g = g.power(field<double>(doc, "exponent"));
  return g;
}

DNorm dnorm_from_json(const json& doc) {
  const auto kind = parse_norm_kind(field<std::string>(doc, "kind"));
  const auto d = field<std::size_t>(doc, "d");
  switch (kind) {
    case NormKind::Logistic: return DNorm::logistic(field<double>(doc, "q"), d);
    case NormKind::Sup: return DNorm::sup(d);
    case NormKind::Sum: break;
  }
  return DNorm::sum(d);
}

CopulaModel model_from_json(const json& doc) {
  Generator g = generator_from_json(field<json>(doc, "generator"));
  DNorm norm = dnorm_from_json(field<json>(doc, "dnorm"));
  if (doc.contains("dim") && field<std::size_t>(doc, "dim") != norm.dimension()) {
    throw DimensionError("json: model dim differs from the D-norm dimension");
  }
  if (doc.contains("lower_valid")) {
    return {std::move(g), std::move(norm), field<std::vector<double>>(doc, "lower_valid")};
  }
  return {std::move(g), std::move(norm)};
}

CriticalSource critical_source_from_json(const json& doc) {
  const auto kind = field<std::string>(doc, "kind");
  return parse_critical_source(kind, doc.value("reps", std::size_t{2000}), doc.value("seed", kDefaultSeed));
}

ExperimentConfig config_from_json(const json& doc, ExperimentConfig base) {
  if (!doc.is_object()) throw InvalidParameter("config: expected a JSON object");
  static const std::set<std::string> known{
      "family", "theta", "d", "n", "u", "epsilon", "k", "j", "N", "M", "alpha", "seed", "critical_source",
      "critical_reps", "critical_seed", "threads", "slice_mode", "maxima_scale"};
  for (const auto& [key, value] : doc.items()) {
    if (!known.count(key)) throw InvalidParameter("config: unknown key '" + key + "'");
  }
  if (doc.contains("family")) base.family = parse_family(field<std::string>(doc, "family"));
  if (doc.contains("theta")) base.theta = field<double>(doc, "theta");
  if (doc.contains("d")) base.dim = field<std::size_t>(doc, "d");
  if (doc.contains("n")) base.sample_size = field<std::size_t>(doc, "n");
  if (doc.contains("u")) base.level = field<double>(doc, "u");
  if (doc.contains("epsilon")) base.half_width = field<double>(doc, "epsilon");
  if (doc.contains("k")) base.slice_size = field<std::size_t>(doc, "k");
  if (doc.contains("j")) {
    const auto j = field<std::size_t>(doc, "j");
    if (j == 0) throw InvalidParameter("config: j is 1-based");
    base.conditioned = j - 1;
  }
  if (doc.contains("N")) base.maxima_count = field<std::size_t>(doc, "N");
  if (doc.contains("M")) base.runs = field<std::size_t>(doc, "M");
  if (doc.contains("alpha")) base.alpha = field<double>(doc, "alpha");
  if (doc.contains("seed")) base.seed = field<std::uint64_t>(doc, "seed");
  if (doc.contains("critical_reps")) base.critical.reps = field<std::size_t>(doc, "critical_reps");
  if (doc.contains("critical_seed")) base.critical.seed = field<std::uint64_t>(doc, "critical_seed");
  if (doc.contains("critical_source")) {
    base.critical = parse_critical_source(field<std::string>(doc, "critical_source"),
                                          base.critical.reps ? base.critical.reps : 2000,
                                          base.critical.seed ? base.critical.seed : kDefaultSeed);
  }
  if (doc.contains("threads")) base.threads = field<std::size_t>(doc, "threads");
  if (doc.contains("slice_mode")) base.slice_mode = parse_slice_mode(field<std::string>(doc, "slice_mode"));
  if (doc.contains("maxima_scale")) base.scale = parse_maxima_scale(field<std::string>(doc, "maxima_scale"));
  return base;
}

}  // namespace tailcond
