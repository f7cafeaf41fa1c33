#ifndef TAILCOND_SERIALIZATION_HPP
#define TAILCOND_SERIALIZATION_HPP

#include <nlohmann/json.hpp>

#include "tailcond/copulas.hpp"
#include "tailcond/dnorms.hpp"
#include "tailcond/experiment.hpp"
#include "tailcond/generators.hpp"
#include "tailcond/pickands.hpp"

namespace tailcond {

using json = nlohmann::ordered_json;

json to_json(const Generator& g);
json to_json(const DNorm& norm);
json to_json(const CopulaModel& model);
json to_json(const ConditionReport& report);
json to_json(const CriticalSource& source);
json to_json(const TailTestResult& result);
/// Flat key-value form; the conditioned coordinate is 1-based.
json to_json(const ExperimentConfig& config);
/// Config echo, critical values, rates and shortfalls. Wall time is left out so the
/// document is a pure function of the config.
json to_json(const ExperimentReport& report);

Generator generator_from_json(const json& doc);
DNorm dnorm_from_json(const json& doc);
CopulaModel model_from_json(const json& doc);
CriticalSource critical_source_from_json(const json& doc);

/// Keys missing from `doc` keep their value in `base`; unknown keys are rejected.
ExperimentConfig config_from_json(const json& doc, ExperimentConfig base = {});

}  // namespace tailcond

#endif  // TAILCOND_SERIALIZATION_HPP
