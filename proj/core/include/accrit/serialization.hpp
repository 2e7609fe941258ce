#pragma once

#include <string>
#include <vector>

#include "accrit/analyzer.hpp"
#include "accrit/curve.hpp"
#include "accrit/extension.hpp"
#include "accrit/metric.hpp"
#include "accrit/modification.hpp"
#include "accrit/zigzag.hpp"

// JSON round-trips for the library's value types. All functions exchange
// plain strings; parse failures and schema violations surface as exceptions
// from the underlying JSON library or std::invalid_argument.

namespace accrit {

std::string to_json(const MetricSpace& space);
MetricSpace metric_from_json(const std::string& text);

std::string to_json(const SampledCurve& curve);
SampledCurve curve_from_json(const std::string& text);

struct PartialFunctionData {
  PartialLipschitzFunction function;
  double constant = 0;
};

std::string to_json(const PartialLipschitzFunction& f, double constant);
PartialFunctionData partial_fn_from_json(const std::string& text);

// Accepts a bare array of points, an array of numbers (read as points on the
// line), or an object with a "points" member holding either.
std::vector<Point> points_from_json(const std::string& text);

// Accepts a bare array of rows or an object with a "matrix" member.
std::vector<std::vector<double>> matrix_from_json(const std::string& text);

std::string to_json(const AxiomReport& report);

// Carriers are stored by parameter value, so they stay meaningful next to a
// curve file rather than a particular in-memory indexing.
std::string to_json(const CarrierSet& carrier, const SampledCurve& curve);
CarrierSet carrier_from_json(const std::string& text,
                             const SampledCurve& curve);

std::string to_json(const ModificationResult& result,
                    const InjectivityReport& report,
                    const SampledCurve& curve);

std::string to_json(const GeneralStagedResult& result,
                    const SampledCurve& curve);

std::string to_json(const ACReport& report, const SampledCurve& curve);
std::string to_json(const FamilySearchResult& search,
                    const SampledCurve& curve);

// Modulus scan and family search combined into one analysis document.
std::string analysis_to_json(const ACReport& report,
                             const FamilySearchResult& search, double theta,
                             const SampledCurve& curve);

std::string to_json(const WitnessCertificate& cert);
WitnessCertificate certificate_from_json(const std::string& text);

std::string to_json(const VerifyResult& result);

}  // namespace accrit
