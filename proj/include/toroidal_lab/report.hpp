#pragma once

// JSON and CSV serialization of the reports. JSON output is deterministic:
// sorted keys, doubles printed with 17 significant digits, non-finite values as strings.

#include "toroidal_lab/bundle_arith.hpp"
#include "toroidal_lab/config.hpp"
#include "toroidal_lab/diophantine.hpp"
#include "toroidal_lab/errors.hpp"
#include "toroidal_lab/pipeline.hpp"
#include "toroidal_lab/small_divisor.hpp"

#include <json.hpp>

#include <string>

namespace tlab {

using Json = nlohmann::json;

inline constexpr const char* kSchema = "toroidal-lab/1";

std::string dump_json(const Json& j);

Json to_json(const RunConfig& cfg);
Json to_json(const DerivedConstants& c);
Json to_json(const LaurentSeries1& s);
Json to_json(const LaurentSeries2& s);
Json to_json(const ClassificationReport& r);
Json to_json(const ContinuedFraction& cf);
Json to_json(const AssumptionReport& r);
Json to_json(const Character& c);
Json to_json(const DivisorTable& t);  // summary only; the entries go to CSV
Json to_json(const Claim41Report& r);
Json to_json(const Lemma42Report& r);
Json to_json(const ChainReport& r);
Json to_json(const PipelineReport& r);
Json to_json(const ResonantObstruction& e);

std::string distances_csv(const DistanceSequence& d);
std::string divisors_csv(const DivisorTable& t);
std::string series_csv(const LaurentSeries2& s);
// (u, alpha, v, beta, re, im) of a section on the grid, v rows every v_stride-th.
std::string grid_csv(const CoverSection& g, int v_stride);

void write_text(const std::string& dir, const std::string& name, const std::string& text);

}  // namespace tlab
