#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "thermo/cover_algebra.hpp"
#include "thermo/measure_pressure.hpp"
#include "thermo/misiurewicz.hpp"
#include "thermo/topo_pressure.hpp"

namespace thermo {

/// 17 significant digits, shortest form not attempted. -0 prints as 0.
std::string format_double(double v);

/// Point table with a header. Columns x, x1, x2, ... are coordinates
/// (Euclidean metric), `next` is the map as a row index, optional
/// `infinity_distance` and `projection_error` columns carry the one-point data.
System read_sampled_csv(std::istream& in, const std::string& name);

/// Columns: kind, epsilon, n, raw_value, log_over_n, bound_direction.
void write_pressure_csv(std::ostream& out, const std::vector<PressureEstimate>& estimates);

/// Columns: point_id, weight. Zero weights are skipped.
void write_measure_csv(std::ostream& out, const FiniteMeasure& mu);
FiniteMeasure read_measure_csv(std::istream& in, std::size_t size);

/// {"P": rows, "pi": vector}, plus "states" when blocks are longer than one symbol.
std::string markov_to_json(const MarkovMeasure& m);
MarkovMeasure markov_from_json(const std::string& text);

/// {"members": [[ids...], ...], "distinguished": 0}
std::string partition_to_json(const System& sys, const Partition& p);
Partition partition_from_json(const System& sys, const std::string& text);
std::string cover_to_json(const Cover& c);
Cover cover_from_json(const System& sys, const std::string& text);

std::string pipeline_to_json(const PipelineReport& r);

} // namespace thermo
