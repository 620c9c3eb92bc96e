#pragma once

// Text formats: shortest round-trip numbers, `a+bi` complex literals,
// well labels, and the trajectory / event / summary writers.

#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <string_view>

#include "cqes/analysis.hpp"

namespace cqes {

// Shortest decimal that parses back to the same double.
std::string format_number(double x);

// Accepts "a", "bi", "a+bi", "a-bi", "i", "-i" with decimal reals.
// Throws std::invalid_argument on anything else.
Complex parse_complex(std::string_view text);
std::string format_complex(Complex z);

// "left:-3", "right:10"
WellIndex parse_well(std::string_view text);

void write_trajectory_csv(std::ostream& os, const Trajectory& traj);

// JSON object for one crossing, serialized on a single line.
std::string crossing_json(const CrossingEvent& e);
// JSON object for a classification; without one, `missing_kind` names why
// (e.g. "ambiguous").
std::string classification_json(const std::optional<OrbitClass>& cls,
                                const std::string& missing_kind = "ambiguous");

void write_events_jsonl(std::ostream& os, std::span<const CrossingEvent> crossings,
                        const std::optional<OrbitClass>& cls,
                        const std::string& missing_kind = "ambiguous");

}  // namespace cqes
