#pragma once

#include <string>

#include "fakefeat/plan_io.hpp"

namespace fakefeat {

// Renders a sweep CSV (SweepResult schema) as a static SVG line chart:
// log-scaled lambda axis, one polyline per p_fake value, point markers,
// legend and axis labels. The y axis is log-scaled when every plotted mean is
// positive, linear otherwise. Output is byte-deterministic for a given input.
// Throws ConfigError when the table does not match the sweep schema.
std::string render_sweep_svg(const CsvTable& table);

} // namespace fakefeat
