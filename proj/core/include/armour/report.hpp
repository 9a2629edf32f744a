#pragma once

// CSV and JSON rendering of run and sweep results. The output is a pure
// function of its inputs, so identical designs give byte-identical text.

#include <string>
#include <vector>

#include "armour/design.hpp"
#include "armour/runner.hpp"

namespace armour {

enum class OutputFormat { csv, json };

OutputFormat parse_output_format(const std::string& name);

std::string render_single(const CableDesign& design, const RunResult& result, OutputFormat format);

std::string render_sweep(const CableDesign& design, const SweepSpec& sweep,
                         const SweepOptions& options, const std::vector<SweepRow>& rows,
                         OutputFormat format);

}  // namespace armour
