#pragma once

#include <iosfwd>
#include <string>

#include "circol/lp_model.hpp"

namespace circol {

// CPLEX-style LP text. Binaries with bounds [0,1] are listed only under
// Binaries; every other variable gets an explicit Bounds line.
void write_lp(std::ostream& out, const LpModel& model);
LpModel read_lp(std::istream& in);

// Fixed-column MPS. Row (column) names are kept when every one of them fits
// in 8 characters; otherwise all rows (columns) are written as R0000001...
// (C0000001...) and the sidecar carries the real names.
void write_mps(std::ostream& out, const LpModel& model);
LpModel read_mps(std::istream& in);

// JSON sidecar: formulation plus, per variable in model order, its name,
// the name used in MPS output, and its structural tag.
std::string sidecar_json(const LpModel& model);
// Renames variables and restores tags of a reparsed model. Variables are
// matched by LP or MPS name; the result keeps the sidecar's variable order.
LpModel apply_sidecar(const LpModel& parsed, const std::string& json);

// Name a variable or row gets in MPS output.
std::string mps_column_name(const LpModel& model, int var);
std::string mps_row_name(const LpModel& model, int row);

} // namespace circol
