#pragma once

#include <filesystem>
#include <iosfwd>

#include "dcflex/model/linear_model.hpp"

namespace dcflex::model {

/// Writes the model in CPLEX LP text format. Two-sided rows become a pair of
/// rows suffixed `_lo` and `_hi`.
void write_lp(const LinearModel& model, std::ostream& out);
void write_lp(const LinearModel& model, const std::filesystem::path& path);

}  // namespace dcflex::model
