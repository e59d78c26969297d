#pragma once

#include <iosfwd>
#include <string>

#include "gtsp/pipeline.hpp"

namespace gtsp {

/// "tour k", k walk steps "u v", a blank line, then key=value lines.
void write_tour(std::ostream& out, const TourSolution& sol);
std::string format_tour(const TourSolution& sol);

/// "path s t k", then as for tours.
void write_path(std::ostream& out, const PathSolution& sol);
std::string format_path(const PathSolution& sol);

}  // namespace gtsp
