#pragma once

#include <filesystem>
#include <iosfwd>
#include <string>

#include "dbar/boundary_fn.hpp"

// Boundary functions as CSV: header "s,re,im", one row per node in node
// order, s the arclength from node 0, values printed with %.17g so that a
// write/read round trip is exact.

namespace dbar::io {

void write_boundary_csv(std::ostream& os, const BoundaryFunction& f);
void write_boundary_csv(const std::filesystem::path& path, const BoundaryFunction& f);

/// Throws DataError on a malformed file, a row count different from the
/// curve size, or an s column that disagrees with the curve's arclength.
BoundaryFunction read_boundary_csv(std::istream& is, const CurvePtr& curve);
BoundaryFunction read_boundary_csv(const std::filesystem::path& path, const CurvePtr& curve);

/// Writes text to a file, creating parent directories. Throws DataError.
void write_text(const std::filesystem::path& path, const std::string& text);

}  // namespace dbar::io
