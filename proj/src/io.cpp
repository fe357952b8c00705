#include "dbar/io.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <vector>

#include "dbar/errors.hpp"

namespace dbar::io {

void write_boundary_csv(std::ostream& os, const BoundaryFunction& f) {
  const auto s = f.curve().arclength();
  os << "s,re,im\n";
  char line[96];
  for (std::size_t j = 0; j < f.size(); ++j) {
    std::snprintf(line, sizeof line, "%.17g,%.17g,%.17g\n", s[j], f[j].real(), f[j].imag());
    os << line;
  }
}

void write_boundary_csv(const std::filesystem::path& path, const BoundaryFunction& f) {
  std::ostringstream os;
  write_boundary_csv(os, f);
  write_text(path, os.str());
}

BoundaryFunction read_boundary_csv(std::istream& is, const CurvePtr& curve) {
  std::string line;
  if (!std::getline(is, line)) throw DataError("csv: empty input");
  if (!line.empty() && line.back() == '\r') line.pop_back();
  if (line != "s,re,im") throw DataError("csv: expected header 's,re,im', got '" + line + "'");
  const auto s = curve->arclength();
  const double tol = 1e-9 * curve->length();
  std::vector<cplx> values;
  std::size_t row = 1;
  while (std::getline(is, line)) {
    ++row;
    if (line.empty() || line == "\r") continue;
    double cols[3];
    char* p = line.data();
    for (int k = 0; k < 3; ++k) {
      char* end = nullptr;
      cols[k] = std::strtod(p, &end);
      if (end == p) throw DataError("csv row " + std::to_string(row) + ": malformed number");
      p = end;
      if (k < 2) {
        if (*p != ',') throw DataError("csv row " + std::to_string(row) + ": expected ','");
        ++p;
      }
    }
    const std::size_t j = values.size();
    if (j >= s.size()) throw DataError("csv: more rows than the " + std::to_string(s.size()) + " nodes");
    if (std::abs(cols[0] - s[j]) > tol) {
      throw DataError("csv row " + std::to_string(row) + ": s = " + std::to_string(cols[0]) +
                      " does not match node arclength " + std::to_string(s[j]));
    }
    values.emplace_back(cols[1], cols[2]);
  }
  if (values.size() != s.size()) {
    throw DataError("csv: " + std::to_string(values.size()) + " rows for " +
                    std::to_string(s.size()) + " nodes");
  }
  return BoundaryFunction(curve, std::move(values));
}

BoundaryFunction read_boundary_csv(const std::filesystem::path& path, const CurvePtr& curve) {
  std::ifstream is(path);
  if (!is) throw DataError("cannot open '" + path.string() + "'");
  return read_boundary_csv(is, curve);
}

void write_text(const std::filesystem::path& path, const std::string& text) {
  std::error_code ec;
  if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path(), ec);
  std::ofstream os(path, std::ios::binary);
  if (!os) throw DataError("cannot write '" + path.string() + "'");
  os << text;
  if (!os) throw DataError("write failed for '" + path.string() + "'");
}

}  // namespace dbar::io
