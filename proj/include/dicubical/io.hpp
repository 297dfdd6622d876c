#pragma once

// Text formats and SVG output.
//
// Complex files:
//   # comment
//   dim 2
//   cube 0 0 1 1      (min coordinates, then max coordinates)
// The reader takes the face closure of the listed cubes; the writer emits the
// maximal cubes in lexicographic order, so output is byte-deterministic.
//
// Step logs use the same header and one `step <tau min> <tau max> <sigma min>
// <sigma max>` line per collapse.

#include <string>
#include <string_view>
#include <vector>

#include "dicubical/collapse.hpp"
#include "dicubical/complex.hpp"

namespace dicubical {

CubicalComplex parse_complex(std::string_view text);
std::string format_complex(const CubicalComplex& k);
CubicalComplex read_complex(const std::string& path);
void write_complex(const CubicalComplex& k, const std::string& path);

std::vector<CollapseStep> parse_step_log(std::string_view text);
std::string format_step_log(int ambient_dim, const std::vector<CollapseStep>& steps);

/// "a,b,c"; throws DataError.
Point parse_point(std::string_view text);
/// "a,b..c,d", or a single vertex "a,b"; throws DataError.
ElementaryCube parse_cube(std::string_view text);

std::string read_text_file(const std::string& path);
void write_text_file(const std::string& path, const std::string& text);

struct SvgOptions {
  int cell = 48;     // pixels per unit
  int margin = 24;
  bool label_axes = true;
};

/// Draws a 2-D complex. Unit squares of the bounding box that are missing
/// from K are shaded. Throws DataError for other dimensions.
std::string render_svg(const CubicalComplex& k, const SvgOptions& options = {});

}  // namespace dicubical
