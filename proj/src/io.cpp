#include "dicubical/io.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <sstream>

#include "dicubical/errors.hpp"

namespace dicubical {

namespace {

struct Word {
  std::string_view text;
  std::size_t column;
};

std::vector<Word> split_words(std::string_view line) {
  std::vector<Word> out;
  std::size_t i = 0;
  while (i < line.size()) {
    while (i < line.size() && (line[i] == ' ' || line[i] == '\t' || line[i] == '\r')) ++i;
    if (i >= line.size() || line[i] == '#') break;
    const std::size_t start = i;
    while (i < line.size() && line[i] != ' ' && line[i] != '\t' && line[i] != '\r' && line[i] != '#') ++i;
    out.push_back({line.substr(start, i - start), start + 1});
  }
  return out;
}

std::optional<int> to_int(std::string_view s) {
  int v = 0;
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || ptr != s.data() + s.size()) return std::nullopt;
  return v;
}

// Calls visit(line_number, words) for each non-blank line.
template <class F>
void for_each_line(std::string_view text, F&& visit) {
  std::size_t line_no = 0;
  std::size_t start = 0;
  while (start <= text.size()) {
    const std::size_t end = std::min(text.find('\n', start), text.size());
    ++line_no;
    const auto words = split_words(text.substr(start, end - start));
    if (!words.empty()) visit(line_no, words);
    if (end == text.size()) break;
    start = end + 1;
  }
}

int parse_dim(std::size_t line, const std::vector<Word>& w) {
  if (w.size() != 2) throw ParseError(line, w[0].column, "expected 'dim <n>'");
  const auto n = to_int(w[1].text);
  if (!n) throw ParseError(line, w[1].column, "not an integer '" + std::string(w[1].text) + "'");
  if (*n < 1 || *n > kMaxDim) {
    throw ParseError(line, w[1].column, "dimension must be in 1.." + std::to_string(kMaxDim));
  }
  return *n;
}

ElementaryCube parse_cube_words(std::size_t line, const std::vector<Word>& w, std::size_t first,
                                int n) {
  const std::size_t need = 2 * static_cast<std::size_t>(n);
  if (w.size() < first + need) {
    throw ParseError(line, w.size() > first ? w[first].column : w[0].column,
                     "expected " + std::to_string(need) + " coordinates for dim " + std::to_string(n));
  }
  std::vector<int> vals(need);
  for (std::size_t i = 0; i < need; ++i) {
    const Word& word = w[first + i];
    const auto v = to_int(word.text);
    if (!v) throw ParseError(line, word.column, "not an integer '" + std::string(word.text) + "'");
    vals[i] = *v;
  }
  for (int a = 0; a < n; ++a) {
    const int d = vals[static_cast<std::size_t>(n + a)] - vals[static_cast<std::size_t>(a)];
    if (d != 0 && d != 1) {
      throw ParseError(line, w[first + static_cast<std::size_t>(n + a)].column,
                       "extent " + std::to_string(d) + " at axis " + std::to_string(a));
    }
  }
  const Point lo(std::span<const int>(vals.data(), static_cast<std::size_t>(n)));
  const Point hi(std::span<const int>(vals.data() + n, static_cast<std::size_t>(n)));
  return ElementaryCube::from_interval(lo, hi);
}

std::string coords(const Point& p, char sep) {
  std::string s;
  for (int i = 0; i < p.dim(); ++i) {
    if (i) s += sep;
    s += std::to_string(p[i]);
  }
  return s;
}

std::vector<int> sort_key(const ElementaryCube& c) {
  std::vector<int> k = c.min().to_vector();
  const auto hi = c.max().to_vector();
  k.insert(k.end(), hi.begin(), hi.end());
  return k;
}

}  // namespace

CubicalComplex parse_complex(std::string_view text) {
  int n = 0;
  std::vector<ElementaryCube> cubes;
  for_each_line(text, [&](std::size_t line, const std::vector<Word>& w) {
    if (w[0].text == "dim") {
      if (n) throw ParseError(line, w[0].column, "duplicate 'dim' header");
      n = parse_dim(line, w);
    } else if (w[0].text == "cube") {
      if (!n) throw ParseError(line, w[0].column, "'cube' before the 'dim' header");
      if (w.size() != 1 + 2 * static_cast<std::size_t>(n)) {
        throw ParseError(line, w[0].column,
                         "expected " + std::to_string(2 * n) + " coordinates for dim " +
                             std::to_string(n) + ", found " + std::to_string(w.size() - 1));
      }
      cubes.push_back(parse_cube_words(line, w, 1, n));
    } else {
      throw ParseError(line, w[0].column, "unknown directive '" + std::string(w[0].text) + "'");
    }
  });
  if (!n) throw ParseError(1, 1, "missing 'dim' header");
  return CubicalComplex::closure_of(n, cubes);
}

std::string format_complex(const CubicalComplex& k) {
  auto top = maximal_cubes(k);
  std::sort(top.begin(), top.end(), [](const ElementaryCube& a, const ElementaryCube& b) {
    return sort_key(a) < sort_key(b);
  });
  std::string out = "dim " + std::to_string(k.ambient_dim()) + "\n";
  for (const auto& c : top) out += "cube " + coords(c.min(), ' ') + " " + coords(c.max(), ' ') + "\n";
  return out;
}

CubicalComplex read_complex(const std::string& path) { return parse_complex(read_text_file(path)); }

void write_complex(const CubicalComplex& k, const std::string& path) {
  write_text_file(path, format_complex(k));
}

std::vector<CollapseStep> parse_step_log(std::string_view text) {
  int n = 0;
  std::vector<CollapseStep> steps;
  for_each_line(text, [&](std::size_t line, const std::vector<Word>& w) {
    if (w[0].text == "dim") {
      if (n) throw ParseError(line, w[0].column, "duplicate 'dim' header");
      n = parse_dim(line, w);
    } else if (w[0].text == "step") {
      if (!n) throw ParseError(line, w[0].column, "'step' before the 'dim' header");
      if (w.size() != 1 + 4 * static_cast<std::size_t>(n)) {
        throw ParseError(line, w[0].column,
                         "expected " + std::to_string(4 * n) + " coordinates for dim " +
                             std::to_string(n) + ", found " + std::to_string(w.size() - 1));
      }
      CollapseStep s;
      s.tau = parse_cube_words(line, w, 1, n);
      s.sigma = parse_cube_words(line, w, 1 + 2 * static_cast<std::size_t>(n), n);
      steps.push_back(std::move(s));
    } else {
      throw ParseError(line, w[0].column, "unknown directive '" + std::string(w[0].text) + "'");
    }
  });
  if (!n) throw ParseError(1, 1, "missing 'dim' header");
  return steps;
}

std::string format_step_log(int ambient_dim, const std::vector<CollapseStep>& steps) {
  std::string out = "dim " + std::to_string(ambient_dim) + "\n";
  for (const auto& s : steps) {
    out += "step " + coords(s.tau.min(), ' ') + " " + coords(s.tau.max(), ' ') + " " +
           coords(s.sigma.min(), ' ') + " " + coords(s.sigma.max(), ' ') + "\n";
  }
  return out;
}

Point parse_point(std::string_view text) {
  std::vector<int> vals;
  std::size_t start = 0;
  while (true) {
    const std::size_t end = std::min(text.find(',', start), text.size());
    const auto v = to_int(text.substr(start, end - start));
    if (!v) throw DataError("malformed point '" + std::string(text) + "' (expected a,b,...)");
    vals.push_back(*v);
    if (end == text.size()) break;
    start = end + 1;
  }
  if (static_cast<int>(vals.size()) > kMaxDim) {
    throw DataError("point '" + std::string(text) + "' has more than " + std::to_string(kMaxDim) +
                    " coordinates");
  }
  return Point(std::span<const int>(vals));
}

ElementaryCube parse_cube(std::string_view text) {
  const auto dots = text.find("..");
  if (dots == std::string_view::npos) return ElementaryCube::vertex(parse_point(text));
  return ElementaryCube::from_interval(parse_point(text.substr(0, dots)),
                                       parse_point(text.substr(dots + 2)));
}

std::string read_text_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw DataError("cannot open '" + path + "'");
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

void write_text_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw DataError("cannot write '" + path + "'");
  out << text;
  if (!out) throw DataError("error writing '" + path + "'");
}

std::string render_svg(const CubicalComplex& k, const SvgOptions& o) {
  if (k.ambient_dim() != 2) {
    throw DataError("SVG rendering supports 2-dimensional complexes only; use --json for dim " +
                    std::to_string(k.ambient_dim()));
  }
  const auto box = k.bounding_box();
  const Point lo = box ? box->lo : Point{0, 0};
  const Point hi = box ? box->hi : Point{0, 0};
  const int w = (hi[0] - lo[0]) * o.cell + 2 * o.margin;
  const int h = (hi[1] - lo[1]) * o.cell + 2 * o.margin;
  auto px = [&](int x) { return o.margin + (x - lo[0]) * o.cell; };
  auto py = [&](int y) { return h - o.margin - (y - lo[1]) * o.cell; };

  std::ostringstream os;
  os << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n"
     << "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\"" << w << "\" height=\""
     << h << "\" viewBox=\"0 0 " << w << ' ' << h << "\">\n"
     << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";

  os << "<g id=\"removed\" fill=\"#d9d9d9\">\n";
  for (int x = lo[0]; x < hi[0]; ++x) {
    for (int y = lo[1]; y < hi[1]; ++y) {
      if (k.contains(ElementaryCube(Point{x, y}, 0b11))) continue;
      os << "<rect x=\"" << px(x) << "\" y=\"" << py(y + 1) << "\" width=\"" << o.cell
         << "\" height=\"" << o.cell << "\"/>\n";
    }
  }
  os << "</g>\n<g id=\"squares\" fill=\"#9ecae1\">\n";
  for (const auto& c : k.cubes_of_dim(2)) {
    os << "<rect x=\"" << px(c.min()[0]) << "\" y=\"" << py(c.max()[1]) << "\" width=\"" << o.cell
       << "\" height=\"" << o.cell << "\"/>\n";
  }
  os << "</g>\n<g id=\"edges\" stroke=\"#252525\" stroke-width=\"2\">\n";
  for (const auto& c : k.cubes_of_dim(1)) {
    os << "<line x1=\"" << px(c.min()[0]) << "\" y1=\"" << py(c.min()[1]) << "\" x2=\""
       << px(c.max()[0]) << "\" y2=\"" << py(c.max()[1]) << "\"/>\n";
  }
  os << "</g>\n<g id=\"vertices\" fill=\"#252525\">\n";
  for (const auto& v : k.vertices()) {
    os << "<circle cx=\"" << px(v[0]) << "\" cy=\"" << py(v[1]) << "\" r=\"3\"/>\n";
  }
  os << "</g>\n";
  if (o.label_axes && box) {
    os << "<g font-family=\"sans-serif\" font-size=\"11\" fill=\"#636363\">\n"
       << "<text x=\"" << px(lo[0]) - 4 << "\" y=\"" << py(lo[1]) + 16 << "\">" << lo.to_string()
       << "</text>\n"
       << "<text x=\"" << px(hi[0]) - 24 << "\" y=\"" << py(hi[1]) - 8 << "\">" << hi.to_string()
       << "</text>\n</g>\n";
  }
  os << "</svg>\n";
  return os.str();
}

}  // namespace dicubical
