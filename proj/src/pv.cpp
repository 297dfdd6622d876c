#include "dicubical/pv.hpp"

#include <algorithm>
#include <cctype>
#include <map>
#include <optional>
#include <sstream>

#include "dicubical/errors.hpp"

namespace dicubical {

namespace {

struct Token {
  enum class Kind { ident, number, symbol, end };
  Kind kind = Kind::end;
  std::string text;
  std::size_t line = 1;
  std::size_t column = 1;
};

class Lexer {
 public:
  explicit Lexer(std::string_view text) : text_(text) {}

  Token next() {
    skip_space();
    Token t;
    t.line = line_;
    t.column = column_;
    if (pos_ >= text_.size()) return t;
    const char c = text_[pos_];
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      t.kind = Token::Kind::ident;
      while (pos_ < text_.size() &&
             (std::isalnum(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '_')) {
        t.text += advance();
      }
    } else if (std::isdigit(static_cast<unsigned char>(c))) {
      t.kind = Token::Kind::number;
      while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) {
        t.text += advance();
      }
    } else if (c == ';' || c == '=' || c == '.' || c == '(' || c == ')') {
      t.kind = Token::Kind::symbol;
      t.text = advance();
    } else {
      throw ParseError(line_, column_, std::string("unexpected character '") + c + "'");
    }
    return t;
  }

 private:
  char advance() {
    const char c = text_[pos_++];
    if (c == '\n') {
      ++line_;
      column_ = 1;
    } else {
      ++column_;
    }
    return c;
  }

  void skip_space() {
    while (pos_ < text_.size()) {
      const char c = text_[pos_];
      if (c == '#') {
        while (pos_ < text_.size() && text_[pos_] != '\n') advance();
      } else if (c == ' ' || c == '\t' || c == '\r' || c == '\n') {
        advance();
      } else {
        break;
      }
    }
  }

  std::string_view text_;
  std::size_t pos_ = 0;
  std::size_t line_ = 1;
  std::size_t column_ = 1;
};

std::string describe(const Token& t) {
  switch (t.kind) {
    case Token::Kind::end: return "end of input";
    case Token::Kind::number: return "number " + t.text;
    default: return "'" + t.text + "'";
  }
}

class Parser {
 public:
  explicit Parser(std::string_view text) : lex_(text) { tok_ = lex_.next(); }

  PvProgram run() {
    while (tok_.kind != Token::Kind::end) {
      if (is_ident("resource")) {
        resource();
      } else if (is_ident("process")) {
        process();
      } else {
        fail(tok_, "expected 'resource' or 'process', found " + describe(tok_));
      }
    }
    if (prog_.processes.empty()) fail(tok_, "program declares no processes");
    return std::move(prog_);
  }

 private:
  [[noreturn]] static void fail(const Token& at, const std::string& what) {
    throw ParseError(at.line, at.column, what);
  }

  bool is_ident(const char* word) const {
    return tok_.kind == Token::Kind::ident && tok_.text == word;
  }

  Token take() {
    Token t = tok_;
    tok_ = lex_.next();
    return t;
  }

  Token expect(Token::Kind kind, const char* text, const char* what) {
    if (tok_.kind != kind || (text && tok_.text != text)) {
      fail(tok_, std::string("expected ") + what + ", found " + describe(tok_));
    }
    return take();
  }

  void resource() {
    take();
    const Token name = expect(Token::Kind::ident, nullptr, "resource name");
    if (resource_index_.count(name.text)) fail(name, "duplicate resource '" + name.text + "'");
    const Token cap = expect(Token::Kind::number, nullptr, "capacity");
    int capacity = 0;
    try {
      capacity = std::stoi(cap.text);
    } catch (const std::out_of_range&) {
      fail(cap, "capacity " + cap.text + " is too large");
    }
    if (capacity < 1) fail(cap, "capacity must be positive");
    expect(Token::Kind::symbol, ";", "';'");
    resource_index_[name.text] = static_cast<int>(prog_.resources.size());
    prog_.resources.push_back({name.text, capacity});
  }

  void process() {
    const Token kw = take();
    const Token name = expect(Token::Kind::ident, nullptr, "process name");
    for (const auto& p : prog_.processes) {
      if (p.name == name.text) fail(name, "duplicate process '" + name.text + "'");
    }
    if (prog_.dim() == kMaxDim) {
      fail(kw, "at most " + std::to_string(kMaxDim) + " processes are supported");
    }
    expect(Token::Kind::symbol, "=", "'='");
    PvProcess proc{name.text, {}};
    std::vector<int> held(prog_.resources.size(), 0);
    // Open P positions per resource, innermost last.
    std::vector<std::vector<Token>> open(prog_.resources.size());
    while (true) {
      const Token act = tok_;
      if (act.kind != Token::Kind::ident || (act.text != "P" && act.text != "V")) {
        fail(act, "expected action P(..) or V(..), found " + describe(act));
      }
      take();
      expect(Token::Kind::symbol, "(", "'('");
      const Token res = expect(Token::Kind::ident, nullptr, "resource name");
      const auto it = resource_index_.find(res.text);
      if (it == resource_index_.end()) fail(res, "unknown resource '" + res.text + "'");
      expect(Token::Kind::symbol, ")", "')'");
      const int r = it->second;
      const auto ur = static_cast<std::size_t>(r);
      if (act.text == "P") {
        if (++held[ur] > prog_.resources[ur].capacity) {
          fail(act, "process '" + name.text + "' holds more units of '" + res.text +
                        "' than its capacity");
        }
        open[ur].push_back(act);
        proc.actions.push_back({PvAction::Kind::P, r});
      } else {
        if (open[ur].empty()) fail(act, "V(" + res.text + ") without a matching P(" + res.text + ")");
        --held[ur];
        open[ur].pop_back();
        proc.actions.push_back({PvAction::Kind::V, r});
      }
      if (tok_.kind == Token::Kind::symbol && tok_.text == ".") {
        take();
        continue;
      }
      break;
    }
    expect(Token::Kind::symbol, ";", "'.' or ';'");
    for (std::size_t r = 0; r < open.size(); ++r) {
      if (!open[r].empty()) {
        const Token& at = open[r].back();
        fail(at, "P(" + prog_.resources[r].name + ") is never released");
      }
    }
    prog_.processes.push_back(std::move(proc));
  }

  Lexer lex_;
  Token tok_;
  PvProgram prog_;
  std::map<std::string, int> resource_index_;
};

struct Hold {
  int axis;
  int lo;  // position of P
  int hi;  // position of matching V
};

// Holding intervals of resource r, matched innermost first.
std::vector<Hold> holds_of(const PvProgram& prog, int r) {
  std::vector<Hold> out;
  for (int i = 0; i < prog.dim(); ++i) {
    std::vector<int> stack;
    const auto& acts = prog.processes[static_cast<std::size_t>(i)].actions;
    for (std::size_t k = 0; k < acts.size(); ++k) {
      if (acts[k].resource != r) continue;
      const int pos = static_cast<int>(k) + 1;
      if (acts[k].kind == PvAction::Kind::P) {
        stack.push_back(pos);
      } else {
        out.push_back({i, stack.back(), pos});
        stack.pop_back();
      }
    }
  }
  return out;
}

// A cell along one axis: h = 2m is the point m, h = 2m + 1 the open (m, m+1).
bool open_interval_contains(int lo, int hi, int h) {
  if (h % 2 == 0) return lo < h / 2 && h / 2 < hi;
  return lo <= h / 2 && h / 2 + 1 <= hi;
}

bool box_within(const ForbiddenBox& a, const ForbiddenBox& b) {
  for (std::size_t i = 0; i < a.lo.size(); ++i) {
    const AxisMask bit = axis_bit(static_cast<int>(i));
    if (!(b.constrained & bit)) continue;
    if (!(a.constrained & bit)) return false;
    if (a.lo[i] < b.lo[i] || a.hi[i] > b.hi[i]) return false;
  }
  return true;
}

}  // namespace

Point PvProgram::grid_max() const {
  Point hi = Point::zero(dim());
  for (int i = 0; i < dim(); ++i) {
    hi[i] = static_cast<int>(processes[static_cast<std::size_t>(i)].actions.size()) + 1;
  }
  return hi;
}

PvProgram parse_pv(std::string_view text) { return Parser(text).run(); }

std::vector<ForbiddenBox> forbidden_region(const PvProgram& prog) {
  const int n = prog.dim();
  const Point top = prog.grid_max();
  std::vector<ForbiddenBox> boxes;
  for (int r = 0; r < static_cast<int>(prog.resources.size()); ++r) {
    const auto holds = holds_of(prog, r);
    const auto need = static_cast<std::size_t>(prog.resources[static_cast<std::size_t>(r)].capacity) + 1;
    if (holds.size() < need) continue;
    // Every choice of capacity+1 holding intervals; intersect per axis.
    std::vector<std::size_t> pick(need);
    for (std::size_t i = 0; i < need; ++i) pick[i] = i;
    std::size_t visited = 0;
    while (true) {
      if (++visited > 1'000'000) throw ScaleLimitError("too many forbidden-box combinations");
      ForbiddenBox b;
      b.resource = r;
      b.lo.assign(static_cast<std::size_t>(n), 0);
      b.hi.resize(static_cast<std::size_t>(n));
      for (int i = 0; i < n; ++i) b.hi[static_cast<std::size_t>(i)] = top[i];
      bool empty = false;
      for (std::size_t idx : pick) {
        const Hold& h = holds[idx];
        const auto a = static_cast<std::size_t>(h.axis);
        if (!(b.constrained & axis_bit(h.axis))) {
          b.lo[a] = h.lo;
          b.hi[a] = h.hi;
          b.constrained |= axis_bit(h.axis);
        } else {
          b.lo[a] = std::max(b.lo[a], h.lo);
          b.hi[a] = std::min(b.hi[a], h.hi);
        }
        if (b.lo[a] >= b.hi[a]) empty = true;
      }
      if (!empty) boxes.push_back(std::move(b));
      // Next combination.
      std::size_t i = need;
      while (i > 0 && pick[i - 1] == holds.size() - need + (i - 1)) --i;
      if (i == 0) break;
      ++pick[i - 1];
      for (std::size_t j = i; j < need; ++j) pick[j] = pick[j - 1] + 1;
    }
  }
  std::sort(boxes.begin(), boxes.end());
  boxes.erase(std::unique(boxes.begin(), boxes.end()), boxes.end());
  std::vector<ForbiddenBox> maximal;
  for (std::size_t i = 0; i < boxes.size(); ++i) {
    bool dominated = false;
    for (std::size_t j = 0; j < boxes.size() && !dominated; ++j) {
      if (i == j || !box_within(boxes[i], boxes[j])) continue;
      // Equal regions: keep the first listed.
      dominated = !box_within(boxes[j], boxes[i]) || j < i;
    }
    if (!dominated) maximal.push_back(boxes[i]);
  }
  return maximal;
}

CubicalComplex to_complex(const PvProgram& prog, std::size_t max_cubes) {
  const int n = prog.dim();
  const Point top = prog.grid_max();
  double total = 1;
  for (int i = 0; i < n; ++i) total *= 2.0 * top[i] + 1;
  if (total > static_cast<double>(max_cubes)) {
    throw ScaleLimitError("state grid has " + std::to_string(static_cast<long long>(total)) +
                          " cubes, over the limit of " + std::to_string(max_cubes));
  }
  const std::size_t nres = prog.resources.size();
  // held[i][r][h]: units of r held by process i on cell h of its axis.
  std::vector<std::vector<std::vector<int>>> held(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) {
    held[static_cast<std::size_t>(i)].assign(nres, std::vector<int>(2 * static_cast<std::size_t>(top[i]) + 1, 0));
  }
  for (std::size_t r = 0; r < nres; ++r) {
    for (const Hold& h : holds_of(prog, static_cast<int>(r))) {
      auto& row = held[static_cast<std::size_t>(h.axis)][r];
      for (std::size_t c = 0; c < row.size(); ++c) {
        if (open_interval_contains(h.lo, h.hi, static_cast<int>(c))) ++row[c];
      }
    }
  }

  CubicalComplex::CubeSet kept;
  Point v = Point::zero(n);
  std::vector<int> units(nres);
  while (true) {
    for (AxisMask j = 0; j <= full_mask(n); ++j) {
      const ElementaryCube c(v, j);
      if (!product_le(c.max(), top)) continue;
      std::fill(units.begin(), units.end(), 0);
      bool over = false;
      for (std::size_t r = 0; r < nres && !over; ++r) {
        for (int i = 0; i < n; ++i) {
          const auto h = static_cast<std::size_t>(2 * v[i] + ((j & axis_bit(i)) ? 1 : 0));
          units[r] += held[static_cast<std::size_t>(i)][r][h];
        }
        over = units[r] > prog.resources[r].capacity;
      }
      if (!over) kept.insert(c);
    }
    int axis = n - 1;
    while (axis >= 0 && v[axis] == top[axis]) {
      v[axis] = 0;
      --axis;
    }
    if (axis < 0) break;
    ++v[axis];
  }
  return CubicalComplex::from_closed_set(n, std::move(kept));
}

std::string to_string(const ForbiddenBox& box, const PvProgram& prog) {
  std::ostringstream os;
  os << prog.resources[static_cast<std::size_t>(box.resource)].name << ": ";
  for (std::size_t i = 0; i < box.lo.size(); ++i) {
    if (i) os << " x ";
    if (box.constrained & axis_bit(static_cast<int>(i))) {
      os << '(' << box.lo[i] << ',' << box.hi[i] << ')';
    } else {
      os << '[' << box.lo[i] << ',' << box.hi[i] << ']';
    }
  }
  return os.str();
}

}  // namespace dicubical
