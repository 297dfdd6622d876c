#include <doctest.h>

#include "dicubical/errors.hpp"
#include "dicubical/fixtures.hpp"
#include "dicubical/pv.hpp"
#include "test_util.hpp"

using namespace dicubical;
using testing::cube;

namespace {

constexpr const char* kPhilosophers =
    "# dining philosophers\n"
    "resource a 1;\n"
    "resource b 1;\n"
    "process left  = P(a).P(b).V(b).V(a);\n"
    "process right = P(b).P(a).V(a).V(b);\n";

std::size_t parse_error_line(const std::string& text) {
  try {
    parse_pv(text);
  } catch (const ParseError& e) {
    return e.line();
  }
  return 0;
}

}  // namespace

TEST_CASE("dining philosophers parse") {
  const auto prog = parse_pv(kPhilosophers);
  REQUIRE(prog.dim() == 2);
  CHECK(prog.resources.size() == 2);
  CHECK(prog.processes[0].name == "left");
  CHECK(prog.processes[0].actions.size() == 4);
  CHECK(prog.processes[1].actions.size() == 4);
  CHECK(prog.processes[1].actions[0].kind == PvAction::Kind::P);
  CHECK(prog.processes[1].actions[0].resource == 1);
  CHECK(prog.grid_max() == Point{5, 5});
}

TEST_CASE("dining philosophers give the swiss flag") {
  const auto prog = parse_pv(kPhilosophers);
  const auto boxes = forbidden_region(prog);
  REQUIRE(boxes.size() == 2);
  CHECK(to_string(boxes[0], prog) == "a: (1,4) x (2,3)");
  CHECK(to_string(boxes[1], prog) == "b: (2,3) x (1,4)");
  CHECK(to_complex(prog) == swiss_flag());
}

TEST_CASE("CRLF and comments") {
  std::string crlf;
  for (const char* p = kPhilosophers; *p; ++p) {
    if (*p == '\n') crlf += '\r';
    crlf += *p;
  }
  CHECK(to_complex(parse_pv(crlf)) == swiss_flag());
}

TEST_CASE("independent processes leave the grid whole") {
  const auto prog = parse_pv("resource a 1; resource b 1; process x = P(a).V(a); process y = P(b).V(b);");
  CHECK(forbidden_region(prog).empty());
  CHECK(to_complex(prog) == grid(3, 2));
}

TEST_CASE("a single process") {
  const auto prog = parse_pv("resource a 1;\nprocess x = P(a).V(a);\n");
  CHECK(to_complex(prog) == grid(3, 1));
}

TEST_CASE("capacity above one") {
  const auto two = parse_pv(
      "resource s 2;\n"
      "process x = P(s).V(s);\n"
      "process y = P(s).V(s);\n"
      "process z = P(s).V(s);\n");
  const auto boxes = forbidden_region(two);
  REQUIRE(boxes.size() == 1);
  CHECK(boxes[0].constrained == 0b111);
  const auto k = to_complex(two);
  CHECK_FALSE(k.contains(cube("1,1,1..2,2,2")));
  CHECK(k.contains_vertex(Point{1, 1, 1}));  // holds are open intervals
  CHECK(k.contains(cube("1,1,0..2,2,1")));
  CHECK(k.counts_by_dim().back() == 26);

  // Three semaphore units for two processes: nothing is forbidden.
  const auto roomy = parse_pv("resource s 3; process x = P(s).V(s); process y = P(s).V(s);");
  CHECK(forbidden_region(roomy).empty());
}

TEST_CASE("nested holds of one resource") {
  const auto prog = parse_pv(
      "resource s 2;\n"
      "process x = P(s).P(s).V(s).V(s);\n"
      "process y = P(s).V(s);\n");
  const auto k = to_complex(prog);
  // x holds two units strictly between its second P and first V.
  CHECK_FALSE(k.contains(cube("2,1..3,2")));
  CHECK(k.contains_vertex(Point{1, 1}));
  CHECK(k.contains_vertex(Point{3, 1}));
}

TEST_CASE("boxes and cubes agree") {
  const auto prog = parse_pv(kPhilosophers);
  const auto k = to_complex(prog);
  const auto boxes = forbidden_region(prog);
  const auto full = grid(5, 2);
  for (const auto& c : full.cubes()) {
    // A cube is forbidden iff its open interior meets some box.
    bool forbidden = false;
    for (const auto& b : boxes) {
      bool meets = true;
      for (int i = 0; i < 2; ++i) {
        if (!(b.constrained & axis_bit(i))) continue;
        const int lo = c.min()[i];
        const int hi = c.max()[i];
        const bool interval_hits = (lo == hi) ? (b.lo[static_cast<std::size_t>(i)] < lo && lo < b.hi[static_cast<std::size_t>(i)])
                                              : (b.lo[static_cast<std::size_t>(i)] < hi && lo < b.hi[static_cast<std::size_t>(i)]);
        meets = meets && interval_hits;
      }
      forbidden = forbidden || meets;
    }
    CAPTURE(c.to_string());
    CHECK(k.contains(c) == !forbidden);
  }
}

TEST_CASE("parse errors carry positions") {
  CHECK_THROWS_WITH_AS(parse_pv("resource a 1;\nprocess x = P(b).V(b);\n"),
                       doctest::Contains("line 2"), ParseError);
  CHECK_THROWS_WITH_AS(parse_pv("resource a 1;\nprocess x = P(a);\n"),
                       doctest::Contains("never released"), ParseError);
  CHECK_THROWS_WITH_AS(parse_pv("resource a 1;\nprocess x = V(a);\n"),
                       doctest::Contains("without a matching P"), ParseError);
  CHECK_THROWS_WITH_AS(parse_pv("resource a 0;\nprocess x = P(a).V(a);\n"),
                       doctest::Contains("capacity must be positive"), ParseError);
  CHECK_THROWS_WITH_AS(parse_pv("resource a 1;\nresource a 1;\n"), doctest::Contains("duplicate"),
                       ParseError);
  CHECK_THROWS_WITH_AS(parse_pv("resource a 1;\n"), doctest::Contains("no processes"), ParseError);
  CHECK_THROWS_AS(parse_pv("resource a 1;\nprocess x = P(a).P(a).V(a).V(a);\n"), ParseError);
  CHECK_THROWS_AS(parse_pv("resource a 1 process x = P(a).V(a);"), ParseError);
  CHECK_THROWS_AS(parse_pv("resource a 1;\nprocess x = P(a).V(a);\nprocess x = P(a).V(a);\n"),
                  ParseError);
  CHECK(parse_error_line("resource a 1;\n\n  process x = Q(a);\n") == 3);
  CHECK(parse_error_line("resource a 1;\r\nprocess x = P(a).V(a)$\r\n") == 2);

  std::string many = "resource a 9;\n";
  for (int i = 0; i < 9; ++i) many += "process p" + std::to_string(i) + " = P(a).V(a);\n";
  CHECK_THROWS_AS(parse_pv(many), ParseError);
}

TEST_CASE("large grids hit the scale limit") {
  std::string text = "resource a 1;\n";
  std::string body;
  for (int i = 0; i < 30; ++i) body += "P(a).V(a).";
  body.pop_back();
  for (int i = 0; i < 6; ++i) text += "process p" + std::to_string(i) + " = " + body + ";\n";
  CHECK_THROWS_AS(to_complex(parse_pv(text)), ScaleLimitError);
}
