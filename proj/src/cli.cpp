#include "dicubical/cli.hpp"

#include <CLI11.hpp>
#include <algorithm>
#include <filesystem>
#include <json.hpp>
#include <ostream>
#include <sstream>

#include "dicubical/collapse.hpp"
#include "dicubical/dipath.hpp"
#include "dicubical/errors.hpp"
#include "dicubical/fixtures.hpp"
#include "dicubical/io.hpp"
#include "dicubical/past_link.hpp"
#include "dicubical/pv.hpp"

namespace dicubical {

namespace {

using Json = nlohmann::ordered_json;

Json to_json(const Point& p) { return Json(p.to_vector()); }

Json to_json(const ElementaryCube& c) {
  return Json{{"min", to_json(c.min())}, {"max", to_json(c.max())}};
}

Json to_json(const HomotopySignature& s) {
  return Json{{"components", s.component_count},
              {"betti_gf2", s.betti_gf2},
              {"collapsible", s.collapsible_to_point}};
}

Json counts_json(const CubicalComplex& k) {
  Json a = Json::array();
  for (auto c : k.counts_by_dim()) a.push_back(c);
  return a;
}

std::string counts_text(const CubicalComplex& k) {
  std::string s;
  for (auto c : k.counts_by_dim()) s += (s.empty() ? "" : " ") + std::to_string(c);
  return s.empty() ? "(empty)" : s;
}

std::string points_text(const std::vector<Point>& ps) {
  std::string s = "[";
  for (std::size_t i = 0; i < ps.size(); ++i) s += (i ? ", " : "") + ps[i].to_string();
  return s + "]";
}

CubicalComplex load_input(const std::string& source) {
  if (std::filesystem::exists(source)) return read_complex(source);
  if (const auto spec = parse_fixture_name(source)) return generate(*spec);
  throw DataError("'" + source + "' is neither a readable file nor a fixture name");
}

Point point_for(const CubicalComplex& k, const std::string& text, const char* what) {
  const Point p = parse_point(text);
  if (p.dim() != k.ambient_dim()) {
    throw DataError(std::string(what) + " " + p.to_string() + " has dimension " +
                    std::to_string(p.dim()) + ", the complex has " +
                    std::to_string(k.ambient_dim()));
  }
  if (!k.contains_vertex(p)) throw DataError(std::string(what) + " " + p.to_string() + " is not a vertex of the complex");
  return p;
}

ElementaryCube cube_for(const CubicalComplex& k, const std::string& text, const char* what) {
  const ElementaryCube c = parse_cube(text);
  if (c.ambient_dim() != k.ambient_dim()) {
    throw DataError(std::string(what) + " " + c.to_string() + " has dimension " +
                    std::to_string(c.ambient_dim()) + ", the complex has " +
                    std::to_string(k.ambient_dim()));
  }
  return c;
}

Point default_min(const CubicalComplex& k) {
  const auto p = k.min_vertex();
  if (!p) throw DataError("the complex has no minimum vertex; pass --from");
  return *p;
}

Point default_max(const CubicalComplex& k) {
  const auto p = k.max_vertex();
  if (!p) throw DataError("the complex has no maximum vertex; pass --to");
  return *p;
}

std::string lpdc_reason(const CubicalComplex& k, const ElementaryCube& tau,
                        const ElementaryCube& sigma) {
  if (!k.contains(tau)) return "not LPDC: τ is not in the complex";
  if (!k.contains(sigma)) return "not LPDC: σ is not in the complex";
  if (tau == sigma || !sigma.contains(tau)) return "not LPDC: τ is not a proper face of σ";
  const auto partner = free_face_partner(k, tau);
  if (!partner || !(*partner == sigma)) return "not LPDC: τ is not a free face of σ";
  if (tau.contains(sigma.min())) return "not LPDC: τ contains min(σ)";
  return "LPDC";
}

struct Context {
  std::ostream& out;
  bool json = false;

  void emit(const Json& j) const { out << j.dump(2) << '\n'; }
};

// Writes `text` to `path`, or to stdout when no path is given.
void deliver(const Context& ctx, const std::string& path, const std::string& text) {
  if (path.empty()) {
    ctx.out << text;
  } else {
    write_text_file(path, text);
  }
}

void cmd_info(const Context& ctx, const std::string& source) {
  const CubicalComplex k = load_input(source);
  const auto top = maximal_cubes(k);
  const auto lo = k.min_vertex();
  const auto hi = k.max_vertex();
  if (ctx.json) {
    Json links = Json::array();
    for (const auto& v : k.vertices()) {
      links.push_back(Json{{"vertex", to_json(v)}, {"signature", to_json(homotopy_signature(past_link(k, v)))}});
    }
    ctx.emit(Json{{"command", "info"},
                  {"ambient_dim", k.ambient_dim()},
                  {"counts_by_dim", counts_json(k)},
                  {"maximal_cubes", top.size()},
                  {"min_vertex", lo ? to_json(*lo) : Json(nullptr)},
                  {"max_vertex", hi ? to_json(*hi) : Json(nullptr)},
                  {"past_links", links}});
    return;
  }
  ctx.out << "ambient dim " << k.ambient_dim() << '\n'
          << "cubes by dim: " << counts_text(k) << '\n'
          << "maximal cubes: " << top.size() << '\n'
          << "min vertex: " << (lo ? lo->to_string() : "none") << '\n'
          << "max vertex: " << (hi ? hi->to_string() : "none") << '\n'
          << "past links (components, betti, collapsible):\n";
  for (const auto& v : k.vertices()) {
    ctx.out << "  " << v.to_string() << ' ' << to_string(homotopy_signature(past_link(k, v))) << '\n';
  }
}

void cmd_check(const Context& ctx, const std::string& source, const std::string& tau_s,
               const std::string& sigma_s, bool verify, bool all_vertices) {
  const CubicalComplex k = load_input(source);
  const ElementaryCube tau = cube_for(k, tau_s, "tau");
  const ElementaryCube sigma = cube_for(k, sigma_s, "sigma");
  const bool lpdc = is_lpdc_pair(k, tau, sigma);
  const std::string reason = lpdc_reason(k, tau, sigma);
  const auto partner = k.contains(tau) ? free_face_partner(k, tau) : std::nullopt;
  const bool free_pair = k.contains(tau) && !(tau == sigma) && partner && *partner == sigma;

  std::optional<LpdcVerification> check;
  if (verify && free_pair) {
    check = lpdc_verify_by_definition(
        k, tau, sigma, all_vertices ? VerifyScope::all_vertices : VerifyScope::sigma_vertices);
  }
  if (ctx.json) {
    Json j{{"command", "check-lpdc"}, {"tau", to_json(tau)}, {"sigma", to_json(sigma)},
           {"lpdc", lpdc}, {"reason", reason}};
    if (verify) {
      if (check) {
        Json vs = Json::array();
        for (const auto& v : check->vertices) {
          vs.push_back(Json{{"vertex", to_json(v.vertex)},
                            {"before", to_json(v.before)},
                            {"after", to_json(v.after)},
                            {"equal", v.equal}});
        }
        j["verification"] = Json{{"preserves_links", check->preserves_links},
                                 {"agrees", check->preserves_links == lpdc},
                                 {"vertices", vs}};
      } else {
        j["verification"] = nullptr;
      }
    }
    ctx.emit(j);
    return;
  }
  ctx.out << reason << '\n';
  if (!verify) return;
  if (!check) {
    ctx.out << "definition check: not applicable, (τ,σ) is not a free pair\n";
    return;
  }
  ctx.out << "definition check: " << (check->preserves_links ? "past links preserved" : "past links changed")
          << (check->preserves_links == lpdc ? " (agrees)" : " (DISAGREES)") << '\n';
  for (const auto& v : check->vertices) {
    ctx.out << "  " << v.vertex.to_string() << ' ' << to_string(v.before) << " -> "
            << to_string(v.after) << (v.equal ? "" : "  changed") << '\n';
  }
}

struct CollapseArgs {
  std::string source;
  std::string policy = "vertex_first";
  bool guard_deadlocks = false;
  std::string guard_reach;
  std::string target;
  int max_tau_dim = kMaxDim;
  std::size_t max_steps = 0;
  std::string out;
  std::string log;
  std::string replay_log;
};

void cmd_collapse(const Context& ctx, const CollapseArgs& a) {
  const CubicalComplex k = load_input(a.source);
  std::vector<CollapseStep> steps;
  std::vector<StepStats> stats;
  CubicalComplex result;
  std::size_t rejected = 0;
  if (!a.replay_log.empty()) {
    steps = parse_step_log(read_text_file(a.replay_log));
    result = replay(k, steps);
    for (auto& s : steps) s.removed = cubes_between(s.tau, s.sigma);
  } else {
    CollapsePolicy policy;
    policy.ordering = parse_ordering(a.policy);
    policy.guards.forbid_new_deadlocks = a.guard_deadlocks;
    if (!a.guard_reach.empty()) policy.guards.forbid_new_unreachable_from = point_for(k, a.guard_reach, "--guard-reach");
    if (!a.target.empty()) policy.deadlock_target = point_for(k, a.target, "--target");
    policy.max_tau_dim = a.max_tau_dim;
    if (a.max_steps) policy.max_steps = a.max_steps;
    CollapseSequence seq = greedy_lpdc_sequence(k, policy);
    steps = std::move(seq.steps);
    stats = std::move(seq.stats);
    result = std::move(seq.result);
    rejected = seq.rejected_by_guards;
  }
  write_complex(result, a.out);
  const std::string log_path = a.log.empty() ? a.out + ".log" : a.log;
  if (a.replay_log.empty()) write_text_file(log_path, format_step_log(k.ambient_dim(), steps));

  if (ctx.json) {
    Json js = Json::array();
    for (std::size_t i = 0; i < steps.size(); ++i) {
      Json s{{"tau", to_json(steps[i].tau)}, {"sigma", to_json(steps[i].sigma)},
             {"removed", steps[i].removed.size()}};
      if (i < stats.size()) {
        s["new_deadlocks"] = stats[i].new_deadlocks;
        s["new_unreachable"] = stats[i].new_unreachable;
      }
      js.push_back(s);
    }
    Json j{{"command", "collapse"},
           {"steps", js},
           {"rejected_by_guards", rejected},
           {"before", counts_json(k)},
           {"after", counts_json(result)},
           {"out", a.out}};
    j["log"] = a.replay_log.empty() ? Json(log_path) : Json(nullptr);
    ctx.emit(j);
    return;
  }
  ctx.out << "steps: " << steps.size() << '\n';
  for (std::size_t i = 0; i < steps.size(); ++i) {
    ctx.out << "  " << (i + 1) << ". τ " << steps[i].tau.to_string() << "  σ "
            << steps[i].sigma.to_string() << "  removed " << steps[i].removed.size();
    if (i < stats.size() && (stats[i].new_deadlocks || stats[i].new_unreachable)) {
      ctx.out << "  (+" << stats[i].new_deadlocks << " deadlocks, +" << stats[i].new_unreachable
              << " unreachable)";
    }
    ctx.out << '\n';
  }
  if (rejected) ctx.out << "rejected by guards: " << rejected << '\n';
  ctx.out << "cubes by dim: " << counts_text(k) << " -> " << counts_text(result) << '\n'
          << "wrote " << a.out << '\n';
  if (a.replay_log.empty()) ctx.out << "wrote " << log_path << '\n';
}

void cmd_classes(const Context& ctx, const std::string& source, const std::string& from_s,
                 const std::string& to_s, std::uint64_t limit, unsigned threads) {
  const CubicalComplex k = load_input(source);
  const Point p = from_s.empty() ? default_min(k) : point_for(k, from_s, "--from");
  const Point q = to_s.empty() ? default_max(k) : point_for(k, to_s, "--to");
  const ClassReport r = dihomotopy_classes(k, p, q, EnumerationOptions{limit, threads});
  if (ctx.json) {
    Json cls = Json::array();
    for (std::size_t i = 0; i < r.representatives.size(); ++i) {
      Json path = Json::array();
      for (const auto& v : r.representatives[i].vertices) path.push_back(to_json(v));
      cls.push_back(Json{{"size", r.class_sizes[i]}, {"representative", path}});
    }
    ctx.emit(Json{{"command", "classes"},
                  {"from", to_json(p)},
                  {"to", to_json(q)},
                  {"path_count", r.path_count},
                  {"class_count", r.class_count},
                  {"classes", cls}});
    return;
  }
  ctx.out << "paths: " << r.path_count << '\n' << "classes: " << r.class_count << '\n';
  for (std::size_t i = 0; i < r.representatives.size(); ++i) {
    ctx.out << "  class " << (i + 1) << " (" << r.class_sizes[i] << " paths):";
    for (const auto& v : r.representatives[i].vertices) ctx.out << ' ' << v.to_string();
    ctx.out << '\n';
  }
}

void cmd_reach(const Context& ctx, const std::string& source, const std::string& from_s,
               const std::string& out_path) {
  const CubicalComplex k = load_input(source);
  const Point p = from_s.empty() ? default_min(k) : point_for(k, from_s, "--from");
  const CubicalComplex r = reachable_complex(k, p);
  const std::string text = format_complex(r);
  if (!out_path.empty()) write_text_file(out_path, text);
  if (ctx.json) {
    Json j{{"command", "reach"},
           {"from", to_json(p)},
           {"reachable_vertices", r.vertices().size()},
           {"total_vertices", k.vertices().size()},
           {"counts_by_dim", counts_json(r)}};
    j["out"] = out_path.empty() ? Json(nullptr) : Json(out_path);
    if (out_path.empty()) j["complex"] = text;
    ctx.emit(j);
    return;
  }
  if (out_path.empty()) {
    ctx.out << text;
  } else {
    ctx.out << "reachable vertices: " << r.vertices().size() << " of " << k.vertices().size() << '\n'
            << "cubes by dim: " << counts_text(r) << '\n'
            << "wrote " << out_path << '\n';
  }
}

void cmd_deadlocks(const Context& ctx, const std::string& source, const std::string& target_s) {
  const CubicalComplex k = load_input(source);
  const std::optional<Point> target =
      target_s.empty() ? k.max_vertex() : std::optional<Point>(point_for(k, target_s, "--target"));
  const auto dl = deadlocks(k, target);
  if (ctx.json) {
    Json a = Json::array();
    for (const auto& v : dl) a.push_back(to_json(v));
    ctx.emit(Json{{"command", "deadlocks"},
                  {"target", target ? to_json(*target) : Json(nullptr)},
                  {"deadlocks", a}});
    return;
  }
  ctx.out << points_text(dl) << '\n';
}

void cmd_pv(const Context& ctx, const std::string& path, const std::string& out_path) {
  const PvProgram prog = parse_pv(read_text_file(path));
  const CubicalComplex k = to_complex(prog);
  const auto boxes = forbidden_region(prog);
  const std::string text = format_complex(k);
  if (!out_path.empty()) write_text_file(out_path, text);
  if (ctx.json) {
    Json procs = Json::array();
    for (const auto& p : prog.processes) {
      procs.push_back(Json{{"name", p.name}, {"actions", p.actions.size()}});
    }
    Json bs = Json::array();
    for (const auto& b : boxes) {
      Json axes = Json::array();
      for (std::size_t i = 0; i < b.lo.size(); ++i) {
        const bool c = (b.constrained & axis_bit(static_cast<int>(i))) != 0;
        axes.push_back(Json{{"lo", b.lo[i]}, {"hi", b.hi[i]}, {"open", c}});
      }
      bs.push_back(Json{{"resource", prog.resources[static_cast<std::size_t>(b.resource)].name}, {"axes", axes}});
    }
    Json j{{"command", "pv"},
           {"processes", procs},
           {"grid_max", to_json(prog.grid_max())},
           {"forbidden_boxes", bs},
           {"counts_by_dim", counts_json(k)}};
    j["out"] = out_path.empty() ? Json(nullptr) : Json(out_path);
    if (out_path.empty()) j["complex"] = text;
    ctx.emit(j);
    return;
  }
  if (out_path.empty()) {
    ctx.out << text;
    return;
  }
  ctx.out << "processes: " << prog.dim() << ", resources: " << prog.resources.size()
          << ", grid up to " << prog.grid_max().to_string() << '\n'
          << "forbidden boxes:\n";
  for (const auto& b : boxes) ctx.out << "  " << to_string(b, prog) << '\n';
  ctx.out << "cubes by dim: " << counts_text(k) << '\n' << "wrote " << out_path << '\n';
}

void cmd_render(const Context& ctx, const std::string& source, const std::string& out_path) {
  const CubicalComplex k = load_input(source);
  const std::string svg = render_svg(k);
  if (ctx.json) {
    if (!out_path.empty()) write_text_file(out_path, svg);
    Json j{{"command", "render"}};
    j["out"] = out_path.empty() ? Json(nullptr) : Json(out_path);
    if (out_path.empty()) j["svg"] = svg;
    ctx.emit(j);
    return;
  }
  deliver(ctx, out_path, svg);
  if (!out_path.empty()) ctx.out << "wrote " << out_path << '\n';
}

void cmd_fixture(const Context& ctx, const std::string& name, const std::string& out_path, bool list) {
  if (list) {
    if (ctx.json) {
      ctx.emit(Json{{"command", "fixture"}, {"names", fixture_names()}});
    } else {
      for (const auto& n : fixture_names()) ctx.out << n << '\n';
    }
    return;
  }
  if (name.empty()) throw DataError("fixture name required (see `fixture --list`)");
  const auto spec = parse_fixture_name(name);
  if (!spec) throw DataError("unknown fixture '" + name + "' (see `fixture --list`)");
  const CubicalComplex k = generate(*spec);
  const std::string text = format_complex(k);
  if (ctx.json) {
    if (!out_path.empty()) write_text_file(out_path, text);
    Json j{{"command", "fixture"},
           {"name", fixture_name(*spec)},
           {"description", describe(*spec)},
           {"counts_by_dim", counts_json(k)}};
    j["out"] = out_path.empty() ? Json(nullptr) : Json(out_path);
    if (out_path.empty()) j["complex"] = text;
    ctx.emit(j);
    return;
  }
  deliver(ctx, out_path, text);
  if (!out_path.empty()) ctx.out << "wrote " << out_path << " (" << describe(*spec) << ")\n";
}

int report_error(std::ostream& out, std::ostream& err, bool json, const char* kind,
                 const std::string& message, int code) {
  if (json) {
    out << Json{{"error", Json{{"kind", kind}, {"message", message}}}, {"exit_code", code}}.dump(2)
        << '\n';
  } else {
    err << "error: " << message << '\n';
  }
  return code;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  const bool json_requested = std::find(args.begin(), args.end(), "--json") != args.end();

  CLI::App app{"Directed cubical complexes: past links, link-preserving collapses, dipath classes",
               "dicubical"};
  app.require_subcommand(1);
  bool json = false;
  app.add_flag("--json", json, "Machine-readable JSON output");

  std::string source, tau, sigma, from, to, target, out_path, pv_path, fixture;
  bool verify = false, all_vertices = false, list = false;
  std::uint64_t limit = EnumerationOptions{}.limit;
  unsigned threads = 0;
  CollapseArgs ca;

  auto* info = app.add_subcommand("info", "Cube counts and past-link signatures")->fallthrough();
  info->add_option("complex", source, "Complex file or fixture name")->required();

  auto* check = app.add_subcommand("check-lpdc", "Decide whether (tau, sigma) is an LPDC pair")->fallthrough();
  check->add_option("complex", source, "Complex file or fixture name")->required();
  check->add_option("--tau", tau, "Face, as MIN..MAX or a vertex")->required();
  check->add_option("--sigma", sigma, "Coface, as MIN..MAX")->required();
  check->add_flag("--verify", verify, "Also compare past links before and after");
  check->add_flag("--all-vertices", all_vertices, "Verify every remaining vertex, not only those of sigma");

  auto* collapse = app.add_subcommand("collapse", "Greedy link-preserving collapse")->fallthrough();
  collapse->add_option("complex", ca.source, "Complex file or fixture name")->required();
  collapse->add_option("--policy", ca.policy, "vertex_first, lexicographic or max_dim_first")->capture_default_str();
  collapse->add_flag("--guard-deadlocks", ca.guard_deadlocks, "Skip steps that create deadlocks");
  collapse->add_option("--guard-reach", ca.guard_reach, "Skip steps that cut vertices off from this start");
  collapse->add_option("--target", ca.target, "Vertex exempt from deadlock checks (default: max vertex)");
  collapse->add_option("--max-tau-dim", ca.max_tau_dim, "Only collapse faces up to this dimension");
  collapse->add_option("--max-steps", ca.max_steps, "Stop after this many steps");
  collapse->add_option("--out", ca.out, "Output complex file")->required();
  collapse->add_option("--log", ca.log, "Step log (default: OUT.log)");
  collapse->add_option("--replay", ca.replay_log, "Apply a step log instead of the greedy search");

  auto* classes = app.add_subcommand("classes", "Count dihomotopy classes of edge paths")->fallthrough();
  classes->add_option("complex", source, "Complex file or fixture name")->required();
  classes->add_option("--from", from, "Start vertex (default: min vertex)");
  classes->add_option("--to", to, "End vertex (default: max vertex)");
  classes->add_option("--limit", limit, "Abort above this many paths")->capture_default_str();
  classes->add_option("--threads", threads, "Worker threads (0: hardware)");

  auto* reach = app.add_subcommand("reach", "Subcomplex reachable from a vertex")->fallthrough();
  reach->add_option("complex", source, "Complex file or fixture name")->required();
  reach->add_option("--from", from, "Start vertex (default: min vertex)");
  reach->add_option("--out", out_path, "Output complex file (default: stdout)");

  auto* dead = app.add_subcommand("deadlocks", "List deadlock vertices")->fallthrough();
  dead->add_option("complex", source, "Complex file or fixture name")->required();
  dead->add_option("--target", target, "Vertex that may end paths (default: max vertex)");

  auto* pv = app.add_subcommand("pv", "Build the complex of a PV program")->fallthrough();
  pv->add_option("program", pv_path, "PV source file")->required();
  pv->add_option("--out", out_path, "Output complex file (default: stdout)");

  auto* render = app.add_subcommand("render", "Draw a 2-D complex as SVG")->fallthrough();
  render->add_option("complex", source, "Complex file or fixture name")->required();
  render->add_option("--out", out_path, "SVG file (default: stdout)");

  auto* fix = app.add_subcommand("fixture", "Export a named example complex")->fallthrough();
  fix->add_option("name", fixture, "Fixture name");
  fix->add_option("--out", out_path, "Output complex file (default: stdout)");
  fix->add_flag("--list", list, "List fixture names");

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e, out, err);
  } catch (const CLI::ParseError& e) {
    if (!json_requested) err << app.help();
    return report_error(out, err, json_requested, "usage", e.what(), exit_usage);
  }

  const Context ctx{out, json};
  try {
    if (*info) cmd_info(ctx, source);
    else if (*check) cmd_check(ctx, source, tau, sigma, verify, all_vertices);
    else if (*collapse) cmd_collapse(ctx, ca);
    else if (*classes) cmd_classes(ctx, source, from, to, limit, threads);
    else if (*reach) cmd_reach(ctx, source, from, out_path);
    else if (*dead) cmd_deadlocks(ctx, source, target);
    else if (*pv) cmd_pv(ctx, pv_path, out_path);
    else if (*render) cmd_render(ctx, source, out_path);
    else if (*fix) cmd_fixture(ctx, fixture, out_path, list);
  } catch (const ScaleLimitError& e) {
    return report_error(out, err, json, "scale", e.what(), exit_scale);
  } catch (const DataError& e) {
    return report_error(out, err, json, "data", e.what(), exit_data);
  } catch (const std::invalid_argument& e) {
    return report_error(out, err, json, "data", e.what(), exit_data);
  } catch (const std::filesystem::filesystem_error& e) {
    return report_error(out, err, json, "data", e.what(), exit_data);
  }
  return exit_ok;
}

}  // namespace dicubical
