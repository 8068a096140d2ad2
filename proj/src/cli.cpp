#include "pkflat/cli.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <functional>
#include <future>
#include <iostream>
#include <map>
#include <sstream>

#include "pkflat/document.hpp"
#include "pkflat/flow.hpp"
#include "pkflat/pk_surface.hpp"
#include "pkflat/report.hpp"
#include "pkflat/svg.hpp"
#include "pkflat/torus_cover.hpp"

namespace pkflat {

namespace {

struct Outcome {
  int code = kExitOk;
  std::string report;
  std::string error;
};

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorKind::UsageError, "cannot read " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

bool negative(ErrorKind k) {
  return k == ErrorKind::NoReturn || k == ErrorKind::TripleIntersection || k == ErrorKind::ParallelCoincident;
}

std::string verdict_name(ErrorKind k) {
  switch (k) {
    case ErrorKind::NoReturn: return "no-return";
    case ErrorKind::TripleIntersection: return "triple-intersection";
    case ErrorKind::ParallelCoincident: return "parallel-coincident";
    default: return "error";
  }
}

void header(Report& r, const std::string& command, const std::string& path, const std::string& text) {
  r.add("command", command);
  r.add("input", path);
  r.add("digest", "sha256:" + sha256_hex(text));
}

// Runs `body` on the file at `path`; errors become outcomes.
Outcome guarded(const std::string& command, const std::string& path,
                const std::function<int(Report&, const std::string&)>& body) {
  Outcome out;
  Report r;
  try {
    const std::string text = read_file(path);
    header(r, command, path, text);
    out.code = body(r, text);
  } catch (const TripleIntersectionError& e) {
    r.add("verdict", verdict_name(e.kind()));
    r.add("rule", "no-triple-points");
    r.add("curves", std::to_string(e.curves()[0]) + " " + std::to_string(e.curves()[1]) + " " +
                        std::to_string(e.curves()[2]));
    r.add("witness", to_string(e.point()));
    out.code = kExitNegative;
  } catch (const Error& e) {
    if (!negative(e.kind())) {
      out.code = kExitInput;
      out.error = path + ": " + e.what();
      return out;
    }
    r.add("verdict", verdict_name(e.kind()));
    r.add("message", e.what());
    out.code = kExitNegative;
  }
  out.report = r.str();
  return out;
}

ValidatedSurface load_surface(const std::string& text) { return validate(parse_surface(text)); }

std::string join(const std::vector<std::string>& parts, const std::string& empty = "none") {
  if (parts.empty()) return empty;
  std::string out;
  for (const std::string& p : parts) out += (out.empty() ? "" : " ") + p;
  return out;
}

std::string cone_angle(int multiple) { return std::to_string(2 * multiple) + "*pi"; }

int cmd_validate(Report& r, const std::string& text) {
  const ValidatedSurface s = load_surface(text);
  r.add("status", "valid");
  r.add("field", std::to_string(s.field()));
  r.add("rectangles", std::to_string(s.rectangles().size()));
  r.add("gluings", std::to_string(s.gluings().size()));
  r.add("vertex_classes", std::to_string(s.vertex_classes().size()));
  return kExitOk;
}

int cmd_analyze(Report& r, const std::string& text) {
  const ValidatedSurface s = load_surface(text);
  const SurfaceInvariants inv = invariants(s);
  r.add("genus", std::to_string(inv.genus));
  r.add("euler", std::to_string(inv.euler));
  r.add("area", inv.area.str());
  r.add("vertex_classes", std::to_string(s.vertex_classes().size()));
  std::vector<std::string> angles, profile;
  for (const VertexClass& v : s.vertex_classes()) angles.push_back(cone_angle(v.cone_multiple));
  for (int m : inv.singular_profile) profile.push_back(std::to_string(m));
  r.add("cone_angles", join(angles));
  r.add("singular_profile", join(profile));
  const PeriodData periods = period_group(s);
  r.add("periods", std::to_string(periods.generators.size()));
  for (std::size_t i = 0; i < periods.generators.size(); ++i)
    r.add("period." + std::to_string(i), periods.generators[i].h.str() + " " + periods.generators[i].v.str());
  return kExitOk;
}

void describe_failure(Report& r, const NotACover& no) {
  r.add("axis", no.axis == Axis::Horizontal ? "horizontal" : "vertical");
  if (no.degenerate) r.add("degenerate", "true");
  if (no.witness) r.add("witness", no.witness->first.str() + " " + no.witness->second.str());
}

int cmd_cover(Report& r, const std::string& text) {
  const ValidatedSurface s = load_surface(text);
  const CoverVerdict verdict = decide_torus_cover(s);
  r.add("rule", "discrete-periods-cover");
  if (const auto* no = std::get_if<NotACover>(&verdict)) {
    r.add("verdict", "not-a-cover");
    describe_failure(r, *no);
    return kExitNegative;
  }
  const auto& cover = std::get<CoveringDescription>(verdict);
  r.add("verdict", "cover");
  r.add("lattice", cover.lattice.h.str() + " " + cover.lattice.v.str());
  r.add("degree", cover.degree.get_str());
  std::vector<std::string> ram;
  for (const Ramification& x : cover.ramification)
    if (x.local_degree > 1) ram.push_back(std::to_string(x.vertex_class) + ":" + std::to_string(x.local_degree));
  r.add("ramification", join(ram));
  r.add("base_point", s.rectangle(cover.base_point.rect).id + " " + cover.base_point.x.str() + " " +
                          cover.base_point.y.str());
  return kExitOk;
}

Transversal parse_transversal(const ValidatedSurface& s, const std::vector<std::string>& arcs_given) {
  if (arcs_given.empty()) return bottom_transversal(s);
  Transversal t;
  for (const std::string& text : arcs_given) {
    std::vector<std::string> parts;
    std::stringstream in(text);
    for (std::string part; std::getline(in, part, ':');) parts.push_back(part);
    if (parts.size() != 4)
      throw Error(ErrorKind::InvalidTransversal, "expected '<rect>:<height>:<start>:<end>', got '" + text + "'");
    std::optional<std::size_t> rect;
    for (std::size_t i = 0; i < s.rectangles().size(); ++i)
      if (s.rectangle(i).id == parts[0]) rect = i;
    if (!rect) throw Error(ErrorKind::InvalidTransversal, "no rectangle '" + parts[0] + "'");
    t.arcs.push_back({*rect, QN::parse(parts[1], s.field()), QN::parse(parts[2], s.field()),
                      QN::parse(parts[3], s.field())});
  }
  return t;
}

int cmd_flow(Report& r, const std::string& text, const std::vector<std::string>& arcs_given,
             std::optional<std::size_t> max_crossings) {
  const ValidatedSurface s = load_surface(text);
  const Transversal t = parse_transversal(s, arcs_given);
  const ReturnMap map = first_return(s, t, max_crossings);
  const StripDecomposition strips = strip_decomposition(s, t, max_crossings);
  r.add("verdict", "returns");
  r.add("transversal_length", map.length.str());
  r.add("pieces", std::to_string(map.pieces.size()));
  for (std::size_t i = 0; i < map.pieces.size(); ++i) {
    const ReturnPiece& p = map.pieces[i];
    r.add("piece." + std::to_string(i),
          p.start.str() + " " + p.end.str() + " " + p.image_offset.str() + " " + p.return_height.str());
  }
  std::vector<std::string> bps;
  for (const QN& b : map.breakpoints) bps.push_back(b.str());
  r.add("breakpoints", join(bps));
  r.add("strips", std::to_string(strips.strips.size()));
  for (std::size_t i = 0; i < strips.strips.size(); ++i)
    r.add("strip." + std::to_string(i), strips.strips[i].width.str() + " " + strips.strips[i].height.str());
  r.add("strip_area", strips.area().str());
  return kExitOk;
}

BranchConfig load_branch(const std::string& text) {
  BranchDocument doc = parse_branch(text);
  return validate_branch_config(doc.torus, std::move(doc.curves));
}

std::string directions(const DirectionCensus& c) {
  std::vector<std::string> parts;
  for (const ProjectiveDirection& d : c.directions)
    parts.push_back("[" + std::to_string(d.p) + ":" + std::to_string(d.q) + "]");
  return join(parts);
}

int cmd_branch_validate(Report& r, const std::string& text) {
  const BranchConfig config = load_branch(text);
  r.add("verdict", "valid");
  r.add("curves", std::to_string(config.curves.size()));
  std::size_t pair = 0, total = 0;
  for (std::size_t i = 0; i < config.curves.size(); ++i) {
    for (std::size_t j = i + 1; j < config.curves.size(); ++j, ++pair) {
      const auto& pts = config.pairwise[pair];
      const std::string key = "intersections." + std::to_string(i) + "." + std::to_string(j);
      r.add(key, std::to_string(pts.size()));
      for (std::size_t k = 0; k < pts.size(); ++k) r.add("point." + std::to_string(i) + "." + std::to_string(j) + "." +
                                                             std::to_string(k), to_string(pts[k]));
      total += pts.size();
    }
  }
  r.add("intersection_points", std::to_string(total));
  return kExitOk;
}

int cmd_branch_census(Report& r, const std::string& text) {
  const DirectionCensus c = direction_census(load_branch(text));
  r.add("count", std::to_string(c.directions.size()));
  r.add("directions", directions(c));
  return kExitOk;
}

int cmd_branch_classify(Report& r, const std::string& text) {
  const ClassifyResult c = classify(load_branch(text));
  r.add("verdict", std::string(to_string(c.verdict)));
  r.add("rule", c.rule);
  r.add("directions", directions(c.census));
  return kExitOk;
}

Outcome cmd_local_model(long m, long n) {
  Outcome out;
  try {
    const LocalModel model = local_model(m, n);
    const LocalModelAudit a = audit(model);
    Report r;
    r.add("command", "branch local-model");
    r.add("m", std::to_string(m));
    r.add("n", std::to_string(n));
    r.add("cubes", std::to_string(a.cube_count));
    r.add("gluings", std::to_string(model.schedule.size()));
    r.add("faces_glued_once", a.faces_glued_once ? "true" : "false");
    r.add("z1_cycle_closes", a.z1_cycle_closes ? "true" : "false");
    r.add("z2_cycle_closes", a.z2_cycle_closes ? "true" : "false");
    r.add("angles", cone_angle(static_cast<int>(a.angle_z1)) + " " + cone_angle(static_cast<int>(a.angle_z2)));
    for (std::size_t i = 0; i < model.schedule.size(); ++i) {
      const CubeGluing& g = model.schedule[i];
      auto cube = [&](std::size_t c) {
        return std::to_string(model.cubes[c].k) + "," + std::to_string(model.cubes[c].l);
      };
      r.add("glue." + std::to_string(i), cube(g.a) + " " + std::string(to_string(g.face_a)) + " " + cube(g.b) + " " +
                                             std::string(to_string(g.face_b)));
    }
    out.report = r.str();
    if (!a.ok()) {
      out.code = kExitInput;
      out.error = "local model audit failed";
    }
  } catch (const Error& e) {
    out.code = kExitInput;
    out.error = e.what();
  }
  return out;
}

Outcome cmd_product(const std::string& a, const std::string& b) {
  Outcome out;
  try {
    Report r;
    r.add("command", "product");
    const std::string ta = read_file(a), tb = read_file(b);
    r.add("input.1", a);
    r.add("digest.1", "sha256:" + sha256_hex(ta));
    r.add("input.2", b);
    r.add("digest.2", "sha256:" + sha256_hex(tb));
    const ProductVerdict v = product_cover_decision(load_surface(ta), load_surface(tb));
    r.add("rule", "product-covers-iff-factors-cover");
    if (v.covers) {
      r.add("verdict", "cover");
      r.add("lattice.1", v.lattices->first.h.str() + " " + v.lattices->first.v.str());
      r.add("lattice.2", v.lattices->second.h.str() + " " + v.lattices->second.v.str());
      r.add("degree", v.degree->get_str());
    } else {
      r.add("verdict", "not-a-cover");
      r.add("failing_factor", std::to_string(*v.failing_factor + 1));
      describe_failure(r, *v.failure);
      out.code = kExitNegative;
    }
    out.report = r.str();
  } catch (const Error& e) {
    out.code = kExitInput;
    out.error = e.what();
  }
  return out;
}

int cmd_render(Report& r, const std::string& text, const std::string& what, const std::string& output,
               std::ostream& stdout_svg) {
  const ValidatedSurface s = load_surface(text);
  std::string svg;
  int code = kExitOk;
  if (what == "surface") {
    svg = render_surface_svg(s);
  } else if (what == "strips") {
    svg = render_strips_svg(s, strip_decomposition(s, bottom_transversal(s)));
  } else {
    const CoverVerdict v = decide_torus_cover(s);
    if (const auto* no = std::get_if<NotACover>(&v)) {
      r.add("verdict", "not-a-cover");
      describe_failure(r, *no);
      return kExitNegative;
    }
    svg = render_cover_svg(s, std::get<CoveringDescription>(v));
  }
  if (output.empty()) {
    stdout_svg << svg;
    return code;
  }
  // Write to a sibling file first so readers never see a partial drawing.
  const std::string tmp = output + ".tmp";
  {
    std::ofstream f(tmp, std::ios::binary);
    if (!f) throw Error(ErrorKind::UsageError, "cannot write " + output);
    f << svg;
  }
  if (std::rename(tmp.c_str(), output.c_str()) != 0) throw Error(ErrorKind::UsageError, "cannot write " + output);
  r.add("output", output);
  r.add("svg_digest", "sha256:" + sha256_hex(svg));
  return code;
}

int emit(const std::vector<Outcome>& outcomes, std::ostream& out, std::ostream& err) {
  int code = kExitOk;
  bool first = true;
  for (const Outcome& o : outcomes) {
    if (!o.report.empty()) {
      if (!first) out << "\n";
      out << o.report;
      first = false;
    }
    if (!o.error.empty()) err << "error: " << o.error << "\n";
    if (o.code == kExitInput || code == kExitInput) {
      code = kExitInput;
    } else {
      code = std::max(code, o.code);
    }
  }
  return code;
}

// Processes every file concurrently; reports keep the input order.
int run_files(const std::string& command, const std::vector<std::string>& files,
              const std::function<int(Report&, const std::string&)>& body, std::ostream& out, std::ostream& err) {
  std::vector<std::future<Outcome>> jobs;
  for (const std::string& f : files)
    jobs.push_back(std::async(std::launch::async, [&, f] { return guarded(command, f, body); }));
  std::vector<Outcome> outcomes;
  for (auto& j : jobs) outcomes.push_back(j.get());
  return emit(outcomes, out, err);
}

}  // namespace

int dispatch(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Exact computations on flat surfaces built from rectangles", "pkflat"};
  app.require_subcommand(1);

  std::vector<std::string> files;
  auto* validate_cmd = app.add_subcommand("validate", "Check a surface document");
  validate_cmd->add_option("files", files, "Surface documents")->required();
  auto* analyze_cmd = app.add_subcommand("analyze", "Genus, area, cone angles and periods");
  analyze_cmd->add_option("files", files, "Surface documents")->required();
  auto* cover_cmd = app.add_subcommand("cover", "Decide whether the surface covers a flat torus");
  cover_cmd->add_option("files", files, "Surface documents")->required();

  std::vector<std::string> transversals;
  std::optional<std::size_t> max_crossings;
  auto* flow_cmd = app.add_subcommand("flow", "First return map and strip decomposition of the vertical flow");
  flow_cmd->add_option("files", files, "Surface documents")->required();
  flow_cmd->add_option("--transversal", transversals, "Arc <rect>:<height>:<start>:<end>; repeatable");
  flow_cmd->add_option("--max-crossings", max_crossings, "Crossing budget per leaf");

  std::string first_doc, second_doc;
  auto* product_cmd = app.add_subcommand("product", "Decide whether a product of two surfaces covers a 4-torus");
  product_cmd->add_option("first", first_doc, "Surface document")->required();
  product_cmd->add_option("second", second_doc, "Surface document")->required();

  std::string branch_doc;
  long m = 1, n = 1;
  auto* branch_cmd = app.add_subcommand("branch", "Branch-curve configurations on a product of tori");
  branch_cmd->require_subcommand(1);
  auto* b_validate = branch_cmd->add_subcommand("validate", "Check intersections and triple points");
  b_validate->add_option("file", branch_doc, "Branch document")->required();
  auto* b_census = branch_cmd->add_subcommand("census", "Distinct complex directions");
  b_census->add_option("file", branch_doc, "Branch document")->required();
  auto* b_classify = branch_cmd->add_subcommand("classify", "Product or not");
  b_classify->add_option("file", branch_doc, "Branch document")->required();
  auto* b_local = branch_cmd->add_subcommand("local-model", "Cube gluing model at a crossing of orders m, n");
  b_local->add_option("--m", m, "Order of the first curve")->required();
  b_local->add_option("--n", n, "Order of the second curve")->required();

  std::string render_doc, output, what = "surface";
  auto* render_cmd = app.add_subcommand("render", "Draw a surface, its strips or its cover as SVG");
  render_cmd->add_option("file", render_doc, "Surface document")->required();
  render_cmd->add_option("-o,--output", output, "Output path (default: standard output)");
  render_cmd->add_option("--what", what, "surface, strips or cover")
      ->check(CLI::IsMember({"surface", "strips", "cover"}));

  std::vector<const char*> argv{"pkflat"};
  for (const std::string& a : args) argv.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << to_string(ErrorKind::UsageError) << ": " << e.what() << "\n";
    return kExitInput;
  }

  if (*validate_cmd) return run_files("validate", files, cmd_validate, out, err);
  if (*analyze_cmd) return run_files("analyze", files, cmd_analyze, out, err);
  if (*cover_cmd) return run_files("cover", files, cmd_cover, out, err);
  if (*flow_cmd) {
    return run_files(
        "flow", files, [&](Report& r, const std::string& t) { return cmd_flow(r, t, transversals, max_crossings); },
        out, err);
  }
  if (*product_cmd) return emit({cmd_product(first_doc, second_doc)}, out, err);
  if (*branch_cmd) {
    if (*b_local) return emit({cmd_local_model(m, n)}, out, err);
    if (*b_validate) return run_files("branch validate", {branch_doc}, cmd_branch_validate, out, err);
    if (*b_census) return run_files("branch census", {branch_doc}, cmd_branch_census, out, err);
    return run_files("branch classify", {branch_doc}, cmd_branch_classify, out, err);
  }
  // render
  std::ostringstream svg;
  Outcome o = guarded("render", render_doc, [&](Report& r, const std::string& t) {
    r.add("what", what);
    return cmd_render(r, t, what, output, svg);
  });
  if (output.empty() && o.code == kExitOk) {
    out << svg.str();
    o.report.clear();
  }
  return emit({o}, out, err);
}

}  // namespace pkflat
