#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include <CLI11.hpp>

#include "peripack/bounds.hpp"
#include "peripack/generators.hpp"
#include "peripack/json_io.hpp"
#include "peripack/svg.hpp"
#include "peripack/verifier.hpp"

namespace {

using namespace peripack;

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot open " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error("cannot write " + path);
  out << text;
}

ConvexPolygon unit_square() {
  return ConvexPolygon({{Scalar::exact(0), Scalar::exact(0)},
                        {Scalar::exact(1), Scalar::exact(0)},
                        {Scalar::exact(1), Scalar::exact(1)},
                        {Scalar::exact(0), Scalar::exact(1)}});
}

// --body/--container values: a literal shape name or a JSON file holding a
// body object.
Body parse_body_arg(const std::string& arg, double eps) {
  if (arg == "square") return unit_square();
  if (arg == "disk")
    return Disk{{Scalar::exact(0), Scalar::exact(0)}, Scalar::exact(1)};
  if (arg == "triangle")
    return ConvexPolygon({{Scalar::exact(0), Scalar::exact(0)},
                          {Scalar::exact(1), Scalar::exact(0)},
                          {Scalar::exact(0), Scalar::exact(1)}});
  const OrderedJson j = OrderedJson::parse(read_file(arg));
  try {
    return body_from_json(j, Mode::Exact, eps);
  } catch (const Error&) {
    return body_from_json(j, Mode::Float, eps);
  }
}

ConvexPolygon parse_container_arg(const std::string& arg, double eps) {
  Body b = parse_body_arg(arg, eps);
  if (const auto* poly = std::get_if<ConvexPolygon>(&b)) return *poly;
  throw Error("container must be a polygon");
}

struct GenerateFlags {
  size_t n = 0;
  unsigned long long Q = 0;
  int K = -1;
  int lambda = 0;
  double slope = 0;
  int depth = 8;
  double r1 = 0.5;
  double r2 = 0.5;
  std::string body = "square";
  std::string container = "square";
  size_t edge = 0;
  double eps = kDefaultEps;
};

PackingDoc generate_doc(const std::string& kind, const GenerateFlags& f) {
  if (kind == "grid") {
    if (f.n == 0) throw Error("grid requires --n");
    return gen_grid_translates(parse_body_arg(f.body, f.eps),
                               parse_container_arg(f.container, f.eps), f.n);
  }
  if (kind == "ford") {
    if (f.Q == 0) throw Error("ford requires --Q");
    return gen_ford(f.Q);
  }
  if (kind == "apollonian") {
    if (f.n == 0) throw Error("apollonian requires --n");
    return gen_apollonian_chain(f.r1, f.r2, f.n);
  }
  if (kind == "greedy") {
    if (f.n == 0) throw Error("greedy requires --n");
    return gen_greedy_square(f.n);
  }
  if (kind == "explicit-disks") {
    if (f.K < 0) throw Error("explicit-disks requires --K");
    return gen_explicit_disks(f.K);
  }
  if (kind == "square-layers") {
    if (f.lambda == 0) throw Error("square-layers requires --lambda");
    return gen_square_layers(f.lambda);
  }
  if (kind == "layers-general") {
    if (f.lambda == 0) throw Error("layers-general requires --lambda");
    Body b = parse_body_arg(f.body, f.eps);
    const auto* poly = std::get_if<ConvexPolygon>(&b);
    if (!poly) throw Error("layers-general requires a polygon body");
    return gen_layers_general(*poly, parse_container_arg(f.container, f.eps),
                              f.edge, f.lambda);
  }
  if (kind == "sloped-squares") {
    if (f.slope <= 0) throw Error("sloped-squares requires --slope");
    return gen_sloped_squares(f.slope, f.depth);
  }
  throw Error("unknown kind: " + kind);
}

// Kind-specific meaning of a scale sweep parameter.
PackingDoc generate_for_scale(const std::string& kind, double v,
                              const GenerateFlags& f) {
  GenerateFlags g = f;
  if (kind == "ford") g.Q = static_cast<unsigned long long>(v);
  else if (kind == "apollonian" || kind == "greedy" || kind == "grid")
    g.n = static_cast<size_t>(v);
  else if (kind == "explicit-disks") g.K = static_cast<int>(v);
  else if (kind == "square-layers" || kind == "layers-general")
    g.lambda = static_cast<int>(v);
  else if (kind == "sloped-squares") {
    g.depth = static_cast<int>(v);
    if (g.slope <= 0) g.slope = 0.5;
  } else {
    throw Error("unknown kind: " + kind);
  }
  return generate_doc(kind, g);
}

int run(int argc, char** argv) {
  CLI::App app{"packings of homothetic convex bodies: generate, verify, measure, bound"};
  app.require_subcommand(1);

  GenerateFlags gf;
  std::string kind, out, file, which, param_list, model_name = "log";
  bool require_contact = false;
  double eps = kDefaultEps;
  std::optional<double> esc_override;
  int width = 800;

  auto* generate = app.add_subcommand("generate", "construct a packing and write it as JSON");
  generate->add_option("kind", kind,
                       "grid | ford | apollonian | greedy | explicit-disks | "
                       "square-layers | layers-general | sloped-squares")
      ->required();
  generate->add_option("--n", gf.n, "body count");
  generate->add_option("--Q", gf.Q, "largest Ford denominator");
  generate->add_option("--K", gf.K, "explicit hierarchy depth");
  generate->add_option("--lambda", gf.lambda, "layer count");
  generate->add_option("--slope", gf.slope, "hypotenuse slope");
  generate->add_option("--depth", gf.depth, "sloped-squares recursion depth");
  generate->add_option("--r1", gf.r1, "first seed radius");
  generate->add_option("--r2", gf.r2, "second seed radius");
  generate->add_option("--body", gf.body, "body: square|disk|triangle or JSON file");
  generate->add_option("--container", gf.container,
                       "container: square|triangle or JSON file");
  generate->add_option("--edge", gf.edge, "container edge index");
  generate->add_option("--out", out, "output file")->required();

  auto* verify = app.add_subcommand("verify", "check containment and interior disjointness");
  verify->add_option("file", file, "packing JSON")->required();
  verify->add_flag("--require-boundary-contact", require_contact,
                   "also require every body to touch the container boundary");
  verify->add_option("--eps", eps, "float comparison tolerance");

  auto* measure = app.add_subcommand("measure", "report perimeter and escape metrics");
  measure->add_option("file", file, "packing JSON")->required();
  measure->add_option("--eps", eps, "float comparison tolerance");

  auto* bounds = app.add_subcommand("bounds", "evaluate a perimeter bound against the packing");
  bounds->add_option("file", file, "packing JSON")->required();
  bounds->add_option("--which", which, "prop1 | prop2 | prop4 | prop5 | thm6")->required();
  double esc_val = 0;
  auto* esc_opt = bounds->add_option("--esc", esc_val, "escape sum override");
  bounds->add_option("--eps", eps, "float comparison tolerance");

  auto* scale = app.add_subcommand("scale", "fit a growth model over a parameter sweep");
  scale->add_option("kind", kind, "generator kind")->required();
  scale->add_option("--param-list", param_list, "comma-separated parameter values")->required();
  scale->add_option("--model", model_name, "sqrt | log | loglog");
  scale->add_option("--slope", gf.slope, "sloped-squares slope");

  auto* render = app.add_subcommand("render", "write an SVG image of the packing");
  render->add_option("file", file, "packing JSON")->required();
  render->add_option("--out", out, "output SVG file")->required();
  render->add_option("--width", width, "image width in pixels");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    if (generate->parsed()) {
      gf.eps = eps;
      const PackingDoc doc = generate_doc(kind, gf);
      write_file(out, save_doc(doc));
      std::cerr << "wrote " << out << " (" << doc.size() << " bodies)\n";
      return 0;
    }
    if (verify->parsed()) {
      const PackingDoc doc = load_doc(read_file(file), eps);
      const VerificationReport rep = verify_packing(doc, require_contact);
      std::cout << rep.to_json().dump(2) << "\n";
      return rep.summary ? 0 : 1;
    }
    if (measure->parsed()) {
      const PackingDoc doc = load_doc(read_file(file), eps);
      std::cout << packing_metrics(doc).to_json().dump(2) << "\n";
      return 0;
    }
    if (bounds->parsed()) {
      if (esc_opt->count() > 0) esc_override = esc_val;
      const PackingDoc doc = load_doc(read_file(file), eps);
      const BoundReport rep = evaluate_bound(doc, which, esc_override);
      std::cout << rep.to_json().dump(2) << "\n";
      return rep.slack < 0 ? 1 : 0;
    }
    if (scale->parsed()) {
      std::vector<std::pair<double, double>> samples;
      std::stringstream ss(param_list);
      std::string item;
      while (std::getline(ss, item, ',')) {
        if (item.empty()) continue;
        const double v = std::stod(item);
        const PackingDoc doc = generate_for_scale(kind, v, gf);
        const Metrics m = packing_metrics(doc);
        samples.push_back({static_cast<double>(m.n), m.total_perimeter.to_double()});
      }
      const FitResult fit = fit_scaling(samples, fit_model_from_name(model_name));
      std::cout << fit.to_json().dump(2) << "\n";
      return 0;
    }
    if (render->parsed()) {
      const PackingDoc doc = load_doc(read_file(file), eps);
      write_file(out, render_svg(doc, width));
      std::cerr << "wrote " << out << "\n";
      return 0;
    }
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 2;
}

}  // namespace

int main(int argc, char** argv) { return run(argc, argv); }
