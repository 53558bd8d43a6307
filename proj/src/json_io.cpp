#include "peripack/json_io.hpp"

namespace peripack {

namespace {

// Scans every geometric number in the document to decide the scalar mode
// before any value is built, so mixed documents fail with one clear error.
class ModeScan {
 public:
  void see(const OrderedJson& v) {
    if (v.is_string())
      exact_ = true;
    else if (v.is_number())
      finite_ = true;
    else
      throw Error("doc: expected a number or \"p/q\" string, got " + v.dump());
  }
  void see_point(const OrderedJson& p) {
    if (!p.is_array() || p.size() != 2)
      throw Error("doc: point must be a [x, y] pair, got " + p.dump());
    see(p[0]);
    see(p[1]);
  }
  void see_body(const OrderedJson& b) {
    if (!b.is_object() || !b.contains("type"))
      throw Error("doc: body missing \"type\"");
    const std::string type = b.at("type").get<std::string>();
    if (type == "disk") {
      see_point(b.at("center"));
      see(b.at("radius"));
    } else if (type == "polygon") {
      for (const auto& v : b.at("vertices")) see_point(v);
    } else {
      throw Error("doc: unknown body type '" + type + "'");
    }
  }
  Mode mode() const {
    if (exact_ && finite_) throw Error("doc: document mixes exact and float scalars");
    return exact_ ? Mode::Exact : Mode::Float;
  }

 private:
  bool exact_ = false;
  bool finite_ = false;
};

Scalar scalar_from_json(const OrderedJson& v, Mode m, double eps) {
  if (m == Mode::Exact) {
    if (!v.is_string()) throw Error("doc: exact scalar must be a \"p/q\" string");
    return parse_rational(v.get<std::string>());
  }
  if (!v.is_number()) throw Error("doc: float scalar must be a JSON number");
  return Scalar::real(v.get<double>(), eps);
}

Point point_from_json(const OrderedJson& p, Mode m, double eps) {
  return {scalar_from_json(p.at(0), m, eps), scalar_from_json(p.at(1), m, eps)};
}

OrderedJson point_to_json(const Point& p) {
  return OrderedJson::array({scalar_to_json(p.x), scalar_to_json(p.y)});
}

ConvexPolygon polygon_from_json(const OrderedJson& j, Mode m, double eps) {
  std::vector<Point> verts;
  for (const auto& v : j.at("vertices")) verts.push_back(point_from_json(v, m, eps));
  return ConvexPolygon(std::move(verts));
}

}  // namespace

OrderedJson scalar_to_json(const Scalar& s) {
  if (s.is_exact()) return OrderedJson(rational_str(s.rational()));
  return OrderedJson(s.to_double());
}

Body body_from_json(const OrderedJson& j, Mode m, double eps) {
  const std::string type = j.at("type").get<std::string>();
  if (type == "disk") {
    Disk d{point_from_json(j.at("center"), m, eps), scalar_from_json(j.at("radius"), m, eps)};
    if (d.radius.sign() <= 0) throw Error("doc: disk radius must be positive");
    return d;
  }
  return polygon_from_json(j, m, eps);
}

OrderedJson body_to_json(const Body& b) {
  OrderedJson j = OrderedJson::object();
  if (const Disk* d = std::get_if<Disk>(&b)) {
    j["type"] = "disk";
    j["center"] = point_to_json(d->center);
    j["radius"] = scalar_to_json(d->radius);
    return j;
  }
  const auto& poly = std::get<ConvexPolygon>(b);
  j["type"] = "polygon";
  OrderedJson verts = OrderedJson::array();
  for (const Point& p : poly.vertices()) verts.push_back(point_to_json(p));
  j["vertices"] = std::move(verts);
  return j;
}

PackingDoc load_doc(const std::string& text, double eps) {
  OrderedJson j;
  try {
    j = OrderedJson::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw Error(std::string("doc: JSON parse error: ") + e.what());
  }
  if (!j.is_object()) throw Error("doc: top level must be an object");
  if (!j.contains("version") || !j.at("version").is_number_integer() ||
      j.at("version").get<int>() != 1)
    throw Error("doc: missing or unsupported version (expected 1)");
  if (!j.contains("container") || !j.contains("bodies"))
    throw Error("doc: missing container or bodies");
  const OrderedJson& cont = j.at("container");
  if (!cont.is_object() || cont.value("type", "") != "polygon")
    throw Error("doc: container must be a polygon body");

  ModeScan scan;
  scan.see_body(cont);
  for (const auto& b : j.at("bodies")) scan.see_body(b);
  if (j.contains("reference_body")) scan.see_body(j.at("reference_body"));
  const Mode m = scan.mode();

  DocMetadata meta;
  if (j.contains("metadata")) {
    const OrderedJson& md = j.at("metadata");
    meta.generator = md.value("generator", "");
    if (md.contains("params")) meta.params = md.at("params");
    if (md.contains("mode")) {
      const std::string declared = md.at("mode").get<std::string>();
      if (declared != "exact" && declared != "float")
        throw Error("doc: metadata mode must be \"exact\" or \"float\"");
      if ((declared == "exact") != (m == Mode::Exact))
        throw Error("doc: metadata mode disagrees with the scalars in the document");
    }
  }

  ConvexPolygon container = polygon_from_json(cont, m, eps);
  std::vector<Body> bodies;
  bodies.reserve(j.at("bodies").size());
  size_t idx = 0;
  for (const auto& b : j.at("bodies")) {
    try {
      bodies.push_back(body_from_json(b, m, eps));
    } catch (const Error& e) {
      throw Error("doc: bodies[" + std::to_string(idx) + "]: " + e.what());
    }
    ++idx;
  }
  std::optional<Body> reference;
  if (j.contains("reference_body"))
    reference = body_from_json(j.at("reference_body"), m, eps);
  return PackingDoc(std::move(container), std::move(bodies), std::move(reference),
                    std::move(meta));
}

std::string save_doc(const PackingDoc& doc) {
  OrderedJson j = OrderedJson::object();
  j["version"] = 1;
  j["container"] = body_to_json(Body{doc.container()});
  if (doc.reference()) j["reference_body"] = body_to_json(*doc.reference());
  OrderedJson bodies = OrderedJson::array();
  for (const Body& b : doc.bodies()) bodies.push_back(body_to_json(b));
  j["bodies"] = std::move(bodies);
  OrderedJson md = OrderedJson::object();
  md["generator"] = doc.metadata().generator;
  md["params"] = doc.metadata().params;
  md["mode"] = doc.mode() == Mode::Exact ? "exact" : "float";
  j["metadata"] = std::move(md);
  return j.dump(2) + "\n";
}

}  // namespace peripack
