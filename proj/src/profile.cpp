#include <algorithm>
#include <map>

#include "peripack/json_io.hpp"
#include "peripack/verifier.hpp"

namespace peripack {

namespace {

Scalar to_mode(const Scalar& s, Mode m) {
  if (s.mode() == m) return s;
  if (m == Mode::Float) return s.as_float();
  throw Error("depth_profile: lambda/rho2 must be exact for an exact document");
}

}  // namespace

OrderedJson DepthProfile::to_json() const {
  OrderedJson j;
  j["edge_index"] = edge_index;
  j["edge_length"] = scalar_to_json(edge_length);
  j["close_count"] = close_count;
  j["projection_total"] = scalar_to_json(projection_total);
  OrderedJson bp = OrderedJson::array();
  for (const Scalar& s : breakpoints) bp.push_back(scalar_to_json(s));
  j["breakpoints"] = std::move(bp);
  j["depth"] = depth;
  OrderedJson ms = OrderedJson::array();
  for (const Scalar& s : measures) ms.push_back(scalar_to_json(s));
  j["measures"] = std::move(ms);
  return j;
}

DepthProfile depth_profile(const PackingDoc& doc, size_t edge_index,
                           const Scalar& lambda, const Scalar& rho2) {
  const ConvexPolygon& D = doc.container();
  if (edge_index >= D.size()) throw Error("depth_profile: edge index out of range");
  if (!doc.reference()) throw Error("depth_profile: document has no reference body");

  const Segment a = D.edge(edge_index);
  const Vec av = a.b - a.a;
  const Direction a_dir{av.dx, av.dy};
  if (!std::holds_alternative<Segment>(support_side(*doc.reference(), a_dir)))
    throw Error("depth_profile: reference body has no side parallel to the edge");

  const Scalar a_len = edge_length(a);
  // Unit-speed parameter along the edge; exact whenever |a| is rational.
  auto param = [&](const Point& p) -> Scalar {
    const Scalar proj = dot(p - a.a, av);
    if (proj.is_exact() && a_len.is_exact()) return proj / a_len;
    return Scalar::real(proj.to_double() / a_len.to_double());
  };

  DepthProfile profile;
  profile.edge_index = edge_index;
  profile.edge_length = a_len;

  struct Event {
    Scalar t;
    int delta;
  };
  std::vector<Event> events;
  Mode sum_mode = doc.mode();
  Scalar proj_total = Scalar::zero(sum_mode);

  for (const Body& b : doc.bodies()) {
    if (!std::holds_alternative<ConvexPolygon>(b))
      throw Error("depth_profile: bodies must be polygons");
    // Nearest container side, ties to the lowest edge index.
    std::vector<Scalar> gaps = container_edge_gaps(b, D);
    size_t nearest = 0;
    for (size_t e = 1; e < gaps.size(); ++e)
      if (Scalar::compare_value(gaps[e], gaps[nearest]) < 0) nearest = e;
    if (nearest != edge_index) continue;
    const Scalar& esc = gaps[nearest];

    const SupportSide side = support_side(b, a_dir);
    const Segment* c = std::get_if<Segment>(&side);
    if (!c) throw Error("depth_profile: body has no side parallel to the edge");
    const Segment half = middle_half(*c);
    Scalar t1 = param(half.a);
    Scalar t2 = param(half.b);
    if (Scalar::compare_value(t1, t2) > 0) std::swap(t1, t2);
    const Scalar len_b = t2 - t1;

    const Mode cmp = (esc.is_exact() && len_b.is_exact() && rho2.is_exact() &&
                      lambda.is_exact())
                         ? Mode::Exact
                         : Mode::Float;
    const Scalar threshold =
        to_mode(rho2, cmp) * to_mode(len_b, cmp) / to_mode(lambda, cmp);
    if (!to_mode(esc, cmp).lt(threshold)) continue;

    ++profile.close_count;
    if (len_b.mode() != sum_mode) {
      sum_mode = Mode::Float;
      proj_total = proj_total.as_float();
    }
    proj_total += len_b.mode() == sum_mode ? len_b : len_b.as_float();
    events.push_back({std::move(t1), +1});
    events.push_back({std::move(t2), -1});
  }
  profile.projection_total = std::move(proj_total);

  std::sort(events.begin(), events.end(), [](const Event& x, const Event& y) {
    const int c = Scalar::compare_value(x.t, y.t);
    if (c != 0) return c < 0;
    return x.delta > y.delta;  // open before close, irrelevant to measures
  });

  int depth = 0;
  std::vector<Scalar> measures;
  for (size_t i = 0; i < events.size(); ++i) {
    const bool advanced =
        i > 0 && Scalar::compare_value(events[i - 1].t, events[i].t) < 0;
    if (advanced) {
      const Scalar seg = events[i].t - events[i - 1].t;
      for (int k = 1; k <= depth; ++k) {
        if (static_cast<int>(measures.size()) < k)
          measures.push_back(Scalar::zero(seg.mode()));
        Scalar& m = measures[k - 1];
        m = (m.mode() == seg.mode()) ? m + seg : m.as_float() + seg.as_float();
      }
    }
    if (i == 0 || advanced) {
      profile.breakpoints.push_back(events[i].t);
      if (i > 0) profile.depth.push_back(depth);
    }
    depth += events[i].delta;
  }
  profile.measures = std::move(measures);
  return profile;
}

}  // namespace peripack
