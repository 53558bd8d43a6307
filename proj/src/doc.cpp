#include "peripack/doc.hpp"

namespace peripack {

namespace {

bool scalar_homothety(const Scalar& v, const Scalar& r, const Scalar& mu,
                      const Scalar& t) {
  return v.eq(r * mu + t);
}

// Does poly = mu * rp + t where rp's vertex list is read starting at s?
bool homothet_with_shift(const ConvexPolygon& poly, const ConvexPolygon& rp,
                         size_t s) {
  const size_t n = poly.size();
  // Solve v1 - v0 = mu * (r1 - r0) from whichever coordinate is nonzero.
  const Vec dv = poly.vertex(1) - poly.vertex(0);
  const Vec dr = rp.vertex((s + 1) % n) - rp.vertex(s);
  Scalar mu = Scalar::zero(dv.dx.mode());
  if (!dr.dx.is_zero())
    mu = dv.dx / dr.dx;
  else if (!dr.dy.is_zero())
    mu = dv.dy / dr.dy;
  else
    return false;
  if (mu.sign() <= 0) return false;
  const Scalar tx = poly.vertex(0).x - rp.vertex(s).x * mu;
  const Scalar ty = poly.vertex(0).y - rp.vertex(s).y * mu;
  for (size_t i = 0; i < n; ++i) {
    const Point& r = rp.vertex((s + i) % n);
    if (!scalar_homothety(poly.vertex(i).x, r.x, mu, tx)) return false;
    if (!scalar_homothety(poly.vertex(i).y, r.y, mu, ty)) return false;
  }
  return true;
}

}  // namespace

bool is_homothet_of(const Body& b, const Body& ref) {
  if (b.index() != ref.index()) return false;
  if (std::holds_alternative<Disk>(b)) return true;  // any disk scales to any disk
  const auto& poly = std::get<ConvexPolygon>(b);
  const auto& rp = std::get<ConvexPolygon>(ref);
  if (poly.size() != rp.size()) return false;
  // The same polygon may be stored with any starting vertex.
  for (size_t s = 0; s < rp.size(); ++s)
    if (homothet_with_shift(poly, rp, s)) return true;
  return false;
}

PackingDoc::PackingDoc(ConvexPolygon container, std::vector<Body> bodies,
                       std::optional<Body> reference, DocMetadata meta)
    : container_(std::move(container)),
      bodies_(std::move(bodies)),
      reference_(std::move(reference)),
      meta_(std::move(meta)) {
  mode_ = mode_of(Body{container_});
  for (const Body& b : bodies_)
    if (mode_of(b) != mode_) throw Error("doc: bodies mix scalar modes");
  if (reference_) {
    if (mode_of(*reference_) != mode_) throw Error("doc: reference body mixes scalar modes");
    for (size_t i = 0; i < bodies_.size(); ++i)
      if (!is_homothet_of(bodies_[i], *reference_))
        throw Error("doc: body " + std::to_string(i) +
                    " is not a homothet of the reference body");
  }
}

}  // namespace peripack
