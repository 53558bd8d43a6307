#pragma once

#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "peripack/geometry.hpp"

namespace peripack {

using OrderedJson = nlohmann::ordered_json;

struct DocMetadata {
  std::string generator;
  OrderedJson params = OrderedJson::object();
};

// A container polygon plus the packed bodies, all in one scalar mode.
// When a reference body is present every body must be a positive homothet
// of it; this is checked at construction.
class PackingDoc {
 public:
  PackingDoc(ConvexPolygon container, std::vector<Body> bodies,
             std::optional<Body> reference, DocMetadata meta);

  const ConvexPolygon& container() const { return container_; }
  const std::vector<Body>& bodies() const { return bodies_; }
  const std::optional<Body>& reference() const { return reference_; }
  const DocMetadata& metadata() const { return meta_; }
  Mode mode() const { return mode_; }
  size_t size() const { return bodies_.size(); }

 private:
  ConvexPolygon container_;
  std::vector<Body> bodies_;
  std::optional<Body> reference_;
  DocMetadata meta_;
  Mode mode_;
};

// True when `b` equals mu*ref + t for some mu > 0 (same variant kind;
// polygons must list corresponding vertices in the same order).
bool is_homothet_of(const Body& b, const Body& ref);

}  // namespace peripack
