#pragma once

#include <string>

#include "peripack/doc.hpp"

namespace peripack {

// Parses the canonical packing JSON. Exact values are quoted "p/q" strings,
// float values plain JSON numbers; a document mixing the two is rejected.
// `eps` is attached to every float scalar read.
PackingDoc load_doc(const std::string& text, double eps = kDefaultEps);

// Canonical serialization: fixed key order, exact scalars as reduced "p/q"
// strings, floats as shortest round-trip decimals. save(load(save(x))) is
// byte-identical to save(x).
std::string save_doc(const PackingDoc& doc);

OrderedJson body_to_json(const Body& b);
Body body_from_json(const OrderedJson& j, Mode expected_mode, double eps);

OrderedJson scalar_to_json(const Scalar& s);

}  // namespace peripack
