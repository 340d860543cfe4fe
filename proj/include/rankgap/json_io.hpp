#pragma once

#include <string>

#include "json.hpp"

#include "rankgap/frame.hpp"
#include "rankgap/product_theorem.hpp"
#include "rankgap/search.hpp"
#include "rankgap/torus_bundle.hpp"

namespace rankgap {

using json = nlohmann::ordered_json;

json to_json(const IntMat& a);
IntMat intmat_from_json(const json& j);

json to_json(const MappingTorusDescriptor& m);  // {"k": int, "A": [[...]]}
json to_json(const Pi1Data& p);
json to_json(const ManifoldRank& r);
json to_json(const ProductDecomposition& dec);
json to_json(const FrameReport& report);
json to_json(const CounterexampleCertificate& cert);

// flat "key: value" rendering for --format text
std::string render_text(const json& j);

}  // namespace rankgap
