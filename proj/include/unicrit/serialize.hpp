#pragma once

#include <json.hpp>

#include "unicrit/map.hpp"
#include "unicrit/pullback.hpp"
#include "unicrit/returns.hpp"
#include "unicrit/series.hpp"

namespace unicrit {

using Json = nlohmann::ordered_json;

// Complex values serialize as [re, im]; non-finite reals as the strings
// "inf" / "-inf" / "nan" so documents stay valid JSON.
Json encode_complex(Complex z);
Json encode_real(double x);

Json to_json(const OrbitSegment& orbit);
Json to_json(const PoincareTruncation& trunc);
Json to_json(const ForwardSeriesTruncation& series);
Json to_json(const ConvergenceExponentEstimate& estimate);
Json to_json(const ScaleProfile& profile);
Json to_json(const ChildScan& scan);
Json to_json(const ReturnStaircase& staircase);
Json to_json(const ReturnDerivativeStats& stats);
Json to_json(const std::vector<IntervalRatio>& rows);

}  // namespace unicrit
