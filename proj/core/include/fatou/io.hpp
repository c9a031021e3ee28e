// Copyright 2026 The Fatou Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// JSON and CSV encodings of series, maps and reports. Doubles are written in
// shortest round-trip form, so decoding restores every binary64 bit.

#ifndef FATOU_IO_HPP
#define FATOU_IO_HPP

#include <string>

#include <nlohmann/json.hpp>

#include "fatou/diophantine.hpp"
#include "fatou/dynamics.hpp"
#include "fatou/linearization.hpp"
#include "fatou/maps.hpp"
#include "fatou/series.hpp"

namespace fatou {

using Json = nlohmann::ordered_json;

Json complex_to_json(Complex c);
Complex complex_from_json(const Json& j);
Json point_to_json(const ComplexPoint2& p);
ComplexPoint2 point_from_json(const Json& j);

/// {order, coeffs: [[re, im], ...]} in triangular index order.
Json series_to_json(const Series2& s);
Series2 series_from_json(const Json& j);
/// {order, coeffs: [[re1, im1, re2, im2], ...]} in triangular index order.
Json jet_to_json(const MapJet& jet);
MapJet jet_from_json(const Json& j);
/// {order, coeffs: [[re1, im1, re2, im2], ...]} by power of w.
Json series1_to_json(const Series1& s);
Series1 series1_from_json(const Json& j);

/// {pipeline: [{kind, params...}], fastpath}.
Json map_to_json(const AutoMap& map);
AutoMap map_from_json(const Json& j);

Json to_json(const DiophantineCertificate& c);
Json to_json(const MaxCReport& r);
Json to_json(const ContinuedFraction& cf);
Json to_json(const SectorReport& r);
Json to_json(const LinearizationResult& r);
Json to_json(const MajorantSplit& s);
Json to_json(const BoundCheck& b);
Json to_json(const SweepResult& s);
Json to_json(const InvarianceReport& r);
Json to_json(const MinimalNReport& r);
Json to_json(const LimitMapEstimate& e);
Json to_json(const ProductSum& p);
Json to_json(const CoverageReport& r);
Json to_json(const InvariantCurve& c);

/// {tool, schema, command, config, result}: every output carries its config.
Json envelope(const std::string& command, const Json& config, Json result);

/// Header lines "# fatou <version> schema <n>" and "# config <json>" for CSV files.
std::string csv_preamble(const std::string& command, const Json& config);

}  // namespace fatou

#endif  // FATOU_IO_HPP
