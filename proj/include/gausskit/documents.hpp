// Copyright 2026 The gausskit Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <optional>
#include <string>

#include "gausskit/cp_map.hpp"
#include "gausskit/nogo.hpp"
#include "gausskit/state.hpp"
#include "json.hpp"

namespace gausskit {

/// Serializes with numbers at 17 significant digits, one object member per
/// line and numeric arrays on a single line. Non-finite numbers become null.
std::string write_document(const nlohmann::ordered_json& doc);

/// Parses a document, reporting syntax errors with their line and column.
nlohmann::ordered_json parse_document(const std::string& text);

/// Reads a whole file; throws DataError when it cannot be opened.
std::string read_text_file(const std::string& path);

nlohmann::ordered_json matrix_to_json(const Matrix& m);
nlohmann::ordered_json vector_to_json(const Vector& v);
/// `field` names the member in diagnostics.
Matrix matrix_from_json(const nlohmann::ordered_json& j, const std::string& field);
Vector vector_from_json(const nlohmann::ordered_json& j, const std::string& field);

/// {modes, cm, disp}.
nlohmann::ordered_json state_to_json(const GaussianState& s);
GaussianState state_from_json(const nlohmann::ordered_json& j);
std::string write_state_document(const GaussianState& s);
GaussianState parse_state_document(const std::string& text);

/// {n_in, n_out, gamma, d} or {n_in, n_out, channel: {m, n}}.
struct MapDocument {
  std::size_t n_in = 0;
  std::size_t n_out = 0;
  std::optional<GaussianCPMap> map;
  std::optional<ChannelForm> channel;
};

nlohmann::ordered_json map_to_json(const MapDocument& m);
MapDocument map_from_json(const nlohmann::ordered_json& j);
std::string write_map_document(const MapDocument& m);
MapDocument parse_map_document(const std::string& text);

/// Name of the single report member that holds the wall time.
inline constexpr const char* kWallTimeField = "wall_time_seconds";

/// Monte-Carlo run report. The wall time is the only run-dependent member.
nlohmann::ordered_json nogo_report_to_json(const NogoReport& report, const std::string& command, double wall_seconds);

/// Removes the wall-time line so that two reports can be compared bytewise.
std::string report_body(const std::string& document);

}  // namespace gausskit
