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

#include "gausskit/documents.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "gausskit/errors.hpp"

namespace gausskit {

using Json = nlohmann::ordered_json;

namespace {

std::string format_number(double x) {
  if (!std::isfinite(x)) return "null";
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

bool is_flat(const Json& j) {
  for (const auto& e : j) {
    if (e.is_array() || e.is_object()) return false;
  }
  return true;
}

void write_value(const Json& j, std::ostringstream& out, int indent) {
  const std::string pad(static_cast<std::size_t>(indent) + 2, ' ');
  const std::string close(static_cast<std::size_t>(indent), ' ');
  switch (j.type()) {
    case Json::value_t::object: {
      if (j.empty()) {
        out << "{}";
        return;
      }
      out << "{\n";
      bool first = true;
      for (const auto& [key, value] : j.items()) {
        if (!first) out << ",\n";
        first = false;
        out << pad << Json(key).dump() << ": ";
        write_value(value, out, indent + 2);
      }
      out << "\n" << close << "}";
      return;
    }
    case Json::value_t::array: {
      if (is_flat(j)) {
        out << "[";
        for (std::size_t i = 0; i < j.size(); ++i) {
          if (i) out << ", ";
          write_value(j[i], out, indent);
        }
        out << "]";
        return;
      }
      out << "[\n";
      for (std::size_t i = 0; i < j.size(); ++i) {
        if (i) out << ",\n";
        out << pad;
        write_value(j[i], out, indent + 2);
      }
      out << "\n" << close << "]";
      return;
    }
    case Json::value_t::number_float:
      out << format_number(j.get<double>());
      return;
    default:
      out << j.dump();
      return;
  }
}

void require_member(const Json& j, const std::string& key) {
  if (!j.contains(key)) throw DataError("missing field '" + key + "'");
}

std::size_t size_from_json(const Json& j, const std::string& field) {
  if (!j.is_number_integer() || j.get<long long>() < 0) {
    throw DataError("field '" + field + "': expected a non-negative integer");
  }
  return j.get<std::size_t>();
}

double number_at(const Json& j, const std::string& where) {
  if (!j.is_number()) throw DataError("field '" + where + "': expected a number, got " + j.dump());
  return j.get<double>();
}

}  // namespace

std::string write_document(const Json& doc) {
  std::ostringstream out;
  write_value(doc, out, 0);
  out << "\n";
  return out.str();
}

Json parse_document(const std::string& text) {
  try {
    return Json::parse(text);
  } catch (const Json::parse_error& e) {
    // The message already carries the line and column.
    throw DataError(e.what());
  }
}

std::string read_text_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw DataError("cannot open '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

Json matrix_to_json(const Matrix& m) {
  Json rows = Json::array();
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    Json row = Json::array();
    for (Eigen::Index k = 0; k < m.cols(); ++k) row.push_back(m(i, k));
    rows.push_back(std::move(row));
  }
  return rows;
}

Json vector_to_json(const Vector& v) {
  Json out = Json::array();
  for (Eigen::Index i = 0; i < v.size(); ++i) out.push_back(v(i));
  return out;
}

Matrix matrix_from_json(const Json& j, const std::string& field) {
  if (!j.is_array() || j.empty()) throw DataError("field '" + field + "': expected a non-empty nested array");
  const std::size_t rows = j.size();
  if (!j[0].is_array()) throw DataError("field '" + field + "[0]': expected an array");
  const std::size_t cols = j[0].size();
  Matrix m(static_cast<Eigen::Index>(rows), static_cast<Eigen::Index>(cols));
  for (std::size_t i = 0; i < rows; ++i) {
    const std::string row_name = field + "[" + std::to_string(i) + "]";
    if (!j[i].is_array()) throw DataError("field '" + row_name + "': expected an array");
    if (j[i].size() != cols) {
      throw DataError("field '" + row_name + "': expected " + std::to_string(cols) + " entries, got " +
                      std::to_string(j[i].size()));
    }
    for (std::size_t k = 0; k < cols; ++k) {
      m(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(k)) =
          number_at(j[i][k], row_name + "[" + std::to_string(k) + "]");
    }
  }
  return m;
}

Vector vector_from_json(const Json& j, const std::string& field) {
  if (!j.is_array()) throw DataError("field '" + field + "': expected an array");
  Vector v(static_cast<Eigen::Index>(j.size()));
  for (std::size_t i = 0; i < j.size(); ++i) {
    v(static_cast<Eigen::Index>(i)) = number_at(j[i], field + "[" + std::to_string(i) + "]");
  }
  return v;
}

Json state_to_json(const GaussianState& s) {
  Json j;
  j["modes"] = s.modes();
  j["cm"] = matrix_to_json(s.cm());
  j["disp"] = vector_to_json(s.disp());
  return j;
}

GaussianState state_from_json(const Json& j) {
  if (!j.is_object()) throw DataError("state document: expected an object");
  for (const char* key : {"modes", "cm", "disp"}) require_member(j, key);
  const std::size_t n = size_from_json(j["modes"], "modes");
  Matrix cm = matrix_from_json(j["cm"], "cm");
  Vector disp = vector_from_json(j["disp"], "disp");
  const Eigen::Index dim = static_cast<Eigen::Index>(2 * n);
  if (n == 0) throw DataError("field 'modes': must be positive");
  if (cm.rows() != dim || cm.cols() != dim) {
    throw DimensionError("field 'cm': expected " + std::to_string(dim) + "x" + std::to_string(dim) + ", got " +
                         std::to_string(cm.rows()) + "x" + std::to_string(cm.cols()));
  }
  if (disp.size() != dim) {
    throw DimensionError("field 'disp': expected " + std::to_string(dim) + " entries, got " +
                         std::to_string(disp.size()));
  }
  return GaussianState(std::move(cm), std::move(disp));
}

std::string write_state_document(const GaussianState& s) { return write_document(state_to_json(s)); }

GaussianState parse_state_document(const std::string& text) { return state_from_json(parse_document(text)); }

Json map_to_json(const MapDocument& m) {
  Json j;
  j["n_in"] = m.n_in;
  j["n_out"] = m.n_out;
  if (m.map) {
    j["gamma"] = matrix_to_json(m.map->gamma());
    j["d"] = vector_to_json(m.map->d());
  }
  if (m.channel) {
    Json ch;
    ch["m"] = matrix_to_json(m.channel->m());
    ch["n"] = matrix_to_json(m.channel->n());
    j["channel"] = std::move(ch);
  }
  return j;
}

MapDocument map_from_json(const Json& j) {
  if (!j.is_object()) throw DataError("map document: expected an object");
  require_member(j, "n_in");
  require_member(j, "n_out");
  MapDocument doc;
  doc.n_in = size_from_json(j["n_in"], "n_in");
  doc.n_out = size_from_json(j["n_out"], "n_out");
  if (doc.n_in == 0 || doc.n_out == 0) throw DataError("fields 'n_in' and 'n_out' must be positive");
  const bool has_gamma = j.contains("gamma") || j.contains("d");
  const bool has_channel = j.contains("channel");
  if (has_gamma == has_channel) throw DataError("map document: exactly one of (gamma, d) or channel is required");
  if (has_gamma) {
    require_member(j, "gamma");
    require_member(j, "d");
    Matrix gamma = matrix_from_json(j["gamma"], "gamma");
    Vector d = vector_from_json(j["d"], "d");
    const Eigen::Index dim = static_cast<Eigen::Index>(2 * (doc.n_in + doc.n_out));
    if (gamma.rows() != dim || gamma.cols() != dim) {
      throw DimensionError("field 'gamma': expected " + std::to_string(dim) + "x" + std::to_string(dim));
    }
    if (d.size() != dim) throw DimensionError("field 'd': expected " + std::to_string(dim) + " entries");
    doc.map.emplace(doc.n_out, doc.n_in, std::move(gamma), std::move(d));
  } else {
    const Json& ch = j["channel"];
    if (!ch.is_object()) throw DataError("field 'channel': expected an object");
    require_member(ch, "m");
    require_member(ch, "n");
    if (doc.n_in != doc.n_out) throw DimensionError("channel documents need n_in == n_out");
    Matrix m = matrix_from_json(ch["m"], "channel.m");
    Matrix n = matrix_from_json(ch["n"], "channel.n");
    const Eigen::Index dim = static_cast<Eigen::Index>(2 * doc.n_in);
    if (m.rows() != dim || m.cols() != dim) throw DimensionError("field 'channel.m': wrong dimensions");
    if (n.rows() != dim || n.cols() != dim) throw DimensionError("field 'channel.n': wrong dimensions");
    doc.channel.emplace(std::move(m), std::move(n));
  }
  return doc;
}

std::string write_map_document(const MapDocument& m) { return write_document(map_to_json(m)); }

MapDocument parse_map_document(const std::string& text) { return map_from_json(parse_document(text)); }

Json nogo_report_to_json(const NogoReport& report, const std::string& command, double wall_seconds) {
  const NogoConfig& c = report.config;
  Json j;
  j["command"] = command;
  j["seed"] = c.seed;
  Json cfg;
  cfg["trials"] = c.trials;
  cfg["modes_a"] = c.modes_a;
  cfg["modes_b"] = c.modes_b;
  cfg["mixedness"] = c.mixedness;
  cfg["noise_scale"] = c.noise_scale;
  cfg["tol"] = c.tol;
  j["config"] = std::move(cfg);
  Json summary;
  summary["pass"] = report.pass;
  summary["min_margin"] = report.min_margin;
  summary["violations"] = report.violations;
  summary["indeterminate"] = report.indeterminate;
  summary["determinate"] = report.trials.size() - report.indeterminate;
  Json hist = Json::array();
  for (const auto& bin : report.histogram) {
    Json b;
    b["label"] = bin.label;
    b["lo"] = bin.lo;
    b["hi"] = bin.hi;
    b["count"] = bin.count;
    hist.push_back(std::move(b));
  }
  summary["margin_histogram"] = std::move(hist);
  j["summary"] = std::move(summary);
  Json trials = Json::array();
  for (const auto& t : report.trials) {
    Json r;
    r["index"] = t.index;
    r["input"] = t.input_kind;
    r["map"] = t.map_kind;
    r["modes_in"] = Json::array({t.in_a, t.in_b});
    r["modes_out"] = Json::array({t.out_a, t.out_b});
    r["v_before"] = t.v_before;
    r["v_after"] = t.v_after;
    r["margin"] = t.margin;
    r["indeterminate"] = t.indeterminate;
    r["method_before"] = t.method_before;
    r["method_after"] = t.method_after;
    trials.push_back(std::move(r));
  }
  j["trials"] = std::move(trials);
  j[kWallTimeField] = wall_seconds;
  return j;
}

std::string report_body(const std::string& document) {
  const std::string needle = std::string("\"") + kWallTimeField + "\"";
  std::istringstream in(document);
  std::ostringstream out;
  std::string line;
  while (std::getline(in, line)) {
    if (line.find(needle) != std::string::npos) continue;
    out << line << "\n";
  }
  return out.str();
}

}  // namespace gausskit
