// Copyright (c) 2026 the cpnorm authors
// SPDX-License-Identifier: Apache-2.0

#include "cpnorm/channel_json.hpp"

#include <fstream>
#include <stdexcept>

namespace cpnorm {

using nlohmann::json;

namespace {

ChannelFamily parse_family(const std::string& text) {
  if (text == "identity") return ChannelFamily::identity;
  if (text == "depolarizing") return ChannelFamily::depolarizing;
  if (text == "amplitude_damping") return ChannelFamily::amplitude_damping;
  if (text == "random_stinespring") return ChannelFamily::random_stinespring;
  if (text == "transpose") return ChannelFamily::transpose;
  if (text == "explicit") return ChannelFamily::explicit_kraus;
  throw std::invalid_argument("channel spec: unknown family '" + text + "'");
}

}  // namespace

ComplexMatrix matrix_from_json(const json& j) {
  if (!j.is_array() || j.empty()) {
    throw std::invalid_argument("matrix json: expected non-empty array of rows");
  }
  const std::size_t rows = j.size();
  const std::size_t cols = j.at(0).size();
  ComplexMatrix m(rows, cols);
  for (std::size_t r = 0; r < rows; ++r) {
    const json& row = j.at(r);
    if (!row.is_array() || row.size() != cols) {
      throw std::invalid_argument("matrix json: ragged rows");
    }
    for (std::size_t c = 0; c < cols; ++c) {
      const json& entry = row.at(c);
      if (!entry.is_array() || entry.size() != 2) {
        throw std::invalid_argument("matrix json: entries must be [re, im]");
      }
      m(r, c) = cplx{entry.at(0).get<double>(), entry.at(1).get<double>()};
    }
  }
  if (!m.all_finite()) {
    throw std::invalid_argument("matrix json: non-finite entries");
  }
  return m;
}

json matrix_to_json(const ComplexMatrix& m) {
  json rows = json::array();
  for (std::size_t r = 0; r < m.rows(); ++r) {
    json row = json::array();
    for (std::size_t c = 0; c < m.cols(); ++c) {
      row.push_back({m(r, c).real(), m(r, c).imag()});
    }
    rows.push_back(std::move(row));
  }
  return rows;
}

ChannelSpec channel_spec_from_json(const json& j) {
  if (!j.is_object()) {
    throw std::invalid_argument("channel spec: expected a JSON object");
  }
  ChannelSpec spec;
  spec.name = j.value("name", std::string("channel"));
  if (j.contains("kraus")) {
    spec.family = ChannelFamily::explicit_kraus;
    const json& list = j.at("kraus");
    if (!list.is_array() || list.empty()) {
      throw std::invalid_argument("channel spec: kraus must be a non-empty array");
    }
    for (const json& op : list) {
      spec.kraus.push_back(matrix_from_json(op));
    }
    spec.d_out = spec.kraus.front().rows();
    spec.d_in = spec.kraus.front().cols();
    for (const ComplexMatrix& op : spec.kraus) {
      if (op.rows() != spec.d_out || op.cols() != spec.d_in) {
        throw std::invalid_argument("channel spec: inconsistent kraus dims");
      }
    }
    return spec;
  }
  if (!j.contains("family")) {
    throw std::invalid_argument("channel spec: need 'family' or 'kraus'");
  }
  spec.family = parse_family(j.at("family").get<std::string>());
  if (j.contains("params")) {
    for (const auto& [key, value] : j.at("params").items()) {
      if (!value.is_number()) {
        throw std::invalid_argument("channel spec: params must be numbers");
      }
      spec.params[key] = value.get<double>();
    }
  }
  if (spec.params.count("d")) {
    spec.d_in = static_cast<std::size_t>(spec.params.at("d"));
  }
  if (spec.params.count("d_in")) {
    spec.d_in = static_cast<std::size_t>(spec.params.at("d_in"));
  }
  if (spec.params.count("d_out")) {
    spec.d_out = static_cast<std::size_t>(spec.params.at("d_out"));
  }
  return spec;
}

ChannelSpec load_channel_spec(const std::string& path) {
  std::ifstream in(path);
  if (!in) {
    throw std::invalid_argument("cannot open channel spec file: " + path);
  }
  json j;
  try {
    in >> j;
  } catch (const json::parse_error& e) {
    throw std::invalid_argument("channel spec parse error in " + path + ": " +
                                e.what());
  }
  return channel_spec_from_json(j);
}

json channel_spec_to_json(const ChannelSpec& spec) {
  json j;
  j["name"] = spec.name;
  j["family"] = family_name(spec.family);
  if (spec.family == ChannelFamily::explicit_kraus) {
    json list = json::array();
    for (const ComplexMatrix& op : spec.kraus) list.push_back(matrix_to_json(op));
    j["kraus"] = std::move(list);
  } else {
    json params = json::object();
    for (const auto& [key, value] : spec.params) params[key] = value;
    j["params"] = std::move(params);
  }
  j["d_in"] = spec.d_in;
  j["d_out"] = spec.d_out;
  return j;
}

}  // namespace cpnorm
