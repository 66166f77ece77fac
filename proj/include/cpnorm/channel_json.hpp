// Copyright (c) 2026 the cpnorm authors
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <string>

#include <json.hpp>

#include "cpnorm/channel.hpp"

namespace cpnorm {

// Channel-spec file format: an object with either
//   {"name": ..., "family": ..., "params": {...}}
// or an explicit Kraus list
//   {"name": ..., "kraus": [[[[re, im], ...], ...], ...]}
// where each Kraus operator is an array of rows of [re, im] pairs. All
// operators must share dimensions; they are validated on load.
ChannelSpec channel_spec_from_json(const nlohmann::json& j);
ChannelSpec load_channel_spec(const std::string& path);

nlohmann::json channel_spec_to_json(const ChannelSpec& spec);

nlohmann::json matrix_to_json(const ComplexMatrix& m);  // rows of [re, im]
ComplexMatrix matrix_from_json(const nlohmann::json& j);

}  // namespace cpnorm
