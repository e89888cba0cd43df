/* Copyright 2026 The qfid Authors. All Rights Reserved.

Licensed under the Apache License, Version 2.0 (the "License");
you may not use this file except in compliance with the License.
You may obtain a copy of the License at

    http://www.apache.org/licenses/LICENSE-2.0

Unless required by applicable law or agreed to in writing, software
distributed under the License is distributed on an "AS IS" BASIS,
WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
See the License for the specific language governing permissions and
limitations under the License.
==============================================================================*/

#ifndef QFID_CLI_IO_HPP_
#define QFID_CLI_IO_HPP_

#include <filesystem>
#include <string>
#include <string_view>

#include <json.hpp>

#include "qfid/channels.hpp"
#include "qfid/error.hpp"
#include "qfid/fidelity.hpp"
#include "qfid/haar_mc.hpp"
#include "qfid/matrix.hpp"

namespace qfid::cli {

using nlohmann::json;

// Unreadable or malformed input file.
class InputError : public ValidationError {
 public:
  using ValidationError::ValidationError;
};

// Matrix file layout: {"rows": R, "cols": C, "data": [[re, im], ...]} with
// data row-major, R*C pairs.
json matrix_to_json(const ComplexMatrix& m);
ComplexMatrix matrix_from_json(const json& j);

// Channel file layout: {"dim": n, "kraus": [matrix, ...]}.
json channel_to_json(const KrausChannel& channel);
KrausChannel channel_from_json(const json& j);

std::string read_file(const std::filesystem::path& path);
json parse_document(std::string_view text, std::string_view origin);

std::string sha256_hex(std::string_view bytes);

json to_json(const McEstimate& mc);
json to_json(const FidelityReport& report);

/// Canonical text form: sorted keys, two-space indent, shortest round-trip
/// doubles, trailing newline.
std::string dump_document(const json& doc);

/// Shortest decimal string that parses back to the same double.
std::string format_double(double v);

}  // namespace qfid::cli

#endif  // QFID_CLI_IO_HPP_
