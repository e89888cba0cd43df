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

#include "qfid/cli/io.hpp"

#include <array>
#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>

#include <openssl/evp.h>

namespace qfid::cli {

namespace {

std::size_t require_positive_int(const json& j, const char* key, std::string_view what) {
  if (!j.contains(key) || !j.at(key).is_number_integer() || j.at(key).get<long long>() <= 0) {
    throw InputError(std::string(what) + ": \"" + key + "\" must be a positive integer");
  }
  return j.at(key).get<std::size_t>();
}

}  // namespace

json matrix_to_json(const ComplexMatrix& m) {
  json data = json::array();
  for (const Complex& z : m.entries()) data.push_back(json::array({z.real(), z.imag()}));
  return json{{"rows", m.rows()}, {"cols", m.cols()}, {"data", std::move(data)}};
}

ComplexMatrix matrix_from_json(const json& j) {
  if (!j.is_object()) throw InputError("matrix: expected an object with rows, cols, data");
  const std::size_t rows = require_positive_int(j, "rows", "matrix");
  const std::size_t cols = require_positive_int(j, "cols", "matrix");
  if (!j.contains("data") || !j.at("data").is_array()) {
    throw InputError("matrix: \"data\" must be an array of [re, im] pairs");
  }
  const json& data = j.at("data");
  if (data.size() != rows * cols) {
    throw InputError("matrix: data length " + std::to_string(data.size()) + " != rows*cols = " +
                     std::to_string(rows * cols));
  }
  std::vector<Complex> entries;
  entries.reserve(data.size());
  for (const json& pair : data) {
    if (!pair.is_array() || pair.size() != 2 || !pair[0].is_number() || !pair[1].is_number()) {
      throw InputError("matrix: every data entry must be a [re, im] pair of numbers");
    }
    const double re = pair[0].get<double>();
    const double im = pair[1].get<double>();
    if (!std::isfinite(re) || !std::isfinite(im)) {
      throw InputError("matrix: entries must be finite");
    }
    entries.emplace_back(re, im);
  }
  return {rows, cols, std::move(entries)};
}

json channel_to_json(const KrausChannel& channel) {
  json kraus = json::array();
  for (const ComplexMatrix& g : channel.kraus()) kraus.push_back(matrix_to_json(g));
  return json{{"dim", channel.dim()}, {"kraus", std::move(kraus)}};
}

KrausChannel channel_from_json(const json& j) {
  if (!j.is_object()) throw InputError("channel: expected an object with dim, kraus");
  const std::size_t dim = require_positive_int(j, "dim", "channel");
  if (!j.contains("kraus") || !j.at("kraus").is_array() || j.at("kraus").empty()) {
    throw InputError("channel: \"kraus\" must be a non-empty array of matrices");
  }
  std::vector<ComplexMatrix> kraus;
  for (const json& m : j.at("kraus")) {
    ComplexMatrix g = matrix_from_json(m);
    if (g.rows() != dim || g.cols() != dim) {
      throw InputError("channel: Kraus operator " + g.shape() + " does not match dim " +
                       std::to_string(dim));
    }
    kraus.push_back(std::move(g));
  }
  return make_channel(std::move(kraus));
}

std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InputError("cannot open " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

json parse_document(std::string_view text, std::string_view origin) {
  try {
    return json::parse(text);
  } catch (const json::parse_error& e) {
    throw InputError(std::string(origin) + ": " + e.what());
  }
}

std::string sha256_hex(std::string_view bytes) {
  std::array<unsigned char, EVP_MAX_MD_SIZE> digest{};
  unsigned int len = 0;
  if (EVP_Digest(bytes.data(), bytes.size(), digest.data(), &len, EVP_sha256(), nullptr) != 1) {
    throw Error("sha256 digest failed");
  }
  static constexpr char kHex[] = "0123456789abcdef";
  std::string out;
  out.reserve(2 * len);
  for (unsigned int i = 0; i < len; ++i) {
    out.push_back(kHex[digest[i] >> 4]);
    out.push_back(kHex[digest[i] & 0xF]);
  }
  return out;
}

json to_json(const McEstimate& mc) {
  return json{{"mean", mc.mean}, {"stderr", mc.std_error}, {"samples", mc.samples},
              {"seed", mc.seed}};
}

json to_json(const FidelityReport& report) {
  json j{{"kind", std::string(to_string(report.kind))},
         {"dim", report.dim},
         {"mean_fidelity", report.mean_fidelity}};
  if (report.worst_case) j["worst_case"] = *report.worst_case;
  if (report.acceptance_q) j["acceptance_q"] = *report.acceptance_q;
  if (report.conditional) j["conditional"] = *report.conditional;
  if (report.mc_crosscheck) j["mc_crosscheck"] = to_json(*report.mc_crosscheck);
  return j;
}

std::string dump_document(const json& doc) { return doc.dump(2) + "\n"; }

std::string format_double(double v) {
  std::array<char, 64> buf{};
  const auto [end, ec] = std::to_chars(buf.data(), buf.data() + buf.size(), v);
  if (ec != std::errc()) throw Error("format_double: conversion failed");
  return {buf.data(), end};
}

}  // namespace qfid::cli
