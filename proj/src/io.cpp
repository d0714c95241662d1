/* Copyright 2026 The tapestry authors. All Rights Reserved.

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
#include "tapestry/io.hpp"

#include <cstdio>
#include <cstring>
#include <fstream>

#include "json.hpp"

namespace tapestry {
namespace {

using ordered_json = nlohmann::ordered_json;

ordered_json provenance_json(const Provenance& prov) {
  ordered_json j;
  j["tool"] = kToolName;
  j["version"] = kToolVersion;
  j["command"] = prov.command;
  j["seed"] = prov.seed;
  j["program_hash"] = prov.program_hash;
  return j;
}

std::string doubles_to_bytes(const std::vector<cplx>& values) {
  std::string bytes(values.size() * 2 * sizeof(double), '\0');
  char* dst = bytes.data();
  for (const cplx& v : values) {
    const double re = v.real();
    const double im = v.imag();
    std::memcpy(dst, &re, sizeof(double));
    dst += sizeof(double);
    std::memcpy(dst, &im, sizeof(double));
    dst += sizeof(double);
  }
  return bytes;
}

std::vector<cplx> bytes_to_doubles(const std::string& bytes,
                                   std::size_t offset, std::size_t count) {
  if (bytes.size() - offset != count * 2 * sizeof(double)) {
    throw ValidationError("binary payload size does not match the header");
  }
  std::vector<cplx> values(count);
  const char* src = bytes.data() + offset;
  for (std::size_t i = 0; i < count; ++i) {
    double re = 0.0, im = 0.0;
    std::memcpy(&re, src, sizeof(double));
    src += sizeof(double);
    std::memcpy(&im, src, sizeof(double));
    src += sizeof(double);
    values[i] = cplx(re, im);
  }
  return values;
}

// Splits a binary file into its single-line JSON header and the payload
// that follows the first newline.
ordered_json parse_binary_header(const std::string& bytes,
                                 std::size_t* payload_offset) {
  const std::size_t newline = bytes.find('\n');
  if (newline == std::string::npos) {
    throw ValidationError("missing binary header line");
  }
  *payload_offset = newline + 1;
  try {
    return ordered_json::parse(bytes.substr(0, newline));
  } catch (const ordered_json::parse_error& e) {
    throw ValidationError(std::string("bad binary header: ") + e.what());
  }
}

}  // namespace

std::uint64_t fnv1a64(const std::string& bytes) {
  std::uint64_t hash = 14695981039346656037ULL;
  for (unsigned char c : bytes) {
    hash ^= c;
    hash *= 1099511628211ULL;
  }
  return hash;
}

std::string hash_hex(std::uint64_t hash) {
  char buf[17];
  std::snprintf(buf, sizeof(buf), "%016llx",
                static_cast<unsigned long long>(hash));
  return std::string(buf);
}

std::string read_file_bytes(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ValidationError("cannot open " + path);
  std::string data((std::istreambuf_iterator<char>(in)),
                   std::istreambuf_iterator<char>());
  if (in.bad()) throw ValidationError("cannot read " + path);
  return data;
}

void write_file_bytes(const std::string& path, const std::string& data) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw ValidationError("cannot open " + path + " for writing");
  out.write(data.data(), static_cast<std::streamsize>(data.size()));
  if (!out) throw ValidationError("cannot write " + path);
}

void write_state_json(const std::string& path, const PureState& state,
                      const Provenance& prov) {
  ordered_json j;
  j["n"] = state.n();
  j["ordering"] = "little";
  j["provenance"] = provenance_json(prov);
  std::vector<double> flat;
  flat.reserve(2 * state.size());
  for (const cplx& a : state.amplitudes()) {
    flat.push_back(a.real());
    flat.push_back(a.imag());
  }
  j["amplitudes"] = flat;
  write_file_bytes(path, j.dump(2) + "\n");
}

void write_state_binary(const std::string& path, const PureState& state,
                        const Provenance& prov) {
  ordered_json header;
  header["n"] = state.n();
  header["ordering"] = "little";
  header["format"] = "binary";
  header["provenance"] = provenance_json(prov);
  write_file_bytes(path,
                   header.dump() + "\n" + doubles_to_bytes(state.amplitudes()));
}

StateFile read_state_file(const std::string& path) {
  const std::string bytes = read_file_bytes(path);
  StateFile file;

  // The JSON layout parses as a whole; anything else must be the binary
  // layout with a one-line header.
  ordered_json j = ordered_json::parse(bytes, nullptr, false);
  if (!j.is_discarded()) {
    if (!j.contains("n") || !j.contains("amplitudes")) {
      throw ValidationError("state file lacks n or amplitudes");
    }
    file.n = j.at("n").get<int>();
    if (file.n < 0 || file.n > 40) throw ValidationError("bad state file n");
    const auto flat = j.at("amplitudes").get<std::vector<double>>();
    if (flat.size() != (std::size_t{2} << file.n)) {
      throw ValidationError("amplitude count does not match n");
    }
    file.amplitudes.resize(flat.size() / 2);
    for (std::size_t i = 0; i < file.amplitudes.size(); ++i) {
      file.amplitudes[i] = cplx(flat[2 * i], flat[2 * i + 1]);
    }
    return file;
  }

  std::size_t offset = 0;
  ordered_json header = parse_binary_header(bytes, &offset);
  file.n = header.at("n").get<int>();
  if (file.n < 0 || file.n > 40) throw ValidationError("bad state header n");
  file.amplitudes =
      bytes_to_doubles(bytes, offset, std::size_t{1} << file.n);
  return file;
}

void write_tableau_json(const std::string& path, const Tableau& tableau,
                        const Provenance& prov) {
  ordered_json j;
  j["n"] = tableau.n();
  j["provenance"] = provenance_json(prov);
  j["generators"] = tableau.generator_strings();
  write_file_bytes(path, j.dump(2) + "\n");
}

TableauFile read_tableau_file(const std::string& path) {
  ordered_json j;
  try {
    j = ordered_json::parse(read_file_bytes(path));
  } catch (const ordered_json::parse_error& e) {
    throw ValidationError(std::string("bad tableau file: ") + e.what());
  }
  TableauFile file;
  file.n = j.at("n").get<int>();
  file.generators = j.at("generators").get<std::vector<std::string>>();
  if (file.n < 1 || file.generators.size() != static_cast<std::size_t>(file.n)) {
    throw ValidationError("tableau file needs exactly n generators");
  }
  return file;
}

void write_tensor_binary(const std::string& path, const StepTensor& tensor,
                         const Provenance& prov) {
  ordered_json header;
  header["p"] = tensor.p;
  header["D_v"] = tensor.D_v;
  header["d_Q"] = tensor.d_Q;
  header["layout"] = "row-major (i...,a,b,c,d)";
  header["provenance"] = provenance_json(prov);
  write_file_bytes(path, header.dump() + "\n" + doubles_to_bytes(tensor.data));
}

StepTensor read_tensor_file(const std::string& path) {
  const std::string bytes = read_file_bytes(path);
  std::size_t offset = 0;
  ordered_json header = parse_binary_header(bytes, &offset);
  const int p = header.at("p").get<int>();
  if (p < 1 || p > 8) throw ValidationError("bad tensor header p");
  StepTensor tensor = StepTensor::zeros(p);
  tensor.data = bytes_to_doubles(bytes, offset, tensor.size());
  return tensor;
}

void write_density_binary(const std::string& path, const MixedState& rho,
                          const Provenance& prov) {
  ordered_json header;
  header["n"] = rho.n();
  header["layout"] = "row-major";
  header["provenance"] = provenance_json(prov);
  write_file_bytes(path, header.dump() + "\n" + doubles_to_bytes(rho.data()));
}

std::string format_double(double value) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.17g", value);
  for (char& c : buf) {
    if (c == ',') c = '.';
    if (c == '\0') break;
  }
  return std::string(buf);
}

CsvBuilder::CsvBuilder(const Provenance& prov) {
  out_ += "# tool: ";
  out_ += kToolName;
  out_ += " ";
  out_ += kToolVersion;
  out_ += "\n# command: " + prov.command + "\n";
  out_ += "# seed: " + std::to_string(prov.seed) + "\n";
  if (!prov.program_hash.empty()) {
    out_ += "# program_hash: " + prov.program_hash + "\n";
  }
}

void CsvBuilder::set_header(const std::vector<std::string>& columns) {
  columns_ = columns.size();
  for (std::size_t i = 0; i < columns.size(); ++i) {
    if (i) out_ += ",";
    out_ += columns[i];
  }
  out_ += "\n";
}

void CsvBuilder::add_row(const std::vector<std::string>& cells) {
  if (cells.size() != columns_) {
    throw ValidationError("CSV row width does not match the header");
  }
  for (std::size_t i = 0; i < cells.size(); ++i) {
    if (i) out_ += ",";
    out_ += cells[i];
  }
  out_ += "\n";
}

std::string CsvBuilder::str() const { return out_; }

}  // namespace tapestry
