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
// File formats for states, tableaus, tensors, and sweep tables. Every
// writer embeds a provenance record (tool, version, command, seed, program
// hash) so an output file documents how to regenerate itself; no
// timestamps, so repeated runs are byte-identical.
#ifndef TAPESTRY_IO_HPP_
#define TAPESTRY_IO_HPP_

#include <cstdint>
#include <string>
#include <vector>

#include "tapestry/common.hpp"
#include "tapestry/density.hpp"
#include "tapestry/statevector.hpp"
#include "tapestry/tableau.hpp"
#include "tapestry/tensor.hpp"

namespace tapestry {

inline constexpr const char* kToolName = "tapestry";
inline constexpr const char* kToolVersion = "1.0.0";

// FNV-1a over the bytes of the string; used to fingerprint program files.
std::uint64_t fnv1a64(const std::string& bytes);
std::string hash_hex(std::uint64_t hash);

struct Provenance {
  std::string command;           // full command line, reconstructable
  std::uint64_t seed = 0;
  std::string program_hash;      // hex FNV-1a of the program JSON, or empty
};

// Whole-file helpers. Throw ValidationError when the path cannot be
// opened or read.
std::string read_file_bytes(const std::string& path);
void write_file_bytes(const std::string& path, const std::string& data);

// Statevector export: JSON {n, ordering:"little", provenance,
// amplitudes:[re,im,...]} or a binary variant carrying the same header as
// a single JSON line followed by raw interleaved doubles.
void write_state_json(const std::string& path, const PureState& state,
                      const Provenance& prov);
void write_state_binary(const std::string& path, const PureState& state,
                        const Provenance& prov);

struct StateFile {
  int n = 0;
  std::vector<cplx> amplitudes;
};
// Reads either the JSON or the binary layout, detected from the content.
StateFile read_state_file(const std::string& path);

// Tableau export: JSON {n, provenance, generators:["+XZI...", ...]}.
void write_tableau_json(const std::string& path, const Tableau& tableau,
                        const Provenance& prov);

struct TableauFile {
  int n = 0;
  std::vector<std::string> generators;
};
TableauFile read_tableau_file(const std::string& path);

// Step-tensor export: single JSON header line {p, D_v, d_Q, layout,
// provenance} then '\n' then raw interleaved re/im doubles in the flat
// (i..., a, b, c, d) row-major order.
void write_tensor_binary(const std::string& path, const StepTensor& tensor,
                         const Provenance& prov);
StepTensor read_tensor_file(const std::string& path);

// Density-matrix export, binary only: JSON header line {n,
// layout:"row-major", provenance} then raw interleaved doubles.
void write_density_binary(const std::string& path, const MixedState& rho,
                          const Provenance& prov);

// Formats one double the way every table in this project does: shortest
// %.17g form, '.' decimal separator regardless of locale.
std::string format_double(double value);

// Accumulates a CSV table with '#'-prefixed provenance comments, a header
// row, and preformatted cells; '\n' line endings unconditionally.
class CsvBuilder {
 public:
  explicit CsvBuilder(const Provenance& prov);

  void set_header(const std::vector<std::string>& columns);
  void add_row(const std::vector<std::string>& cells);
  std::string str() const;

 private:
  std::string out_;
  std::size_t columns_ = 0;
};

}  // namespace tapestry

#endif  // TAPESTRY_IO_HPP_
