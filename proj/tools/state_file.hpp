// Copyright 2026 The rangedim Authors
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

#ifndef RANGEDIM_TOOLS_STATE_FILE_HPP
#define RANGEDIM_TOOLS_STATE_FILE_HPP

// On-disk state format, version "1":
//
//   {
//     "format_version": "1",
//     "dims": [dA, dB],
//     "matrix": [[[re, im], ...], ...]
//   }
//
// The matrix is (dA*dB) x (dA*dB), row-major over the subsystem-1-major
// composite index. Numbers are written with 17 significant digits so a
// save/load cycle reproduces every double exactly.

#include <string>

#include "rangedim/bipartite.hpp"
#include "rangedim/errors.hpp"

namespace rangedim::cli {

/// The document is unreadable or does not follow the schema.
class StateFileError : public Error {
 public:
  using Error::Error;
};

std::string format_state(const DensityOperator& rho);

/// Throws StateFileError on schema problems and ValidationError when the
/// matrix is not a valid density operator.
DensityOperator parse_state(const std::string& text);

/// Throws std::ios_base::failure when the file cannot be written.
void write_state_file(const std::string& path, const DensityOperator& rho);

/// Throws StateFileError when the file cannot be read or parsed.
DensityOperator read_state_file(const std::string& path);

}  // namespace rangedim::cli

#endif  // RANGEDIM_TOOLS_STATE_FILE_HPP
