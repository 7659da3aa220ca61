// Copyright 2026 The lqgsim Authors
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

#ifndef LQG_SNAPSHOT_HPP
#define LQG_SNAPSHOT_HPP

#include <iosfwd>
#include <string>

#include "lqg/grids.hpp"

namespace lqg {

struct Measure;  // chaos.hpp

// "LQGF" container: magic, little-endian u32 format version, payload kind
// (field or measure), geometry descriptor, then row-major f64 data. The same
// container carries fields and measures, distinguished by the kind flag.
// Round-trips are bit-identical.

void write_field(std::ostream& os, const Field& field);
Field read_field(std::istream& is);
void write_field_file(const std::string& path, const Field& field);
Field read_field_file(const std::string& path);

void write_measure(std::ostream& os, const Measure& measure);
Measure read_measure(std::istream& is);
void write_measure_file(const std::string& path, const Measure& measure);
Measure read_measure_file(const std::string& path);

}  // namespace lqg

#endif  // LQG_SNAPSHOT_HPP
