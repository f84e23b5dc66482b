// Copyright 2026 The stabchan Authors
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

#ifndef STABCHAN_JSON_IO_HPP_
#define STABCHAN_JSON_IO_HPP_

#include <filesystem>
#include <string>
#include <utility>

#include "json.hpp"
#include "stabchan/channel.hpp"
#include "stabchan/qmat.hpp"
#include "stabchan/scattering.hpp"
#include "stabchan/sdpcert.hpp"
#include "stabchan/stabilizer.hpp"

namespace stabchan {

using Json = nlohmann::json;

// Matrix: {"rows": r, "cols": c, "data": [[re, im], ...]} in row-major order.
// All parsers throw InvalidInput with a path-qualified message.
Json matrix_to_json(const ComplexMatrix& m);
ComplexMatrix matrix_from_json(const Json& j);

// {"choi": <matrix>, "d_out": n, "d_in": m}
Json channel_to_json(const ChoiMatrix& c);
ChoiMatrix channel_from_json(const Json& j);

// {"kraus": [<matrix>, ...]}
Json kraus_to_json(const KrausSet& k);
KrausSet kraus_from_json(const Json& j);

// {"sigma": <matrix>, "B": <matrix>}
Json family_to_json(const FamilyChannel& f);
FamilyChannel family_from_json(const Json& j);

// {"S": <matrix>, "rho_X": <matrix>, "d_Y": n}
Json collision_to_json(const CollisionSpec& s);
CollisionSpec collision_from_json(const Json& j);

Json certificate_to_json(const CertificateReport& r);
Json membership_to_json(const FamilyMembership& m);

// CSV with header n,p_n,weight_B,dist_to_sigma; numbers in shortest
// round-trip form.
std::string trace_to_csv(const IterationTrace& t);
// Full per-step states plus the summary flags.
Json trace_to_json(const IterationTrace& t);

// Shortest decimal string that parses back to exactly `x`.
std::string format_double(double x);

Json read_json_file(const std::filesystem::path& path);
void write_text_file(const std::filesystem::path& path, const std::string& text);

}  // namespace stabchan

#endif  // STABCHAN_JSON_IO_HPP_
