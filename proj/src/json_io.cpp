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

#include "stabchan/json_io.hpp"

#include <array>
#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>
#include <vector>

namespace stabchan {
namespace {

const Json& field(const Json& j, const char* key, const char* what) {
  if (!j.is_object()) {
    throw InvalidInput(std::string(what) + ": expected a JSON object");
  }
  const auto it = j.find(key);
  if (it == j.end()) {
    throw InvalidInput(std::string(what) + ": missing field \"" + key + "\"");
  }
  return *it;
}

Index positive_integer(const Json& j, const char* key, const char* what) {
  const Json& v = field(j, key, what);
  if (!v.is_number_integer() || v.get<long long>() <= 0) {
    throw InvalidInput(std::string(what) + ": \"" + key +
                       "\" must be a positive integer");
  }
  return static_cast<Index>(v.get<long long>());
}

}  // namespace

std::string format_double(double x) {
  std::array<char, 64> buf{};
  const auto res = std::to_chars(buf.data(), buf.data() + buf.size(), x);
  return std::string(buf.data(), res.ptr);
}

Json matrix_to_json(const ComplexMatrix& m) {
  Json data = Json::array();
  for (Index a = 0; a < m.rows(); ++a)
    for (Index b = 0; b < m.cols(); ++b)
      data.push_back({m(a, b).real(), m(a, b).imag()});
  return Json{{"rows", m.rows()}, {"cols", m.cols()}, {"data", data}};
}

ComplexMatrix matrix_from_json(const Json& j) {
  constexpr const char* kWhat = "matrix";
  const Index rows = positive_integer(j, "rows", kWhat);
  const Index cols = positive_integer(j, "cols", kWhat);
  const Json& data = field(j, "data", kWhat);
  if (!data.is_array() ||
      static_cast<Index>(data.size()) != rows * cols) {
    throw InvalidInput("matrix: \"data\" must hold rows*cols = " +
                       std::to_string(rows * cols) + " entries, got " +
                       std::to_string(data.is_array() ? data.size() : 0));
  }
  ComplexMatrix m(rows, cols);
  for (Index k = 0; k < rows * cols; ++k) {
    const Json& e = data[static_cast<size_t>(k)];
    if (!e.is_array() || e.size() != 2 || !e[0].is_number() ||
        !e[1].is_number()) {
      throw InvalidInput("matrix: entry " + std::to_string(k) +
                         " must be a [re, im] pair of numbers");
    }
    m(k / cols, k % cols) = Complex(e[0].get<double>(), e[1].get<double>());
  }
  require_finite(m, kWhat);
  return m;
}

Json channel_to_json(const ChoiMatrix& c) {
  return Json{{"choi", matrix_to_json(c.matrix())},
              {"d_out", c.d_out()},
              {"d_in", c.d_in()}};
}

ChoiMatrix channel_from_json(const Json& j) {
  constexpr const char* kWhat = "channel";
  return ChoiMatrix(matrix_from_json(field(j, "choi", kWhat)),
                    positive_integer(j, "d_out", kWhat),
                    positive_integer(j, "d_in", kWhat));
}

Json kraus_to_json(const KrausSet& k) {
  Json ops = Json::array();
  for (const auto& op : k.operators()) ops.push_back(matrix_to_json(op));
  return Json{{"kraus", ops}};
}

KrausSet kraus_from_json(const Json& j) {
  const Json& ops = field(j, "kraus", "kraus set");
  if (!ops.is_array()) throw InvalidInput("kraus set: \"kraus\" must be an array");
  std::vector<ComplexMatrix> out;
  for (const auto& op : ops) out.push_back(matrix_from_json(op));
  return KrausSet(std::move(out));
}

Json family_to_json(const FamilyChannel& f) {
  return Json{{"sigma", matrix_to_json(f.target().sigma().matrix())},
              {"B", matrix_to_json(f.completion().matrix())}};
}

FamilyChannel family_from_json(const Json& j) {
  constexpr const char* kWhat = "family";
  return FamilyChannel(
      StabilizerTarget(DensityMatrix(matrix_from_json(field(j, "sigma", kWhat)))),
      DensityMatrix(matrix_from_json(field(j, "B", kWhat))));
}

Json collision_to_json(const CollisionSpec& s) {
  return Json{{"S", matrix_to_json(s.s())},
              {"rho_X", matrix_to_json(s.rho_x().matrix())},
              {"d_Y", s.d_y()}};
}

CollisionSpec collision_from_json(const Json& j) {
  constexpr const char* kWhat = "collision spec";
  return CollisionSpec(matrix_from_json(field(j, "S", kWhat)),
                       DensityMatrix(matrix_from_json(field(j, "rho_X", kWhat))),
                       positive_integer(j, "d_Y", kWhat));
}

Json certificate_to_json(const CertificateReport& r) {
  return Json{
      {"primal_trace", r.primal_trace},
      {"dual_value", r.dual_value},
      {"gap", r.gap},
      {"primal_feasible",
       {{"feasible", r.primal.feasible}, {"violation", r.primal.violation}}},
      {"dual_feasible",
       {{"feasible", r.dual.feasible}, {"violation", r.dual.violation}}},
      {"certified", r.certified},
      {"failure", r.failure},
  };
}

Json membership_to_json(const FamilyMembership& m) {
  Json j{{"in_family", m.member}, {"reason", m.reason}};
  j["residual"] = std::isfinite(m.residual) ? Json(m.residual) : Json(nullptr);
  j["B"] = m.completion ? matrix_to_json(m.completion->matrix()) : Json(nullptr);
  return j;
}

std::string trace_to_csv(const IterationTrace& t) {
  std::ostringstream os;
  os << "n,p_n,weight_B,dist_to_sigma\n";
  for (const auto& s : t.steps) {
    os << s.n << ',' << format_double(s.p_n) << ','
       << format_double(s.weight_B) << ',' << format_double(s.dist_to_sigma)
       << '\n';
  }
  return os.str();
}

Json trace_to_json(const IterationTrace& t) {
  Json steps = Json::array();
  for (const auto& s : t.steps) {
    steps.push_back({{"n", s.n},
                     {"p_n", s.p_n},
                     {"weight_B", s.weight_B},
                     {"dist_to_sigma", s.dist_to_sigma},
                     {"state", matrix_to_json(s.state.matrix())}});
  }
  return Json{{"q", t.q},
              {"stagnant", t.stagnant},
              {"domain_violation", t.domain_violation},
              {"steps", steps}};
}

Json read_json_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw InvalidInput("cannot open " + path.string());
  try {
    return Json::parse(in);
  } catch (const Json::parse_error& e) {
    throw InvalidInput(path.string() + ": JSON parse error: " + e.what());
  }
}

void write_text_file(const std::filesystem::path& path, const std::string& text) {
  std::ofstream out(path);
  if (!out) throw InvalidInput("cannot write " + path.string());
  out << text;
  if (!out) throw InvalidInput("failed writing " + path.string());
}

}  // namespace stabchan
