// Copyright 2026 The fdual Authors
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

#include "fdual/json_io.hpp"

#include <cstdint>
#include <map>
#include <stdexcept>
#include <utility>

#include "fdual/errors.hpp"
#include "fdual/matrix.hpp"
#include "fdual/scalar.hpp"
#include "json.hpp"

namespace fdual::io {

namespace {

using njson = nlohmann::json;

/// nlohmann::json keeps object members in a std::map, so keys serialize in
/// alphabetical order; dump(2) then fixes the bytes completely.
std::string render(const njson& j) { return j.dump(2) + "\n"; }

njson fractionJson(const mpq_class& q) {
  return njson{{"denominator", q.get_den().get_str()},
               {"numerator", q.get_num().get_str()}};
}

/// Integers that fit become JSON numbers; everything else a decimal or
/// "a/b" string (mpq_class::get_str already prints that form, reduced).
njson entryJson(const mpq_class& q) {
  if (q.get_den() == 1 && q.get_num().fits_slong_p())
    return njson(static_cast<std::int64_t>(q.get_num().get_si()));
  return njson(q.get_str());
}

njson matrixJson(const arith::RatMatrix& m) {
  njson rows = njson::array();
  for (std::size_t i = 0; i < m.rows(); ++i) {
    njson row = njson::array();
    for (std::size_t j = 0; j < m.cols(); ++j) row.push_back(entryJson(m.at(i, j)));
    rows.push_back(std::move(row));
  }
  return rows;
}

njson polynomialJson(const chern::GradedPolynomial& p) {
  // Strip variables that occur in no monomial, keeping table order for the
  // rest; exponent vectors are restricted to the surviving positions.
  std::vector<std::size_t> used;
  for (std::size_t i = 0; i < p.table().size(); ++i)
    for (const auto& [e, c] : p.terms())
      if (e[i] > 0) {
        used.push_back(i);
        break;
      }

  njson variables = njson::array();
  for (const std::size_t i : used)
    variables.push_back(njson{{"name", p.table().var(i).name},
                              {"weight", p.table().var(i).weight}});

  njson monomials = njson::array();
  for (const auto& [e, c] : p.terms()) {
    njson exps = njson::array();
    for (const std::size_t i : used) exps.push_back(e[i]);
    monomials.push_back(njson{{"denominator", c.get_den().get_str()},
                              {"exponents", std::move(exps)},
                              {"numerator", c.get_num().get_str()}});
  }
  return njson{{"monomials", std::move(monomials)},
               {"variables", std::move(variables)}};
}

njson reportJson(const ident::IdentityReport& r) {
  njson params = njson::object();
  for (const auto& [name, value] : r.parameters) params[name] = value;
  return njson{{"identity", r.identityName},
               {"parameters", std::move(params)},
               {"pass", r.pass},
               {"residual", polynomialJson(r.residual)}};
}

njson torsionJson(const sl2::PieceShape& shape) {
  // Run-length encode the sorted factor list as [p, k, count] triples.
  njson out = njson::array();
  std::size_t i = 0;
  while (i < shape.torsion.size()) {
    std::size_t j = i;
    while (j < shape.torsion.size() && shape.torsion[j] == shape.torsion[i]) ++j;
    out.push_back(njson::array({shape.torsion[i].prime,
                                shape.torsion[i].exponent,
                                static_cast<std::uint64_t>(j - i)}));
    i = j;
  }
  return out;
}

njson mapsJson(const std::map<int, arith::RatMatrix>& maps) {
  njson out = njson::array();
  for (const auto& [weight, matrix] : maps)
    out.push_back(njson{{"matrix", matrixJson(matrix)}, {"weight", weight}});
  return out;
}

// ---------------------------------------------------------------------------
// Parsing helpers.  Every schema violation becomes a DomainError with a
// pointer to the offending key, so CLI users get actionable messages.

[[noreturn]] void fail(const std::string& what) {
  throw DomainError("module JSON: " + what);
}

const njson& member(const njson& j, const char* key) {
  const auto it = j.find(key);
  if (it == j.end()) fail(std::string("missing key \"") + key + "\"");
  return *it;
}

std::int64_t asInt(const njson& j, const char* what) {
  if (!j.is_number_integer()) fail(std::string(what) + " must be an integer");
  return j.get<std::int64_t>();
}

mpq_class parseEntry(const njson& j) {
  if (j.is_number_integer()) return mpq_class(static_cast<long>(j.get<std::int64_t>()));
  if (j.is_string()) {
    mpq_class q;
    try {
      q = mpq_class(j.get<std::string>());
    } catch (const std::invalid_argument&) {
      fail("matrix entry \"" + j.get<std::string>() + "\" is not an integer or \"a/b\" fraction");
    }
    if (q.get_den() == 0) fail("matrix entry with zero denominator");
    q.canonicalize();
    return q;
  }
  fail("matrix entries must be integers or \"a/b\" strings");
}

/// Parse a matrix with known expected dimensions; an empty array stands for
/// any matrix without entries (zero rows or zero columns).
arith::RatMatrix parseMatrix(const njson& j, std::size_t rows, std::size_t cols,
                             int weight) {
  const std::string where = "matrix at weight " + std::to_string(weight);
  if (!j.is_array()) fail(where + " must be an array of rows");
  if (j.empty()) return arith::RatMatrix(rows, cols);
  if (j.size() != rows || rows == 0)
    fail(where + " has " + std::to_string(j.size()) + " rows, expected " +
         std::to_string(rows));
  arith::RatMatrix m(rows, cols);
  for (std::size_t i = 0; i < rows; ++i) {
    const njson& row = j[i];
    if (!row.is_array() || row.size() != cols)
      fail(where + ", row " + std::to_string(i) + ": expected " +
           std::to_string(cols) + " entries");
    for (std::size_t c = 0; c < cols; ++c) m.set(i, c, parseEntry(row[c]));
  }
  return m;
}

std::map<int, arith::RatMatrix> parseMaps(const njson& j, const char* key,
                                          const std::map<int, sl2::PieceShape>& pieces,
                                          int step) {
  std::map<int, arith::RatMatrix> out;
  const auto it = j.find(key);
  if (it == j.end()) return out;  // absent = all zero maps
  if (!it->is_array()) fail(std::string("\"") + key + "\" must be an array");
  const auto generatorsAt = [&pieces](int w) -> std::size_t {
    const auto p = pieces.find(w);
    return p == pieces.end() ? 0 : p->second.generators();
  };
  for (const njson& elem : *it) {
    if (!elem.is_object()) fail(std::string(key) + " elements must be objects");
    const int weight = static_cast<int>(asInt(member(elem, "weight"), "weight"));
    if (out.count(weight)) fail(std::string(key) + ": duplicate weight " + std::to_string(weight));
    out.emplace(weight, parseMatrix(member(elem, "matrix"),
                                    generatorsAt(weight + step),
                                    generatorsAt(weight), weight));
  }
  return out;
}

}  // namespace

std::string toJson(const chern::GradedPolynomial& p) {
  return render(polynomialJson(p));
}

std::string toJson(const ident::IdentityReport& r) {
  return render(reportJson(r));
}

std::string toJson(const std::vector<ident::IdentityReport>& reports) {
  njson arr = njson::array();
  for (const auto& r : reports) arr.push_back(reportJson(r));
  return render(arr);
}

std::string toJson(const chow::TautClass& x) {
  njson coeffs = njson::array();
  for (const auto& c : x.coefficients()) coeffs.push_back(fractionJson(c.value()));
  njson primes = njson::array();
  for (const auto p : x.model().ring.primes()) primes.push_back(p);
  return render(njson{{"coefficients", std::move(coeffs)},
                      {"g", x.model().g},
                      {"invertedPrimes", std::move(primes)},
                      {"nu", x.model().nu}});
}

std::string projectorTableJson(
    unsigned g, unsigned d,
    const std::vector<chow::CorrespondenceElement>& projectors) {
  njson rows = njson::array();
  for (std::size_t i = 0; i < projectors.size(); ++i)
    for (const auto& [n, a] : projectors[i].gammaSupport()) {
      njson row = fractionJson(a.value());
      row["i"] = i;
      row["n"] = n;
      rows.push_back(std::move(row));
    }
  return render(njson{{"d", d},
                      {"g", g},
                      {"nilIndex", 2 * g + d + 1},
                      {"rows", std::move(rows)}});
}

std::string toJson(const sl2::Sl2Module& v) {
  njson pieces = njson::array();
  for (const auto& [weight, shape] : v.pieces())
    pieces.push_back(njson{{"freeRank", shape.freeRank},
                           {"torsion", torsionJson(shape)},
                           {"weight", weight}});
  njson primes = njson::array();
  for (const auto p : v.ring().primes()) primes.push_back(p);
  return render(njson{{"eMaps", mapsJson(v.eMaps())},
                      {"fMaps", mapsJson(v.fMaps())},
                      {"g", v.g()},
                      {"invertedPrimes", std::move(primes)},
                      {"pieces", std::move(pieces)}});
}

sl2::Sl2Module sl2ModuleFromJson(const std::string& text) {
  njson j;
  try {
    j = njson::parse(text);
  } catch (const njson::exception& e) {
    fail(e.what());
  }
  if (!j.is_object()) fail("top level must be an object");

  const std::int64_t g = asInt(member(j, "g"), "\"g\"");
  if (g < 0) fail("\"g\" must be nonnegative");

  std::vector<std::int64_t> primes;
  if (const auto it = j.find("invertedPrimes"); it != j.end()) {
    if (!it->is_array()) fail("\"invertedPrimes\" must be an array");
    for (const njson& p : *it) primes.push_back(asInt(p, "inverted prime"));
  }

  std::map<int, sl2::PieceShape> pieces;
  const njson& piecesJson = member(j, "pieces");
  if (!piecesJson.is_array()) fail("\"pieces\" must be an array");
  for (const njson& elem : piecesJson) {
    if (!elem.is_object()) fail("pieces elements must be objects");
    const int weight = static_cast<int>(asInt(member(elem, "weight"), "weight"));
    if (pieces.count(weight)) fail("duplicate piece at weight " + std::to_string(weight));
    sl2::PieceShape shape;
    const std::int64_t freeRank = asInt(member(elem, "freeRank"), "\"freeRank\"");
    if (freeRank < 0) fail("\"freeRank\" must be nonnegative");
    shape.freeRank = static_cast<unsigned>(freeRank);
    if (const auto it = elem.find("torsion"); it != elem.end()) {
      if (!it->is_array()) fail("\"torsion\" must be an array of [p, k, count]");
      for (const njson& t : *it) {
        if (!t.is_array() || t.size() != 3)
          fail("torsion entries must be [p, k, count] triples");
        const std::int64_t p = asInt(t[0], "torsion prime");
        const std::int64_t k = asInt(t[1], "torsion exponent");
        const std::int64_t count = asInt(t[2], "torsion count");
        if (k < 1 || count < 0) fail("torsion exponent/count out of range");
        for (std::int64_t c = 0; c < count; ++c)
          shape.torsion.push_back({p, static_cast<unsigned>(k)});
      }
    }
    pieces.emplace(weight, std::move(shape));
  }

  auto eMaps = parseMaps(j, "eMaps", pieces, +2);
  auto fMaps = parseMaps(j, "fMaps", pieces, -2);

  // The ring and module constructors own all remaining validation (primality
  // of the inverted set, sortedness, well-definedness, the sl₂ relation).
  return sl2::Sl2Module(static_cast<unsigned>(g),
                        arith::InvertedPrimeSet(std::move(primes)),
                        std::move(pieces), std::move(eMaps), std::move(fMaps));
}

std::string toJson(const sl2::IsotypicDecomposition& d) {
  njson components = njson::array();
  for (const auto& comp : d.components)
    components.push_back(njson{{"freeRank", comp.multiplicity.freeRank},
                               {"n", comp.n},
                               {"torsion", torsionJson(comp.multiplicity)}});
  return render(njson{{"components", std::move(components)},
                      {"phi", mapsJson(d.witness)}});
}

}  // namespace fdual::io
