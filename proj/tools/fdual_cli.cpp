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

/**
 * @file fdual_cli.cpp
 * @brief `fdual` — the command-line surface of the library.
 *
 * Subcommands map one-to-one onto library operations: exact integer tables
 * (`tm`), the polynomial calculus (`todd`, `chern-char`, `ftd-inv`, `fct`),
 * verification suites (`verify identities|key-collapse|pappas-shape`,
 * `fourier-check`, `oracle-check`), correspondence tables (`projectors`),
 * graded-module work (`sl2 decompose`, `sl2 flek`, `demo torsion`), and the
 * aggregate `suite`.
 *
 * Contract (documented in docs/formats.md):
 *  - stdout carries exactly one payload, JSON by default or an aligned text
 *    table with `--format text`; progress and seeds go to stderr only;
 *  - output is byte-identical across runs for identical flags and seeds —
 *    timings never enter the payload;
 *  - `--output FILE` redirects the payload to a file; relative paths resolve
 *    against $FDUAL_OUTPUT_DIR when that is set;
 *  - exit 0: every requested check passed; exit 1: a mathematical check
 *    failed (a false report or a violated library invariant); exit 2: usage
 *    errors — unknown commands, out-of-range flags, unreadable or malformed
 *    input files.
 */

#include <chrono>
#include <cstdint>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <map>
#include <random>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "CLI11.hpp"
#include "fdual/char_calculus.hpp"
#include "fdual/cohom_oracle.hpp"
#include "fdual/correspondence.hpp"
#include "fdual/errors.hpp"
#include "fdual/identity.hpp"
#include "fdual/json_io.hpp"
#include "fdual/polynomial.hpp"
#include "fdual/primes.hpp"
#include "fdual/scalar.hpp"
#include "fdual/sl2.hpp"
#include "fdual/taut_model.hpp"
#include "fdual/tm.hpp"
#include "json.hpp"

namespace {

using njson = nlohmann::json;
using namespace fdual;

// ---------------------------------------------------------------------------
// Output plumbing.

struct OutputOptions {
  std::string format = "json";
  std::string path;  // empty = stdout
};

std::string renderJson(const njson& j) { return j.dump(2) + "\n"; }

/// Relative --output paths land in $FDUAL_OUTPUT_DIR when it is set.
std::filesystem::path resolveOutputPath(const std::string& path) {
  std::filesystem::path p(path);
  if (p.is_relative()) {
    if (const char* dir = std::getenv("FDUAL_OUTPUT_DIR");
        dir != nullptr && *dir != '\0') {
      p = std::filesystem::path(dir) / p;
    }
  }
  return p;
}

void emitPayload(const OutputOptions& out, const std::string& payload) {
  if (out.path.empty()) {
    std::cout << payload;
    return;
  }
  const auto path = resolveOutputPath(out.path);
  if (path.has_parent_path()) {
    std::filesystem::create_directories(path.parent_path());
  }
  std::ofstream file(path, std::ios::binary);
  file << payload;
  if (!file) {
    throw DomainError("cannot write output file: " + path.string());
  }
}

/// Rows (first one the header) into a left-aligned two-space-gap table.
std::string alignedTable(const std::vector<std::vector<std::string>>& rows) {
  std::vector<std::size_t> width;
  for (const auto& row : rows) {
    if (width.size() < row.size()) width.resize(row.size(), 0);
    for (std::size_t i = 0; i < row.size(); ++i)
      width[i] = std::max(width[i], row[i].size());
  }
  std::string out;
  for (const auto& row : rows) {
    for (std::size_t i = 0; i < row.size(); ++i) {
      out += row[i];
      if (i + 1 < row.size())
        out += std::string(width[i] - row[i].size() + 2, ' ');
    }
    out += '\n';
  }
  return out;
}

std::string parametersText(const std::map<std::string, std::int64_t>& params) {
  if (params.empty()) return "-";
  std::string out;
  for (const auto& [name, value] : params) {
    if (!out.empty()) out += ' ';
    out += name + "=" + std::to_string(value);
  }
  return out;
}

std::string reportsText(const std::vector<ident::IdentityReport>& reports) {
  std::vector<std::vector<std::string>> rows{
      {"identity", "parameters", "pass", "residual"}};
  for (const auto& r : reports) {
    rows.push_back({r.identityName, parametersText(r.parameters),
                    r.pass ? "yes" : "no",
                    r.residual.isZero() ? "0" : r.residual.toString()});
  }
  return alignedTable(rows);
}

bool allPass(const std::vector<ident::IdentityReport>& reports) {
  for (const auto& r : reports)
    if (!r.pass) return false;
  return true;
}

/// Emit a report array and turn it into the exit code.
int emitReports(const OutputOptions& out,
                const std::vector<ident::IdentityReport>& reports) {
  emitPayload(out, out.format == "json" ? io::toJson(reports)
                                        : reportsText(reports));
  return allPass(reports) ? 0 : 1;
}

njson parsedPolynomial(const chern::GradedPolynomial& p) {
  return njson::parse(io::toJson(p));
}

// ---------------------------------------------------------------------------
// Report builders that live CLI-side (aggregations of library calls).

class Stopwatch {
 public:
  std::chrono::nanoseconds elapsed() const {
    return std::chrono::steady_clock::now() - start_;
  }

 private:
  std::chrono::steady_clock::time_point start_ =
      std::chrono::steady_clock::now();
};

ident::IdentityReport countingReport(std::string name,
                                     std::map<std::string, std::int64_t> params,
                                     unsigned failures,
                                     const Stopwatch& stopwatch) {
  ident::IdentityReport report;
  report.identityName = std::move(name);
  report.parameters = std::move(params);
  report.pass = failures == 0;
  report.residual = chern::GradedPolynomial::constant(failures);
  report.elapsed = stopwatch.elapsed();
  return report;
}

/// Closed-form ladder coefficients against iterated matrix application on
/// Sym^n(St), every n ≤ maxN and every pair l ≤ k ≤ n.  Both routes walk
/// the one-dimensional weight line, so the comparison is exact.
ident::IdentityReport flekClosedFormReport(unsigned maxN) {
  Stopwatch stopwatch;
  unsigned failures = 0;
  for (unsigned n = 0; n <= maxN; ++n) {
    const auto ring = arith::InvertedPrimeSet::dividing(arith::factorial(2 * n));
    const auto v = sl2::symPower(n, ring);
    for (unsigned k = 0; k <= n; ++k) {
      for (unsigned l = 0; l <= k; ++l) {
        mpq_class iterated = 1;
        int w = -static_cast<int>(n);
        for (unsigned j = 0; j < k; ++j, w += 2) iterated *= v.eMap(w).at(0, 0);
        for (unsigned j = 0; j < l; ++j, w -= 2) iterated *= v.fMap(w).at(0, 0);
        mpq_class closed = sl2::flekCoefficient(n, k, l).value();
        int w2 = -static_cast<int>(n);
        for (unsigned j = 0; j + l < k; ++j, w2 += 2)
          closed *= v.eMap(w2).at(0, 0);
        if (iterated != closed) ++failures;
      }
    }
  }
  return countingReport("flek-closed-form", {{"maxN", maxN}}, failures,
                        stopwatch);
}

/// The T_m values the rest of the calculus is anchored to.
ident::IdentityReport tmTableReport() {
  Stopwatch stopwatch;
  const std::vector<long> expected{1, 2, 12, 24, 720};
  unsigned failures = 0;
  for (std::size_t m = 0; m < expected.size(); ++m)
    if (arith::bigT(static_cast<unsigned>(m)) != expected[m]) ++failures;
  return countingReport("tm-frozen-table", {{"maxM", 4}}, failures, stopwatch);
}

ident::IdentityReport integralityReport() {
  Stopwatch stopwatch;
  unsigned failures = 0;
  const auto integral = [&failures](const chern::GradedPolynomial& p) {
    if (!p.isIntegral()) ++failures;
  };
  // The constructors verify integrality themselves and throw on failure;
  // catching here converts a hypothetical violation into a counted failure
  // instead of aborting the whole suite.
  try {
    for (unsigned m = 0; m <= 10; ++m) integral(chern::fTd(m, m));
    for (unsigned r = 1; r <= 4; ++r)
      for (unsigned n = 0; n <= 8; ++n) integral(chern::fTdInv(r, n));
    for (unsigned m = 0; m <= 8; ++m) integral(chern::fCT(m));
  } catch (const InvariantError&) {
    ++failures;
  }
  return countingReport(
      "integral-normalizations",
      {{"fctMax", 8}, {"ftdInvMaxN", 8}, {"ftdInvMaxRank", 4}, {"ftdMax", 10}},
      failures, stopwatch);
}

ident::IdentityReport factorialDivisibilityReport() {
  Stopwatch stopwatch;
  unsigned failures = 0;
  for (unsigned h = 1; h <= 30; ++h) {
    try {
      const std::int64_t n = arith::lemmaN(h);
      const mpz_class bound = n * arith::factorial(h) * arith::factorial(h);
      if (!mpz_divisible_p(bound.get_mpz_t(), arith::bigT(h).get_mpz_t()))
        ++failures;
    } catch (const InvariantError&) {
      ++failures;
    }
  }
  return countingReport("factorial-divisibility", {{"maxH", 30}}, failures,
                        stopwatch);
}

/// Moment deltas, composition-orthogonality, and the partition of unity for
/// the Beauville projector family over every g ≤ gMax, d ≤ dMax.  For d > 0
/// the projector sum exceeds Γ[1] by a tail of shift order > 2g, which is
/// checked as such.
ident::IdentityReport projectorAlgebraReport(unsigned gMax, unsigned dMax) {
  Stopwatch stopwatch;
  unsigned failures = 0;
  for (unsigned g = 1; g <= gMax; ++g) {
    for (unsigned d = 0; d <= dMax; ++d) {
      const unsigned nilIndex = 2 * g + d + 1;
      const auto ring =
          arith::InvertedPrimeSet::dividing(arith::factorial(nilIndex));
      const auto pis = chow::beauvilleProjectors(g, d, nilIndex);
      // Moment deltas Φ_j(π_i) = [j = 2g−i].
      for (unsigned i = 0; i <= 2 * g; ++i)
        for (unsigned j = 0; j <= 2 * g; ++j)
          if (pis[i].moment(j).value() !=
              mpq_class(j == 2 * g - i ? 1 : 0))
            ++failures;
      // π_i ∘ π_j = [i = j]·π_i (composition, not convolution).
      for (unsigned i = 0; i <= 2 * g; ++i)
        for (unsigned j = 0; j <= 2 * g; ++j) {
          const auto prod = pis[i].compose(pis[j]);
          if (i == j ? !(prod == pis[i]) : !prod.isZero()) ++failures;
        }
      // Σπ_i − Γ[1] vanishes for d = 0 and is a pure shift tail of order
      // ≥ 2g+1 otherwise.
      chow::CorrespondenceElement sum(nilIndex, ring);
      for (const auto& pi : pis) sum += pi;
      sum -= chow::CorrespondenceElement::gamma(1, nilIndex, ring);
      const auto& tail = sum.shiftCoefficients();
      for (unsigned j = 0; j < nilIndex; ++j) {
        const bool mustVanish = d == 0 || j <= 2 * g;
        if (mustVanish && tail[j].value() != 0) ++failures;
      }
      if (d > 0 && sum.isZero()) ++failures;  // the tail is genuinely there
    }
  }
  return countingReport("projector-algebra", {{"dMax", dMax}, {"gMax", gMax}},
                        failures, stopwatch);
}

ident::IdentityReport pappasShapeSweep(unsigned g, unsigned maxN) {
  Stopwatch stopwatch;
  unsigned failures = 0;
  for (unsigned n = 0; n <= maxN; ++n)
    if (!ident::pappasShapeCheck(g, n).pass) ++failures;
  return countingReport("pappas-shape-sweep", {{"g", g}, {"maxN", maxN}},
                        failures, stopwatch);
}

/// Random direct sums of Sym^n components with free and ℤ/p^k
/// multiplicities, scrambled by unit basis changes; decompose must recover
/// every invariant factor.  Deterministic for a fixed seed.
ident::IdentityReport roundTripReport(unsigned gMax, unsigned trialsPerG,
                                      std::uint64_t seed) {
  Stopwatch stopwatch;
  unsigned failures = 0;
  for (unsigned g = 1; g <= gMax; ++g) {
    const auto ring =
        arith::InvertedPrimeSet::dividing(arith::factorial(2 * g));
    std::int64_t p = 2 * g + 2;
    while (!arith::isPrime(p)) ++p;  // first prime beyond 2g+1, un-inverted
    std::mt19937_64 rng(seed + g);
    unsigned built = 0;
    while (built < trialsPerG) {
      sl2::Sl2Module acc(g, ring, {}, {}, {});
      std::map<unsigned, sl2::PieceShape> expected;
      for (unsigned n = 0; n <= g; ++n) {
        const auto piece = sl2::symPower(n, ring);
        const unsigned freeMult = static_cast<unsigned>(rng() % 3);
        for (unsigned c = 0; c < freeMult; ++c) acc = sl2::directSum(acc, piece);
        expected[n].freeRank = freeMult;
        const unsigned torMult = static_cast<unsigned>(rng() % 2);
        const unsigned k = 1 + static_cast<unsigned>(rng() % 2);
        if (torMult > 0) {
          acc = sl2::directSum(acc, sl2::tensorWithTorsion(piece, p, k, torMult));
          expected[n].torsion.assign(torMult, {p, k});
        }
      }
      if (acc.weights().empty()) continue;  // empty draw, try again
      ++built;
      const auto scrambled = sl2::scrambleBasis(acc, rng());
      const auto decomposition = sl2::decompose(scrambled);
      for (const auto& component : decomposition.components) {
        const auto it = expected.find(component.n);
        const sl2::PieceShape want =
            it == expected.end() ? sl2::PieceShape{} : it->second;
        if (!(component.multiplicity == want)) ++failures;
      }
    }
  }
  return countingReport(
      "sl2-roundtrip",
      {{"gMax", gMax},
       {"seed", static_cast<std::int64_t>(seed)},
       {"trialsPerG", trialsPerG}},
      failures, stopwatch);
}

/// buildChowSl2 certifies [e,f] = h and the single-Sym^g decomposition on
/// construction; this just sweeps g and counts what survives.
ident::IdentityReport chowLadderReport(unsigned gMax) {
  Stopwatch stopwatch;
  unsigned failures = 0;
  for (unsigned g = 1; g <= gMax; ++g) {
    try {
      const auto chow = sl2::buildChowSl2(g, 1);
      const auto& top = chow.decomposition.components.at(g);
      if (!(top.multiplicity == sl2::PieceShape{1, {}})) ++failures;
    } catch (const InvariantError&) {
      ++failures;
    }
  }
  return countingReport("chow-ladder", {{"gMax", gMax}}, failures, stopwatch);
}

sl2::Sl2Module moduleFromFile(const std::string& path) {
  std::ifstream file(path, std::ios::binary);
  if (!file) throw DomainError("cannot read input file: " + path);
  std::ostringstream text;
  text << file.rdbuf();
  return io::sl2ModuleFromJson(text.str());
}

// ---------------------------------------------------------------------------
// Individual commands.

int runTm(const OutputOptions& out, unsigned max) {
  njson values = njson::array();
  std::vector<std::vector<std::string>> rows{{"m", "T_m"}};
  for (unsigned m = 0; m <= max; ++m) {
    const std::string value = arith::bigT(m).get_str();
    values.push_back(njson{{"m", m}, {"value", value}});
    rows.push_back({std::to_string(m), value});
  }
  emitPayload(out, out.format == "json"
                       ? renderJson(njson{{"max", max}, {"values", values}})
                       : alignedTable(rows));
  return 0;
}

int runTodd(const OutputOptions& out, unsigned max, unsigned rank) {
  njson values = njson::array();
  std::vector<std::vector<std::string>> rows{
      {"m", "rank", "denominatorLcm", "polynomial"}};
  for (unsigned m = 0; m <= max; ++m) {
    const unsigned r = rank == 0 ? m : rank;  // rank 0 = universal choice
    const auto p = chern::toddComponent(m, r);
    values.push_back(njson{{"denominatorLcm", p.denominatorLcm().get_str()},
                           {"m", m},
                           {"polynomial", parsedPolynomial(p)},
                           {"rank", r}});
    rows.push_back({std::to_string(m), std::to_string(r),
                    p.denominatorLcm().get_str(), p.toString()});
  }
  emitPayload(out, out.format == "json"
                       ? renderJson(njson{{"max", max}, {"values", values}})
                       : alignedTable(rows));
  return 0;
}

int runChernChar(const OutputOptions& out, unsigned max) {
  njson values = njson::array();
  std::vector<std::vector<std::string>> rows{{"m", "polynomial"}};
  for (unsigned m = 0; m <= max; ++m) {
    const auto p = chern::chernCharComponent(m);
    values.push_back(njson{{"m", m}, {"polynomial", parsedPolynomial(p)}});
    rows.push_back({std::to_string(m), p.toString()});
  }
  emitPayload(out, out.format == "json"
                       ? renderJson(njson{{"max", max}, {"values", values}})
                       : alignedTable(rows));
  return 0;
}

int runFtdInv(const OutputOptions& out, unsigned rank, unsigned max) {
  njson values = njson::array();
  std::vector<std::vector<std::string>> rows{{"n", "polynomial"}};
  for (unsigned n = 0; n <= max; ++n) {
    const auto p = chern::fTdInv(rank, n);
    values.push_back(njson{{"n", n}, {"polynomial", parsedPolynomial(p)}});
    rows.push_back({std::to_string(n), p.toString()});
  }
  emitPayload(out,
              out.format == "json"
                  ? renderJson(njson{
                        {"max", max}, {"rank", rank}, {"values", values}})
                  : alignedTable(rows));
  return 0;
}

int runFct(const OutputOptions& out, unsigned max) {
  njson values = njson::array();
  std::vector<std::vector<std::string>> rows{{"m", "polynomial"}};
  for (unsigned m = 0; m <= max; ++m) {
    const auto p = chern::fCT(m);
    values.push_back(njson{{"m", m}, {"polynomial", parsedPolynomial(p)}});
    rows.push_back({std::to_string(m), p.toString()});
  }
  emitPayload(out, out.format == "json"
                       ? renderJson(njson{{"max", max}, {"values", values}})
                       : alignedTable(rows));
  return 0;
}

int runVerifyIdentities(const OutputOptions& out, unsigned rank,
                        unsigned maxDeg) {
  const std::vector<ident::IdentityReport> reports{
      ident::verifyExactSeqIdentity(rank, rank, maxDeg),
      ident::verifyDualIdentity(rank, maxDeg),
      ident::verifyTdInvIdentity(rank, maxDeg),
      ident::verifyBinomIdentity(maxDeg),
  };
  return emitReports(out, reports);
}

int runVerifyKeyCollapse(const OutputOptions& out, unsigned g, unsigned muMax) {
  std::vector<ident::IdentityReport> reports;
  if (g == 0) {
    for (unsigned each = 1; each <= 3; ++each)
      reports.push_back(ident::verifyKeyCollapse(each, muMax));
  } else {
    reports.push_back(ident::verifyKeyCollapse(g, muMax));
  }
  return emitReports(out, reports);
}

int runVerifyPappasShape(const OutputOptions& out, unsigned g, int max) {
  const unsigned maxN = max < 0 ? 12 - g : static_cast<unsigned>(max);
  if (g + maxN > 12)
    throw DomainError("pappas-shape: g + max must stay within 12");
  std::vector<ident::IdentityReport> reports;
  for (unsigned n = 0; n <= maxN; ++n)
    reports.push_back(ident::pappasShapeCheck(g, n));
  return emitReports(out, reports);
}

int runProjectors(const OutputOptions& out, unsigned g, unsigned d) {
  const auto projectors = chow::beauvilleProjectors(g, d, 2 * g + d + 1);
  if (out.format == "json") {
    emitPayload(out, io::projectorTableJson(g, d, projectors));
  } else {
    std::vector<std::vector<std::string>> rows{{"i", "n", "a_{i,n}"}};
    for (std::size_t i = 0; i < projectors.size(); ++i)
      for (const auto& [n, a] : projectors[i].gammaSupport())
        rows.push_back({std::to_string(i), std::to_string(n),
                        a.value().get_str()});
    emitPayload(out, alignedTable(rows));
  }
  return 0;
}

int runFourierCheck(const OutputOptions& out, unsigned g, std::int64_t nu) {
  std::vector<ident::IdentityReport> reports;
  if (nu == 1) reports.push_back(chow::verifyFourierModel(g));
  reports.push_back(chow::twistedExponentialCheck(chow::buildModel(g, nu)));
  return emitReports(out, reports);
}

int runOracleCheck(const OutputOptions& out, unsigned g) {
  std::vector<ident::IdentityReport> reports{
      cohom::oracleModelAgreement(g),
      cohom::scaledFourierCheck(g),
  };
  if (g <= 2) reports.push_back(cohom::shiftNilpotencyCheck(g, 2 * g + 1));
  return emitReports(out, reports);
}

int runSl2Decompose(const OutputOptions& out, const std::string& inputPath) {
  const auto module = moduleFromFile(inputPath);
  const auto decomposition = sl2::decompose(module);
  if (out.format == "json") {
    emitPayload(out, io::toJson(decomposition));
  } else {
    std::vector<std::vector<std::string>> rows{{"n", "multiplicity"}};
    for (const auto& component : decomposition.components)
      rows.push_back(
          {std::to_string(component.n), component.multiplicity.toString()});
    emitPayload(out, alignedTable(rows));
  }
  return 0;  // decompose certifies its own witness or throws
}

int runSl2Flek(const OutputOptions& out, const std::string& inputPath,
               unsigned maxN, bool maxNGiven) {
  std::vector<ident::IdentityReport> reports;
  if (!inputPath.empty()) {
    const auto module = moduleFromFile(inputPath);
    reports.push_back(
        sl2::verifyFlek(module, maxNGiven ? maxN : module.g()));
  } else {
    reports.push_back(flekClosedFormReport(maxN));
    for (unsigned n = 0; n <= maxN; ++n) {
      const auto ring =
          arith::InvertedPrimeSet::dividing(arith::factorial(2 * n));
      reports.push_back(sl2::verifyFlek(sl2::symPower(n, ring), n));
    }
  }
  return emitReports(out, reports);
}

int runDemoTorsion(const OutputOptions& out, unsigned g, std::int64_t p,
                   unsigned k) {
  return emitReports(out, {sl2::torsionInjectivityDemo(g, p, k)});
}

int runSuite(const OutputOptions& out, std::uint64_t seed) {
  std::fprintf(stderr, "suite seed: %llu\n",
               static_cast<unsigned long long>(seed));
  std::vector<ident::IdentityReport> reports;
  const auto push = [&reports](ident::IdentityReport report) {
    std::fprintf(
        stderr, "[%2zu] %-24s %-4s (%lld ms)\n", reports.size() + 1,
        report.identityName.c_str(), report.pass ? "ok" : "FAIL",
        static_cast<long long>(
            std::chrono::duration_cast<std::chrono::milliseconds>(
                report.elapsed)
                .count()));
    reports.push_back(std::move(report));
  };

  // Integer tables and the polynomial calculus.
  push(tmTableReport());
  push(integralityReport());
  push(factorialDivisibilityReport());
  // The identity ledger at desk scale.
  for (unsigned r1 = 1; r1 <= 3; ++r1)
    for (unsigned r2 = 1; r2 <= 3; ++r2)
      push(ident::verifyExactSeqIdentity(r1, r2, 6));
  for (unsigned r = 1; r <= 3; ++r) push(ident::verifyDualIdentity(r, 6));
  for (unsigned r = 1; r <= 3; ++r) push(ident::verifyTdInvIdentity(r, 6));
  push(ident::verifyBinomIdentity(6));
  for (unsigned g = 1; g <= 3; ++g) push(ident::verifyKeyCollapse(g, 3));
  for (unsigned g = 1; g <= 3; ++g) push(pappasShapeSweep(g, 8));
  // Correspondences and the Fourier package.
  push(projectorAlgebraReport(3, 2));
  for (unsigned g = 1; g <= 8; ++g) push(chow::verifyFourierModel(g));
  for (unsigned g = 1; g <= 3; ++g)
    for (std::int64_t nu = 1; nu <= 2; ++nu)
      push(chow::twistedExponentialCheck(chow::buildModel(g, nu)));
  for (unsigned g = 1; g <= 3; ++g) push(cohom::oracleModelAgreement(g));
  for (unsigned g = 1; g <= 3; ++g) push(cohom::scaledFourierCheck(g));
  for (unsigned g = 1; g <= 2; ++g)
    push(cohom::shiftNilpotencyCheck(g, 2 * g + 1));
  // Graded modules.
  push(roundTripReport(4, 100, seed));
  push(flekClosedFormReport(6));
  {
    const auto ring = arith::InvertedPrimeSet::dividing(arith::factorial(12));
    sl2::Sl2Module everybody(6, ring, {}, {}, {});
    for (unsigned n = 0; n <= 6; ++n)
      everybody = sl2::directSum(everybody, sl2::symPower(n, ring));
    push(sl2::verifyFlek(everybody, 6));
    const auto g2ring = arith::InvertedPrimeSet::dividing(arith::factorial(4));
    const auto mixed = sl2::directSum(
        sl2::directSum(sl2::symPower(0, g2ring), sl2::symPower(2, g2ring)),
        sl2::tensorWithTorsion(sl2::symPower(1, g2ring), 7, 2, 1));
    push(sl2::verifyFlek(sl2::scrambleBasis(mixed, seed), 2));
  }
  push(chowLadderReport(8));
  push(sl2::torsionInjectivityDemo(2, 7, 2));
  push(sl2::torsionInjectivityDemo(3, 11, 2));

  return emitReports(out, reports);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{
      "fdual — exact tables, identity verification, and module "
      "decomposition for Fourier duality on abelian varieties"};
  app.require_subcommand(1);

  OutputOptions out;
  std::function<int()> runner;

  const auto addOutputFlags = [&out](CLI::App* cmd) {
    cmd->add_option("--format", out.format,
                    "Payload format: json (canonical) or text (aligned)")
        ->check(CLI::IsMember({"json", "text"}))
        ->capture_default_str();
    cmd->add_option(
        "--output", out.path,
        "Write the payload to this file instead of stdout; relative "
        "paths resolve against $FDUAL_OUTPUT_DIR");
  };

  // --- tables ---------------------------------------------------------
  {
    auto* cmd = app.add_subcommand("tm", "Table of Todd denominators T_m");
    auto max = std::make_shared<unsigned>(12);
    cmd->add_option("--max", *max, "Largest m")
        ->check(CLI::Range(0, 200))
        ->capture_default_str();
    addOutputFlags(cmd);
    cmd->callback([&, max] { runner = [&, max] { return runTm(out, *max); }; });
  }
  {
    auto* cmd = app.add_subcommand(
        "todd", "Degree-m Todd polynomials with their exact denominators");
    auto max = std::make_shared<unsigned>(8);
    auto rank = std::make_shared<unsigned>(0);
    cmd->add_option("--max", *max, "Largest degree m")
        ->check(CLI::Range(0, 16))
        ->capture_default_str();
    cmd->add_option("--rank", *rank,
                    "Bundle rank; 0 picks rank = m (the universal polynomial)")
        ->check(CLI::Range(0, 16))
        ->capture_default_str();
    addOutputFlags(cmd);
    cmd->callback([&, max, rank] {
      runner = [&, max, rank] { return runTodd(out, *max, *rank); };
    });
  }
  {
    auto* cmd = app.add_subcommand(
        "chern-char", "Integral Chern character components m!·ch_m");
    auto max = std::make_shared<unsigned>(8);
    cmd->add_option("--max", *max, "Largest degree m")
        ->check(CLI::Range(0, 16))
        ->capture_default_str();
    addOutputFlags(cmd);
    cmd->callback(
        [&, max] { runner = [&, max] { return runChernChar(out, *max); }; });
  }
  {
    auto* cmd = app.add_subcommand(
        "ftd-inv", "Integral inverse-Todd components (n+rank)!·{Td^{-1}}_n");
    auto rank = std::make_shared<unsigned>(4);
    auto max = std::make_shared<unsigned>(8);
    cmd->add_option("--rank", *rank, "Bundle rank")
        ->check(CLI::Range(1, 8))
        ->capture_default_str();
    cmd->add_option("--max", *max, "Largest degree n")
        ->check(CLI::Range(0, 12))
        ->capture_default_str();
    addOutputFlags(cmd);
    cmd->callback([&, rank, max] {
      runner = [&, rank, max] { return runFtdInv(out, *rank, *max); };
    });
  }
  {
    auto* cmd = app.add_subcommand(
        "fct", "Todd/character convolution components fCT_m");
    auto max = std::make_shared<unsigned>(8);
    cmd->add_option("--max", *max, "Largest degree m")
        ->check(CLI::Range(0, 12))
        ->capture_default_str();
    addOutputFlags(cmd);
    cmd->callback([&, max] { runner = [&, max] { return runFct(out, *max); }; });
  }

  // --- verification suites ---------------------------------------------
  auto* verify =
      app.add_subcommand("verify", "Symbolic identity verification suites");
  verify->require_subcommand(1);
  {
    auto* cmd = verify->add_subcommand(
        "identities", "The four-identity convolution ledger");
    auto rank = std::make_shared<unsigned>(2);
    auto maxDeg = std::make_shared<unsigned>(4);
    cmd->add_option("--rank", *rank, "Bundle rank for all four identities")
        ->check(CLI::Range(1, 4))
        ->capture_default_str();
    cmd->add_option("--max-deg", *maxDeg, "Largest verified degree")
        ->check(CLI::Range(1, 16))
        ->capture_default_str();
    addOutputFlags(cmd);
    cmd->callback([&, rank, maxDeg] {
      runner = [&, rank, maxDeg] {
        return runVerifyIdentities(out, *rank, *maxDeg);
      };
    });
  }
  {
    auto* cmd = verify->add_subcommand(
        "key-collapse",
        "Two-stage collapse of the pushforward constant (T_{2g} at μ=0, "
        "0 for μ≥1)");
    auto g = std::make_shared<unsigned>(0);
    auto muMax = std::make_shared<unsigned>(3);
    cmd->add_option("--g", *g, "Dimension; 0 runs g = 1, 2, 3")
        ->check(CLI::Range(0, 3))
        ->capture_default_str();
    cmd->add_option("--mu-max", *muMax, "Largest μ slice")
        ->check(CLI::Range(0, 3))
        ->capture_default_str();
    addOutputFlags(cmd);
    cmd->callback([&, g, muMax] {
      runner = [&, g, muMax] { return runVerifyKeyCollapse(out, *g, *muMax); };
    });
  }
  {
    auto* cmd = verify->add_subcommand(
        "pappas-shape",
        "Integrality shape T_{g+n}/n! and T_{g+n}/(i!·T_j) of the "
        "pushforward constants");
    auto g = std::make_shared<unsigned>(1);
    auto max = std::make_shared<int>(-1);
    cmd->add_option("--g", *g, "Dimension")
        ->check(CLI::Range(1, 11))
        ->capture_default_str();
    cmd->add_option("--max", *max, "Largest n (default 12 − g)")
        ->check(CLI::Range(0, 11));
    addOutputFlags(cmd);
    cmd->callback([&, g, max] {
      runner = [&, g, max] { return runVerifyPappasShape(out, *g, *max); };
    });
  }

  // --- correspondences and Fourier ---------------------------------------
  {
    auto* cmd = app.add_subcommand(
        "projectors", "Beauville projector coefficient table a_{i,n}");
    auto g = std::make_shared<unsigned>(2);
    auto d = std::make_shared<unsigned>(0);
    cmd->add_option("--g", *g, "Relative dimension")
        ->check(CLI::Range(1, 8))
        ->capture_default_str();
    cmd->add_option("--d", *d, "Base dimension")
        ->check(CLI::Range(0, 8))
        ->capture_default_str();
    addOutputFlags(cmd);
    cmd->callback([&, g, d] {
      runner = [&, g, d] { return runProjectors(out, *g, *d); };
    });
  }
  {
    auto* cmd = app.add_subcommand(
        "fourier-check",
        "Fourier package on the tautological model (F∘F, products, degrees)");
    auto g = std::make_shared<unsigned>(2);
    auto nu = std::make_shared<std::int64_t>(1);
    cmd->add_option("--g", *g, "Dimension")
        ->check(CLI::Range(1, 8))
        ->capture_default_str();
    cmd->add_option("--nu", *nu,
                    "Polarization degree parameter ν (full package at ν=1)")
        ->check(CLI::Range(1, 1000000))
        ->capture_default_str();
    addOutputFlags(cmd);
    cmd->callback([&, g, nu] {
      runner = [&, g, nu] { return runFourierCheck(out, *g, *nu); };
    });
  }
  {
    auto* cmd = app.add_subcommand(
        "oracle-check",
        "Exterior-algebra oracle: model agreement, scaled relations, shift "
        "nilpotency");
    auto g = std::make_shared<unsigned>(2);
    cmd->add_option("--g", *g, "Dimension (the oracle refuses g > 3)")
        ->check(CLI::Range(1, 3))
        ->capture_default_str();
    addOutputFlags(cmd);
    cmd->callback(
        [&, g] { runner = [&, g] { return runOracleCheck(out, *g); }; });
  }

  // --- graded modules -----------------------------------------------------
  auto* sl2cmd =
      app.add_subcommand("sl2", "Integral sl₂ module computations");
  sl2cmd->require_subcommand(1);
  {
    auto* cmd = sl2cmd->add_subcommand(
        "decompose",
        "Isotypic decomposition ⊕ Sym^n(St)⊗M_n of a module file");
    auto input = std::make_shared<std::string>();
    cmd->add_option("--input", *input, "Module JSON file")
        ->required()
        ->check(CLI::ExistingFile);
    addOutputFlags(cmd);
    cmd->callback([&, input] {
      runner = [&, input] { return runSl2Decompose(out, *input); };
    });
  }
  {
    auto* cmd = sl2cmd->add_subcommand(
        "flek", "Ladder-coefficient calculus: closed form vs. iterated maps");
    auto input = std::make_shared<std::string>();
    auto maxN = std::make_shared<unsigned>(6);
    cmd->add_option("--input", *input,
                    "Optional module JSON file to verify instead of Sym^n")
        ->check(CLI::ExistingFile);
    auto* maxOpt = cmd->add_option("--max-n", *maxN, "Largest string length n")
                       ->check(CLI::Range(0, 8));
    maxOpt->capture_default_str();
    addOutputFlags(cmd);
    cmd->callback([&, input, maxN, maxOpt] {
      const bool given = maxOpt->count() > 0;
      runner = [&, input, maxN, given] {
        return runSl2Flek(out, *input, *maxN, given);
      };
    });
  }
  auto* demo = app.add_subcommand("demo", "Worked demonstrations");
  demo->require_subcommand(1);
  {
    auto* cmd = demo->add_subcommand(
        "torsion",
        "Injectivity of e^{i-1} on Sym^{g-1}(St)⊗(ℤ/p^k)^{2g} at the lowest "
        "weight");
    auto g = std::make_shared<unsigned>(2);
    auto p = std::make_shared<std::int64_t>(7);
    auto k = std::make_shared<unsigned>(2);
    cmd->add_option("--g", *g, "Dimension")
        ->check(CLI::Range(1, 6))
        ->capture_default_str();
    cmd->add_option("--p", *p, "Torsion prime (must exceed 2g+1)")
        ->check(CLI::Range(2, 1000003))
        ->capture_default_str();
    cmd->add_option("--k", *k, "Torsion level exponent")
        ->check(CLI::Range(1, 12))
        ->capture_default_str();
    addOutputFlags(cmd);
    cmd->callback([&, g, p, k] {
      runner = [&, g, p, k] { return runDemoTorsion(out, *g, *p, *k); };
    });
  }

  // --- everything -----------------------------------------------------
  {
    auto* cmd = app.add_subcommand(
        "suite", "All verification suites at desk-scale defaults");
    auto seed = std::make_shared<std::uint64_t>(20260815);
    cmd->add_option("--seed", *seed, "Seed for the randomized round-trips")
        ->capture_default_str();
    addOutputFlags(cmd);
    cmd->callback(
        [&, seed] { runner = [&, seed] { return runSuite(out, *seed); }; });
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);  // prints help to stdout, exits 0
  } catch (const CLI::ParseError& e) {
    std::cerr << "error: " << e.what() << "\n\n" << app.help() << std::flush;
    return 2;
  }

  try {
    return runner ? runner() : 2;
  } catch (const InvariantError& e) {
    std::cerr << "invariant violated: " << e.what() << "\n";
    return 1;
  } catch (const DomainError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
}
