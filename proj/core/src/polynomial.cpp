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

#include "fdual/polynomial.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>
#include <utility>

#include "fdual/errors.hpp"

namespace fdual::chern {

// ---------------------------------------------------------------------------
// VarTable
// ---------------------------------------------------------------------------

VarTable::VarTable(std::vector<PolyVar> vars) : vars_(std::move(vars)) {
  for (std::size_t i = 0; i < vars_.size(); ++i) {
    for (std::size_t j = i + 1; j < vars_.size(); ++j) {
      if (vars_[i].name == vars_[j].name) {
        throw DomainError("VarTable: duplicate variable " + vars_[i].name);
      }
    }
  }
}

std::shared_ptr<const VarTable> VarTable::make(std::vector<PolyVar> vars) {
  return std::make_shared<const VarTable>(std::move(vars));
}

std::shared_ptr<const VarTable> VarTable::merge(
    const std::shared_ptr<const VarTable>& a,
    const std::shared_ptr<const VarTable>& b) {
  if (a == b || *a == *b) return a;
  std::vector<PolyVar> vars;
  vars.reserve(a->size() + b->size());
  for (std::size_t i = 0; i < a->size(); ++i) vars.push_back(a->var(i));
  for (std::size_t i = 0; i < b->size(); ++i) {
    const PolyVar& v = b->var(i);
    if (auto idx = a->indexOf(v.name)) {
      if (a->var(*idx).weight != v.weight) {
        throw DomainError("VarTable::merge: variable " + v.name +
                          " has conflicting weights");
      }
    } else {
      vars.push_back(v);
    }
  }
  return make(std::move(vars));
}

std::optional<std::size_t> VarTable::indexOf(std::string_view name) const {
  for (std::size_t i = 0; i < vars_.size(); ++i) {
    if (vars_[i].name == name) return i;
  }
  return std::nullopt;
}

// ---------------------------------------------------------------------------
// GradedPolynomial
// ---------------------------------------------------------------------------

GradedPolynomial GradedPolynomial::constant(const mpq_class& c) {
  GradedPolynomial p;
  if (c != 0) p.terms_.emplace(Exponents{}, c);
  return p;
}

GradedPolynomial GradedPolynomial::variable(
    const std::shared_ptr<const VarTable>& vars, std::string_view name) {
  auto idx = vars->indexOf(name);
  if (!idx) {
    throw DomainError("GradedPolynomial: unknown variable " +
                      std::string(name));
  }
  Exponents e(vars->size(), 0);
  e[*idx] = 1;
  return monomial(vars, std::move(e), 1);
}

GradedPolynomial GradedPolynomial::monomial(
    const std::shared_ptr<const VarTable>& vars, Exponents exps,
    const mpq_class& coeff) {
  if (exps.size() != vars->size()) {
    throw DomainError("GradedPolynomial: exponent vector length mismatch");
  }
  GradedPolynomial p(vars);
  if (coeff != 0) p.terms_.emplace(std::move(exps), coeff);
  return p;
}

mpq_class GradedPolynomial::coefficient(const Exponents& e) const {
  auto it = terms_.find(e);
  return it == terms_.end() ? mpq_class(0) : it->second;
}

mpq_class GradedPolynomial::coefficientOf(std::string_view name,
                                          unsigned power) const {
  auto idx = vars_->indexOf(name);
  if (!idx) return 0;
  Exponents e(vars_->size(), 0);
  e[*idx] = power;
  return coefficient(e);
}

unsigned GradedPolynomial::weightOf(const Exponents& e) const {
  unsigned w = 0;
  for (std::size_t i = 0; i < e.size(); ++i) w += e[i] * vars_->var(i).weight;
  return w;
}

unsigned GradedPolynomial::maxWeight() const {
  unsigned w = 0;
  for (const auto& [e, c] : terms_) w = std::max(w, weightOf(e));
  return w;
}

GradedPolynomial GradedPolynomial::homogeneousPart(unsigned w) const {
  GradedPolynomial p(vars_);
  for (const auto& [e, c] : terms_) {
    if (weightOf(e) == w) p.terms_.emplace(e, c);
  }
  return p;
}

bool GradedPolynomial::isHomogeneous(unsigned w) const {
  return std::all_of(terms_.begin(), terms_.end(),
                     [&](const auto& t) { return weightOf(t.first) == w; });
}

bool GradedPolynomial::isIntegral() const {
  return std::all_of(terms_.begin(), terms_.end(), [](const auto& t) {
    return t.second.get_den() == 1;
  });
}

mpz_class GradedPolynomial::denominatorLcm() const {
  mpz_class l = 1;
  for (const auto& [e, c] : terms_) {
    mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), c.get_den().get_mpz_t());
  }
  return l;
}

void GradedPolynomial::addTerm(const Exponents& e, const mpq_class& c) {
  auto [it, inserted] = terms_.emplace(e, c);
  if (!inserted) {
    it->second += c;
    if (it->second == 0) terms_.erase(it);
  } else if (c == 0) {
    terms_.erase(it);
  }
}

GradedPolynomial GradedPolynomial::mappedTo(
    const std::shared_ptr<const VarTable>& target) const {
  if (target == vars_ || *target == *vars_) {
    GradedPolynomial p(target);
    p.terms_ = terms_;
    return p;
  }
  std::vector<std::size_t> where(vars_->size());
  for (std::size_t i = 0; i < vars_->size(); ++i) {
    auto idx = target->indexOf(vars_->var(i).name);
    if (!idx) {
      throw DomainError("GradedPolynomial: variable " + vars_->var(i).name +
                        " missing from merged table");
    }
    where[i] = *idx;
  }
  GradedPolynomial p(target);
  for (const auto& [e, c] : terms_) {
    Exponents ne(target->size(), 0);
    for (std::size_t i = 0; i < e.size(); ++i) ne[where[i]] = e[i];
    p.terms_.emplace(std::move(ne), c);
  }
  return p;
}

void GradedPolynomial::alignPair(const GradedPolynomial& a,
                                 const GradedPolynomial& b,
                                 GradedPolynomial& outA,
                                 GradedPolynomial& outB) {
  auto merged = VarTable::merge(a.vars_, b.vars_);
  outA = a.mappedTo(merged);
  outB = b.mappedTo(merged);
}

GradedPolynomial GradedPolynomial::operator-() const {
  GradedPolynomial p(vars_);
  for (const auto& [e, c] : terms_) p.terms_.emplace(e, -c);
  return p;
}

GradedPolynomial& GradedPolynomial::operator+=(const GradedPolynomial& o) {
  if (*vars_ == *o.vars_) {
    for (const auto& [e, c] : o.terms_) addTerm(e, c);
    return *this;
  }
  GradedPolynomial a, b;
  alignPair(*this, o, a, b);
  for (const auto& [e, c] : b.terms_) a.addTerm(e, c);
  return *this = std::move(a);
}

GradedPolynomial& GradedPolynomial::operator-=(const GradedPolynomial& o) {
  return *this += -o;
}

GradedPolynomial GradedPolynomial::operator*(const GradedPolynomial& o) const {
  if (*vars_ != *o.vars_) {
    GradedPolynomial a, b;
    alignPair(*this, o, a, b);
    return a * b;
  }
  GradedPolynomial p(vars_);
  for (const auto& [e1, c1] : terms_) {
    for (const auto& [e2, c2] : o.terms_) {
      Exponents e(e1.size());
      for (std::size_t i = 0; i < e.size(); ++i) e[i] = e1[i] + e2[i];
      p.addTerm(e, c1 * c2);
    }
  }
  return p;
}

GradedPolynomial& GradedPolynomial::scale(const mpq_class& c) {
  if (c == 0) {
    terms_.clear();
    return *this;
  }
  for (auto& [e, coeff] : terms_) coeff *= c;
  return *this;
}

GradedPolynomial GradedPolynomial::pow(unsigned e) const {
  GradedPolynomial acc = constant(1);
  for (unsigned i = 0; i < e; ++i) acc = acc * *this;
  return acc;
}

GradedPolynomial GradedPolynomial::mulTruncated(const GradedPolynomial& o,
                                                unsigned cap) const {
  if (*vars_ != *o.vars_) {
    GradedPolynomial a, b;
    alignPair(*this, o, a, b);
    return a.mulTruncated(b, cap);
  }
  GradedPolynomial p(vars_);
  for (const auto& [e1, c1] : terms_) {
    const unsigned w1 = weightOf(e1);
    if (w1 > cap) continue;
    for (const auto& [e2, c2] : o.terms_) {
      if (w1 + o.weightOf(e2) > cap) continue;
      Exponents e(e1.size());
      for (std::size_t i = 0; i < e.size(); ++i) e[i] = e1[i] + e2[i];
      p.addTerm(e, c1 * c2);
    }
  }
  return p;
}

GradedPolynomial GradedPolynomial::truncated(unsigned cap) const {
  GradedPolynomial p(vars_);
  for (const auto& [e, c] : terms_) {
    if (weightOf(e) <= cap) p.terms_.emplace(e, c);
  }
  return p;
}

GradedPolynomial GradedPolynomial::substitute(
    std::string_view name, const GradedPolynomial& value) const {
  auto idx = vars_->indexOf(name);
  if (!idx) return *this;  // nothing to replace
  auto merged = VarTable::merge(vars_, value.vars_);
  GradedPolynomial mappedValue = value.mappedTo(merged);
  GradedPolynomial out(merged);
  std::vector<GradedPolynomial> powers = {
      GradedPolynomial::constant(1).mappedTo(merged)};
  for (const auto& [e, c] : terms_) {
    const unsigned k = e[*idx];
    while (powers.size() <= k) powers.push_back(powers.back() * mappedValue);
    Exponents stripped = e;
    stripped[*idx] = 0;
    GradedPolynomial term = monomial(vars_, std::move(stripped), c);
    out += term.mappedTo(merged) * powers[k];
  }
  return out;
}

GradedPolynomial GradedPolynomial::withRenamedVariables(
    const std::vector<std::pair<std::string, std::string>>& renames) const {
  std::vector<PolyVar> renamed;
  renamed.reserve(vars_->size());
  for (std::size_t i = 0; i < vars_->size(); ++i) {
    PolyVar v = vars_->var(i);
    for (const auto& [from, to] : renames) {
      if (v.name == from) {
        v.name = to;
        break;
      }
    }
    renamed.push_back(std::move(v));
  }
  GradedPolynomial p(VarTable::make(std::move(renamed)));
  p.terms_ = terms_;
  return p;
}

bool operator==(const GradedPolynomial& a, const GradedPolynomial& b) {
  if (*a.vars_ == *b.vars_) return a.terms_ == b.terms_;
  GradedPolynomial d = a;
  d -= b;
  return d.isZero();
}

std::string GradedPolynomial::toString() const {
  if (terms_.empty()) return "0";
  // Canonical form independent of the table's internal layout: variables
  // appear in name order, terms in (weight, name-ordered exponents) order.
  std::vector<std::size_t> order(vars_->size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::sort(order.begin(), order.end(), [this](std::size_t a, std::size_t b) {
    return vars_->var(a).name < vars_->var(b).name;
  });
  std::vector<std::pair<Exponents, mpq_class>> sorted;
  sorted.reserve(terms_.size());
  for (const auto& [e, c] : terms_) {
    Exponents canon(e.size());
    for (std::size_t i = 0; i < order.size(); ++i) canon[i] = e[order[i]];
    sorted.emplace_back(std::move(canon), c);
  }
  std::sort(sorted.begin(), sorted.end(),
            [this, &order](const auto& x, const auto& y) {
              unsigned wx = 0, wy = 0;
              for (std::size_t i = 0; i < order.size(); ++i) {
                wx += x.first[i] * vars_->var(order[i]).weight;
                wy += y.first[i] * vars_->var(order[i]).weight;
              }
              if (wx != wy) return wx < wy;
              return x.first < y.first;
            });
  std::ostringstream os;
  bool first = true;
  for (const auto& [e, c] : sorted) {
    const bool negative = c < 0;
    mpq_class mag = negative ? mpq_class(-c) : c;
    if (first) {
      if (negative) os << "-";
      first = false;
    } else {
      os << (negative ? " - " : " + ");
    }
    bool hasVar = false;
    std::ostringstream vars;
    for (std::size_t i = 0; i < e.size(); ++i) {
      if (e[i] == 0) continue;
      if (hasVar) vars << "*";
      vars << vars_->var(order[i]).name;
      if (e[i] > 1) vars << "^" << e[i];
      hasVar = true;
    }
    if (!hasVar) {
      os << mag;
    } else if (mag == 1) {
      os << vars.str();
    } else {
      os << mag << "*" << vars.str();
    }
  }
  return os.str();
}

}  // namespace fdual::chern
