// Copyright 2026 The spinalg Authors
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

#include "spinalg/algebra.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <ostream>

#include "spinalg/errors.hpp"

namespace spinalg {

Axis axis_from_char(char c) {
  switch (c) {
    case 'x':
    case 'X':
      return Axis::X;
    case 'y':
    case 'Y':
      return Axis::Y;
    case 'z':
    case 'Z':
      return Axis::Z;
    default:
      fail(ErrorCode::InvalidArgument,
           std::string("unknown axis '") + c + "', expected x, y or z");
  }
}

char axis_to_char(Axis a) {
  switch (a) {
    case Axis::X:
      return 'x';
    case Axis::Y:
      return 'y';
    case Axis::Z:
      return 'z';
  }
  fail(ErrorCode::InvalidArgument, "corrupt axis value");
}

Dyadic::Dyadic(std::int64_t numerator, int log2_denominator)
    : num(numerator), log2_den(log2_denominator) {
  if (num == 0) {
    log2_den = 0;
    return;
  }
  while (log2_den < 0) {
    num <<= 1;
    ++log2_den;
  }
  while ((num & 1) == 0 && log2_den > 0) {
    num >>= 1;
    --log2_den;
  }
}

double Dyadic::value() const { return std::ldexp(double(num), -log2_den); }

std::string Dyadic::str() const {
  if (log2_den == 0) return std::to_string(num);
  return std::to_string(num) + "/" + std::to_string(std::int64_t(1) << log2_den);
}

Dyadic Dyadic::operator-() const { return Dyadic(-num, log2_den); }

Dyadic Dyadic::operator+(const Dyadic& o) const {
  const int k = std::max(log2_den, o.log2_den);
  const std::int64_t a = num << (k - log2_den);
  const std::int64_t b = o.num << (k - o.log2_den);
  return Dyadic(a + b, k);
}

Dyadic Dyadic::operator*(const Dyadic& o) const {
  return Dyadic(num * o.num, log2_den + o.log2_den);
}

ProductOperator ProductOperator::from_slots(
    int nuclei, const std::vector<std::pair<int, Axis>>& slots) {
  if (nuclei < 1 || nuclei > kMaxNuclei)
    fail(ErrorCode::InvalidArgument,
         "nucleus count " + std::to_string(nuclei) + " outside [1, " +
             std::to_string(kMaxNuclei) + "]");
  if (slots.empty())
    fail(ErrorCode::InvalidArgument, "product operator needs at least one slot");
  ProductOperator op{nuclei, 0};
  int prev = 0;
  for (const auto& [nucleus, axis] : slots) {
    if (nucleus < 1 || nucleus > nuclei)
      fail(ErrorCode::InvalidArgument,
           "nucleus index " + std::to_string(nucleus) + " out of range 1.." +
               std::to_string(nuclei));
    if (nucleus <= prev)
      fail(ErrorCode::InvalidArgument,
           "nucleus indices must be strictly increasing");
    prev = nucleus;
    op.code |= std::uint32_t(static_cast<int>(axis)) << (2 * (nucleus - 1));
  }
  return op;
}

int ProductOperator::rank() const {
  int r = 0;
  for (std::uint32_t c = code; c != 0; c >>= 2) r += (c & 3u) != 0;
  return r;
}

int ProductOperator::axis_digit(int nucleus) const {
  return int((code >> (2 * (nucleus - 1))) & 3u);
}

std::string ProductOperator::name() const {
  const int r = rank();
  std::string s = r == 1 ? "S[" : "C[";
  bool first = true;
  for (int p = 1; p <= nuclei; ++p) {
    const int d = axis_digit(p);
    if (d == 0) continue;
    if (!first) s += ',';
    first = false;
    s += std::to_string(p);
    s += axis_to_char(static_cast<Axis>(d));
  }
  s += ']';
  return s;
}

Basis::Basis(int nuclei) : nuclei_(nuclei) {
  if (nuclei < 1 || nuclei > kMaxNuclei)
    fail(ErrorCode::InvalidArgument,
         "nucleus count " + std::to_string(nuclei) + " outside [1, " +
             std::to_string(kMaxNuclei) + "]");
  const std::size_t dim = (std::size_t(1) << (2 * nuclei)) - 1;
  codes_.reserve(dim);
  ranks_.reserve(dim);
  std::vector<int> subset;
  for (int r = 1; r <= nuclei; ++r) {
    subset.resize(r);
    std::iota(subset.begin(), subset.end(), 0);
    while (true) {
      std::vector<unsigned> axes(r, 1);
      while (true) {
        std::uint32_t code = 0;
        for (int i = 0; i < r; ++i) code |= axes[i] << (2 * subset[i]);
        codes_.push_back(code);
        ranks_.push_back(std::uint8_t(r));
        int i = r - 1;
        while (i >= 0 && axes[i] == 3) {
          axes[i] = 1;
          --i;
        }
        if (i < 0) break;
        ++axes[i];
      }
      int i = r - 1;
      while (i >= 0 && subset[i] == nuclei - r + i) --i;
      if (i < 0) break;
      ++subset[i];
      for (int j = i + 1; j < r; ++j) subset[j] = subset[j - 1] + 1;
    }
  }
  index_plus_one_.assign(dim + 1, 0);
  for (std::size_t i = 0; i < codes_.size(); ++i)
    index_plus_one_[codes_[i]] = std::uint32_t(i + 1);
}

std::size_t Basis::index_of_code(std::uint32_t code) const {
  if (code == 0 || code >= index_plus_one_.size() || index_plus_one_[code] == 0)
    fail(ErrorCode::InvalidArgument,
         "code " + std::to_string(code) + " is not a basis element");
  return index_plus_one_[code] - 1;
}

bool Basis::contains_code(std::uint32_t code) const {
  return code != 0 && code < index_plus_one_.size() &&
         index_plus_one_[code] != 0;
}

double Basis::rank_weight(std::size_t index) const {
  return std::ldexp(1.0, 2 * ranks_[index]);
}

ProductOperator Basis::op(std::size_t index) const {
  return ProductOperator{nuclei_, codes_[index]};
}

std::string Basis::name(std::size_t index) const { return op(index).name(); }

std::vector<ProductOperator> enumerate_basis(int nuclei) {
  Basis basis(nuclei);
  std::vector<ProductOperator> ops;
  ops.reserve(basis.size());
  for (std::size_t i = 0; i < basis.size(); ++i) ops.push_back(basis.op(i));
  return ops;
}

void SparseCombination::add(std::size_t index, const Dyadic& coeff) {
  if (coeff.zero()) return;
  auto it = std::lower_bound(
      terms_.begin(), terms_.end(), index,
      [](const SparseTerm& t, std::size_t i) { return t.index < i; });
  if (it != terms_.end() && it->index == index) {
    it->coeff = it->coeff + coeff;
    if (it->coeff.zero()) terms_.erase(it);
  } else {
    terms_.insert(it, SparseTerm{index, coeff});
  }
}

SparseCombination SparseCombination::negated() const {
  SparseCombination r;
  r.terms_ = terms_;
  for (auto& t : r.terms_) t.coeff = -t.coeff;
  return r;
}

namespace {

// Levi-Civita sign for a permutation (a, b, c) of (1, 2, 3).
inline int epsilon_sign(unsigned a, unsigned b) {
  return ((b + 3 - a) % 3 == 1) ? 1 : -1;
}

}  // namespace

BracketTerm bracket_codes(int nuclei, std::uint32_t a, std::uint32_t b) {
  int differing = 0;  // slots where both act with different axes
  int matching = 0;   // slots where both act with the same axis
  int sign = 1;
  std::uint32_t out = 0;
  std::uint32_t aa = a, bb = b;
  for (int p = 0; p < nuclei; ++p, aa >>= 2, bb >>= 2) {
    const unsigned da = aa & 3u, db = bb & 3u;
    if (da == 0 || db == 0) {
      out |= (da | db) << (2 * p);
      continue;
    }
    if (da == db) {
      ++matching;  // S_i S_i = 1/4
      continue;
    }
    const unsigned dc = 6u - da - db;
    sign *= epsilon_sign(da, db);
    out |= dc << (2 * p);
    ++differing;
  }
  // AB and BA coincide when an even number of slots pick up the i/2 factor.
  if ((differing & 1) == 0) return {};
  if (((differing - 1) / 2) & 1) sign = -sign;
  return {Dyadic(sign, differing + 2 * matching - 1), out};
}

SparseCombination commute(const Basis& basis, const ProductOperator& a,
                          const ProductOperator& b) {
  if (a.nuclei != b.nuclei || a.nuclei != basis.nuclei())
    fail(ErrorCode::InvalidArgument,
         "commute: operands must share the basis nucleus count");
  SparseCombination result;
  const BracketTerm t = bracket_codes(basis.nuclei(), a.code, b.code);
  if (!t.coeff.zero()) result.add(basis.index_of_code(t.code), t.coeff);
  return result;
}

StructureTable StructureTable::build(int nuclei) {
  if (nuclei < 1 || nuclei > kMaxTableNuclei)
    fail(ErrorCode::InvalidArgument,
         "structure table supports 1.." + std::to_string(kMaxTableNuclei) +
             " nuclei, got " + std::to_string(nuclei));
  StructureTable table(std::make_shared<Basis>(nuclei));
  table.precomputed_ = true;
  const Basis& basis = *table.basis_;
  const std::size_t dim = basis.size();
  for (std::size_t j = 0; j < dim; ++j) {
    for (std::size_t k = j + 1; k < dim; ++k) {
      const BracketTerm t =
          bracket_codes(nuclei, basis.code(j), basis.code(k));
      if (t.coeff.zero()) continue;
      SparseCombination c;
      c.add(basis.index_of_code(t.code), t.coeff);
      table.entries_.emplace((std::uint64_t(j) << 32) | k, std::move(c));
    }
  }
  return table;
}

StructureTable StructureTable::lazy(int nuclei) {
  return StructureTable(std::make_shared<Basis>(nuclei));
}

SparseCombination StructureTable::bracket(std::size_t j, std::size_t k) const {
  const std::size_t dim = basis_->size();
  if (j >= dim || k >= dim)
    fail(ErrorCode::InvalidArgument, "bracket: basis index out of range");
  if (j == k) return {};
  if (precomputed_) {
    const bool swapped = j > k;
    if (swapped) std::swap(j, k);
    auto it = entries_.find((std::uint64_t(j) << 32) | k);
    if (it == entries_.end()) return {};
    return swapped ? it->second.negated() : it->second;
  }
  SparseCombination c;
  const BracketTerm t =
      bracket_codes(basis_->nuclei(), basis_->code(j), basis_->code(k));
  if (!t.coeff.zero()) c.add(basis_->index_of_code(t.code), t.coeff);
  return c;
}

std::size_t StructureTable::term_count() const {
  std::size_t n = 0;
  for (const auto& [key, combo] : entries_) n += combo.size();
  return n;
}

StructureTable build_structure_table(int nuclei) {
  return StructureTable::build(nuclei);
}

SparseGenerator adjoint_generator(const StructureTable& table,
                                  const Eigen::VectorXd& coeffs) {
  const Basis& basis = table.basis();
  const auto dim = Eigen::Index(basis.size());
  if (coeffs.size() != dim)
    fail(ErrorCode::InvalidArgument,
         "coefficient vector has length " + std::to_string(coeffs.size()) +
             ", basis dimension is " + std::to_string(dim));
  const int nuclei = basis.nuclei();
  std::vector<Eigen::Triplet<double>> triplets;
  for (Eigen::Index l = 0; l < dim; ++l) {
    const double h = coeffs[l];
    if (h == 0.0) continue;
    if (!std::isfinite(h))
      fail(ErrorCode::InvalidArgument, "non-finite Hamiltonian coefficient");
    const std::uint32_t lc = basis.code(std::size_t(l));
    for (Eigen::Index j = 0; j < dim; ++j) {
      const BracketTerm t = bracket_codes(nuclei, lc, basis.code(std::size_t(j)));
      if (t.coeff.zero()) continue;
      triplets.emplace_back(int(j), int(basis.index_of_code(t.code)),
                            -h * t.coeff.value());
    }
  }
  SparseGenerator gen(dim, dim);
  gen.setFromTriplets(triplets.begin(), triplets.end());
  gen.makeCompressed();
  return gen;
}

std::pair<std::size_t, std::size_t> dump_table(std::ostream& out,
                                               const StructureTable& table) {
  const Basis& basis = table.basis();
  if (basis.nuclei() > kMaxTableNuclei)
    fail(ErrorCode::InvalidArgument,
         "table dump supports up to " + std::to_string(kMaxTableNuclei) +
             " nuclei");
  const std::size_t dim = basis.size();
  std::vector<std::string> names(dim);
  for (std::size_t i = 0; i < dim; ++i) names[i] = basis.name(i);
  std::size_t lines = 0, terms = 0;
  for (std::size_t j = 0; j < dim; ++j) {
    for (std::size_t k = 0; k < dim; ++k) {
      if (j == k) continue;
      const SparseCombination c = table.bracket(j, k);
      if (c.empty()) continue;
      ++lines;
      terms += c.size();
      out << '[' << names[j] << ',' << names[k] << "] = sum(";
      bool first = true;
      for (const SparseTerm& t : c.terms()) {
        if (!first) out << " + ";
        first = false;
        out << t.coeff.str() << ' ' << names[t.index];
      }
      out << ")\n";
    }
  }
  return {lines, terms};
}

}  // namespace spinalg
