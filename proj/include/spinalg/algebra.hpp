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

#pragma once

#include <Eigen/Dense>
#include <Eigen/SparseCore>
#include <cstdint>
#include <iosfwd>
#include <memory>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

namespace spinalg {

/// Cartesian axis carried by one nucleus slot of a collective tensor
/// operator. The ordering X < Y < Z fixes the canonical basis ordering.
enum class Axis : int { X = 1, Y = 2, Z = 3 };

Axis axis_from_char(char c);
char axis_to_char(Axis a);

/// Nucleus-count ceiling for basis enumeration and state vectors.
inline constexpr int kMaxNuclei = 10;

/// Nucleus-count ceiling for eagerly built structure tables and table dumps.
inline constexpr int kMaxTableNuclei = 6;

/// Exact dyadic rational num / 2^log2_den, kept normalized (num odd or zero).
/// Products of single-spin operators only ever produce coefficients of this
/// form, so commutators and Jacobi sums can be evaluated without rounding.
struct Dyadic {
  std::int64_t num = 0;
  int log2_den = 0;

  Dyadic() = default;
  Dyadic(std::int64_t numerator, int log2_denominator);

  bool zero() const { return num == 0; }
  double value() const;
  /// Renders "num" when the denominator is 1, else "num/2^k" with the
  /// power of two written out, e.g. "-1/4".
  std::string str() const;

  Dyadic operator-() const;
  Dyadic operator+(const Dyadic& o) const;
  Dyadic operator-(const Dyadic& o) const { return *this + (-o); }
  Dyadic operator*(const Dyadic& o) const;
  bool operator==(const Dyadic& o) const = default;
};

/// One collective tensor basis element: which nuclei it involves and which
/// axis each involved nucleus carries. Encoded base-4, one digit per nucleus
/// (0 = not involved, 1..3 = X..Z), nucleus 1 in the lowest digit.
struct ProductOperator {
  int nuclei = 0;
  std::uint32_t code = 0;

  /// Slots as (nucleus index 1..n, axis) pairs, strictly increasing.
  static ProductOperator from_slots(
      int nuclei, const std::vector<std::pair<int, Axis>>& slots);

  int rank() const;
  /// 0 when the nucleus is not involved, else 1..3 (X..Z).
  int axis_digit(int nucleus) const;
  /// "S[1z]" for rank 1, "C[1x,2z]" for higher rank.
  std::string name() const;

  bool operator==(const ProductOperator& o) const = default;
};

/// Canonical ordering of the 4^n - 1 collective tensor operators: ascending
/// rank, then lexicographic in the involved nucleus indices, then
/// lexicographic in the axes.
class Basis {
 public:
  explicit Basis(int nuclei);

  int nuclei() const { return nuclei_; }
  std::size_t size() const { return codes_.size(); }
  std::uint32_t code(std::size_t index) const { return codes_[index]; }
  std::size_t index_of_code(std::uint32_t code) const;
  bool contains_code(std::uint32_t code) const;
  int rank(std::size_t index) const { return ranks_[index]; }
  /// 4^rank; the weight under which the adjoint generator is antisymmetric.
  double rank_weight(std::size_t index) const;
  ProductOperator op(std::size_t index) const;
  std::string name(std::size_t index) const;

 private:
  int nuclei_ = 0;
  std::vector<std::uint32_t> codes_;
  std::vector<std::uint32_t> index_plus_one_;  // code -> canonical index + 1
  std::vector<std::uint8_t> ranks_;
};

std::vector<ProductOperator> enumerate_basis(int nuclei);

struct SparseTerm {
  std::size_t index = 0;
  Dyadic coeff;
  bool operator==(const SparseTerm& o) const = default;
};

/// Linear combination of basis elements with exact dyadic coefficients.
/// Terms are kept sorted by basis index; zero coefficients are dropped.
class SparseCombination {
 public:
  void add(std::size_t index, const Dyadic& coeff);
  bool empty() const { return terms_.empty(); }
  std::size_t size() const { return terms_.size(); }
  const std::vector<SparseTerm>& terms() const { return terms_; }
  SparseCombination negated() const;
  bool operator==(const SparseCombination& o) const = default;

 private:
  std::vector<SparseTerm> terms_;
};

/// Single-term commutator [A, B] = i * coeff * B(code). A zero coefficient
/// means the bracket vanishes. Products of two tensor operators never expand
/// over more than one basis element, so this is the full result.
struct BracketTerm {
  Dyadic coeff;
  std::uint32_t code = 0;
};

/// Commutator of two basis codes via the per-nucleus single-spin algebra
/// S_a S_b = delta_ab/4 + (i/2) eps_abc S_c. Exact.
BracketTerm bracket_codes(int nuclei, std::uint32_t a, std::uint32_t b);

/// [a, b] = i * sum_l f_l B_l expanded over the canonical basis.
SparseCombination commute(const Basis& basis, const ProductOperator& a,
                          const ProductOperator& b);

/// All structure constants f in [B_j, B_k] = i sum_l f_jkl B_l. Eager mode
/// stores every nonzero pair j < k; lazy mode evaluates pairs on demand and
/// stores nothing, which keeps large-n generators cheap. Immutable after
/// construction; safe to share across threads.
class StructureTable {
 public:
  /// Precomputes all pairs. Requires nuclei <= kMaxTableNuclei.
  static StructureTable build(int nuclei);
  /// On-demand evaluation, any nuclei <= kMaxNuclei.
  static StructureTable lazy(int nuclei);

  const Basis& basis() const { return *basis_; }
  std::shared_ptr<const Basis> basis_ptr() const { return basis_; }
  bool precomputed() const { return precomputed_; }

  /// Bracket for any index order; antisymmetry is applied for j > k.
  SparseCombination bracket(std::size_t j, std::size_t k) const;

  /// Number of stored pairs j < k with nonzero bracket (eager mode only).
  std::size_t stored_pairs() const { return entries_.size(); }
  std::size_t term_count() const;

 private:
  explicit StructureTable(std::shared_ptr<const Basis> basis)
      : basis_(std::move(basis)) {}

  std::shared_ptr<const Basis> basis_;
  bool precomputed_ = false;
  std::unordered_map<std::uint64_t, SparseCombination> entries_;
};

StructureTable build_structure_table(int nuclei);

using SparseGenerator = Eigen::SparseMatrix<double, Eigen::RowMajor>;

/// Generator A of the classical evolution d<C_j>/dt = sum_k A_jk <C_k> for
/// the Hamiltonian H = sum_l coeffs_l B_l, i.e. A_jk = -sum_l coeffs_l f_ljk.
SparseGenerator adjoint_generator(const StructureTable& table,
                                  const Eigen::VectorXd& coeffs);

/// Line-oriented dump, one nonzero commutator per ordered pair (j, k):
///   [<op_j>,<op_k>] = sum(<coeff> <op_l>)
/// Coefficients are exact fractions such as -1 or 1/4. Returns the emitted
/// (line, term) counts.
std::pair<std::size_t, std::size_t> dump_table(std::ostream& out,
                                               const StructureTable& table);

}  // namespace spinalg
