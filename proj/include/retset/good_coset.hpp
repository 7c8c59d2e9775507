#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace retset {

using IntVec = std::vector<std::int64_t>;

/// One defining condition of a good subgroup of Z^d. Indices are 1-based as in the text form.
struct Requirement {
  enum class Kind { Zero, Mult, Eq, Double };
  Kind kind = Kind::Zero;
  unsigned i = 1, j = 1;
  std::int64_t D = 1;

  static Requirement zero(unsigned i) { return {Kind::Zero, i, i, 1}; }
  static Requirement mult(unsigned i, std::int64_t D) { return {Kind::Mult, i, i, D}; }
  static Requirement eq(unsigned i, unsigned j) { return {Kind::Eq, i, j, 1}; }
  /// n_i = 2 n_j.
  static Requirement twice(unsigned i, unsigned j) { return {Kind::Double, i, j, 1}; }

  bool holds(const IntVec& v) const;
  std::string str() const;
  bool operator==(const Requirement&) const = default;
};

/// D * eta with eta_k in {0} or powers of two.
struct Generator {
  std::int64_t D = 1;
  IntVec eta;
  bool operator==(const Generator&) const = default;
};

class GoodSubgroup {
 public:
  GoodSubgroup() = default;
  /// Throws DomainError for indices outside 1..d or D < 1.
  GoodSubgroup(unsigned d, std::vector<Requirement> reqs);

  unsigned dim() const { return d_; }
  const std::vector<Requirement>& requirements() const { return reqs_; }
  /// Pairwise orthogonal generators with least positive multipliers; empty for the trivial subgroup.
  const std::vector<Generator>& canonical() const { return gens_; }
  bool contains(const IntVec& v) const;
  /// Membership in sum Z D_i eta_i.
  bool span_contains(const IntVec& v) const;

 private:
  unsigned d_ = 0;
  std::vector<Requirement> reqs_;
  std::vector<Generator> gens_;
};

std::vector<Generator> canonicalize(const GoodSubgroup& H);
/// "[2*(1,1), 1*(0,0,1)]".
std::string to_string(const std::vector<Generator>& gens);

/// {v in N^d : v >= rect, v - base in H}.
struct GoodCoset {
  IntVec base;
  IntVec rect;
  GoodSubgroup H;

  GoodCoset() = default;
  GoodCoset(IntVec base, IntVec rect, GoodSubgroup H);

  unsigned dim() const { return H.dim(); }
  bool member(const IntVec& v) const;
  /// Members in [0, W]^d, lexicographically ordered.
  std::vector<IntVec> enumerate(std::int64_t W) const;
  bool empty() const;
  /// "coset base=(1,0) rect=(0,0) req=[eq(1,2), mult(1,2)]".
  std::string str() const;
};

/// Coset whose members are the common members, with base moved into the rectangle; nullopt when empty.
std::optional<GoodCoset> intersect(const GoodCoset& A, const GoodCoset& B);

GoodCoset parse_coset(const std::string& text);
std::string to_string(const std::optional<GoodCoset>& c);

}  // namespace retset
