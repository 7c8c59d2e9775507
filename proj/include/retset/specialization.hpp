#pragma once

#include "retset/finite_field.hpp"
#include "retset/sparse_poly.hpp"

#include <cstdint>
#include <memory>
#include <random>

namespace retset {

/// Field embedding F_{p^a} -> F_{p^b} (a | b), sending u to the least root of the source modulus.
class Embedding {
 public:
  Embedding(FieldPtr source, FieldPtr target);

  const FieldPtr& source() const noexcept { return source_; }
  const FieldPtr& target() const noexcept { return target_; }
  FqElem operator()(const FqElem& a) const;

 private:
  FieldPtr source_;
  FieldPtr target_;
  std::vector<FqElem> basis_;  // images of u^i
};

/// Stream of independent random generators derived from one seed.
class SeedStream {
 public:
  explicit SeedStream(std::uint64_t seed) : state_(seed) {}
  std::uint64_t next();
  std::mt19937_64 engine() { return std::mt19937_64(next()); }

 private:
  std::uint64_t state_;
};

/// The ring map t -> theta from polynomials over `source` into `target`.
class Specialization {
 public:
  Specialization(std::shared_ptr<const Embedding> emb, FqElem theta) : emb_(std::move(emb)), theta_(theta) {}

  const FieldCtx& target() const noexcept { return *emb_->target(); }
  const FieldPtr& target_ptr() const noexcept { return emb_->target(); }
  const FieldPtr& source_ptr() const noexcept { return emb_->source(); }
  const FqElem& theta() const noexcept { return theta_; }
  FqElem embed(const FqElem& c) const { return (*emb_)(c); }

  FqElem eval(const SparsePoly& f) const;
  /// Least square root in the target field; nullopt when none exists there.
  std::optional<FqElem> sqrt(const FqElem& x) const { return target().sqrt(x); }

 private:
  std::shared_ptr<const Embedding> emb_;
  FqElem theta_;
};

/// Draws specializations with theta uniform in F_{p^k}. Arithmetic happens in F_{p^K} with K the lcm of
/// k and the coefficient field degree, doubled when square roots are needed so that every value of a
/// polynomial at theta has a root there.
class SpecializationSampler {
 public:
  SpecializationSampler(FieldPtr source, unsigned theta_degree, bool need_sqrt);

  const FieldPtr& target() const noexcept { return emb_->target(); }
  unsigned theta_degree() const noexcept { return theta_degree_; }
  /// |F_{p^k}|, the size of the set theta is drawn from.
  BigInt theta_space() const { return big_pow(BigInt(emb_->source()->p()), theta_degree_); }
  Specialization draw(std::mt19937_64& rng) const;
  Specialization at(const FqElem& theta) const { return Specialization(emb_, theta); }

 private:
  std::shared_ptr<const Embedding> emb_;
  unsigned theta_degree_;
};

/// Returns the value as a double in [0, 1] (1 when it exceeds 1).
double bound_as_double(const Rational& r);
/// Nonnegative value in scientific notation with four significant digits, e.g. "1.234e-10"; exact 0 prints "0".
std::string format_scientific(const Rational& r);

}  // namespace retset
