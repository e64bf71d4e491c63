#ifndef HOLOCT_ARITH_RECONSTRUCT_HPP
#define HOLOCT_ARITH_RECONSTRUCT_HPP

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "holoct/arith/prime_field.hpp"
#include "holoct/arith/rational.hpp"
#include "holoct/arith/rational_function.hpp"

namespace holoct {

struct Residue {
  Integer value;
  Integer modulus;
};

// Chinese remaindering; the result is canonical in [0, prod of moduli).
Residue crt_combine(const std::vector<Residue>& residues);

// p/q with q*u = p mod n, |p|, q <= sqrt(n/2) and gcd(q, n) = 1.
std::optional<Rational> rational_reconstruct(const Integer& u, const Integer& n);

using FpPoly = upoly::Poly<PrimeField>;
using FpRatFun = FpT::Element;

struct PointValue {
  std::uint32_t point;
  std::uint32_t value;
};

// Rational function with numerator degree <= dn and denominator degree <= dd
// through the given samples. The first dn + dd + 1 samples determine the
// candidate; every further sample must agree with it.
std::optional<FpRatFun> cauchy_interpolate(const PrimeField& k, const std::vector<PointValue>& points,
                                           int dn, int dd);

FpPoly interpolate_polynomial(const PrimeField& k, const std::vector<PointValue>& points);

struct Sample {
  std::uint32_t point;
  std::vector<std::uint32_t> values;
};

struct AdaptiveOptions {
  int start_num = 1;
  int start_den = 1;
  int extra_checks = 1;
  std::size_t max_points = 1u << 14;
};

struct AdaptiveResult {
  std::vector<FpRatFun> functions;
  int max_num_degree = 0;
  int max_den_degree = 0;
  std::size_t points_used = 0;
  int rounds = 0;
};

// Raised when the point budget runs out; carries the last candidate of each
// entry (empty where no candidate was found).
class ReconstructionExhausted : public BudgetExhausted {
 public:
  ReconstructionExhausted(const std::string& what, std::vector<std::optional<FpRatFun>> best)
      : BudgetExhausted(what), best_(std::move(best)) {}
  const std::vector<std::optional<FpRatFun>>& best() const { return best_; }

 private:
  std::vector<std::optional<FpRatFun>> best_;
};

// Produces `count` samples at fresh, pairwise distinct points never used
// before for this reconstruction.
using BatchSampler = std::function<std::vector<Sample>(std::size_t count)>;

// Simultaneous reconstruction of several rational functions over F_p from
// point values. Degree bounds start at the configured values and double per
// round; each round draws fresh samples, fits dn + dd + 1 of them and
// accepts an entry only if the extra samples agree.
AdaptiveResult adaptive_reconstruct(const PrimeField& k, std::size_t entries, const BatchSampler& sample,
                                    const AdaptiveOptions& opts = {});

}  // namespace holoct

#endif
