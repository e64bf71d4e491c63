#include "holoct/arith/reconstruct.hpp"

#include <set>
#include <stdexcept>

namespace holoct {

Residue crt_combine(const std::vector<Residue>& residues) {
  Residue acc{Integer(0), Integer(1)};
  for (const auto& r : residues) {
    if (r.modulus <= 0) throw std::invalid_argument("crt_combine: nonpositive modulus");
    Integer g;
    mpz_gcd(g.get_mpz_t(), acc.modulus.get_mpz_t(), r.modulus.get_mpz_t());
    if (g != 1) throw std::invalid_argument("crt_combine: moduli not pairwise coprime");
    Integer inv;
    mpz_invert(inv.get_mpz_t(), acc.modulus.get_mpz_t(), r.modulus.get_mpz_t());
    Integer delta = r.value - acc.value;
    mpz_mod(delta.get_mpz_t(), delta.get_mpz_t(), r.modulus.get_mpz_t());
    delta = delta * inv;
    mpz_mod(delta.get_mpz_t(), delta.get_mpz_t(), r.modulus.get_mpz_t());
    acc.value += acc.modulus * delta;
    acc.modulus *= r.modulus;
  }
  return acc;
}

std::optional<Rational> rational_reconstruct(const Integer& u, const Integer& n) {
  if (n <= 0 || u < 0 || u >= n) throw std::invalid_argument("rational_reconstruct: 0 <= u < n required");
  Integer half = n / 2;
  Integer bound;
  mpz_sqrt(bound.get_mpz_t(), half.get_mpz_t());
  Integer r0 = n, r1 = u, s0 = 0, s1 = 1;
  while (r1 > bound) {
    Integer q = r0 / r1;
    Integer r2 = r0 - q * r1;
    r0 = r1;
    r1 = r2;
    Integer s2 = s0 - q * s1;
    s0 = s1;
    s1 = s2;
  }
  Integer num = r1, den = s1;
  if (den < 0) {
    num = -num;
    den = -den;
  }
  if (den == 0 || den > bound) return std::nullopt;
  Integer g;
  mpz_gcd(g.get_mpz_t(), den.get_mpz_t(), n.get_mpz_t());
  if (g != 1) return std::nullopt;
  Rational q(num, den);
  q.canonicalize();
  return q;
}

FpPoly interpolate_polynomial(const PrimeField& k, const std::vector<PointValue>& points) {
  // Newton divided differences, then expansion into the monomial basis.
  std::size_t n = points.size();
  std::vector<std::uint32_t> c(n);
  for (std::size_t i = 0; i < n; ++i) c[i] = points[i].value;
  for (std::size_t j = 1; j < n; ++j) {
    for (std::size_t i = n - 1; i >= j; --i) {
      auto den = k.sub(points[i].point, points[i - j].point);
      c[i] = k.div(k.sub(c[i], c[i - 1]), den);
    }
  }
  FpPoly r;
  for (std::size_t i = n; i-- > 0;) {
    // r = r * (t - a_i) + c_i
    FpPoly next(r.size() + 1, 0);
    for (std::size_t d = 0; d < r.size(); ++d) {
      next[d + 1] = k.add(next[d + 1], r[d]);
      next[d] = k.sub(next[d], k.mul(r[d], points[i].point));
    }
    next[0] = k.add(next[0], c[i]);
    upoly::trim(k, next);
    r = std::move(next);
  }
  return r;
}

std::optional<FpRatFun> cauchy_interpolate(const PrimeField& k, const std::vector<PointValue>& points, int dn,
                                           int dd) {
  if (dn < 0 || dd < 0) throw std::invalid_argument("cauchy_interpolate: negative degree bound");
  std::size_t need = static_cast<std::size_t>(dn + dd + 1);
  if (points.size() < need) throw std::invalid_argument("cauchy_interpolate: not enough points");
  std::set<std::uint32_t> seen;
  for (const auto& p : points)
    if (!seen.insert(p.point).second) throw std::invalid_argument("cauchy_interpolate: repeated abscissa");

  std::vector<PointValue> window(points.begin(), points.begin() + static_cast<long>(need));
  FpPoly u = interpolate_polynomial(k, window);
  FpPoly m{1};
  for (const auto& p : window) m = upoly::mul(k, m, FpPoly{k.neg(p.point), 1});

  FpPoly r0 = m, r1 = u, t0, t1{1};
  while (upoly::degree<PrimeField>(r1) > dn) {
    auto [q, rem] = upoly::divmod(k, r0, r1);
    FpPoly t2 = upoly::sub(k, t0, upoly::mul(k, q, t1));
    r0 = std::move(r1);
    r1 = std::move(rem);
    t0 = std::move(t1);
    t1 = std::move(t2);
  }
  FpT field(k);
  FpRatFun cand;
  if (r1.empty()) {
    cand = field.zero();
  } else {
    if (upoly::degree<PrimeField>(t1) > dd) return std::nullopt;
    if (upoly::gcd(k, r1, t1).size() > 1) return std::nullopt;
    cand = field.make(r1, t1);
  }
  for (const auto& p : points) {
    auto d = upoly::evaluate(k, cand.den, p.point);
    if (d == 0) return std::nullopt;
    if (k.div(upoly::evaluate(k, cand.num, p.point), d) != p.value) return std::nullopt;
  }
  return cand;
}

AdaptiveResult adaptive_reconstruct(const PrimeField& k, std::size_t entries, const BatchSampler& sample,
                                    const AdaptiveOptions& opts) {
  AdaptiveResult out;
  out.functions.resize(entries);
  std::vector<std::optional<FpRatFun>> best(entries);
  std::vector<std::size_t> pending(entries);
  for (std::size_t i = 0; i < entries; ++i) pending[i] = i;
  int dn = std::max(opts.start_num, 0), dd = std::max(opts.start_den, 0);
  while (!pending.empty()) {
    std::size_t fit = static_cast<std::size_t>(dn + dd + 1);
    std::size_t need = fit + static_cast<std::size_t>(std::max(opts.extra_checks, 1));
    if (out.points_used + need > opts.max_points) {
      throw ReconstructionExhausted("adaptive_reconstruct: point budget exhausted", best);
    }
    std::vector<Sample> batch = sample(need);
    if (batch.size() != need) throw std::logic_error("adaptive_reconstruct: sampler returned wrong count");
    out.points_used += need;
    ++out.rounds;
    std::vector<std::size_t> still;
    std::vector<PointValue> pts(need);
    for (std::size_t e : pending) {
      for (std::size_t i = 0; i < need; ++i) pts[i] = {batch[i].point, batch[i].values.at(e)};
      auto cand = cauchy_interpolate(k, pts, dn, dd);
      if (cand) {
        out.max_num_degree = std::max(out.max_num_degree, upoly::degree<PrimeField>(cand->num));
        out.max_den_degree = std::max(out.max_den_degree, upoly::degree<PrimeField>(cand->den));
        best[e] = *cand;
        out.functions[e] = std::move(*cand);
      } else {
        still.push_back(e);
      }
    }
    pending = std::move(still);
    dn = std::max(1, 2 * dn);
    dd = std::max(1, 2 * dd);
  }
  return out;
}

}  // namespace holoct
