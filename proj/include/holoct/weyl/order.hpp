#ifndef HOLOCT_WEYL_ORDER_HPP
#define HOLOCT_WEYL_ORDER_HPP

#include <string>
#include <vector>

#include "holoct/weyl/monomial.hpp"

namespace holoct {

enum class OrderKind { Grevlex, Lex, Block, Weight };
enum class TieBreak { TermOverPosition, PositionOverTerm };

// Monomial order on x^a d^b e_i. Variables are indexed 0..2n-1 with x_i at
// i and d_i at n + i. Smaller component index means larger basis vector.
class MonomialOrder {
 public:
  // grevlex with x_1 > ... > x_n > d_1 > ... > d_n.
  static MonomialOrder grevlex(int n);
  // grevlex on x, ties broken by grevlex on d.
  static MonomialOrder block(int n);
  // Lexicographic along the given variable sequence (a permutation of 0..2n-1).
  static MonomialOrder lex(int n, std::vector<int> sequence);
  // Weighted degree, ties broken by grevlex. Weights must be nonnegative.
  static MonomialOrder weight(int n, std::vector<int> weights);

  MonomialOrder with_tiebreak(TieBreak tb) const;
  // Compare the d-exponent of variable 0 before anything else.
  MonomialOrder with_dt_elimination() const;

  int compare(const Monomial& a, const Monomial& b) const;
  bool less(const Monomial& a, const Monomial& b) const { return compare(a, b) < 0; }
  bool greater(const Monomial& a, const Monomial& b) const { return compare(a, b) > 0; }

  // Whether {a : x^a g <= eta} is finite for every g and eta in rank r.
  bool hypothesis_finiteness(int rank) const;

  // Largest monomial of total degree s over components 0..rank-1.
  Monomial largest_of_degree(unsigned s, int rank) const;
  // Same by exhaustive scan; reference for the closed forms.
  Monomial largest_of_degree_by_scan(unsigned s, int rank) const;

  OrderKind kind() const { return kind_; }
  TieBreak tiebreak() const { return tiebreak_; }
  bool dt_elimination() const { return dt_elim_; }
  int arity() const { return n_; }
  const std::vector<int>& sequence() const { return seq_; }
  const std::vector<int>& weights() const { return weights_; }

  bool operator==(const MonomialOrder&) const = default;

 private:
  MonomialOrder(OrderKind kind, int n) : kind_(kind), n_(n) {}
  int compare_terms(const Monomial& a, const Monomial& b) const;

  OrderKind kind_;
  int n_;
  TieBreak tiebreak_ = TieBreak::TermOverPosition;
  bool dt_elim_ = false;
  std::vector<int> seq_;
  std::vector<int> weights_;
};

// Enumerates the shadows x^a d^b of total degree s in 2n variables.
std::vector<Monomial> monomials_of_degree(unsigned s, int n);

}  // namespace holoct

#endif
