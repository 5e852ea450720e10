#pragma once
#include <map>
#include <string>
#include <vector>

#include "pkdyn/scalar.hpp"

namespace pkdyn {

// Graded-lex order on exponent vectors: higher total degree first, ties by
// lex on the declared variable order. std::map with this comparator keeps
// the leading term at begin().
struct GrlexGreater {
  bool operator()(const std::vector<int>& a, const std::vector<int>& b) const;
};

class MultiPoly {
public:
  using TermMap = std::map<std::vector<int>, Scalar, GrlexGreater>;

  explicit MultiPoly(int nvars = 0) : nvars_(nvars) {}
  static MultiPoly constant(int nvars, const Scalar& c);
  static MultiPoly variable(int nvars, int i);
  static MultiPoly monomial(int nvars, const std::vector<int>& e, const Scalar& c);

  int nvars() const { return nvars_; }
  const TermMap& terms() const { return t_; }
  bool is_zero() const { return t_.empty(); }
  bool is_constant() const;
  void add_term(const std::vector<int>& e, const Scalar& c);

  int total_degree() const;  // -1 for zero polynomial
  int degree_in_range(int lo, int hi) const;  // max summed exponent over vars [lo,hi)
  bool is_homogeneous(int* deg = nullptr) const;
  bool exact() const;

  Scalar leading_coeff() const;
  MultiPoly normalized() const;  // leading coefficient scaled to 1

  MultiPoly operator-() const;
  MultiPoly scaled(const Scalar& c) const;
  MultiPoly pow(int e) const;
  MultiPoly derivative(int var) const;
  Scalar eval(const std::vector<Scalar>& x) const;
  MultiPoly subst(const std::vector<MultiPoly>& x) const;

  size_t term_count() const { return t_.size(); }
  std::string str(const std::vector<std::string>& names) const;

  friend MultiPoly operator+(const MultiPoly&, const MultiPoly&);
  friend MultiPoly operator-(const MultiPoly&, const MultiPoly&);
  friend MultiPoly operator*(const MultiPoly&, const MultiPoly&);
  friend bool operator==(const MultiPoly&, const MultiPoly&);

private:
  int nvars_;
  TermMap t_;
};

// GCD over exact coefficients (primitive-part Euclidean recursion), leading
// coefficient normalized to 1. Float coefficients are refused.
MultiPoly poly_gcd(const MultiPoly& a, const MultiPoly& b);

// Exact division; fails if den does not divide num.
MultiPoly divide_exact(const MultiPoly& num, const MultiPoly& den);
bool try_divide_exact(const MultiPoly& num, const MultiPoly& den, MultiPoly& quot);

MultiPoly poly_determinant(std::vector<std::vector<MultiPoly>> m);

// Text syntax: rationals, decimals, variables from `names`, literals
// w (zeta3), i (zeta4), z6 (zeta6), operators + - * ^ and parentheses.
MultiPoly parse_poly(const std::string& text, const std::vector<std::string>& names);

}  // namespace pkdyn
