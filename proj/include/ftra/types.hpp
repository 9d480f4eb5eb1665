// Scalar and dense-matrix aliases shared across the library.
//
// All input data (costs, requirements, capacities) are integral "money"
// units. Fractional quantities are either exact rationals (GMP-backed,
// used by the exact LP backend and the primal-dual clock) or doubles
// (the floating backend). Algorithms over fractional data are templated
// on the scalar so both backends share one code path.
#pragma once

#include <Eigen/Dense>
#include <boost/multiprecision/eigen.hpp>
#include <boost/multiprecision/gmp.hpp>

#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <string>

namespace ftra {

using Money = long long;
using Rational = boost::multiprecision::mpq_rational;
using BigInt = boost::multiprecision::mpz_int;

template <class S>
using VecX = Eigen::Matrix<S, Eigen::Dynamic, 1>;
template <class S>
using MatX = Eigen::Matrix<S, Eigen::Dynamic, Eigen::Dynamic>;

using MoneyVec = VecX<Money>;
using MoneyMat = MatX<Money>;
using Index = Eigen::Index;

struct InternalError : std::logic_error {
  using std::logic_error::logic_error;
};

struct BudgetExceeded : std::runtime_error {
  using std::runtime_error::runtime_error;
};

#define FTRA_REQUIRE(cond, msg)                 \
  do {                                          \
    if (!(cond)) throw ftra::InternalError(msg); \
  } while (0)

namespace num {

// Floating values within this distance of an integer are treated as that
// integer before any floor/ceil/equality decision.
inline constexpr double kSnapEps = 1e-9;

inline bool is_zero(double v) { return std::abs(v) <= kSnapEps; }
inline bool is_zero(const Rational& v) { return v == 0; }

inline bool is_positive(double v) { return v > kSnapEps; }
inline bool is_positive(const Rational& v) { return v > 0; }

inline bool eq_int(double v, Money m) {
  return std::abs(v - static_cast<double>(m)) <= kSnapEps;
}
inline bool eq_int(const Rational& v, Money m) { return v == m; }

inline Money floor_int(double v) {
  const double n = std::round(v);
  if (std::abs(v - n) <= kSnapEps) return static_cast<Money>(n);
  return static_cast<Money>(std::floor(v));
}
inline Money ceil_int(double v) {
  const double n = std::round(v);
  if (std::abs(v - n) <= kSnapEps) return static_cast<Money>(n);
  return static_cast<Money>(std::ceil(v));
}

inline Money floor_int(const Rational& v) {
  BigInt n = numerator(v), d = denominator(v);
  BigInt q = n / d;  // truncates toward zero; denominator is positive
  if (n % d != 0 && n < 0) --q;
  return q.convert_to<Money>();
}
inline Money ceil_int(const Rational& v) { return -floor_int(-v); }

inline double to_double(double v) { return v; }
inline double to_double(const Rational& v) { return v.convert_to<double>(); }

template <class S>
S from_money(Money m) {
  return static_cast<S>(m);
}

inline std::string to_string(double v) { return std::to_string(v); }
inline std::string to_string(const Rational& v) { return v.str(); }

}  // namespace num
}  // namespace ftra
