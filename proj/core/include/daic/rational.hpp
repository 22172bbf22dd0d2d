#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <cmath>
#include <string>
#include <string_view>

#include "daic/value.hpp"

namespace daic {

// Exact arithmetic for additive kernels on tiny graphs, where float
// association order would otherwise blur equality checks.
using Rational = boost::multiprecision::cpp_rational;

template <>
struct ValueTraits<Rational> {
  static constexpr std::string_view kind = "rational";

  static bool equal(const Rational& a, const Rational& b) { return a == b; }

  static double distance(const Rational& a, const Rational& b) {
    return std::abs(static_cast<double>(a - b));
  }

  static bool close(const Rational& a, const Rational& b, double tol) {
    if (a == b) return true;
    if (tol == 0.0) return false;
    const double x = static_cast<double>(a);
    const double y = static_cast<double>(b);
    const double scale = std::max({1.0, std::abs(x), std::abs(y)});
    return std::abs(static_cast<double>(a - b)) <= tol * scale;
  }

  static double to_real(const Rational& a) { return static_cast<double>(a); }

  static std::string format(const Rational& a) { return a.str(); }

  static Rational parse(std::string_view text) {
    try {
      return Rational(std::string(text));
    } catch (const std::exception&) {
      throw Error("bad rational value '" + std::string(text) + "'");
    }
  }
};

}  // namespace daic
