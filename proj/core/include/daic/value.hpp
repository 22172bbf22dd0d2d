#pragma once

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstddef>
#include <string>
#include <string_view>
#include <system_error>
#include <vector>

#include "daic/errors.hpp"

namespace daic {

// Per-label distribution carried by Adsorption-style kernels.
template <class Scalar>
using LabelVector = std::vector<Scalar>;

// Operations the engine needs from a value type beyond the kernel's own
// algebra: exact and tolerant comparison, a distance, and text I/O.
//
// Tolerant comparison: |a - b| <= tol * max(1, |a|, |b|), i.e. absolute for
// magnitudes up to 1 and relative above. Equal infinities compare equal.
template <class V>
struct ValueTraits;

template <>
struct ValueTraits<double> {
  static constexpr std::string_view kind = "real";

  static bool equal(double a, double b) { return a == b; }

  static double distance(double a, double b) {
    if (a == b) return 0.0;
    return std::abs(a - b);
  }

  static bool close(double a, double b, double tol) {
    if (a == b) return true;
    if (!std::isfinite(a) || !std::isfinite(b)) return false;
    const double scale = std::max({1.0, std::abs(a), std::abs(b)});
    return std::abs(a - b) <= tol * scale;
  }

  static double to_real(double a) { return a; }

  static std::string format(double a) {
    if (std::isinf(a)) return a > 0 ? "inf" : "-inf";
    if (std::isnan(a)) return "nan";
    char buf[64];
    auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), a);
    return std::string(buf, ptr);
  }

  static double parse(std::string_view text) {
    if (text == "inf") return HUGE_VAL;
    if (text == "-inf") return -HUGE_VAL;
    double a = 0.0;
    auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), a);
    if (ec != std::errc() || ptr != text.data() + text.size() || text.empty()) {
      throw Error("bad real value '" + std::string(text) + "'");
    }
    return a;
  }
};

template <class Scalar>
struct ValueTraits<LabelVector<Scalar>> {
  using Element = ValueTraits<Scalar>;
  static constexpr std::string_view kind = "labels";

  static bool equal(const LabelVector<Scalar>& a, const LabelVector<Scalar>& b) {
    if (a.size() != b.size()) return false;
    for (std::size_t i = 0; i < a.size(); ++i) {
      if (!Element::equal(a[i], b[i])) return false;
    }
    return true;
  }

  // L1 over components.
  static double distance(const LabelVector<Scalar>& a, const LabelVector<Scalar>& b) {
    if (a.size() != b.size()) return HUGE_VAL;
    double total = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) total += Element::distance(a[i], b[i]);
    return total;
  }

  static bool close(const LabelVector<Scalar>& a, const LabelVector<Scalar>& b, double tol) {
    if (a.size() != b.size()) return false;
    for (std::size_t i = 0; i < a.size(); ++i) {
      if (!Element::close(a[i], b[i], tol)) return false;
    }
    return true;
  }

  static std::string format(const LabelVector<Scalar>& a) {
    std::string out;
    for (std::size_t i = 0; i < a.size(); ++i) {
      if (i) out += ',';
      out += Element::format(a[i]);
    }
    return out;
  }

  static LabelVector<Scalar> parse(std::string_view text) {
    LabelVector<Scalar> out;
    while (true) {
      const auto comma = text.find(',');
      out.push_back(Element::parse(text.substr(0, comma)));
      if (comma == std::string_view::npos) break;
      text.remove_prefix(comma + 1);
    }
    return out;
  }
};

}  // namespace daic
