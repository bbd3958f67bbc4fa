#pragma once

#include <cmath>
#include <stdexcept>
#include <string>

namespace wcg {

enum class TransferKind { Srgb, Gamma, Linear };

// Display transfer function. eotf() decodes display code values to linear
// light; oetf() is its inverse.
struct TransferFunction {
  TransferKind kind = TransferKind::Srgb;
  double gamma = 2.2;

  static TransferFunction srgb() { return {TransferKind::Srgb, 0.0}; }
  static TransferFunction linear() { return {TransferKind::Linear, 0.0}; }
  static TransferFunction power(double g) {
    if (!(g >= 1.0 && g <= 4.0))
      throw std::invalid_argument("TransferFunction: gamma exponent outside [1, 4]");
    return {TransferKind::Gamma, g};
  }

  double eotf(double code) const {
    switch (kind) {
      case TransferKind::Srgb:
        return code <= 0.04045 ? code / 12.92
                               : std::pow((code + 0.055) / 1.055, 2.4);
      case TransferKind::Gamma:
        return std::pow(code, gamma);
      case TransferKind::Linear:
        return code;
    }
    return code;
  }

  double oetf(double linear) const {
    switch (kind) {
      case TransferKind::Srgb:
        return linear <= 0.0031308 ? linear * 12.92
                                   : 1.055 * std::pow(linear, 1.0 / 2.4) - 0.055;
      case TransferKind::Gamma:
        return std::pow(linear, 1.0 / gamma);
      case TransferKind::Linear:
        return linear;
    }
    return linear;
  }

  std::string describe() const {
    switch (kind) {
      case TransferKind::Srgb:
        return "srgb";
      case TransferKind::Gamma:
        return "gamma:" + std::to_string(gamma);
      case TransferKind::Linear:
        return "linear";
    }
    return "?";
  }

  // Parses "srgb", "linear", or "gamma:<val>".
  static TransferFunction parse(const std::string& s) {
    if (s == "srgb") return srgb();
    if (s == "linear") return linear();
    if (s.rfind("gamma:", 0) == 0) return power(std::stod(s.substr(6)));
    throw std::invalid_argument("TransferFunction: cannot parse '" + s + "'");
  }
};

}  // namespace wcg
