#pragma once

// BCX text format:
//
//   bcx 1 koszul-left
//   meta name sphere(0,1)
//   meta n 3/4
//   generator t tower 0
//   generator x1 free 1
//   diff t x1 1
//
// `#` starts a comment. The u-power of a diff entry is implied by degrees.

#include <optional>
#include <string>

#include "swfh/exactalg.hpp"
#include "swfh/tcomplex.hpp"

namespace swfh {

struct BcxDocument {
    Complex complex;
    std::optional<Rational> n;
};

/// Throws Error(Syntax) or Error(Validation) with the offending line number.
BcxDocument parse_bcx(const std::string& text);
std::string serialize_bcx(const Complex& c, const std::optional<Rational>& n = std::nullopt);

BcxDocument load_bcx(const std::string& path);
void save_bcx(const std::string& path, const Complex& c, const std::optional<Rational>& n = std::nullopt);

}  // namespace swfh
