#pragma once

#include <cstddef>
#include <string>
#include <string_view>

#include "rop/mpoly.hpp"
#include "rop/rof.hpp"

namespace rop {

// Text files start with a header line `field p=<p> n=<arity>`; the body is
// either a polynomial (`2*x1*x2 + 100*x3^2 + 1`) or a read-once formula
// s-expression (`(* (+ (leaf 1 1 1) (leaf 2 1 2)) (leaf 3 2 0))`).
// Variables are 1-based in text. Lines starting with '#' are ignored.

struct FileHeader {
  u64 p = 0;
  std::size_t n = 0;
};

enum class InputKind { kPolynomial, kFormula };

FileHeader parse_header(std::string_view text);
InputKind detect_input_kind(std::string_view text);

MPoly parse_poly(std::string_view text);
// Body only, against a known field and arity.
MPoly parse_poly_body(std::string_view body, const FieldCtx& ctx,
                      std::size_t arity);
std::string format_poly(const MPoly& p);

Rof parse_rof(std::string_view text);
std::string format_rof(const Rof& r);

}  // namespace rop
