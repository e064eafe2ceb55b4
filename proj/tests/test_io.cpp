#include <gtest/gtest.h>

#include "rop/hardcases.hpp"
#include "rop/io.hpp"

namespace rop {
namespace {

Errc code_of(auto&& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.code();
  }
  return Errc::kInvalidParams;
}

TEST(Io, PolynomialRoundTrip) {
  FieldCtx f(101);
  MPoly q = q_n(5, f);
  std::string text = format_poly(q);
  EXPECT_EQ(text.substr(0, 17), "field p=101 n=5\n2");
  EXPECT_EQ(parse_poly(text), q);
  EXPECT_EQ(format_poly(parse_poly(text)), text);
}

TEST(Io, WhitespaceAndSigns) {
  MPoly a = parse_poly("# comment\nfield p=7 n=3\n  -x1 *x2+ 3 * x3^2\n - 10\n");
  FieldCtx f(7);
  MPoly b = parse_poly_body("6*x1*x2+3*x3^2+4", f, 3);
  EXPECT_EQ(a, b);
  EXPECT_EQ(a.to_string(), "6*x1*x2 + 3*x3^2 + 4");
}

TEST(Io, RofRoundTrip) {
  std::string text = "field p=101 n=3\n(* (+ (leaf 1 1 1) (leaf 2 1 2)) (leaf 3 2 0))\n";
  EXPECT_EQ(detect_input_kind(text), InputKind::kFormula);
  Rof r = parse_rof(text);
  EXPECT_EQ(format_rof(r), text);
  FieldCtx f(101);
  EXPECT_EQ(r.expand(), parse_poly_body("2*x1*x3 + 2*x2*x3 + 6*x3", f, 3));
  EXPECT_EQ(parse_rof("field p=5 n=1\n(const -1)").expand().constant_term().v, 4u);
}

TEST(Io, Errors) {
  EXPECT_EQ(code_of([] { parse_poly(""); }), Errc::kParseError);
  EXPECT_EQ(code_of([] { parse_poly("field p=7\nx1"); }), Errc::kParseError);
  EXPECT_EQ(code_of([] { parse_poly("field p=7 n=2\nx3"); }), Errc::kParseError);
  EXPECT_EQ(code_of([] { parse_poly("field p=7 n=2\nx1 ++ x2"); }), Errc::kParseError);
  EXPECT_EQ(code_of([] { parse_poly("field p=7 n=2\n"); }), Errc::kParseError);
  EXPECT_EQ(code_of([] { parse_poly("field p=8 n=2\nx1"); }), Errc::kNotPrime);
  EXPECT_EQ(code_of([] { parse_rof("field p=7 n=2\n(+ (leaf 1 1 0) (leaf 1 1 0))"); }),
            Errc::kParseError);
  EXPECT_EQ(code_of([] { parse_rof("field p=7 n=2\n(leaf 1 1 0"); }), Errc::kParseError);
  EXPECT_EQ(code_of([] { parse_rof("field p=7 n=2\n(leaf 1 0 0)"); }), Errc::kParseError);
}

TEST(Io, HeaderAndKind) {
  FileHeader h = parse_header("field p=1009 n=12\nx1");
  EXPECT_EQ(h.p, 1009u);
  EXPECT_EQ(h.n, 12u);
  EXPECT_EQ(detect_input_kind("field p=3 n=1\nx1"), InputKind::kPolynomial);
}

}  // namespace
}  // namespace rop
