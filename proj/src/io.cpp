#include "rop/io.hpp"

#include <cctype>
#include <charconv>
#include <sstream>
#include <vector>

namespace rop {

namespace {

[[noreturn]] void parse_fail(const std::string& what) {
  throw Error(Errc::kParseError, what);
}

// Drops comment lines; returns (header line, remaining body).
std::pair<std::string, std::string> split_header(std::string_view text) {
  std::istringstream in{std::string(text)};
  std::string line, header, body;
  bool have_header = false;
  while (std::getline(in, line)) {
    std::size_t first = line.find_first_not_of(" \t\r");
    if (first == std::string::npos || line[first] == '#') continue;
    if (!have_header) {
      header = line.substr(first);
      have_header = true;
    } else {
      body += line;
      body += '\n';
    }
  }
  if (!have_header) parse_fail("missing header line 'field p=<p> n=<arity>'");
  return {header, body};
}

u64 parse_u64(std::string_view s, const char* what) {
  u64 v = 0;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || ptr != s.data() + s.size() || s.empty()) {
    parse_fail(std::string("bad ") + what + " '" + std::string(s) + "'");
  }
  return v;
}

FileHeader header_from_line(const std::string& line) {
  std::istringstream in(line);
  std::string word;
  in >> word;
  if (word != "field") parse_fail("header must start with 'field'");
  FileHeader h;
  bool have_p = false, have_n = false;
  while (in >> word) {
    if (word.rfind("p=", 0) == 0) {
      h.p = parse_u64(std::string_view(word).substr(2), "modulus");
      have_p = true;
    } else if (word.rfind("n=", 0) == 0) {
      h.n = static_cast<std::size_t>(
          parse_u64(std::string_view(word).substr(2), "arity"));
      have_n = true;
    } else {
      parse_fail("unexpected header token '" + word + "'");
    }
  }
  if (!have_p || !have_n) parse_fail("header needs both p= and n=");
  if (h.n > kMaxArity) parse_fail("arity exceeds " + std::to_string(kMaxArity));
  return h;
}

class PolyParser {
 public:
  PolyParser(std::string src, const FieldCtx& f, std::size_t n)
      : s_(std::move(src)), f_(f), n_(n) {}

  MPoly parse() {
    std::vector<Term> terms;
    if (s_.empty()) parse_fail("empty polynomial body");
    bool negate = false;
    if (peek() == '-' || peek() == '+') negate = s_[pos_++] == '-';
    for (;;) {
      Term t = parse_term();
      if (negate) t.coeff = f_.neg(t.coeff);
      terms.push_back(t);
      if (pos_ == s_.size()) break;
      char op = s_[pos_++];
      if (op != '+' && op != '-') {
        parse_fail(std::string("unexpected '") + op + "' at offset " +
                   std::to_string(pos_ - 1));
      }
      negate = op == '-';
    }
    return MPoly::from_terms(f_, n_, std::move(terms));
  }

 private:
  char peek() const { return pos_ < s_.size() ? s_[pos_] : '\0'; }

  Term parse_term() {
    Term t{Monomial{}, f_.one()};
    for (;;) {
      if (std::isdigit(static_cast<unsigned char>(peek()))) {
        t.coeff = f_.mul(t.coeff, f_.from_u64(parse_number()));
      } else if (peek() == 'x') {
        ++pos_;
        u64 idx = parse_number();
        if (idx < 1 || idx > n_) {
          parse_fail("variable x" + std::to_string(idx) + " outside x1..x" +
                     std::to_string(n_));
        }
        unsigned e = 1;
        if (peek() == '^') {
          ++pos_;
          u64 ev = parse_number();
          if (ev > 255) parse_fail("exponent too large");
          e = static_cast<unsigned>(ev);
        }
        std::size_t v = static_cast<std::size_t>(idx - 1);
        t.mono.set_exponent(v, t.mono.exponent(v) + e);
      } else {
        parse_fail("expected a number or variable at offset " +
                   std::to_string(pos_));
      }
      if (peek() != '*') return t;
      ++pos_;
    }
  }

  u64 parse_number() {
    std::size_t start = pos_;
    while (std::isdigit(static_cast<unsigned char>(peek()))) ++pos_;
    if (start == pos_) parse_fail("expected digits at offset " + std::to_string(start));
    std::string_view digits(s_.data() + start, pos_ - start);
    // Reduce long decimal literals digit by digit.
    if (digits.size() > 18) {
      u64 v = 0;
      for (char c : digits) {
        v = f_.add(f_.mul({v}, {10 % f_.modulus()}), f_.from_u64(c - '0')).v;
      }
      return v;
    }
    return parse_u64(digits, "number");
  }

  std::string s_;
  FieldCtx f_;
  std::size_t n_;
  std::size_t pos_ = 0;
};

class RofParser {
 public:
  RofParser(const std::string& src, const FieldCtx& f, std::size_t n)
      : f_(f), n_(n) {
    std::string cur;
    for (char c : src) {
      if (c == '(' || c == ')' || std::isspace(static_cast<unsigned char>(c))) {
        if (!cur.empty()) tokens_.push_back(std::move(cur));
        cur.clear();
        if (c == '(' || c == ')') tokens_.emplace_back(1, c);
      } else {
        cur += c;
      }
    }
    if (!cur.empty()) tokens_.push_back(cur);
  }

  Rof parse() {
    Rof r = parse_node();
    if (pos_ != tokens_.size()) parse_fail("trailing tokens after formula");
    return r;
  }

 private:
  const std::string& next() {
    if (pos_ >= tokens_.size()) parse_fail("unexpected end of formula");
    return tokens_[pos_++];
  }

  void expect(const char* tok) {
    if (next() != tok) parse_fail(std::string("expected '") + tok + "'");
  }

  Felt field_value(const std::string& tok) {
    bool neg = !tok.empty() && tok[0] == '-';
    u64 v = parse_u64(neg ? std::string_view(tok).substr(1) : tok, "constant");
    Felt x = f_.from_u64(v);
    return neg ? f_.neg(x) : x;
  }

  Rof parse_node() {
    expect("(");
    std::string head = next();
    Rof out = [&] {
      if (head == "leaf") {
        u64 var = parse_u64(next(), "leaf variable");
        if (var < 1 || var > n_) parse_fail("leaf variable outside 1..n");
        Felt alpha = field_value(next());
        Felt beta = field_value(next());
        return Rof::leaf(f_, n_, static_cast<std::size_t>(var - 1), alpha, beta);
      }
      if (head == "const") return Rof::constant(f_, n_, field_value(next()));
      if (head == "+" || head == "*") {
        Rof l = parse_node();
        Rof r = parse_node();
        return Rof::gate(head == "+" ? GateOp::kPlus : GateOp::kTimes, l, r);
      }
      parse_fail("unknown node '" + head + "'");
    }();
    expect(")");
    return out;
  }

  FieldCtx f_;
  std::size_t n_;
  std::vector<std::string> tokens_;
  std::size_t pos_ = 0;
};

std::string strip_ws(const std::string& s) {
  std::string out;
  for (char c : s) {
    if (!std::isspace(static_cast<unsigned char>(c))) out += c;
  }
  return out;
}

}  // namespace

FileHeader parse_header(std::string_view text) {
  return header_from_line(split_header(text).first);
}

InputKind detect_input_kind(std::string_view text) {
  auto [header, body] = split_header(text);
  std::size_t first = body.find_first_not_of(" \t\r\n");
  if (first != std::string::npos && body[first] == '(') return InputKind::kFormula;
  return InputKind::kPolynomial;
}

MPoly parse_poly_body(std::string_view body, const FieldCtx& ctx,
                      std::size_t arity) {
  return PolyParser(strip_ws(std::string(body)), ctx, arity).parse();
}

MPoly parse_poly(std::string_view text) {
  auto [header, body] = split_header(text);
  FileHeader h = header_from_line(header);
  FieldCtx f(h.p);
  return parse_poly_body(body, f, h.n);
}

std::string format_poly(const MPoly& p) {
  return "field p=" + std::to_string(p.ctx().modulus()) +
         " n=" + std::to_string(p.arity()) + "\n" + p.to_string() + "\n";
}

Rof parse_rof(std::string_view text) {
  auto [header, body] = split_header(text);
  FileHeader h = header_from_line(header);
  FieldCtx f(h.p);
  try {
    return RofParser(body, f, h.n).parse();
  } catch (const Error& e) {
    if (e.code() == Errc::kReadOnceViolation || e.code() == Errc::kPreconditionFailure) {
      parse_fail(e.what());
    }
    throw;
  }
}

std::string format_rof(const Rof& r) {
  return "field p=" + std::to_string(r.ctx().modulus()) +
         " n=" + std::to_string(r.arity()) + "\n" + r.to_string() + "\n";
}

}  // namespace rop
