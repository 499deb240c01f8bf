#include "padsol/series_io.hpp"

#include <algorithm>
#include <cctype>
#include <sstream>

namespace padsol {

namespace {

bool is_canonical_decimal(std::string_view tok) {
  if (tok.empty()) return false;
  for (char c : tok) {
    if (!std::isdigit(static_cast<unsigned char>(c))) return false;
  }
  return tok.size() == 1 || tok.front() != '0';
}

std::vector<std::string_view> split_ws(std::string_view line) {
  std::vector<std::string_view> out;
  std::size_t i = 0;
  while (i < line.size()) {
    while (i < line.size() && line[i] == ' ') ++i;
    std::size_t j = i;
    while (j < line.size() && line[j] != ' ') ++j;
    if (j > i) out.push_back(line.substr(i, j - i));
    i = j;
  }
  return out;
}

std::uint64_t parse_u64(std::string_view tok, const char* what) {
  if (!is_canonical_decimal(tok) || tok.size() > 19) {
    throw ParseError(std::string("bad ") + what + ": '" + std::string(tok) + "'");
  }
  return std::stoull(std::string(tok));
}

// Recursive-descent evaluator over truncated series.
class ExpressionParser {
 public:
  ExpressionParser(std::string_view src, const PadicContext& ctx, std::size_t order)
      : src_(src), ctx_(ctx), order_(order) {}

  TruncSeries run() {
    TruncSeries v = expr();
    skip_ws();
    if (pos_ != src_.size()) fail("unexpected '" + std::string(1, src_[pos_]) + "'");
    return v;
  }

 private:
  [[noreturn]] void fail(const std::string& msg) const {
    throw ParseError("expression '" + std::string(src_) + "' at " + std::to_string(pos_) + ": " + msg);
  }
  void skip_ws() {
    while (pos_ < src_.size() && std::isspace(static_cast<unsigned char>(src_[pos_]))) ++pos_;
  }
  char peek() {
    skip_ws();
    return pos_ < src_.size() ? src_[pos_] : '\0';
  }

  TruncSeries constant(const mpz_class& c) const { return TruncSeries::monomial(ctx_, order_, 0, c); }

  TruncSeries expr() {
    TruncSeries v = term();
    for (;;) {
      const char c = peek();
      if (c == '+') {
        ++pos_;
        v = v + term();
      } else if (c == '-') {
        ++pos_;
        v = v - term();
      } else {
        return v;
      }
    }
  }

  TruncSeries term() {
    TruncSeries v = unary();
    for (;;) {
      const char c = peek();
      if (c == '*') {
        ++pos_;
        v = mul(v, unary());
      } else if (c == '/') {
        ++pos_;
        const TruncSeries d = unary();
        if (d.order() > 0 && mpz_divisible_p(d.rep(0).get_mpz_t(), ctx_.prime().get_mpz_t())) {
          fail("divisor has a non-unit constant term");
        }
        v = mul(v, invert(d));
      } else if (c == 't' || c == '(') {
        v = mul(v, unary());  // implicit product, e.g. "3t", "2(1+t)"
      } else {
        return v;
      }
    }
  }

  TruncSeries unary() {
    const char c = peek();
    if (c == '-') {
      ++pos_;
      return -unary();
    }
    if (c == '+') {
      ++pos_;
      return unary();
    }
    return power();
  }

  TruncSeries power() {
    TruncSeries base = primary();
    if (peek() != '^') return base;
    ++pos_;
    skip_ws();
    const std::size_t start = pos_;
    while (pos_ < src_.size() && std::isdigit(static_cast<unsigned char>(src_[pos_]))) ++pos_;
    if (start == pos_) fail("exponent must be a non-negative integer");
    unsigned long e = std::stoul(std::string(src_.substr(start, pos_ - start)));
    TruncSeries acc = constant(1);
    while (e > 0) {
      if (e & 1) acc = mul(acc, base);
      e >>= 1;
      if (e) base = mul(base, base);
    }
    return acc;
  }

  TruncSeries primary() {
    const char c = peek();
    if (c == '(') {
      ++pos_;
      TruncSeries v = expr();
      if (peek() != ')') fail("missing ')'");
      ++pos_;
      return v;
    }
    if (c == 't') {
      ++pos_;
      return TruncSeries::monomial(ctx_, order_, 1);
    }
    if (std::isdigit(static_cast<unsigned char>(c))) {
      const std::size_t start = pos_;
      while (pos_ < src_.size() && std::isdigit(static_cast<unsigned char>(src_[pos_]))) ++pos_;
      return constant(mpz_class(std::string(src_.substr(start, pos_ - start))));
    }
    fail(c == '\0' ? "unexpected end of input" : "unexpected '" + std::string(1, c) + "'");
  }

  std::string_view src_;
  const PadicContext& ctx_;
  std::size_t order_;
  std::size_t pos_ = 0;
};

}  // namespace

std::string format_series(const TruncSeries& s) {
  std::ostringstream os;
  write_series(os, s);
  return os.str();
}

void write_series(std::ostream& os, const TruncSeries& s) {
  os << s.context().p() << ' ' << s.context().lambda() << ' ' << s.order() << '\n';
  for (std::size_t i = 0; i < s.order(); ++i) os << (i ? " " : "") << s.rep(i).get_str();
  os << '\n';
}

TruncSeries parse_series(std::string_view text) {
  const std::size_t nl = text.find('\n');
  if (nl == std::string_view::npos) throw ParseError("series text needs a header line and a coefficient line");
  const auto header = split_ws(text.substr(0, nl));
  if (header.size() != 3) throw ParseError("series header must be 'p lambda n'");
  const std::uint64_t p = parse_u64(header[0], "p");
  const std::uint64_t lambda = parse_u64(header[1], "lambda");
  const std::uint64_t n = parse_u64(header[2], "n");
  if (lambda < 1 || lambda > 1'000'000) throw ParseError("lambda out of range");

  std::string_view body = text.substr(nl + 1);
  if (!body.empty() && body.back() == '\n') body.remove_suffix(1);
  if (body.find('\n') != std::string_view::npos) throw ParseError("series text has trailing lines");
  const auto toks = split_ws(body);
  if (toks.size() != n) {
    throw ParseError("expected " + std::to_string(n) + " coefficients, found " + std::to_string(toks.size()));
  }

  PadicContext ctx = [&] {
    try {
      return PadicContext(p, static_cast<int>(lambda));
    } catch (const InvalidInput& e) {
      throw ParseError(e.what());
    }
  }();
  std::vector<mpz_class> coeffs;
  coeffs.reserve(n);
  for (auto tok : toks) {
    if (!is_canonical_decimal(tok)) throw ParseError("non-canonical coefficient '" + std::string(tok) + "'");
    mpz_class c{std::string(tok)};
    if (c >= ctx.modulus()) throw ParseError("coefficient " + std::string(tok) + " is not below p^lambda");
    coeffs.push_back(std::move(c));
  }
  return TruncSeries(ctx, std::move(coeffs));
}

TruncSeries read_series(std::istream& is) {
  std::ostringstream buf;
  buf << is.rdbuf();
  return parse_series(buf.str());
}

TruncSeries parse_series_expression(std::string_view expr, const PadicContext& ctx, std::size_t order) {
  return ExpressionParser(expr, ctx, order).run();
}

std::vector<mpz_class> parse_integer_list(std::string_view text) {
  std::vector<mpz_class> out;
  std::size_t i = 0;
  while (true) {
    std::size_t j = text.find(',', i);
    std::string tok(text.substr(i, j == std::string_view::npos ? std::string_view::npos : j - i));
    while (!tok.empty() && std::isspace(static_cast<unsigned char>(tok.front()))) tok.erase(tok.begin());
    while (!tok.empty() && std::isspace(static_cast<unsigned char>(tok.back()))) tok.pop_back();
    std::string_view digits = tok;
    if (!digits.empty() && (digits.front() == '-' || digits.front() == '+')) digits.remove_prefix(1);
    if (digits.empty() || !std::all_of(digits.begin(), digits.end(), [](char c) { return std::isdigit(static_cast<unsigned char>(c)); })) {
      throw ParseError("bad integer '" + tok + "' in list '" + std::string(text) + "'");
    }
    if (tok.front() == '+') tok.erase(tok.begin());
    out.emplace_back(tok);
    if (j == std::string_view::npos) break;
    i = j + 1;
  }
  return out;
}

std::string format_integer_list(const std::vector<mpz_class>& values) {
  std::string out;
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (i) out += ',';
    out += values[i].get_str();
  }
  return out;
}

}  // namespace padsol
