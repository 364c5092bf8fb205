#include "hk/literals.hpp"

#include <cctype>
#include <charconv>

#include "hk/errors.hpp"

namespace hk {

namespace {

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

std::vector<std::string_view> split(std::string_view s, char sep) {
  std::vector<std::string_view> out;
  std::size_t start = 0;
  for (;;) {
    std::size_t pos = s.find(sep, start);
    out.push_back(trim(s.substr(start, pos - start)));
    if (pos == std::string_view::npos) break;
    start = pos + 1;
  }
  return out;
}

long parse_long(std::string_view s, std::string_view context) {
  s = trim(s);
  if (!s.empty() && s.front() == '+') s.remove_prefix(1);
  long v = 0;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (s.empty() || ec != std::errc() || ptr != s.data() + s.size())
    throw ParseError("expected an integer in '" + std::string(context) + "', got '" +
                     std::string(s) + "'");
  return v;
}

mpz_class parse_integer_z(std::string_view s, std::string_view context) {
  s = trim(s);
  std::string str(s);
  if (!str.empty() && str.front() == '+') str.erase(0, 1);
  mpz_class z;
  if (str.empty() || z.set_str(str, 10) != 0)
    throw ParseError("expected an integer in '" + std::string(context) + "'");
  return z;
}

}  // namespace

HKVariety parse_variety(std::string_view text) {
  auto parts = split(text, ':');
  if (parts.size() != 2) throw ParseError("variety literal must look like r,t:a1,...,ar: '" + std::string(text) + "'");
  auto head = split(parts[0], ',');
  if (head.size() != 2) throw ParseError("variety literal needs 'r,t' before ':': '" + std::string(text) + "'");
  const long r = parse_long(head[0], text);
  const long t = parse_long(head[1], text);
  std::vector<int> a;
  for (auto piece : split(parts[1], ',')) a.push_back(static_cast<int>(parse_long(piece, text)));
  try {
    return HKVariety(static_cast<int>(r), static_cast<int>(t), std::move(a));
  } catch (const std::invalid_argument& e) {
    throw ParseError(std::string(e.what()) + " in '" + std::string(text) + "'");
  }
}

LineBundleClass parse_bundle(std::string_view text) {
  auto parts = split(text, ',');
  if (parts.size() != 2) throw ParseError("bundle literal must be 'lambda,mu': '" + std::string(text) + "'");
  return {parse_long(parts[0], text), parse_long(parts[1], text)};
}

mpq_class parse_rational(std::string_view text) {
  std::string_view s = trim(text);
  if (s.empty()) throw ParseError("empty rational");
  if (auto slash = s.find('/'); slash != std::string_view::npos) {
    mpz_class num = parse_integer_z(s.substr(0, slash), text);
    mpz_class den = parse_integer_z(s.substr(slash + 1), text);
    if (den == 0) throw ParseError("zero denominator in '" + std::string(text) + "'");
    mpq_class q(num, den);
    q.canonicalize();
    return q;
  }
  if (auto caret = s.find('^'); caret != std::string_view::npos) {
    mpz_class base = parse_integer_z(s.substr(0, caret), text);
    long e = parse_long(s.substr(caret + 1), text);
    if (e < 0) throw ParseError("negative exponent in '" + std::string(text) + "'");
    mpz_class r;
    mpz_pow_ui(r.get_mpz_t(), base.get_mpz_t(), static_cast<unsigned long>(e));
    return mpq_class(r);
  }
  // Decimal: [sign] digits [. digits] [e|E [sign] digits], converted exactly.
  std::string str(s);
  long exponent = 0;
  if (auto epos = str.find_first_of("eE"); epos != std::string::npos) {
    exponent = parse_long(std::string_view(str).substr(epos + 1), text);
    str.erase(epos);
  }
  bool negative = false;
  if (!str.empty() && (str.front() == '-' || str.front() == '+')) {
    negative = str.front() == '-';
    str.erase(0, 1);
  }
  std::string digits;
  long frac_digits = 0;
  bool seen_dot = false;
  for (char c : str) {
    if (c == '.' && !seen_dot) {
      seen_dot = true;
    } else if (std::isdigit(static_cast<unsigned char>(c))) {
      digits.push_back(c);
      if (seen_dot) ++frac_digits;
    } else {
      throw ParseError("not a rational number: '" + std::string(text) + "'");
    }
  }
  if (digits.empty()) throw ParseError("not a rational number: '" + std::string(text) + "'");
  mpz_class num(digits, 10);
  if (negative) num = -num;
  const long scale = exponent - frac_digits;
  mpz_class ten_pow;
  mpz_ui_pow_ui(ten_pow.get_mpz_t(), 10, static_cast<unsigned long>(scale < 0 ? -scale : scale));
  mpq_class q = scale < 0 ? mpq_class(num, ten_pow) : mpq_class(num * ten_pow);
  q.canonicalize();
  return q;
}

HKRationalPoint parse_point(std::string_view text) {
  auto parts = split(text, ';');
  if (parts.size() != 2) throw ParseError("point literal must be '[q..];[y..]': '" + std::string(text) + "'");
  auto vec = [&](std::string_view p) {
    if (p.size() < 2 || p.front() != '[' || p.back() != ']')
      throw ParseError("bracketed coordinates expected in '" + std::string(text) + "'");
    std::vector<mpz_class> z;
    for (auto c : split(p.substr(1, p.size() - 2), ':')) z.push_back(parse_integer_z(c, text));
    try {
      return ProjectivePoint::from_integers(std::span<const mpz_class>(z));
    } catch (const AllZero&) {
      throw ParseError("all-zero coordinates in '" + std::string(text) + "'");
    }
  };
  return {vec(parts[0]), vec(parts[1])};
}

std::vector<mpq_class> parse_grid(std::string_view text) {
  std::string_view s = trim(text);
  std::vector<mpq_class> out;
  auto generated = [&](bool geometric) {
    auto parts = split(s.substr(s.find(':') + 1), ':');
    if (parts.size() != 3) throw ParseError("grid generator needs start:step:count: '" + std::string(text) + "'");
    mpq_class v = parse_rational(parts[0]);
    mpq_class step = parse_rational(parts[1]);
    long count = parse_long(parts[2], text);
    if (count < 1) throw ParseError("grid count must be positive");
    for (long i = 0; i < count; ++i) {
      out.push_back(v);
      v = geometric ? mpq_class(v * step) : mpq_class(v + step);
    }
  };
  if (s.starts_with("geom:")) {
    generated(true);
  } else if (s.starts_with("lin:")) {
    generated(false);
  } else {
    for (auto piece : split(s, ',')) out.push_back(parse_rational(piece));
  }
  for (std::size_t i = 0; i < out.size(); ++i) {
    if (out[i] <= 0) throw ParseError("grid values must be positive");
    if (i && out[i] <= out[i - 1]) throw ParseError("grid must be strictly increasing");
  }
  return out;
}

std::string format_rational(const mpq_class& q) { return q.get_str(); }

}  // namespace hk
