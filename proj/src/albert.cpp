#include "f4diag/albert.hpp"

#include "f4diag/exactla.hpp"

#include <stdexcept>

namespace f4 {

// ---- octonion text form --------------------------------------------------

std::string to_string(const Oct& x) {
  std::string out;
  for (int k = 0; k < 8; ++k) {
    const Rational& c = x[k];
    if (c.is_zero()) continue;
    if (out.empty())
      out = c.str();
    else
      out += (c.sign() < 0 ? " - " : " + ") + abs(c).str();
    if (k > 0) out += " e" + std::to_string(k);
  }
  return out.empty() ? "0" : out;
}

Oct parse_octonion(std::string_view text) {
  Oct x;
  std::size_t i = 0;
  auto skip = [&] {
    while (i < text.size() && std::isspace(static_cast<unsigned char>(text[i]))) ++i;
  };
  auto fail = [&](const char* what) {
    throw std::invalid_argument("octonion parse error at " + std::to_string(i) + ": " + what);
  };
  skip();
  if (i == text.size()) fail("empty input");
  bool first = true;
  while (true) {
    skip();
    if (i == text.size()) break;
    int sign = 1;
    if (text[i] == '+' || text[i] == '-') {
      sign = text[i] == '-' ? -1 : 1;
      ++i;
      skip();
    } else if (!first) {
      fail("expected '+' or '-'");
    }
    first = false;
    Rational coeff = 1;
    bool have_coeff = false;
    if (i < text.size() && std::isdigit(static_cast<unsigned char>(text[i]))) {
      const std::size_t start = i;
      while (i < text.size() && (std::isdigit(static_cast<unsigned char>(text[i])) || text[i] == '/')) ++i;
      coeff = Rational::parse(text.substr(start, i - start));
      have_coeff = true;
      skip();
    }
    int unit = 0;
    if (i < text.size() && text[i] == 'e') {
      ++i;
      if (i == text.size() || text[i] < '1' || text[i] > '7') fail("expected unit index 1..7");
      unit = text[i] - '0';
      ++i;
    } else if (!have_coeff) {
      fail("expected coefficient or unit");
    }
    x[unit] += sign < 0 ? -coeff : coeff;
  }
  return x;
}

// ---- basis ---------------------------------------------------------------

namespace {

constexpr int kPairs[3][2] = {{0, 1}, {0, 2}, {1, 2}};

Alb make_basis_element(int k) {
  if (k == 0) return Alb::idempotent(0) - Alb::idempotent(1);
  if (k == 1) return Alb::idempotent(1) - Alb::idempotent(2);
  if (k == kDimV) return Alb::identity();
  const int p = (k - 2) / 8, u = (k - 2) % 8;
  return Alb::offdiag(kPairs[p][0], kPairs[p][1], Oct::unit(u));
}

}  // namespace

Alb basis_a(int k) {
  if (k < 0 || k >= kDimA) throw std::out_of_range("basis index out of range");
  return make_basis_element(k);
}

RatVector coords_v(const Alb& a) {
  if (!alb_trace(a).is_zero()) throw std::invalid_argument("coords_v: element is not traceless");
  RatVector c(kDimV);
  c(0) = a.diag[0];
  c(1) = -a.diag[2];
  const Oct x2bar = oct_conj(a.off[1]);
  for (int u = 0; u < 8; ++u) {
    c(2 + u) = a.off[2][u];    // (1,2) entry is x3
    c(10 + u) = x2bar[u];      // (1,3) entry is ~x2
    c(18 + u) = a.off[0][u];   // (2,3) entry is x1
  }
  return c;
}

Alb from_coords_v(const RatVector& c) {
  if (c.size() != kDimV) throw std::invalid_argument("from_coords_v: need 26 coordinates");
  Alb a;
  a.diag = {c(0), c(1) - c(0), -c(1)};
  Oct x2bar;
  for (int u = 0; u < 8; ++u) {
    a.off[2][u] = c(2 + u);
    x2bar[u] = c(10 + u);
    a.off[0][u] = c(18 + u);
  }
  a.off[1] = oct_conj(x2bar);
  return a;
}

RatVector coords_a(const Alb& a) {
  const Rational t = alb_trace(a) / 3;
  RatVector c(kDimA);
  c.head(kDimV) = coords_v(project_v(a));
  c(kDimV) = t;
  return c;
}

Alb from_coords_a(const RatVector& c) {
  if (c.size() != kDimA) throw std::invalid_argument("from_coords_a: need 27 coordinates");
  Alb a = from_coords_v(c.head(kDimV));
  for (auto& l : a.diag) l += c(kDimV);
  return a;
}

BasisData build_basis() {
  BasisData d;
  for (int k = 0; k < kDimV; ++k) d.basis.push_back(make_basis_element(k));
  d.gram = RatMatrix(kDimV, kDimV);
  for (int i = 0; i < kDimV; ++i)
    for (int j = 0; j < kDimV; ++j) d.gram(i, j) = bform(d.basis[static_cast<std::size_t>(i)], d.basis[static_cast<std::size_t>(j)]);
  auto inv = invert(d.gram);
  if (!inv) throw std::logic_error("build_basis: Gram matrix of B is singular");
  d.gram_inv = *inv;
  for (int i = 0; i < kDimV; ++i) {
    Alb dual;
    for (int j = 0; j < kDimV; ++j)
      if (!d.gram_inv(i, j).is_zero()) dual += d.gram_inv(i, j) * d.basis[static_cast<std::size_t>(j)];
    d.dual.push_back(dual);
  }
  for (int i = 0; i < kDimV; ++i)
    for (int j = 0; j < kDimV; ++j)
      if (bform(d.dual[static_cast<std::size_t>(i)], d.basis[static_cast<std::size_t>(j)]) != Rational(i == j ? 1 : 0))
        throw std::logic_error("build_basis: dual basis check failed");
  return d;
}

const BasisData& basis_data() {
  static const BasisData data = build_basis();
  return data;
}

Rational left_mult_trace(const Alb& a) {
  Rational tr;
  for (int k = 0; k < kDimA; ++k) tr += coords_a(jordan(a, make_basis_element(k)))(k);
  return tr;
}

std::string to_string(const Alb& a) {
  return "diag(" + a.diag[0].str() + "," + a.diag[1].str() + "," + a.diag[2].str() + "); x1=" + to_string(a.off[0]) +
         "; x2=" + to_string(a.off[1]) + "; x3=" + to_string(a.off[2]);
}

Alb parse_albert(std::string_view text) {
  auto fail = [&](const std::string& what) {
    throw std::invalid_argument("albert parse error: " + what + " in '" + std::string(text) + "'");
  };
  Alb a;
  std::size_t open = text.find("diag(");
  std::size_t close = text.find(')');
  if (open == std::string_view::npos || close == std::string_view::npos || close < open) fail("missing diag(...)");
  std::string_view inner = text.substr(open + 5, close - open - 5);
  for (int k = 0; k < 3; ++k) {
    const std::size_t comma = inner.find(',');
    if ((k < 2) != (comma != std::string_view::npos)) fail("diag needs three entries");
    a.diag[static_cast<std::size_t>(k)] = Rational::parse(inner.substr(0, comma));
    if (k < 2) inner.remove_prefix(comma + 1);
  }
  std::string_view rest = text.substr(close + 1);
  bool seen[3] = {false, false, false};
  while (!rest.empty()) {
    const std::size_t semi = rest.find(';');
    std::string_view part = rest.substr(0, semi);
    rest = semi == std::string_view::npos ? std::string_view{} : rest.substr(semi + 1);
    while (!part.empty() && std::isspace(static_cast<unsigned char>(part.front()))) part.remove_prefix(1);
    if (part.empty()) continue;
    if (part.size() < 3 || part[0] != 'x' || part[1] < '1' || part[1] > '3' || part[2] != '=')
      fail("expected xK=<octonion>");
    const int k = part[1] - '1';
    if (seen[k]) fail("duplicate entry");
    seen[k] = true;
    a.off[static_cast<std::size_t>(k)] = parse_octonion(part.substr(3));
  }
  return a;
}

}  // namespace f4
