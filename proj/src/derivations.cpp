#include "f4diag/derivations.hpp"

#include <cstdint>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include "f4diag/functor.hpp"

namespace f4 {

namespace {

constexpr int kDerivationDim = 52;

// coords_a(b_a o b_b) for every pair of B_A
const std::vector<RatVector>& product_table() {
  static const std::vector<RatVector> table = [] {
    std::vector<RatVector> t(static_cast<std::size_t>(kDimA * kDimA));
    for (int a = 0; a < kDimA; ++a)
      for (int b = a; b < kDimA; ++b) {
        t[static_cast<std::size_t>(a * kDimA + b)] = coords_a(jordan(basis_a(a), basis_a(b)));
        t[static_cast<std::size_t>(b * kDimA + a)] = t[static_cast<std::size_t>(a * kDimA + b)];
      }
    return t;
  }();
  return table;
}

const RatVector& prod(int a, int b) { return product_table()[static_cast<std::size_t>(a * kDimA + b)]; }

int unknown(int k, int l) { return k * kDimA + l; }

std::uint64_t fnv1a(std::string_view s, std::uint64_t h = 1469598103934665603ull) {
  for (unsigned char c : s) {
    h ^= c;
    h *= 1099511628211ull;
  }
  return h;
}

std::string hex(std::uint64_t v) {
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(v));
  return buf;
}

}  // namespace

std::vector<Derivation> compute_derivation_basis(DerivationStats* stats) {
  SparseEchelon ech(kDimA * kDimA);
  int equations = 0;
  for (int i = 0; i < kDimA; ++i)
    for (int j = i; j < kDimA; ++j) {
      const RatVector& c = prod(i, j);
      for (int k = 0; k < kDimA; ++k) {
        // sum_l c_l D[k,l] - sum_l (b_l o b_j)_k D[l,i] - sum_l (b_i o b_l)_k D[l,j]
        std::vector<Rational> row(static_cast<std::size_t>(kDimA * kDimA));
        for (int l = 0; l < kDimA; ++l) {
          if (!c(l).is_zero()) row[static_cast<std::size_t>(unknown(k, l))] += c(l);
          const Rational& p = prod(l, j)(k);
          if (!p.is_zero()) row[static_cast<std::size_t>(unknown(l, i))] -= p;
          const Rational& q = prod(i, l)(k);
          if (!q.is_zero()) row[static_cast<std::size_t>(unknown(l, j))] -= q;
        }
        SparseRow sparse;
        for (int u = 0; u < kDimA * kDimA; ++u)
          if (!row[static_cast<std::size_t>(u)].is_zero()) sparse.emplace_back(u, row[static_cast<std::size_t>(u)]);
        ++equations;
        if (!sparse.empty()) ech.add_row(sparse);
      }
    }
  if (stats) *stats = {equations, kDimA * kDimA, ech.rank()};
  std::vector<Derivation> out;
  for (const auto& v : ech.nullspace()) {
    Derivation d(kDimA, kDimA);
    for (int k = 0; k < kDimA; ++k)
      for (int l = 0; l < kDimA; ++l) d(k, l) = v(unknown(k, l));
    out.push_back(std::move(d));
  }
  if (static_cast<int>(out.size()) != kDerivationDim)
    throw std::runtime_error("derivation algebra has dimension " + std::to_string(out.size()) + ", expected 52");
  return out;
}

bool is_derivation(const Derivation& d) {
  if (d.rows() != kDimA || d.cols() != kDimA) return false;
  for (int i = 0; i < kDimA; ++i)
    for (int j = i; j < kDimA; ++j) {
      RatVector lhs = d * prod(i, j);
      for (int l = 0; l < kDimA; ++l) {
        if (!d(l, i).is_zero()) lhs -= d(l, i) * prod(l, j);
        if (!d(l, j).is_zero()) lhs -= d(l, j) * prod(i, l);
      }
      for (int k = 0; k < kDimA; ++k)
        if (!lhs(k).is_zero()) return false;
    }
  return true;
}

RatMatrix restrict_to_v(const Derivation& d) {
  for (int k = 0; k < kDimA; ++k)
    if (!d(k, kDimV).is_zero()) throw std::domain_error("restrict_to_v: D(1_A) != 0");
  for (int l = 0; l < kDimV; ++l)
    if (!d(kDimV, l).is_zero()) throw std::domain_error("restrict_to_v: D does not preserve V");
  return d.topLeftCorner(kDimV, kDimV);
}

Derivation bracket(const Derivation& a, const Derivation& b) { return a * b - b * a; }

bool closed_under_bracket(const std::vector<Derivation>& basis) {
  SparseEchelon span(kDimA * kDimA);
  auto flat = [](const Derivation& d) {
    SparseRow r;
    for (int k = 0; k < kDimA; ++k)
      for (int l = 0; l < kDimA; ++l)
        if (!d(k, l).is_zero()) r.emplace_back(unknown(k, l), d(k, l));
    return r;
  };
  for (const auto& d : basis) span.add_row(flat(d));
  for (std::size_t i = 0; i < basis.size(); ++i)
    for (std::size_t j = i + 1; j < basis.size(); ++j)
      if (!span.reduce(flat(bracket(basis[i], basis[j]))).empty()) return false;
  return true;
}

EquivarianceReport check_equivariance(const std::vector<Derivation>& basis) {
  EquivarianceReport rep;
  rep.derivations = static_cast<int>(basis.size());
  const Functor& phi = Functor::instance();
  const RatMatrix& g = phi.basis().gram;
  const RatMatrix& ginv = phi.basis().gram_inv;
  for (const auto& d : basis) {
    for (int k = 0; k < kDimA; ++k) rep.unit_killed = rep.unit_killed && d(k, kDimV).is_zero();
    // the trace of b_l is 3 times its 1_A coordinate
    for (int l = 0; l < kDimA; ++l) rep.trace_killed = rep.trace_killed && d(kDimV, l).is_zero();
    if (!rep.unit_killed || !rep.trace_killed) continue;
    const RatMatrix dv = restrict_to_v(d);

    // D m(a, b) - m(Da, b) - m(a, Db) for basis a = b_i, b = b_j
    for (int i = 0; i < kDimV; ++i)
      for (int j = 0; j < kDimV; ++j) {
        std::vector<Rational> r(kDimV);
        for (const auto& [l, c] : phi.merge_of(i, j))
          for (int k = 0; k < kDimV; ++k)
            if (!dv(k, l).is_zero()) r[static_cast<std::size_t>(k)].add_product(dv(k, l), c);
        for (int l = 0; l < kDimV; ++l) {
          if (!dv(l, i).is_zero())
            for (const auto& [k, c] : phi.merge_of(l, j)) r[static_cast<std::size_t>(k)].add_product(-dv(l, i), c);
          if (!dv(l, j).is_zero())
            for (const auto& [k, c] : phi.merge_of(i, l)) r[static_cast<std::size_t>(k)].add_product(-dv(l, j), c);
        }
        for (const auto& x : r) rep.merge_residual += !x.is_zero();
      }
    // B(Da, b) + B(a, Db)
    const RatMatrix cap = dv.transpose() * g + g * dv;
    // (D (x) 1 + 1 (x) D) applied to the cup tensor
    const RatMatrix cup = dv * ginv + ginv * dv.transpose();
    for (Eigen::Index a = 0; a < kDimV; ++a)
      for (Eigen::Index b = 0; b < kDimV; ++b) {
        rep.cap_residual += !cap(a, b).is_zero();
        rep.cup_residual += !cup(a, b).is_zero();
      }
  }
  return rep;
}

// ---- cache -------------------------------------------------------------------

std::string basis_convention_hash() {
  std::uint64_t h = fnv1a("B_A");
  for (int k = 0; k < kDimA; ++k) h = fnv1a(to_string(basis_a(k)) + "\n", h);
  return hex(h);
}

std::string write_derivation_cache(const std::vector<Derivation>& basis) {
  std::ostringstream body;
  body << "f4diag derivation basis\n";
  body << "convention " << basis_convention_hash() << "\n";
  body << "count " << basis.size() << "\n";
  for (std::size_t n = 0; n < basis.size(); ++n) {
    body << "block " << n << "\n";
    for (int k = 0; k < kDimA; ++k) {
      for (int l = 0; l < kDimA; ++l) body << (l ? " " : "") << basis[n](k, l).str();
      body << "\n";
    }
  }
  const std::string text = body.str();
  return text + "checksum " + hex(fnv1a(text)) + "\n";
}

std::optional<std::vector<Derivation>> read_derivation_cache(const std::string& text) {
  const auto pos = text.rfind("checksum ");
  if (pos == std::string::npos) return std::nullopt;
  const std::string body = text.substr(0, pos);
  std::istringstream tail(text.substr(pos + 9));
  std::string sum;
  tail >> sum;
  if (sum != hex(fnv1a(body))) return std::nullopt;

  std::istringstream in(body);
  std::string line, word;
  std::getline(in, line);
  if (line != "f4diag derivation basis") return std::nullopt;
  std::string conv;
  in >> word >> conv;
  if (word != "convention" || conv != basis_convention_hash()) return std::nullopt;
  std::size_t count = 0;
  in >> word >> count;
  if (word != "count" || count != kDerivationDim) return std::nullopt;
  std::vector<Derivation> out;
  try {
    for (std::size_t n = 0; n < count; ++n) {
      std::size_t idx = 0;
      in >> word >> idx;
      if (word != "block" || idx != n) return std::nullopt;
      Derivation d(kDimA, kDimA);
      for (int k = 0; k < kDimA; ++k)
        for (int l = 0; l < kDimA; ++l) {
          if (!(in >> word)) return std::nullopt;
          d(k, l) = Rational::parse(word);
        }
      out.push_back(std::move(d));
    }
  } catch (const std::invalid_argument&) {
    return std::nullopt;
  }
  return out;
}

std::filesystem::path derivation_cache_file(const std::filesystem::path& dir) {
  return dir / ("derivations-" + basis_convention_hash() + ".txt");
}

std::vector<Derivation> derivation_basis() {
  const char* dir = std::getenv("F4DIAG_CACHE_DIR");
  if (!dir || !*dir) return compute_derivation_basis();
  const auto file = derivation_cache_file(dir);
  if (std::ifstream in{file}) {
    std::stringstream ss;
    ss << in.rdbuf();
    if (auto cached = read_derivation_cache(ss.str())) return *cached;
  }
  auto basis = compute_derivation_basis();
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  // a cache that cannot be written is not an error
  std::ofstream out(file);
  if (out) out << write_derivation_cache(basis);
  return basis;
}

}  // namespace f4
