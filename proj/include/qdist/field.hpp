#ifndef QDIST_FIELD_HPP
#define QDIST_FIELD_HPP

#include <compare>
#include <cstdint>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "qdist/cyclotomic.hpp"
#include "qdist/error.hpp"

namespace qdist {

/// An element of F_q, identified by its canonical index sum_i c_i p^i over the
/// coefficients of c_0 + c_1 theta + ... + c_{ell-1} theta^{ell-1}.
class Element {
 public:
  constexpr Element() = default;
  constexpr explicit Element(std::uint32_t index) : index_(index) {}

  constexpr std::uint32_t index() const { return index_; }
  constexpr bool is_zero() const { return index_ == 0; }

  friend constexpr auto operator<=>(Element, Element) = default;

 private:
  std::uint32_t index_ = 0;
};

namespace detail {

inline bool is_prime(std::uint64_t n) {
  if (n < 2) return false;
  for (std::uint64_t d = 2; d * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}

// Polynomials over F_p, coefficient vectors with the constant term first.
using Poly = std::vector<unsigned>;

inline void trim(Poly& f) {
  while (!f.empty() && f.back() == 0) f.pop_back();
}

// Remainder of f modulo the monic polynomial g.
inline Poly poly_mod(Poly f, const Poly& g, unsigned p) {
  trim(f);
  const std::size_t dg = g.size() - 1;
  while (f.size() > dg) {
    const unsigned lead = f.back();
    const std::size_t shift = f.size() - 1 - dg;
    for (std::size_t i = 0; i <= dg; ++i)
      f[shift + i] = static_cast<unsigned>((f[shift + i] + static_cast<std::uint64_t>(p - lead) * g[i]) % p);
    trim(f);
  }
  return f;
}

// A monic f of degree >= 1 is irreducible iff no monic polynomial of degree <= deg(f)/2 divides it.
inline bool is_irreducible(const Poly& f, unsigned p) {
  const std::size_t n = f.size() - 1;
  for (std::size_t k = 1; 2 * k <= n; ++k) {
    Poly g(k + 1, 0);
    g[k] = 1;
    while (true) {
      if (poly_mod(f, g, p).empty()) return false;
      std::size_t i = 0;
      while (i < k && ++g[i] == p) g[i++] = 0;
      if (i == k) break;
    }
  }
  return true;
}

}  // namespace detail

/// Parameters that pin down a concrete F_q: p, ell, and the defining modulus.
struct FieldSpec {
  unsigned p = 0;
  unsigned ell = 0;
  std::uint32_t q = 0;
  std::vector<unsigned> modulus;  // monic, degree ell, constant term first

  /// "p^ell:c0,c1,...,c_ell", e.g. "3^2:1,0,1" for theta^2 + 1.
  std::string to_string() const {
    std::string out = std::to_string(p) + "^" + std::to_string(ell) + ":";
    for (std::size_t i = 0; i < modulus.size(); ++i) {
      if (i) out += ',';
      out += std::to_string(modulus[i]);
    }
    return out;
  }

  friend bool operator==(const FieldSpec&, const FieldSpec&) = default;
};

/// Deterministic realization of F_{p^ell}: the modulus is the lexicographically smallest
/// (constant term compared first) monic irreducible polynomial of degree ell over F_p.
inline FieldSpec make_field_spec(unsigned p, unsigned ell) {
  if (p % 2 == 0 || !detail::is_prime(p)) throw InvalidParameter("odd prime power required (p = " + std::to_string(p) + ")");
  if (ell == 0) throw InvalidParameter("field degree ell must be positive");
  std::uint64_t q = 1;
  for (unsigned i = 0; i < ell; ++i) {
    q *= p;
    if (q > (1u << 22)) throw InvalidParameter("field too large for table-driven arithmetic (q > 2^22)");
  }

  FieldSpec spec{p, ell, static_cast<std::uint32_t>(q), {}};
  // Low coefficients (c_0, ..., c_{ell-1}) with c_0 most significant in the ordering.
  std::vector<unsigned> low(ell, 0);
  while (true) {
    detail::Poly f(low.begin(), low.end());
    f.push_back(1);
    if (detail::is_irreducible(f, p)) {
      spec.modulus = f;
      return spec;
    }
    int i = static_cast<int>(ell) - 1;
    while (i >= 0 && ++low[i] == p) low[i--] = 0;
    if (i < 0) break;
  }
  throw InternalError("no irreducible polynomial found");
}

/// Table-driven arithmetic in F_q together with the trace, the canonical additive
/// character chi(x) = zeta_p^{Tr(x)}, and the quadratic character eta.
///
/// Immutable after construction; share it through FieldPtr.
class Field {
 public:
  explicit Field(FieldSpec spec) : spec_(std::move(spec)) { build_tables(); }

  static std::shared_ptr<const Field> make(unsigned p, unsigned ell = 1) {
    return std::make_shared<const Field>(make_field_spec(p, ell));
  }

  const FieldSpec& spec() const { return spec_; }
  unsigned p() const { return spec_.p; }
  unsigned ell() const { return spec_.ell; }
  std::uint32_t q() const { return spec_.q; }

  Element zero() const { return Element{0}; }
  Element one() const { return Element{1}; }

  Element element(std::uint64_t index) const {
    if (index >= q()) throw InvalidParameter("element index " + std::to_string(index) + " out of range for q = " + std::to_string(q()));
    return Element{static_cast<std::uint32_t>(index)};
  }

  /// Image of an integer under Z -> F_p -> F_q.
  Element from_int(std::int64_t v) const {
    const std::int64_t r = ((v % static_cast<std::int64_t>(p())) + p()) % p();
    return Element{static_cast<std::uint32_t>(r)};
  }

  /// The adjoined root theta of the modulus (index p when ell > 1; the root 0 of theta for ell = 1).
  Element theta() const { return ell() > 1 ? Element{p()} : Element{0}; }

  std::vector<unsigned> coeffs(Element x) const {
    std::vector<unsigned> c(ell());
    std::uint32_t v = x.index();
    for (auto& ci : c) {
      ci = v % p();
      v /= p();
    }
    return c;
  }

  Element from_coeffs(std::span<const unsigned> c) const {
    if (c.size() != ell()) throw InvalidParameter("coefficient vector must have length ell");
    std::uint32_t v = 0;
    for (std::size_t i = c.size(); i-- > 0;) {
      if (c[i] >= p()) throw InvalidParameter("coefficient out of range [0, p)");
      v = v * p() + c[i];
    }
    return Element{v};
  }

  Element add(Element a, Element b) const {
    if (!add_.empty()) return Element{add_[a.index() * q() + b.index()]};
    std::uint32_t x = a.index(), y = b.index(), out = 0, scale = 1;
    for (unsigned i = 0; i < ell(); ++i) {
      out += ((x % p() + y % p()) % p()) * scale;
      x /= p();
      y /= p();
      scale *= p();
    }
    return Element{out};
  }

  Element neg(Element a) const { return Element{neg_[a.index()]}; }
  Element sub(Element a, Element b) const { return add(a, neg(b)); }

  Element mul(Element a, Element b) const {
    if (!mul_.empty()) return Element{mul_[a.index() * q() + b.index()]};
    if (a.is_zero() || b.is_zero()) return zero();
    return Element{exp_[(log_[a.index()] + log_[b.index()]) % (q() - 1)]};
  }

  Element square(Element a) const { return mul(a, a); }

  Element inv(Element a) const {
    if (a.is_zero()) throw DivisionByZero();
    return Element{inv_[a.index()]};
  }

  Element div(Element a, Element b) const { return mul(a, inv(b)); }

  Element pow(Element a, std::uint64_t e) const {
    if (e == 0) return one();
    if (a.is_zero()) return zero();
    return Element{exp_[(static_cast<std::uint64_t>(log_[a.index()]) * (e % (q() - 1))) % (q() - 1)]};
  }

  /// Absolute trace Tr(x) = x + x^p + ... + x^{p^{ell-1}}, as a residue in [0, p).
  unsigned trace(Element x) const { return trace_[x.index()]; }

  Cyclotomic chi(Element x) const { return Cyclotomic::zeta_power(p(), trace(x)); }

  /// Quadratic character; eta(0) is a domain error.
  int eta(Element x) const {
    if (x.is_zero()) throw DomainError("eta(0) is undefined");
    return eta_[x.index()];
  }

  /// eta extended by eta(0) = 0, for hot loops.
  int eta0(Element x) const { return eta_[x.index()]; }

  bool is_square(Element x) const { return sqrt_[x.index()] >= 0; }

  /// The square root of smallest index, if one exists.
  std::optional<Element> sqrt(Element x) const {
    const auto r = sqrt_[x.index()];
    if (r < 0) return std::nullopt;
    return Element{static_cast<std::uint32_t>(r)};
  }

  Element smallest_nonsquare() const { return Element{smallest_nonsquare_}; }

 private:
  // Slow multiplication through the polynomial representation; used only while building tables.
  std::uint32_t poly_mul(std::uint32_t a, std::uint32_t b) const {
    const auto ca = coeffs(Element{a});
    const auto cb = coeffs(Element{b});
    detail::Poly prod(2 * ell() - 1, 0);
    for (unsigned i = 0; i < ell(); ++i)
      for (unsigned j = 0; j < ell(); ++j)
        prod[i + j] = static_cast<unsigned>((prod[i + j] + static_cast<std::uint64_t>(ca[i]) * cb[j]) % p());
    auto r = detail::poly_mod(prod, spec_.modulus, p());
    r.resize(ell(), 0);
    return from_coeffs(r).index();
  }

  void build_tables() {
    const std::uint32_t n = q();
    if (spec_.modulus.size() != ell() + 1 || spec_.modulus.back() != 1 ||
        !detail::is_irreducible(spec_.modulus, p()))
      throw InvalidParameter("field modulus must be monic irreducible of degree ell");

    // Generator search in index order; exp_/log_ come from the first element of order q - 1.
    exp_.assign(n - 1, 0);
    log_.assign(n, 0);
    for (std::uint32_t g = 1; g < n; ++g) {
      std::uint32_t x = 1, order = 0;
      do {
        exp_[order++] = x;
        x = poly_mul(x, g);
      } while (x != 1 && order < n - 1);
      if (x == 1 && order == n - 1) break;
      if (g + 1 == n) throw InternalError("no primitive element found");
    }
    for (std::uint32_t k = 0; k + 1 < n; ++k) log_[exp_[k]] = k;

    std::vector<std::uint32_t> add_table, mul_table;
    if (n <= kFullTableLimit) {
      add_table.resize(static_cast<std::size_t>(n) * n);
      mul_table.resize(static_cast<std::size_t>(n) * n);
      for (std::uint32_t a = 0; a < n; ++a)
        for (std::uint32_t b = 0; b < n; ++b) {
          add_table[a * n + b] = add(Element{a}, Element{b}).index();
          mul_table[a * n + b] = mul(Element{a}, Element{b}).index();
        }
    }

    neg_.resize(n);
    inv_.assign(n, 0);
    trace_.resize(n);
    eta_.resize(n);
    sqrt_.assign(n, -1);
    for (std::uint32_t a = 0; a < n; ++a) {
      std::uint32_t v = a, out = 0, scale = 1;
      for (unsigned i = 0; i < ell(); ++i) {
        out += ((p() - v % p()) % p()) * scale;
        v /= p();
        scale *= p();
      }
      neg_[a] = out;
      if (a) {
        inv_[a] = exp_[(n - 1 - log_[a]) % (n - 1)];
        eta_[a] = (log_[a] % 2 == 0) ? 1 : -1;
      }
    }
    for (std::uint32_t a = n; a-- > 0;) sqrt_[mul(Element{a}, Element{a}).index()] = static_cast<std::int32_t>(a);
    smallest_nonsquare_ = 0;
    for (std::uint32_t a = 1; a < n; ++a)
      if (eta_[a] < 0) {
        smallest_nonsquare_ = a;
        break;
      }
    for (std::uint32_t a = 0; a < n; ++a) {
      Element acc{0}, power{a};
      for (unsigned i = 0; i < ell(); ++i) {
        acc = add(acc, power);
        power = pow(power, p());
      }
      if (acc.index() >= p()) throw InternalError("trace left the prime field");
      trace_[a] = acc.index();
    }
    add_ = std::move(add_table);
    mul_ = std::move(mul_table);
  }

  static constexpr std::uint32_t kFullTableLimit = 1024;

  FieldSpec spec_;
  std::vector<std::uint32_t> add_, mul_;  // full q*q tables when q <= kFullTableLimit
  std::vector<std::uint32_t> exp_, log_, neg_, inv_, trace_;
  std::vector<std::int8_t> eta_;
  std::vector<std::int32_t> sqrt_;
  std::uint32_t smallest_nonsquare_ = 0;
};

using FieldPtr = std::shared_ptr<const Field>;

/// Parses "p^ell", "p^ell:c0,...,c_ell" (explicit modulus) or a plain prime "p".
inline FieldPtr parse_field(const std::string& text) {
  auto to_uint = [&](const std::string& s) -> unsigned {
    try {
      std::size_t used = 0;
      const auto v = std::stoul(s, &used);
      if (used != s.size()) throw InvalidParameter("");
      return static_cast<unsigned>(v);
    } catch (const std::exception&) {
      throw InvalidParameter("malformed field spec '" + text + "'");
    }
  };
  const auto colon = text.find(':');
  const std::string head = text.substr(0, colon);
  const auto caret = head.find('^');
  const unsigned p = to_uint(head.substr(0, caret));
  const unsigned ell = caret == std::string::npos ? 1 : to_uint(head.substr(caret + 1));
  FieldSpec spec = make_field_spec(p, ell);
  if (colon != std::string::npos) {
    std::vector<unsigned> modulus;
    std::string rest = text.substr(colon + 1), item;
    std::size_t start = 0;
    while (start <= rest.size()) {
      const auto comma = rest.find(',', start);
      modulus.push_back(to_uint(rest.substr(start, comma - start)));
      if (comma == std::string::npos) break;
      start = comma + 1;
    }
    for (auto c : modulus)
      if (c >= p) throw InvalidParameter("modulus coefficient out of range in '" + text + "'");
    spec.modulus = modulus;
  }
  return std::make_shared<const Field>(spec);
}

}  // namespace qdist

#endif  // QDIST_FIELD_HPP
