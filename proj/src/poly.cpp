#include "holosym/poly.hpp"

#include "holosym/error.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>

namespace holosym {

namespace {

std::uint32_t total_degree(const Poly::Exponents &e) {
  return std::accumulate(e.begin(), e.end(), std::uint32_t{0});
}

// Descending order used for storage.
bool term_before(const Poly::Term &a, const Poly::Term &b) {
  return Poly::grlex_less(b.exponents, a.exponents);
}

} // namespace

Rational parse_rational(std::string_view text) {
  Rational r(std::string(text), 10);
  r.canonicalize();
  return r;
}

bool Poly::grlex_less(const Exponents &a, const Exponents &b) {
  const auto da = total_degree(a);
  const auto db = total_degree(b);
  if (da != db) {
    return da < db;
  }
  // u is the largest variable and sits last.
  for (std::size_t i = a.size(); i-- > 0;) {
    if (a[i] != b[i]) {
      return a[i] < b[i];
    }
  }
  return false;
}

Poly Poly::constant(std::size_t variable_count, const Rational &c) {
  Poly p(variable_count);
  if (!holosym::is_zero(c)) {
    p.terms_.push_back({Exponents(variable_count, 0), c});
  }
  return p;
}

Poly Poly::variable(std::size_t variable_count, std::size_t index) {
  if (index >= variable_count) {
    throw StructuralError("variable index out of range");
  }
  Exponents e(variable_count, 0);
  e[index] = 1;
  return monomial(variable_count, std::move(e), Rational(1));
}

Poly Poly::monomial(std::size_t variable_count, Exponents exponents, const Rational &c) {
  if (exponents.size() != variable_count) {
    throw StructuralError("exponent vector length differs from variable count");
  }
  Poly p(variable_count);
  if (!holosym::is_zero(c)) {
    p.terms_.push_back({std::move(exponents), c});
  }
  return p;
}

bool Poly::is_constant() const {
  return terms_.empty() || (terms_.size() == 1 && total_degree(terms_[0].exponents) == 0);
}

Rational Poly::coefficient(const Exponents &exponents) const {
  for (const auto &t : terms_) {
    if (t.exponents == exponents) {
      return t.coefficient;
    }
  }
  return Rational(0);
}

int Poly::degree() const {
  return terms_.empty() ? -1 : static_cast<int>(total_degree(terms_.front().exponents));
}

int Poly::degree_in(std::size_t var) const {
  int d = terms_.empty() ? -1 : 0;
  for (const auto &t : terms_) {
    d = std::max(d, static_cast<int>(t.exponents[var]));
  }
  return d;
}

void Poly::check_compatible(const Poly &other) const {
  if (nvars_ != other.nvars_) {
    throw StructuralError("polynomial variable counts differ (" + std::to_string(nvars_) +
                          " vs " + std::to_string(other.nvars_) + ")");
  }
}

void Poly::add_scaled(const Poly &other, int sign) {
  check_compatible(other);
  if (other.terms_.empty()) {
    return;
  }
  std::vector<Term> merged;
  merged.reserve(terms_.size() + other.terms_.size());
  auto a = terms_.begin();
  auto b = other.terms_.begin();
  while (a != terms_.end() || b != other.terms_.end()) {
    if (b == other.terms_.end() || (a != terms_.end() && term_before(*a, *b))) {
      merged.push_back(std::move(*a++));
    } else if (a == terms_.end() || term_before(*b, *a)) {
      merged.push_back(*b++);
      if (sign < 0) {
        merged.back().coefficient = -merged.back().coefficient;
      }
    } else {
      Rational c = sign < 0 ? Rational(a->coefficient - b->coefficient)
                            : Rational(a->coefficient + b->coefficient);
      if (!holosym::is_zero(c)) {
        merged.push_back({std::move(a->exponents), std::move(c)});
      }
      ++a;
      ++b;
    }
  }
  terms_ = std::move(merged);
}

Poly &Poly::operator+=(const Poly &other) {
  add_scaled(other, 1);
  return *this;
}

Poly &Poly::operator-=(const Poly &other) {
  add_scaled(other, -1);
  return *this;
}

Poly &Poly::operator*=(const Poly &other) {
  *this = *this * other;
  return *this;
}

Poly &Poly::operator*=(const Rational &c) {
  if (holosym::is_zero(c)) {
    terms_.clear();
    return *this;
  }
  for (auto &t : terms_) {
    t.coefficient *= c;
  }
  return *this;
}

Poly operator*(const Poly &a, const Poly &b) {
  a.check_compatible(b);
  Poly out(a.nvars_);
  if (a.terms_.empty() || b.terms_.empty()) {
    return out;
  }
  std::vector<Poly::Term> products;
  products.reserve(a.terms_.size() * b.terms_.size());
  for (const auto &ta : a.terms_) {
    for (const auto &tb : b.terms_) {
      Poly::Exponents e(a.nvars_);
      for (std::size_t i = 0; i < e.size(); ++i) {
        e[i] = ta.exponents[i] + tb.exponents[i];
      }
      products.push_back({std::move(e), ta.coefficient * tb.coefficient});
    }
  }
  std::sort(products.begin(), products.end(), term_before);
  for (auto &t : products) {
    if (!out.terms_.empty() && out.terms_.back().exponents == t.exponents) {
      out.terms_.back().coefficient += t.coefficient;
    } else {
      if (!out.terms_.empty() && holosym::is_zero(out.terms_.back().coefficient)) {
        out.terms_.pop_back();
      }
      out.terms_.push_back(std::move(t));
    }
  }
  if (!out.terms_.empty() && holosym::is_zero(out.terms_.back().coefficient)) {
    out.terms_.pop_back();
  }
  return out;
}

Poly Poly::operator-() const {
  Poly out = *this;
  for (auto &t : out.terms_) {
    t.coefficient = -t.coefficient;
  }
  return out;
}

Poly Poly::derivative(std::size_t var) const {
  if (var >= nvars_) {
    throw StructuralError("derivative variable index out of range");
  }
  Poly out(nvars_);
  for (const auto &t : terms_) {
    if (t.exponents[var] == 0) {
      continue;
    }
    Term d{t.exponents, t.coefficient * t.exponents[var]};
    --d.exponents[var];
    out.terms_.push_back(std::move(d));
  }
  // Differentiation can reorder terms of different degree profiles.
  std::sort(out.terms_.begin(), out.terms_.end(), term_before);
  return out;
}

std::string Poly::variable_name(std::size_t variable_count, std::size_t index) {
  if (index == 0) {
    return "v";
  }
  if (index + 1 == variable_count) {
    return "u";
  }
  return "x" + std::to_string(index);
}

std::string Poly::to_string() const {
  if (terms_.empty()) {
    return "0";
  }
  std::ostringstream out;
  bool first = true;
  for (const auto &t : terms_) {
    Rational c = t.coefficient;
    if (first) {
      if (sgn(c) < 0) {
        out << "-";
      }
    } else {
      out << (sgn(c) < 0 ? " - " : " + ");
    }
    c = abs(c);
    std::string mono;
    // Print in descending variable order: u first, then xn .. x1, then v.
    for (std::size_t i = nvars_; i-- > 0;) {
      if (t.exponents[i] == 0) {
        continue;
      }
      if (!mono.empty()) {
        mono += "*";
      }
      mono += variable_name(nvars_, i);
      if (t.exponents[i] > 1) {
        mono += "^" + std::to_string(t.exponents[i]);
      }
    }
    if (mono.empty()) {
      out << c.get_str();
    } else if (c == 1) {
      out << mono;
    } else {
      out << c.get_str() << "*" << mono;
    }
    first = false;
  }
  return out.str();
}

Poly poly_add(const Poly &a, const Poly &b) { return a + b; }
Poly poly_mul(const Poly &a, const Poly &b) { return a * b; }
Poly poly_scale(const Poly &a, const Rational &c) { return a * c; }
Poly partial_derivative(const Poly &f, std::size_t var) { return f.derivative(var); }

} // namespace holosym
