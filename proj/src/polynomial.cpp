#include "tvb/polynomial.hpp"

#include <algorithm>
#include <cctype>
#include <sstream>

namespace tvb {

namespace {

void enumerate(std::size_t nvars, unsigned remaining, std::size_t pos, Exponent& cur,
               std::vector<Exponent>& out) {
  if (pos + 1 == nvars) {
    cur[pos] = remaining;
    out.push_back(cur);
    return;
  }
  for (unsigned k = remaining + 1; k-- > 0;) {
    cur[pos] = k;
    enumerate(nvars, remaining - k, pos + 1, cur, out);
  }
}

unsigned degree_of(const Exponent& e) {
  unsigned d = 0;
  for (unsigned x : e) d += x;
  return d;
}

}  // namespace

std::vector<Exponent> monomials_of_degree(std::size_t nvars, unsigned degree) {
  std::vector<Exponent> out;
  if (nvars == 0) {
    if (degree == 0) out.emplace_back();
    return out;
  }
  Exponent cur(nvars, 0);
  enumerate(nvars, degree, 0, cur, out);
  return out;
}

std::size_t monomial_count(std::size_t nvars, unsigned degree) {
  if (nvars == 0) return degree == 0 ? 1 : 0;
  Integer b;
  mpz_bin_uiui(b.get_mpz_t(), nvars - 1 + degree, degree);
  return b.get_ui();
}

Polynomial Polynomial::constant(Field field, std::size_t nvars, const Rational& c) {
  Polynomial p(field, nvars);
  p.add_term(Exponent(nvars, 0), c);
  return p;
}

Polynomial Polynomial::variable(Field field, std::size_t nvars, std::size_t index) {
  require(index < nvars, ErrorKind::InvalidArgument, "variable index out of range");
  Exponent e(nvars, 0);
  e[index] = 1;
  return monomial(field, e, 1);
}

Polynomial Polynomial::monomial(Field field, const Exponent& e, const Rational& c) {
  Polynomial p(field, e.size());
  p.add_term(e, c);
  return p;
}

Polynomial Polynomial::linear_form(Field field, const RatVector& coeffs) {
  Polynomial p(field, coeffs.size());
  for (std::size_t i = 0; i < coeffs.size(); ++i) {
    Exponent e(coeffs.size(), 0);
    e[i] = 1;
    p.add_term(e, coeffs[i]);
  }
  return p;
}

Polynomial Polynomial::from_dense(Field field, std::size_t nvars, unsigned degree,
                                  const RatVector& coeffs) {
  const auto monos = monomials_of_degree(nvars, degree);
  require(coeffs.size() == monos.size(), ErrorKind::InvalidArgument,
          "dense coefficient list has wrong length");
  Polynomial p(field, nvars);
  for (std::size_t i = 0; i < monos.size(); ++i) p.add_term(monos[i], coeffs[i]);
  return p;
}

void Polynomial::add_term(const Exponent& e, const Rational& c) {
  require(e.size() == nvars_, ErrorKind::InvalidArgument, "exponent length mismatch");
  const Rational v = field_.from_rational(c);
  if (sgn(v) == 0) return;
  auto it = terms_.find(e);
  if (it == terms_.end()) {
    terms_.emplace(e, v);
    return;
  }
  it->second = field_.add(it->second, v);
  if (sgn(it->second) == 0) terms_.erase(it);
}

Rational Polynomial::coefficient(const Exponent& e) const {
  auto it = terms_.find(e);
  return it == terms_.end() ? Rational(0) : it->second;
}

int Polynomial::total_degree() const {
  int d = -1;
  for (const auto& [e, c] : terms_) d = std::max(d, static_cast<int>(degree_of(e)));
  return d;
}

int Polynomial::lowest_degree() const {
  int d = -1;
  for (const auto& [e, c] : terms_) {
    const int k = static_cast<int>(degree_of(e));
    if (d < 0 || k < d) d = k;
  }
  return d;
}

bool Polynomial::is_homogeneous() const {
  return total_degree() == lowest_degree();
}

RatVector Polynomial::dense(unsigned degree) const {
  const auto monos = monomials_of_degree(nvars_, degree);
  RatVector out;
  out.reserve(monos.size());
  for (const auto& e : monos) out.push_back(coefficient(e));
  for (const auto& [e, c] : terms_)
    require(degree_of(e) == degree, ErrorKind::InvalidArgument,
            "polynomial is not homogeneous of the requested degree");
  return out;
}

Polynomial Polynomial::operator+(const Polynomial& o) const {
  require_same_field(field_, o.field_);
  require(nvars_ == o.nvars_, ErrorKind::InvalidArgument, "variable count mismatch");
  Polynomial r = *this;
  for (const auto& [e, c] : o.terms_) r.add_term(e, c);
  return r;
}

Polynomial Polynomial::operator-(const Polynomial& o) const {
  return *this + o.scaled(-1);
}

Polynomial Polynomial::operator*(const Polynomial& o) const {
  require_same_field(field_, o.field_);
  require(nvars_ == o.nvars_, ErrorKind::InvalidArgument, "variable count mismatch");
  Polynomial r(field_, nvars_);
  for (const auto& [e1, c1] : terms_)
    for (const auto& [e2, c2] : o.terms_) {
      Exponent e(nvars_);
      for (std::size_t i = 0; i < nvars_; ++i) e[i] = e1[i] + e2[i];
      r.add_term(e, field_.mul(c1, c2));
    }
  return r;
}

Polynomial Polynomial::scaled(const Rational& c) const {
  Polynomial r(field_, nvars_);
  const Rational cf = field_.from_rational(c);
  for (const auto& [e, v] : terms_) r.add_term(e, field_.mul(v, cf));
  return r;
}

Polynomial Polynomial::pow(unsigned k) const {
  Polynomial r = constant(field_, nvars_, 1);
  Polynomial base = *this;
  while (k) {
    if (k & 1u) r = r * base;
    k >>= 1u;
    if (k) base = base * base;
  }
  return r;
}

Rational Polynomial::evaluate(const RatVector& point) const {
  require(point.size() == nvars_, ErrorKind::InvalidArgument,
          "evaluation point has wrong length");
  Rational total = 0;
  for (const auto& [e, c] : terms_) {
    Rational term = c;
    for (std::size_t i = 0; i < nvars_; ++i)
      for (unsigned k = 0; k < e[i]; ++k) term = field_.mul(term, field_.from_rational(point[i]));
    total = field_.add(total, term);
  }
  return total;
}

Polynomial Polynomial::derivative(std::size_t var) const {
  Polynomial r(field_, nvars_);
  for (const auto& [e, c] : terms_) {
    if (e[var] == 0) continue;
    Exponent d = e;
    d[var] -= 1;
    r.add_term(d, field_.mul(c, field_.from_integer(Integer(e[var]))));
  }
  return r;
}

Polynomial Polynomial::linear_substitution(const Matrix& t) const {
  require(t.rows() == nvars_ && t.cols() == nvars_, ErrorKind::InvalidArgument,
          "substitution matrix has wrong shape");
  require_same_field(field_, t.field());
  std::vector<Polynomial> images;
  for (std::size_t i = 0; i < nvars_; ++i) images.push_back(linear_form(field_, t.row(i)));
  Polynomial r(field_, nvars_);
  for (const auto& [e, c] : terms_) {
    Polynomial term = constant(field_, nvars_, c);
    for (std::size_t i = 0; i < nvars_; ++i)
      if (e[i]) term = term * images[i].pow(e[i]);
    r = r + term;
  }
  return r;
}

Polynomial Polynomial::specialize(std::size_t var, const Rational& value) const {
  Polynomial r(field_, nvars_);
  const Rational v = field_.from_rational(value);
  for (const auto& [e, c] : terms_) {
    Rational coeff = c;
    for (unsigned k = 0; k < e[var]; ++k) coeff = field_.mul(coeff, v);
    Exponent d = e;
    d[var] = 0;
    r.add_term(d, coeff);
  }
  return r;
}

std::string Polynomial::to_string(const std::vector<std::string>& names) const {
  if (terms_.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  // Highest degree first, then descending lex: reverse map order within degree.
  std::vector<std::pair<Exponent, Rational>> ordered(terms_.begin(), terms_.end());
  std::stable_sort(ordered.begin(), ordered.end(), [](const auto& a, const auto& b) {
    const unsigned da = degree_of(a.first), db = degree_of(b.first);
    if (da != db) return da > db;
    return a.first > b.first;
  });
  for (const auto& [e, c] : ordered) {
    Rational coeff = c;
    bool negative = false;
    if (field_.is_rational() && sgn(coeff) < 0) {
      negative = true;
      coeff = -coeff;
    }
    if (first)
      os << (negative ? "-" : "");
    else
      os << (negative ? " - " : " + ");
    first = false;
    const bool unit = coeff == 1;
    bool wrote = false;
    if (!unit || degree_of(e) == 0) {
      os << coeff.get_str();
      wrote = true;
    }
    for (std::size_t i = 0; i < nvars_; ++i) {
      if (!e[i]) continue;
      if (wrote) os << '*';
      os << names.at(i);
      if (e[i] > 1) os << '^' << e[i];
      wrote = true;
    }
  }
  return os.str();
}

std::string Polynomial::to_string() const {
  std::vector<std::string> names;
  for (std::size_t i = 0; i < nvars_; ++i) names.push_back("z" + std::to_string(i + 1));
  return to_string(names);
}

// --- parser ---------------------------------------------------------------

namespace {

class PolyParser {
 public:
  PolyParser(const std::string& s, Field f, std::size_t n) : s_(s), field_(f), nvars_(n) {}

  Polynomial parse() {
    Polynomial result(field_, nvars_);
    skip();
    bool first = true;
    while (pos_ < s_.size()) {
      int sign = 1;
      if (peek() == '+' || peek() == '-') {
        sign = peek() == '-' ? -1 : 1;
        ++pos_;
        skip();
      } else if (!first) {
        error("expected '+' or '-'");
      }
      result = result + term().scaled(sign);
      first = false;
      skip();
    }
    if (first) error("empty polynomial");
    return result;
  }

 private:
  Polynomial term() {
    Polynomial t = Polynomial::constant(field_, nvars_, 1);
    bool any = false;
    for (;;) {
      skip();
      if (pos_ >= s_.size()) break;
      const char c = peek();
      if (std::isdigit(static_cast<unsigned char>(c))) {
        t = t.scaled(number());
      } else if (c == 'z') {
        t = t * power();
      } else if (c == '(') {
        ++pos_;
        const std::size_t start = pos_;
        int depth = 1;
        while (pos_ < s_.size() && depth) {
          if (s_[pos_] == '(') ++depth;
          if (s_[pos_] == ')') --depth;
          ++pos_;
        }
        if (depth) error("unbalanced parenthesis");
        Polynomial inner =
            PolyParser(s_.substr(start, pos_ - 1 - start), field_, nvars_).parse();
        skip();
        unsigned k = 1;
        if (pos_ < s_.size() && peek() == '^') {
          ++pos_;
          k = exponent();
        }
        t = t * inner.pow(k);
      } else {
        break;
      }
      any = true;
      skip();
      if (pos_ < s_.size() && peek() == '*') {
        ++pos_;
        continue;
      }
    }
    if (!any) error("expected a term");
    return t;
  }

  Rational number() {
    const std::size_t start = pos_;
    while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
    Integer num(s_.substr(start, pos_ - start));
    Integer den = 1;
    if (pos_ < s_.size() && s_[pos_] == '/') {
      ++pos_;
      const std::size_t ds = pos_;
      while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
      if (ds == pos_) error("expected denominator");
      den = Integer(s_.substr(ds, pos_ - ds));
      if (den == 0) error("zero denominator");
    }
    Rational q(num, den);
    q.canonicalize();
    return q;
  }

  Polynomial power() {
    ++pos_;  // 'z'
    const std::size_t start = pos_;
    while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
    if (start == pos_) error("expected variable index after 'z'");
    const unsigned long idx = std::stoul(s_.substr(start, pos_ - start));
    if (idx < 1 || idx > nvars_)
      error("variable z" + std::to_string(idx) + " out of range 1.." + std::to_string(nvars_));
    Polynomial v = Polynomial::variable(field_, nvars_, idx - 1);
    skip();
    if (pos_ < s_.size() && peek() == '^') {
      ++pos_;
      return v.pow(exponent());
    }
    return v;
  }

  unsigned exponent() {
    skip();
    const std::size_t start = pos_;
    while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
    if (start == pos_) error("expected exponent");
    return static_cast<unsigned>(std::stoul(s_.substr(start, pos_ - start)));
  }

  char peek() const { return s_[pos_]; }
  void skip() {
    while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
  }
  [[noreturn]] void error(const std::string& what) const {
    fail(ErrorKind::Parse, "polynomial parse error at column " + std::to_string(pos_ + 1) +
                               ": " + what);
  }

  std::string s_;
  Field field_;
  std::size_t nvars_;
  std::size_t pos_ = 0;
};

}  // namespace

Polynomial parse_polynomial(const std::string& text, Field field, std::size_t nvars) {
  return PolyParser(text, field, nvars).parse();
}

}  // namespace tvb
