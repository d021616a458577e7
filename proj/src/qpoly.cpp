#include "lsp/qpoly.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <numeric>

#include "lsp/error.hpp"

namespace lsp {

namespace {

using cld = std::complex<long double>;

const Rational kZero(0);

}  // namespace

QPoly::QPoly(std::vector<Rational> coeffs) : c_(std::move(coeffs)) {
  for (auto& q : c_) q.canonicalize();
  trim();
}

QPoly QPoly::constant(const Rational& c) { return QPoly(std::vector<Rational>{c}); }

QPoly QPoly::x() { return QPoly(std::vector<Rational>{Rational(0), Rational(1)}); }

QPoly QPoly::from_integers(const std::vector<long>& coeffs) {
  std::vector<Rational> c;
  c.reserve(coeffs.size());
  for (long v : coeffs) c.emplace_back(v);
  return QPoly(std::move(c));
}

void QPoly::trim() {
  while (!c_.empty() && c_.back() == 0) c_.pop_back();
}

const Rational& QPoly::coeff(int i) const {
  if (i < 0 || i >= static_cast<int>(c_.size())) return kZero;
  return c_[static_cast<size_t>(i)];
}

bool QPoly::is_integral() const {
  return std::all_of(c_.begin(), c_.end(), [](const Rational& q) { return is_integer(q); });
}

QPoly QPoly::monic() const {
  if (is_zero()) return *this;
  Rational inv = 1 / lead();
  return inv * *this;
}

QPoly QPoly::primitive() const {
  if (is_zero()) return *this;
  Integer den = 1;
  for (const auto& q : c_) den = lcm(den, q.get_den());
  std::vector<Integer> ints;
  Integer g = 0;
  for (const auto& q : c_) {
    Integer v = q.get_num() * (den / q.get_den());
    ints.push_back(v);
    mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), v.get_mpz_t());
  }
  std::vector<Rational> out;
  int sign = ints.back() < 0 ? -1 : 1;
  for (const auto& v : ints) out.emplace_back(Integer(v / g) * sign);
  return QPoly(std::move(out));
}

QPoly QPoly::derivative() const {
  if (c_.size() <= 1) return {};
  std::vector<Rational> d;
  for (size_t i = 1; i < c_.size(); ++i) d.push_back(c_[i] * static_cast<long>(i));
  return QPoly(std::move(d));
}

QPoly QPoly::compose_linear(const Rational& s, const Rational& t) const {
  QPoly lin(std::vector<Rational>{t, s});
  QPoly r;
  for (int i = degree(); i >= 0; --i) r = r * lin + QPoly::constant(c_[static_cast<size_t>(i)]);
  return r;
}

Rational QPoly::eval(const Rational& x) const {
  Rational r = 0;
  for (int i = degree(); i >= 0; --i) r = r * x + c_[static_cast<size_t>(i)];
  return r;
}

Interval QPoly::eval(const Interval& x) const {
  Interval r(x.precision());
  for (int i = degree(); i >= 0; --i) r = r * x + Interval::from_rational(c_[static_cast<size_t>(i)], x.precision());
  return r;
}

ComplexInterval QPoly::eval(const ComplexInterval& z) const {
  const int prec = z.precision();
  ComplexInterval r(prec);
  for (int i = degree(); i >= 0; --i) {
    r = r * z;
    r.re = r.re + Interval::from_rational(c_[static_cast<size_t>(i)], prec);
  }
  return r;
}

long double QPoly::eval(long double x) const {
  long double r = 0;
  for (int i = degree(); i >= 0; --i) r = r * x + static_cast<long double>(c_[static_cast<size_t>(i)].get_d());
  return r;
}

QPoly operator+(const QPoly& a, const QPoly& b) {
  std::vector<Rational> c(std::max(a.c_.size(), b.c_.size()));
  for (size_t i = 0; i < c.size(); ++i) c[i] = a.coeff(static_cast<int>(i)) + b.coeff(static_cast<int>(i));
  return QPoly(std::move(c));
}

QPoly operator-(const QPoly& a, const QPoly& b) {
  std::vector<Rational> c(std::max(a.c_.size(), b.c_.size()));
  for (size_t i = 0; i < c.size(); ++i) c[i] = a.coeff(static_cast<int>(i)) - b.coeff(static_cast<int>(i));
  return QPoly(std::move(c));
}

QPoly operator*(const QPoly& a, const QPoly& b) {
  if (a.is_zero() || b.is_zero()) return {};
  std::vector<Rational> c(a.c_.size() + b.c_.size() - 1);
  for (size_t i = 0; i < a.c_.size(); ++i) {
    if (a.c_[i] == 0) continue;
    for (size_t j = 0; j < b.c_.size(); ++j) c[i + j] += a.c_[i] * b.c_[j];
  }
  return QPoly(std::move(c));
}

QPoly operator*(const Rational& s, const QPoly& a) {
  std::vector<Rational> c = a.c_;
  for (auto& q : c) q *= s;
  return QPoly(std::move(c));
}

void QPoly::divmod(const QPoly& a, const QPoly& b, QPoly& quot, QPoly& rem) {
  if (b.is_zero()) throw Error(ErrorCode::InvalidArgument, "polynomial division by zero");
  std::vector<Rational> r = a.c_;
  const int db = b.degree();
  std::vector<Rational> q(static_cast<size_t>(std::max(0, a.degree() - db + 1)));
  for (int i = a.degree(); i >= db; --i) {
    Rational f = r[static_cast<size_t>(i)] / b.lead();
    if (f == 0) continue;
    q[static_cast<size_t>(i - db)] = f;
    for (int j = 0; j <= db; ++j) r[static_cast<size_t>(i - db + j)] -= f * b.c_[static_cast<size_t>(j)];
  }
  quot = QPoly(std::move(q));
  rem = QPoly(std::move(r));
}

QPoly operator%(const QPoly& a, const QPoly& b) {
  QPoly q, r;
  QPoly::divmod(a, b, q, r);
  return r;
}

QPoly operator/(const QPoly& a, const QPoly& b) {
  QPoly q, r;
  QPoly::divmod(a, b, q, r);
  return q;
}

std::string QPoly::to_string(const std::string& var) const {
  if (is_zero()) return "0";
  std::string out;
  for (int i = degree(); i >= 0; --i) {
    const Rational& q = c_[static_cast<size_t>(i)];
    if (q == 0) continue;
    Rational aq = abs(q);
    if (out.empty()) {
      if (q < 0) out += "-";
    } else {
      out += q < 0 ? " - " : " + ";
    }
    bool show_coeff = !(aq == 1) || i == 0;
    if (show_coeff) out += aq.get_str();
    if (i > 0) {
      if (show_coeff) out += "*";
      out += var;
      if (i > 1) out += "^" + std::to_string(i);
    }
  }
  return out;
}

QPoly gcd(const QPoly& a, const QPoly& b) {
  QPoly x = a, y = b;
  while (!y.is_zero()) {
    QPoly r = x % y;
    x = std::move(y);
    y = std::move(r);
  }
  return x.monic();
}

QPoly extended_gcd(const QPoly& a, const QPoly& b, QPoly& s, QPoly& t) {
  QPoly r0 = a, r1 = b;
  QPoly s0 = QPoly::constant(1), s1;
  QPoly t0, t1 = QPoly::constant(1);
  while (!r1.is_zero()) {
    QPoly q, r;
    QPoly::divmod(r0, r1, q, r);
    r0 = std::move(r1);
    r1 = std::move(r);
    QPoly s2 = s0 - q * s1;
    s0 = std::move(s1);
    s1 = std::move(s2);
    QPoly t2 = t0 - q * t1;
    t0 = std::move(t1);
    t1 = std::move(t2);
  }
  if (r0.is_zero()) {
    s = {};
    t = {};
    return r0;
  }
  Rational inv = 1 / r0.lead();
  s = inv * s0;
  t = inv * t0;
  return inv * r0;
}

QPoly squarefree_part(const QPoly& p) {
  if (p.degree() <= 0) return p.monic();
  QPoly g = gcd(p, p.derivative());
  return (p / g).monic();
}

Rational determinant(std::vector<std::vector<Rational>> m) {
  const size_t n = m.size();
  Rational det = 1;
  for (size_t col = 0; col < n; ++col) {
    size_t piv = col;
    while (piv < n && m[piv][col] == 0) ++piv;
    if (piv == n) return 0;
    if (piv != col) {
      std::swap(m[piv], m[col]);
      det = -det;
    }
    det *= m[col][col];
    for (size_t r = col + 1; r < n; ++r) {
      if (m[r][col] == 0) continue;
      Rational f = m[r][col] / m[col][col];
      for (size_t c = col; c < n; ++c) m[r][c] -= f * m[col][c];
    }
  }
  return det;
}

Rational resultant(const QPoly& p, const QPoly& q) {
  if (p.is_zero() || q.is_zero()) return 0;
  const int m = p.degree(), n = q.degree();
  if (m == 0) {
    Rational r = 1;
    for (int i = 0; i < n; ++i) r *= p.lead();
    return r;
  }
  if (n == 0) {
    Rational r = 1;
    for (int i = 0; i < m; ++i) r *= q.lead();
    return r;
  }
  const size_t size = static_cast<size_t>(m + n);
  std::vector<std::vector<Rational>> s(size, std::vector<Rational>(size));
  for (int row = 0; row < n; ++row)
    for (int i = 0; i <= m; ++i) s[static_cast<size_t>(row)][static_cast<size_t>(row + i)] = p.coeff(m - i);
  for (int row = 0; row < m; ++row)
    for (int i = 0; i <= n; ++i) s[static_cast<size_t>(n + row)][static_cast<size_t>(row + i)] = q.coeff(n - i);
  return determinant(std::move(s));
}

QPoly sum_resultant(const QPoly& p, const QPoly& q, bool difference) {
  if (p.degree() < 1 || q.degree() < 1) throw Error(ErrorCode::DegreeZero, "sum_resultant needs positive degrees");
  const int n = p.degree() * q.degree();
  std::vector<Rational> xs, ys;
  for (int i = 0; i <= n; ++i) {
    Rational x0(i);
    QPoly shifted = difference ? q.compose_linear(Rational(1), Rational(-x0)) : q.compose_linear(Rational(-1), x0);
    xs.push_back(x0);
    ys.push_back(resultant(p, shifted));
  }
  // Newton divided differences, then expand.
  std::vector<Rational> dd = ys;
  for (int j = 1; j <= n; ++j)
    for (int i = n; i >= j; --i)
      dd[static_cast<size_t>(i)] = (dd[static_cast<size_t>(i)] - dd[static_cast<size_t>(i - 1)]) /
                                   (xs[static_cast<size_t>(i)] - xs[static_cast<size_t>(i - j)]);
  QPoly result = QPoly::constant(dd[static_cast<size_t>(n)]);
  for (int i = n - 1; i >= 0; --i) {
    QPoly lin(std::vector<Rational>{Rational(-xs[static_cast<size_t>(i)]), Rational(1)});
    result = result * lin + QPoly::constant(dd[static_cast<size_t>(i)]);
  }
  return result.monic();
}

// ---------------------------------------------------------------- roots

std::vector<cld> approximate_roots(const QPoly& p) {
  const int n = p.degree();
  if (n < 1) return {};
  QPoly mp = p.monic();
  std::vector<long double> a(static_cast<size_t>(n + 1));
  for (int i = 0; i <= n; ++i) a[static_cast<size_t>(i)] = static_cast<long double>(mp.coeff(i).get_d());
  auto eval_pd = [&](cld z, cld& val, cld& der) {
    val = a[static_cast<size_t>(n)];
    der = 0;
    for (int i = n - 1; i >= 0; --i) {
      der = der * z + val;
      val = val * z + a[static_cast<size_t>(i)];
    }
  };
  long double radius = 0;
  for (int i = 0; i < n; ++i) radius = std::max(radius, std::pow(std::fabs(a[static_cast<size_t>(i)]), 1.0L / (n - i)));
  radius = std::max(radius, 0.5L);
  std::vector<cld> z(static_cast<size_t>(n));
  const long double two_pi = 6.283185307179586476925286766559L;
  for (int k = 0; k < n; ++k) z[static_cast<size_t>(k)] = std::polar(radius, two_pi * k / n + 0.4L);
  for (int iter = 0; iter < 2000; ++iter) {
    long double max_step = 0;
    for (int k = 0; k < n; ++k) {
      cld val, der;
      eval_pd(z[static_cast<size_t>(k)], val, der);
      if (val == cld(0)) continue;
      cld ratio = val / der;
      cld sum = 0;
      for (int j = 0; j < n; ++j)
        if (j != k) sum += 1.0L / (z[static_cast<size_t>(k)] - z[static_cast<size_t>(j)]);
      cld step = ratio / (1.0L - ratio * sum);
      z[static_cast<size_t>(k)] -= step;
      max_step = std::max(max_step, std::abs(step) / std::max(1.0L, std::abs(z[static_cast<size_t>(k)])));
    }
    if (max_step < 1e-18L) break;
  }
  return z;
}

namespace {

struct ComplexReal {
  Real re;
  Real im;
};

ComplexReal cmul(const ComplexReal& a, const ComplexReal& b) {
  return {a.re * b.re - a.im * b.im, a.re * b.im + a.im * b.re};
}

ComplexReal cadd(const ComplexReal& a, const ComplexReal& b) { return {a.re + b.re, a.im + b.im}; }

ComplexReal csub(const ComplexReal& a, const ComplexReal& b) { return {a.re - b.re, a.im - b.im}; }

ComplexReal cdiv(const ComplexReal& a, const ComplexReal& b) {
  Real den = b.re * b.re + b.im * b.im;
  return {(a.re * b.re + a.im * b.im) / den, (a.im * b.re - a.re * b.im) / den};
}

void newton_polish(const QPoly& p, ComplexReal& z, int prec) {
  const int n = p.degree();
  std::vector<Real> a;
  for (int i = 0; i <= n; ++i) a.emplace_back(p.coeff(i), prec);
  for (int iter = 0; iter < 200; ++iter) {
    ComplexReal val{a[static_cast<size_t>(n)], Real(prec)};
    ComplexReal der{Real(prec), Real(prec)};
    for (int i = n - 1; i >= 0; --i) {
      der = cadd(cmul(der, z), val);
      val = cmul(val, z);
      val.re = val.re + a[static_cast<size_t>(i)];
    }
    if (der.re.is_zero() && der.im.is_zero()) return;
    ComplexReal step = cdiv(val, der);
    z = csub(z, step);
    double mag = std::hypot(step.re.to_double(), step.im.to_double());
    double zmag = std::max(1.0, std::hypot(z.re.to_double(), z.im.to_double()));
    if (mag == 0.0 || std::log2(mag / zmag) < -(prec - 8)) break;
  }
}

// Attempts to certify disks around the given centers; returns false when the
// disks are not pairwise disjoint.
bool certify(const QPoly& mp, const std::vector<ComplexReal>& centers, int prec,
             std::vector<ComplexInterval>& out) {
  const size_t n = centers.size();
  std::vector<ComplexInterval> zc;
  for (const auto& c : centers) zc.emplace_back(Interval::from_real(c.re, prec), Interval::from_real(c.im, prec));
  std::vector<Interval> radius;
  for (size_t i = 0; i < n; ++i) {
    ComplexInterval den(Interval::from_integer(1, prec), Interval(prec));
    for (size_t j = 0; j < n; ++j)
      if (j != i) den = den * (zc[i] - zc[j]);
    if (norm_squared(den).contains_zero()) return false;
    ComplexInterval w = mp.eval(zc[i]) / den;
    radius.push_back(modulus(w) * Interval::from_integer(static_cast<long>(n), prec));
  }
  for (size_t i = 0; i < n; ++i)
    for (size_t j = i + 1; j < n; ++j) {
      Interval dist = modulus(zc[i] - zc[j]);
      if (!(radius[i] + radius[j]).certainly_less(dist)) return false;
    }
  out.clear();
  for (size_t i = 0; i < n; ++i) {
    Interval r = radius[i];
    Interval spread = Interval::hull(-r, r);
    Interval re = zc[i].re + spread;
    Interval im = centers[i].im.is_zero() ? Interval(prec) : zc[i].im + spread;
    out.emplace_back(std::move(re), std::move(im));
  }
  return true;
}

}  // namespace

std::vector<ComplexInterval> certified_roots(const QPoly& p, int prec) {
  if (p.degree() < 1) return {};
  QPoly mp = p.monic();
  const int n = mp.degree();
  if (n == 1) {
    Rational r = -mp.coeff(0);
    return {ComplexInterval(Interval::from_rational(r, prec), Interval(prec))};
  }
  std::vector<cld> approx = approximate_roots(mp);
  int work = prec + 32;
  for (int attempt = 0; attempt < 8; ++attempt, work *= 2) {
    const bool snap = attempt < 6;
    std::vector<ComplexReal> centers;
    for (const auto& z : approx) {
      ComplexReal c{Real(static_cast<double>(z.real()), work), Real(static_cast<double>(z.imag()), work)};
      newton_polish(mp, c, work);
      centers.push_back(std::move(c));
    }
    if (snap) {
      for (auto& c : centers) {
        double mag = std::max(1.0, std::hypot(c.re.to_double(), c.im.to_double()));
        if (std::fabs(c.im.to_double()) < mag * std::ldexp(1.0, -std::min(work / 2, 500))) {
          c.im = Real(work);
          // A real root: polish along the real axis.
          newton_polish(mp, c, work);
          c.im = Real(work);
        }
      }
    }
    std::vector<ComplexInterval> out;
    if (!certify(mp, centers, work, out)) continue;
    std::vector<size_t> order(out.size());
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(), [&](size_t a, size_t b) {
      bool ra = out[a].is_real(), rb = out[b].is_real();
      if (ra != rb) return ra;
      double ma = out[a].re.mid(), mb = out[b].re.mid();
      if (ma != mb) return ma < mb;
      return out[a].im.mid() < out[b].im.mid();
    });
    std::vector<ComplexInterval> sorted;
    for (size_t i : order) sorted.push_back(out[i]);
    return sorted;
  }
  throw Error(ErrorCode::EmbeddingFailure, "could not certify roots of " + p.to_string());
}

std::vector<long double> real_roots_in(const QPoly& p, long double lo, long double hi) {
  std::vector<long double> roots;
  const int n = p.degree();
  if (n < 1) return roots;
  if (n == 1) {
    long double r = -static_cast<long double>(p.coeff(0).get_d()) / static_cast<long double>(p.coeff(1).get_d());
    if (r >= lo && r <= hi) roots.push_back(r);
    return roots;
  }
  std::vector<long double> breaks{lo};
  for (long double c : real_roots_in(p.derivative(), lo, hi))
    if (c > breaks.back()) breaks.push_back(c);
  if (hi > breaks.back()) breaks.push_back(hi);
  for (size_t i = 0; i + 1 < breaks.size(); ++i) {
    long double a = breaks[i], b = breaks[i + 1];
    long double fa = p.eval(a), fb = p.eval(b);
    if (fa == 0) {
      if (roots.empty() || roots.back() != a) roots.push_back(a);
      continue;
    }
    if (fb == 0 || (fa < 0) == (fb < 0)) continue;
    for (int iter = 0; iter < 200; ++iter) {
      long double m = a + (b - a) / 2;
      if (m == a || m == b) break;
      long double fm = p.eval(m);
      if ((fm < 0) == (fa < 0)) {
        a = m;
        fa = fm;
      } else {
        b = m;
      }
    }
    roots.push_back(a + (b - a) / 2);
  }
  if (p.eval(hi) == 0 && (roots.empty() || roots.back() != hi)) roots.push_back(hi);
  return roots;
}

// ---------------------------------------------------------------- factoring

namespace {

// Looks for a monic integer factor whose roots are a subset of `roots`.
bool find_factor(const QPoly& p, const std::vector<cld>& roots, QPoly& factor) {
  const int n = static_cast<int>(roots.size());
  std::vector<int> idx;
  for (int k = 1; k <= n / 2; ++k) {
    idx.assign(static_cast<size_t>(k), 0);
    std::iota(idx.begin(), idx.end(), 0);
    while (true) {
      // Product of (x - r_i) over the subset.
      std::vector<cld> c{cld(1)};
      for (int i : idx) {
        std::vector<cld> next(c.size() + 1, cld(0));
        for (size_t j = 0; j < c.size(); ++j) {
          next[j + 1] += c[j];
          next[j] -= c[j] * roots[static_cast<size_t>(i)];
        }
        c = std::move(next);
      }
      bool ok = true;
      std::vector<Rational> coeffs;
      for (const auto& v : c) {
        long double re = std::round(v.real());
        long double tol = 1e-6L * std::max(1.0L, std::fabs(v.real()));
        if (std::fabs(v.imag()) > tol || std::fabs(v.real() - re) > tol || std::fabs(re) > 9e15L) {
          ok = false;
          break;
        }
        coeffs.emplace_back(static_cast<long>(re));
      }
      if (ok) {
        QPoly cand(std::move(coeffs));
        if ((p % cand).is_zero()) {
          factor = cand;
          return true;
        }
      }
      int pos = k - 1;
      while (pos >= 0 && idx[static_cast<size_t>(pos)] == n - k + pos) --pos;
      if (pos < 0) break;
      ++idx[static_cast<size_t>(pos)];
      for (int j = pos + 1; j < k; ++j) idx[static_cast<size_t>(j)] = idx[static_cast<size_t>(j - 1)] + 1;
    }
  }
  return false;
}

void factor_into(const QPoly& p, std::vector<QPoly>& out) {
  if (p.degree() <= 0) return;
  if (p.degree() == 1) {
    out.push_back(p);
    return;
  }
  QPoly g = gcd(p, p.derivative());
  if (g.degree() > 0) {
    factor_into(g, out);
    factor_into(p / g, out);
    return;
  }
  std::vector<cld> roots = approximate_roots(p);
  QPoly f;
  if (find_factor(p, roots, f)) {
    factor_into(f, out);
    factor_into(p / f, out);
    return;
  }
  out.push_back(p);
}

}  // namespace

std::vector<QPoly> factor_monic_integer(const QPoly& p) {
  if (!p.is_monic() || !p.is_integral()) throw Error(ErrorCode::InvalidArgument, "expected a monic integer polynomial");
  std::vector<QPoly> out;
  factor_into(p, out);
  std::sort(out.begin(), out.end(), [](const QPoly& a, const QPoly& b) {
    if (a.degree() != b.degree()) return a.degree() < b.degree();
    for (int i = a.degree(); i >= 0; --i)
      if (a.coeff(i) != b.coeff(i)) return a.coeff(i) < b.coeff(i);
    return false;
  });
  return out;
}

bool is_irreducible(const QPoly& p) {
  if (p.degree() < 1) return false;
  return factor_monic_integer(p).size() == 1;
}

}  // namespace lsp
