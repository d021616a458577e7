#include "lsp/multipoly.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "lsp/error.hpp"

namespace lsp {

MultiPoly MultiPoly::constant(int nvars, const Rational& c) {
  MultiPoly p(nvars);
  p.add_term(Exponents(nvars, 0), c);
  return p;
}

MultiPoly MultiPoly::variable(int nvars, int i) {
  if (i < 0 || i >= nvars) throw Error(ErrorCode::InvalidArgument, "variable index out of range");
  MultiPoly p(nvars);
  Exponents e(nvars, 0);
  e[i] = 1;
  p.add_term(e, Rational(1));
  return p;
}

MultiPoly MultiPoly::from_qpoly(const QPoly& q) {
  MultiPoly p(1);
  for (int i = 0; i <= q.degree(); ++i) p.add_term({i}, q.coeff(i));
  return p;
}

int MultiPoly::degree() const {
  int d = -1;
  for (const auto& [e, c] : terms_) {
    int s = 0;
    for (int x : e) s += x;
    d = std::max(d, s);
  }
  return d;
}

int MultiPoly::degree_in(int var) const {
  int d = terms_.empty() ? -1 : 0;
  for (const auto& [e, c] : terms_) d = std::max(d, e.at(var));
  return d;
}

bool MultiPoly::is_integral() const {
  for (const auto& [e, c] : terms_)
    if (c.get_den() != 1) return false;
  return true;
}

Integer MultiPoly::denominator() const {
  Integer n = 1;
  for (const auto& [e, c] : terms_) n = lcm(n, c.get_den());
  return n;
}

QPoly MultiPoly::to_qpoly() const {
  if (n_ != 1) throw Error(ErrorCode::InvalidArgument, "to_qpoly needs exactly one variable");
  std::vector<Rational> c(std::max(0, degree() + 1));
  for (const auto& [e, v] : terms_) c[e[0]] = v;
  return QPoly(c);
}

void MultiPoly::add_term(const Exponents& e, const Rational& c) {
  if (static_cast<int>(e.size()) != n_) throw Error(ErrorCode::ArityMismatch, "exponent vector length differs from nvars");
  if (c == 0) return;
  auto it = terms_.find(e);
  if (it == terms_.end()) {
    terms_.emplace(e, c);
    return;
  }
  it->second += c;
  if (it->second == 0) terms_.erase(it);
}

Rational MultiPoly::eval(const std::vector<Rational>& x) const {
  if (static_cast<int>(x.size()) != n_) throw Error(ErrorCode::ArityMismatch, "point dimension differs from nvars");
  Rational s = 0;
  for (const auto& [e, c] : terms_) {
    Rational t = c;
    for (int i = 0; i < n_; ++i) {
      if (e[i] == 0) continue;
      mpq_class p;
      mpz_pow_ui(p.get_num_mpz_t(), x[i].get_num_mpz_t(), e[i]);
      mpz_pow_ui(p.get_den_mpz_t(), x[i].get_den_mpz_t(), e[i]);
      t *= p;
    }
    s += t;
  }
  return s;
}

double MultiPoly::eval(const std::vector<double>& x) const {
  if (static_cast<int>(x.size()) != n_) throw Error(ErrorCode::ArityMismatch, "point dimension differs from nvars");
  double s = 0;
  for (const auto& [e, c] : terms_) {
    double t = c.get_d();
    for (int i = 0; i < n_; ++i)
      for (int k = 0; k < e[i]; ++k) t *= x[i];
    s += t;
  }
  return s;
}

MultiPoly operator+(const MultiPoly& a, const MultiPoly& b) {
  if (a.n_ != b.n_) throw Error(ErrorCode::ArityMismatch, "polynomials over different variable counts");
  MultiPoly r = a;
  for (const auto& [e, c] : b.terms_) r.add_term(e, c);
  return r;
}

MultiPoly MultiPoly::operator-() const {
  MultiPoly r(n_);
  for (const auto& [e, c] : terms_) r.terms_.emplace(e, -c);
  return r;
}

MultiPoly operator-(const MultiPoly& a, const MultiPoly& b) { return a + (-b); }

MultiPoly operator*(const MultiPoly& a, const MultiPoly& b) {
  if (a.n_ != b.n_) throw Error(ErrorCode::ArityMismatch, "polynomials over different variable counts");
  MultiPoly r(a.n_);
  Exponents e(a.n_);
  for (const auto& [ea, ca] : a.terms_)
    for (const auto& [eb, cb] : b.terms_) {
      for (int i = 0; i < a.n_; ++i) e[i] = ea[i] + eb[i];
      r.add_term(e, ca * cb);
    }
  return r;
}

MultiPoly operator*(const Rational& s, const MultiPoly& a) {
  MultiPoly r(a.n_);
  if (s == 0) return r;
  for (const auto& [e, c] : a.terms_) r.terms_.emplace(e, s * c);
  return r;
}

MultiPoly MultiPoly::pow(int k) const {
  if (k < 0) throw Error(ErrorCode::InvalidArgument, "negative power");
  MultiPoly r = constant(n_, Rational(1));
  MultiPoly b = *this;
  while (k > 0) {
    if (k & 1) r = r * b;
    b = b * b;
    k >>= 1;
  }
  return r;
}

std::string MultiPoly::serialize() const {
  std::ostringstream out;
  out << "vars " << n_ << '\n';
  for (const auto& [e, c] : terms_) {
    for (size_t i = 0; i < e.size(); ++i) out << (i ? " " : "") << e[i];
    out << " : " << c.get_str() << '\n';
  }
  return out.str();
}

MultiPoly MultiPoly::parse(const std::string& text) {
  std::istringstream in(text);
  std::string line, word;
  int n = -1;
  MultiPoly p;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    if (n < 0) {
      std::istringstream ls(line);
      if (!(ls >> word >> n) || word != "vars" || n < 0) throw Error(ErrorCode::ParseError, "expected 'vars N'");
      p = MultiPoly(n);
      continue;
    }
    auto colon = line.find(':');
    if (colon == std::string::npos) throw Error(ErrorCode::ParseError, "term line needs ':'");
    std::istringstream ls(line.substr(0, colon));
    Exponents e;
    int x;
    while (ls >> x) {
      if (x < 0) throw Error(ErrorCode::ParseError, "negative exponent");
      e.push_back(x);
    }
    if (static_cast<int>(e.size()) != n) throw Error(ErrorCode::ParseError, "exponent count differs from vars");
    std::string coeff = line.substr(colon + 1);
    coeff.erase(0, coeff.find_first_not_of(' '));
    p.add_term(e, parse_rational(coeff));
  }
  if (n < 0) throw Error(ErrorCode::ParseError, "empty polynomial text");
  return p;
}

std::string MultiPoly::to_string(const std::vector<std::string>& names) const {
  if (terms_.empty()) return "0";
  std::string s;
  for (auto it = terms_.rbegin(); it != terms_.rend(); ++it) {
    const auto& [e, c] = *it;
    std::string mono;
    for (int i = 0; i < n_; ++i) {
      if (e[i] == 0) continue;
      if (!mono.empty()) mono += "*";
      mono += i < static_cast<int>(names.size()) ? names[i] : "x" + std::to_string(i + 1);
      if (e[i] > 1) mono += "^" + std::to_string(e[i]);
    }
    Rational a = abs(c);
    std::string term = mono.empty() ? a.get_str() : (a == 1 ? mono : a.get_str() + "*" + mono);
    if (s.empty())
      s = (c < 0 ? "-" : "") + term;
    else
      s += (c < 0 ? " - " : " + ") + term;
  }
  return s;
}

QPoly monic_chebyshev(int D) {
  if (D < 0) throw Error(ErrorCode::InvalidArgument, "negative degree");
  QPoly prev = QPoly::constant(Rational(1));
  if (D == 0) return prev;
  QPoly cur = QPoly::x();
  QPoly two_x = Rational(2) * QPoly::x();
  for (int k = 1; k < D; ++k) {
    QPoly next = two_x * cur - prev;
    prev = cur;
    cur = next;
  }
  return cur.monic();
}

double Box::volume() const {
  double v = 1;
  for (size_t i = 0; i < lo.size(); ++i) v *= hi[i] - lo[i];
  return v;
}

Box Box::cube(int n, double half_side) {
  return {std::vector<double>(n, -half_side), std::vector<double>(n, half_side)};
}

namespace {

struct GridBest {
  std::vector<double> x;
  double value = -1;
  std::vector<std::vector<double>> candidates;
};

int grid_size(int n) {
  if (n <= 1) return 2001;
  if (n == 2) return 129;
  if (n == 3) return 33;
  return std::max(5, static_cast<int>(std::pow(40000.0, 1.0 / n)));
}

double grid_point(const Box& B, int dim, int i, int G) {
  // Exact at both ends.
  const double t = static_cast<double>(i) / (G - 1);
  if (i == 0) return B.lo[dim];
  if (i == G - 1) return B.hi[dim];
  return B.lo[dim] + t * (B.hi[dim] - B.lo[dim]);
}

// Up to `keep` best grid points by |P|, then golden-section along each axis.
GridBest refined_sup(const MultiPoly& P, const Box& B, int keep = 3) {
  const int n = P.nvars();
  const int G = grid_size(n);
  const int D = std::max(0, P.degree());
  std::vector<std::vector<std::vector<double>>> pw(n, std::vector<std::vector<double>>(G, std::vector<double>(D + 1, 1.0)));
  for (int d = 0; d < n; ++d)
    for (int i = 0; i < G; ++i) {
      const double x = grid_point(B, d, i, G);
      for (int k = 1; k <= D; ++k) pw[d][i][k] = pw[d][i][k - 1] * x;
    }
  std::vector<std::pair<std::vector<int>, double>> terms;
  for (const auto& [e, c] : P.terms()) terms.emplace_back(e, c.get_d());
  std::vector<std::pair<double, std::vector<int>>> best;
  std::vector<int> idx(n, 0);
  long total = 1;
  for (int d = 0; d < n; ++d) total *= G;
  for (long flat = 0; flat < total; ++flat) {
    long r = flat;
    for (int d = 0; d < n; ++d) {
      idx[d] = static_cast<int>(r % G);
      r /= G;
    }
    double v = 0;
    for (const auto& [e, c] : terms) {
      double t = c;
      for (int d = 0; d < n; ++d) t *= pw[d][idx[d]][e[d]];
      v += t;
    }
    v = std::abs(v);
    if (static_cast<int>(best.size()) < keep || v > best.back().first) {
      best.emplace_back(v, idx);
      std::sort(best.begin(), best.end(), [](const auto& a, const auto& b) { return a.first > b.first; });
      if (static_cast<int>(best.size()) > keep) best.pop_back();
    }
  }
  GridBest out;
  const double phi = (std::sqrt(5.0) - 1) / 2;
  for (const auto& [v0, id] : best) {
    std::vector<double> x(n);
    for (int d = 0; d < n; ++d) x[d] = grid_point(B, d, id[d], G);
    out.candidates.push_back(x);
    double v = v0;
    for (int sweep = 0; sweep < 3; ++sweep)
      for (int d = 0; d < n; ++d) {
        const double h = (B.hi[d] - B.lo[d]) / (G - 1);
        double a = std::max(B.lo[d], x[d] - h), b = std::min(B.hi[d], x[d] + h);
        auto f = [&](double t) {
          std::vector<double> y = x;
          y[d] = t;
          return std::abs(P.eval(y));
        };
        double c1 = b - phi * (b - a), c2 = a + phi * (b - a);
        double f1 = f(c1), f2 = f(c2);
        for (int it = 0; it < 60; ++it) {
          if (f1 > f2) {
            b = c2;
            c2 = c1;
            f2 = f1;
            c1 = b - phi * (b - a);
            f1 = f(c1);
          } else {
            a = c1;
            c1 = c2;
            f1 = f2;
            c2 = a + phi * (b - a);
            f2 = f(c2);
          }
        }
        const double t = f1 > f2 ? c1 : c2;
        const double ft = std::max(f1, f2);
        if (ft > v) {
          v = ft;
          x[d] = t;
        }
      }
    out.candidates.push_back(x);
    if (v > out.value) {
      out.value = v;
      out.x = x;
    }
  }
  return out;
}

Rational exact(double v) {
  Rational q(v);
  return q;
}

}  // namespace

SupReport chebyshev_sup_bound(const MultiPoly& P) {
  if (P.is_zero()) throw Error(ErrorCode::ZeroElement, "sup bound of the zero polynomial");
  SupReport rep;
  const int D = P.degree();
  if (D == 0) {
    rep.bound = abs(P.terms().begin()->second);
  } else if (P.nvars() == 1) {
    Rational den = 1;
    for (int k = 1; k < D; ++k) den *= 2;
    rep.bound = abs(P.to_qpoly().lead()) / den;
  } else {
    Rational den = Rational(P.denominator());
    for (int k = 1; k < D; ++k) den *= 2;
    rep.bound = Rational(1) / den;
  }
  GridBest g = refined_sup(P, Box::cube(P.nvars()));
  rep.empirical = -1;
  for (const auto& c : g.candidates) {
    std::vector<Rational> x;
    for (double v : c) x.push_back(exact(v));
    Rational val = abs(P.eval(x));
    if (val > rep.empirical) {
      rep.empirical = val;
      rep.argmax = std::move(x);
    }
  }
  rep.consistent = rep.empirical >= rep.bound;
  return rep;
}

double default_remez_constant(const Box& B, int D) {
  return std::pow(4.0 * static_cast<double>(B.lo.size()) * B.volume(), D);
}

double sublevel_measure_exact(const QPoly& p, const Rational& eps, double lo, double hi) {
  if (!(hi > lo)) return 0;
  if (p.is_zero()) return eps >= 0 ? hi - lo : 0;
  std::vector<long double> cuts{lo, hi};
  for (const QPoly& q : {p - QPoly::constant(eps), p + QPoly::constant(eps)}) {
    if (q.degree() < 1) continue;
    for (long double r : real_roots_in(q, lo, hi)) cuts.push_back(r);
  }
  std::sort(cuts.begin(), cuts.end());
  const long double e = eps.get_d();
  long double total = 0;
  for (size_t i = 0; i + 1 < cuts.size(); ++i) {
    const long double a = cuts[i], b = cuts[i + 1];
    if (!(b > a)) continue;
    if (std::fabs(p.eval((a + b) / 2)) <= e) total += b - a;
  }
  return static_cast<double>(total);
}

RemezReport remez_measure_bound(const MultiPoly& P, double epsilon, const Box& B, double C_B, std::uint64_t samples,
                                std::uint64_t seed) {
  if (!(epsilon > 0)) throw Error(ErrorCode::InvalidArgument, "epsilon must be positive");
  if (static_cast<int>(B.lo.size()) != P.nvars() || B.hi.size() != B.lo.size())
    throw Error(ErrorCode::ArityMismatch, "box dimension differs from nvars");
  RemezReport rep;
  const int D = P.degree();
  const double vol = B.volume();
  rep.C_B = C_B > 0 ? C_B : default_remez_constant(B, std::max(D, 1));
  rep.sup_estimate = P.is_zero() ? 0.0 : refined_sup(P, B).value;
  rep.saturated = epsilon >= rep.sup_estimate;
  if (D <= 0 || rep.saturated)
    rep.bound = vol;
  else
    rep.bound = std::exp((std::log(rep.C_B) + std::log(epsilon) - std::log(rep.sup_estimate)) / D);
  rep.estimate.epsilon = epsilon;
  if (P.nvars() == 1) {
    rep.estimate.estimated_measure = sublevel_measure_exact(P.to_qpoly(), exact(epsilon), B.lo[0], B.hi[0]);
  } else {
    SeededRng rng(seed);
    std::uint64_t hits = 0;
    std::vector<double> x(P.nvars());
    for (std::uint64_t s = 0; s < samples; ++s) {
      for (int d = 0; d < P.nvars(); ++d) x[d] = B.lo[d] + rng.unit() * (B.hi[d] - B.lo[d]);
      if (std::abs(P.eval(x)) <= epsilon) ++hits;
    }
    const double phat = samples ? static_cast<double>(hits) / samples : 0.0;
    rep.estimate.samples = samples;
    rep.estimate.estimated_measure = phat * vol;
    rep.estimate.confidence_width = samples ? vol * (3 * std::sqrt(phat * (1 - phat) / samples) + 1.0 / samples) : vol;
  }
  rep.consistent = rep.estimate.estimated_measure - rep.estimate.confidence_width <= rep.bound;
  return rep;
}

double remez_slope(const QPoly& p, double eps_lo, double eps_hi, int points) {
  if (points < 2 || !(eps_lo > 0) || !(eps_hi > eps_lo)) throw Error(ErrorCode::InvalidArgument, "bad slope range");
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (int i = 0; i < points; ++i) {
    const double le = std::log(eps_lo) + (std::log(eps_hi) - std::log(eps_lo)) * i / (points - 1);
    const double m = sublevel_measure_exact(p, exact(std::exp(le)), -1.0, 1.0);
    if (!(m > 0)) throw Error(ErrorCode::InsufficientData, "empty sublevel set in slope fit");
    const double lm = std::log(m);
    sx += le;
    sy += lm;
    sxx += le * le;
    sxy += le * lm;
  }
  return (points * sxy - sx * sy) / (points * sxx - sx * sx);
}

std::vector<std::string> entry_names(int m) {
  std::vector<std::string> out;
  for (int j = 1; j <= m; ++j)
    for (const char* v : {"a", "b", "c", "d"}) out.push_back(v + std::to_string(j));
  return out;
}

MultiPoly trace_polynomial(const Word& w, int m) {
  if (m < 1) throw Error(ErrorCode::InvalidArgument, "need at least one generator");
  const int n = 4 * m;
  MultiPoly one = MultiPoly::constant(n, Rational(1)), zero(n);
  MultiPoly r[4] = {one, zero, zero, one};
  for (Letter l : w) {
    const int j = letter_generator(l);
    if (j >= m) throw Error(ErrorCode::ArityMismatch, "letter beyond tuple arity");
    MultiPoly a = MultiPoly::variable(n, 4 * j), b = MultiPoly::variable(n, 4 * j + 1);
    MultiPoly c = MultiPoly::variable(n, 4 * j + 2), d = MultiPoly::variable(n, 4 * j + 3);
    MultiPoly x[4] = {a, b, c, d};
    if (letter_inverse(l)) {
      x[0] = d;
      x[1] = -b;
      x[2] = -c;
      x[3] = a;
    }
    MultiPoly t[4] = {r[0] * x[0] + r[1] * x[2], r[0] * x[1] + r[1] * x[3], r[2] * x[0] + r[3] * x[2],
                      r[2] * x[1] + r[3] * x[3]};
    for (int i = 0; i < 4; ++i) r[i] = std::move(t[i]);
  }
  return r[0] + r[3];
}

EliminatedTrace eliminate_d(const MultiPoly& trace, int m) {
  const int n = 4 * m;
  if (trace.nvars() != n) throw Error(ErrorCode::ArityMismatch, "trace polynomial has the wrong variable count");
  EliminatedTrace out;
  out.numerator = MultiPoly(n);
  out.a_powers.assign(m, 0);
  for (int j = 0; j < m; ++j) out.a_powers[j] = std::max(0, trace.degree_in(4 * j + 3));
  // (1 + b_j c_j)^k cached per generator.
  std::vector<std::vector<MultiPoly>> onebc(m);
  for (int j = 0; j < m; ++j) {
    MultiPoly base = MultiPoly::constant(n, Rational(1)) + MultiPoly::variable(n, 4 * j + 1) * MultiPoly::variable(n, 4 * j + 2);
    onebc[j].push_back(MultiPoly::constant(n, Rational(1)));
    for (int k = 1; k <= out.a_powers[j]; ++k) onebc[j].push_back(onebc[j].back() * base);
  }
  for (const auto& [e, c] : trace.terms()) {
    Exponents mono = e;
    MultiPoly term(n);
    for (int j = 0; j < m; ++j) {
      mono[4 * j + 3] = 0;
      mono[4 * j] += out.a_powers[j] - e[4 * j + 3];
    }
    term.add_term(mono, c);
    for (int j = 0; j < m; ++j)
      if (e[4 * j + 3] > 0) term = term * onebc[j][e[4 * j + 3]];
    out.numerator = out.numerator + term;
  }
  return out;
}

}  // namespace lsp
