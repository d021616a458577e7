#include "lsp/diophantine.hpp"

#include <cmath>
#include <sstream>

#include "lsp/error.hpp"

namespace lsp {

namespace {

QPoly monomial(const Rational& c, int k) {
  std::vector<Rational> v(k + 1);
  v[k] = c;
  return QPoly(v);
}

std::string poly_text(const QPoly& p) { return p.is_zero() ? "0" : p.to_string("N"); }

double ln_term(const SeriesSpec& s, int N) {
  const Rational n(N);
  const double d = s.d.eval(n).get_d();
  if (s.kind == SeriesSpec::Kind::Power) return -(s.e.eval(n).get_d() / d) * std::log(static_cast<double>(N));
  const double E = (s.m.is_zero() ? 0.0 : s.m.eval(n).get_d()) - s.e.eval(n).get_d() / d;
  return E * std::log(s.base.get_d());
}

void check_degree_sequence(const SeriesSpec& s) {
  if (s.d.is_zero() || s.d.lead() <= 0) throw Error(ErrorCode::InvalidArgument, "degree sequence must be eventually positive");
  if (s.d.eval(Rational(s.start)) <= 0) throw Error(ErrorCode::InvalidArgument, "degree sequence must be positive from the start index");
}

SummabilityVerdict tail_verdict(const SeriesSpec& s) {
  SummabilityVerdict v;
  check_degree_sequence(s);
  if (s.kind == SeriesSpec::Kind::Power) {
    if (s.e.degree() > 0 || !s.m.is_zero()) throw Error(ErrorCode::Unsupported, "power form needs a constant exponent and no multiplicity");
    if (s.d.degree() >= 1) {
      v.tail_bound_rationale = "term test: exponent a/D_N -> 0 so terms -> 1";
      return v;
    }
    const Rational p = s.e.is_zero() ? Rational(0) : Rational(s.e.coeff(0) / s.d.coeff(0));
    v.converges = p > 1;
    v.tail_bound_rationale = "p-series comparison with p = " + p.get_str() + (v.converges ? " > 1" : " <= 1");
    return v;
  }
  if (s.base <= 1) throw Error(ErrorCode::InvalidArgument, "base must exceed 1");
  // log_base(term) = m - e/d = (m d - e) / d
  const QPoly num = s.m * s.d - s.e;
  if (num.is_zero()) {
    v.tail_bound_rationale = "term test: every term equals 1";
    return v;
  }
  const int gap = num.degree() - s.d.degree();
  const Rational r = num.lead() / s.d.lead();
  if (gap >= 1 && r < 0) {
    v.converges = true;
    v.tail_bound_rationale = gap == 1 ? "root test: term^(1/N) -> " + s.base.get_str() + "^(" + r.get_str() + ") < 1"
                                      : "root test: term^(1/N) -> 0";
  } else if (gap >= 1) {
    v.tail_bound_rationale = "term test: terms grow without bound";
  } else if (gap == 0) {
    v.tail_bound_rationale = "term test: terms -> " + s.base.get_str() + "^(" + r.get_str() + ") > 0";
  } else {
    v.tail_bound_rationale = "term test: terms -> 1";
  }
  return v;
}

}  // namespace

std::string SeriesSpec::describe() const {
  std::ostringstream out;
  switch (kind) {
    case Kind::Exponential:
      out << "eps_N = " << base.get_str() << "^-(" << poly_text(e) << "), D_N = " << poly_text(d);
      if (!m.is_zero()) out << ", multiplicity " << base.get_str() << "^(" << poly_text(m) << ")";
      break;
    case Kind::Power: out << "eps_N = N^-(" << poly_text(e) << "), D_N = " << poly_text(d); break;
    case Kind::Table:
      out << "table of " << table.size() << " terms";
      if (tail) out << ", tail " << tail->describe();
      break;
  }
  out << ", N >= " << start;
  return out.str();
}

SummabilityVerdict borel_cantelli_check(const SeriesSpec& s, int shown_terms) {
  SummabilityVerdict v;
  double sum = 0;
  if (s.kind == SeriesSpec::Kind::Table) {
    if (!s.tail) throw Error(ErrorCode::TailModelMissing, "table input needs a declared tail model");
    if (s.table_degrees.size() != s.table.size()) throw Error(ErrorCode::InvalidArgument, "table degrees and values differ in length");
    for (size_t i = 0; i < s.table.size(); ++i) {
      if (!(s.table[i] >= 0) || !(s.table_degrees[i] > 0)) throw Error(ErrorCode::InvalidArgument, "bad table entry");
      sum += std::pow(s.table[i], 1.0 / s.table_degrees[i]);
      v.partial_sums.push_back(sum);
    }
    SummabilityVerdict t = tail_verdict(*s.tail);
    v.converges = t.converges;
    v.tail_bound_rationale = "finite table, tail: " + t.tail_bound_rationale;
    for (int N = s.tail->start; static_cast<int>(v.partial_sums.size()) < shown_terms; ++N) {
      sum += std::exp(ln_term(*s.tail, N));
      v.partial_sums.push_back(sum);
    }
    return v;
  }
  SummabilityVerdict t = tail_verdict(s);
  v.converges = t.converges;
  v.tail_bound_rationale = t.tail_bound_rationale;
  for (int i = 0; i < shown_terms; ++i) {
    sum += std::exp(ln_term(s, s.start + i));
    v.partial_sums.push_back(sum);
  }
  return v;
}

SeriesSpec geometric_series(const Rational& base, int power_of_N, const Rational& coefficient) {
  SeriesSpec s;
  s.base = base;
  s.e = monomial(coefficient, power_of_N);
  return s;
}

long quadexp_exponent_constant(int g) { return static_cast<long>(2 * g + 4) * (4 * g - 2); }
long quadexp_base(int g) { return 4L * g - 1; }

SeriesSpec closing_series(int g, const Rational& eta) {
  if (g < 2) throw Error(ErrorCode::InvalidArgument, "genus must be at least 2");
  SeriesSpec s;
  s.base = quadexp_base(g);
  s.e = monomial(Rational(quadexp_exponent_constant(g)) + eta, 2);
  s.d = monomial(Rational((4L * g - 2) * (g + 2)), 1);
  s.m = monomial(Rational(2), 1);
  return s;
}

SeriesSpec word_identity_series(int m, const Rational& eta) {
  if (m < 2) throw Error(ErrorCode::InvalidArgument, "need at least two generators");
  SeriesSpec s;
  s.base = 2L * m - 1;
  s.e = monomial(Rational(m + 2) + eta, 2);
  s.d = monomial(Rational(m + 2), 1);
  s.m = monomial(Rational(1), 1);
  return s;
}

namespace {

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::stringstream in(s);
  std::string item;
  while (std::getline(in, item, sep)) out.push_back(item);
  return out;
}

QPoly parse_poly(const std::string& s) {
  std::vector<Rational> c;
  for (const auto& x : split(s, ',')) c.push_back(parse_rational(x));
  return QPoly(c);
}

}  // namespace

SeriesSpec parse_series(const std::string& text) {
  auto parts = split(text, ':');
  auto bad = [&](const std::string& why, ErrorCode code = ErrorCode::ParseError) {
    return Error(code, "series '" + text + "': " + why);
  };
  if (parts.empty()) throw bad("empty");
  try {
    if (parts[0] == "exp" && (parts.size() == 4 || parts.size() == 5)) {
      SeriesSpec s;
      s.base = parse_rational(parts[1]);
      s.e = parse_poly(parts[2]);
      s.d = parse_poly(parts[3]);
      if (parts.size() == 5) s.m = parse_poly(parts[4]);
      return s;
    }
    if (parts[0] == "power" && parts.size() == 3) {
      SeriesSpec s;
      s.kind = SeriesSpec::Kind::Power;
      s.e = QPoly::constant(parse_rational(parts[1]));
      s.d = parse_poly(parts[2]);
      return s;
    }
    if (parts[0] == "closing" && parts.size() == 3) return closing_series(std::stoi(parts[1]), parse_rational(parts[2]));
    if (parts[0] == "words" && parts.size() == 3) return word_identity_series(std::stoi(parts[1]), parse_rational(parts[2]));
  } catch (const std::invalid_argument&) {
    throw bad("bad integer");
  } catch (const Error& e) {
    throw bad(e.what(), e.code());
  }
  throw bad("expected exp:BASE:E:D[:M], power:A:D, closing:G:ETA or words:M:ETA");
}

}  // namespace lsp
