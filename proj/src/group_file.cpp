#include "lsp/group_file.hpp"

#include <cctype>
#include <fstream>
#include <optional>
#include <sstream>

#include "lsp/rational.hpp"

namespace lsp {

namespace {

struct Token {
  std::string text;
  size_t column;  // 1-based
};

std::vector<Token> tokenize(const std::string& line) {
  std::vector<Token> out;
  size_t i = 0;
  while (i < line.size()) {
    if (line[i] == '#') break;
    if (std::isspace(static_cast<unsigned char>(line[i]))) {
      ++i;
      continue;
    }
    size_t start = i;
    while (i < line.size() && !std::isspace(static_cast<unsigned char>(line[i])) && line[i] != '#') ++i;
    out.push_back({line.substr(start, i - start), start + 1});
  }
  return out;
}

[[noreturn]] void fail(size_t line, size_t column, const std::string& msg) {
  throw Error(ErrorCode::ParseError, "line " + std::to_string(line) + ", column " + std::to_string(column) + ": " + msg);
}

template <class F>
auto at_token(size_t line, const Token& tok, F&& f) -> decltype(f()) {
  try {
    return f();
  } catch (const Error& e) {
    if (e.code() == ErrorCode::ParseError || e.code() == ErrorCode::InvalidArgument) fail(line, tok.column, e.what());
    throw;
  }
}

}  // namespace

Group parse_group(const std::string& text) {
  std::istringstream in(text);
  std::string raw;
  size_t lineno = 0;
  std::optional<ScalarKind> kind;
  std::vector<Rational> field_coeffs;
  std::optional<std::pair<Rational, Rational>> embedding;
  std::vector<std::pair<size_t, std::vector<Token>>> matrices;
  int genus = 0;
  std::optional<std::string> preset_name;
  size_t field_line = 0;

  while (std::getline(in, raw)) {
    ++lineno;
    auto toks = tokenize(raw);
    if (toks.empty()) continue;
    const std::string& key = toks[0].text;
    auto need = [&](size_t n) {
      if (toks.size() != n) {
        size_t col = toks.size() > n ? toks[n].column : raw.size() + 1;
        fail(lineno, col, "'" + key + "' expects " + std::to_string(n - 1) + " argument(s)");
      }
    };
    if (key == "scalar") {
      need(2);
      const std::string& v = toks[1].text;
      if (v == "rational") kind = ScalarKind::Rational;
      else if (v == "field") kind = ScalarKind::Field;
      else if (v == "real") kind = ScalarKind::Real;
      else fail(lineno, toks[1].column, "unknown scalar kind '" + v + "'");
    } else if (key == "field") {
      if (toks.size() < 3) fail(lineno, raw.size() + 1, "field polynomial needs degree >= 1");
      field_coeffs.clear();
      for (size_t i = 1; i < toks.size(); ++i)
        field_coeffs.push_back(at_token(lineno, toks[i], [&] { return parse_rational(toks[i].text); }));
      field_line = lineno;
    } else if (key == "embedding") {
      need(3);
      Rational mid = at_token(lineno, toks[1], [&] { return parse_rational(toks[1].text); });
      Rational rad = at_token(lineno, toks[2], [&] { return parse_rational(toks[2].text); });
      if (rad <= 0) fail(lineno, toks[2].column, "embedding radius must be positive");
      embedding = std::make_pair(mid, rad);
    } else if (key == "matrix") {
      need(5);
      matrices.emplace_back(lineno, std::vector<Token>(toks.begin() + 1, toks.end()));
    } else if (key == "relation") {
      need(3);
      if (toks[1].text != "genus") fail(lineno, toks[1].column, "expected 'genus'");
      try {
        size_t used = 0;
        genus = std::stoi(toks[2].text, &used);
        if (used != toks[2].text.size() || genus < 1) throw std::invalid_argument("genus");
      } catch (const std::exception&) {
        fail(lineno, toks[2].column, "genus must be a positive integer");
      }
    } else if (key == "preset") {
      need(2);
      preset_name = toks[1].text;
    } else {
      fail(lineno, toks[0].column, "unknown keyword '" + key + "'");
    }
  }

  if (preset_name) {
    if (!matrices.empty() || kind) fail(lineno, 1, "a preset cannot be combined with explicit matrices");
    try {
      return preset(*preset_name);
    } catch (const Error& e) {
      throw Error(ErrorCode::ParseError, std::string("unknown preset: ") + e.what());
    }
  }
  if (matrices.empty()) fail(lineno + 1, 1, "no matrices given");
  if (!kind) kind = field_coeffs.empty() ? ScalarKind::Rational : ScalarKind::Field;

  Group g;
  g.name = "file";
  if (*kind == ScalarKind::Rational) {
    GeneratorTuple<Rational> t;
    for (const auto& [ln, m] : matrices) {
      std::array<Rational, 4> e;
      for (size_t i = 0; i < 4; ++i) e[i] = at_token(ln, m[i], [&] { return parse_rational(m[i].text); });
      RationalMatrix x{e[0], e[1], e[2], e[3]};
      if (x.det() != 1) fail(ln, m[0].column, "determinant is " + x.det().get_str() + ", not 1");
      t.generators.push_back(x);
    }
    t.genus = genus;
    g.tuple = std::move(t);
  } else if (*kind == ScalarKind::Field) {
    if (field_coeffs.empty()) fail(lineno + 1, 1, "scalar field needs a 'field' line");
    FieldPtr k;
    try {
      QPoly p(field_coeffs);
      k = embedding ? NumberField::create_near(p, embedding->first, embedding->second) : NumberField::create(p);
    } catch (const Error& e) {
      fail(field_line, 1, e.what());
    }
    GeneratorTuple<FieldElement> t;
    for (const auto& [ln, m] : matrices) {
      std::array<FieldElement, 4> e;
      for (size_t i = 0; i < 4; ++i) e[i] = at_token(ln, m[i], [&] { return FieldElement::parse(k, m[i].text); });
      FieldMatrix x{e[0], e[1], e[2], e[3]};
      FieldElement det = x.det();
      if (!(det.is_rational() && det.rational_part() == 1)) fail(ln, m[0].column, "determinant is not 1");
      t.generators.push_back(x);
    }
    t.genus = genus;
    g.tuple = std::move(t);
  } else {
    RealTuple t;
    for (const auto& [ln, m] : matrices) {
      std::array<std::string, 4> e;
      for (size_t i = 0; i < 4; ++i) {
        at_token(ln, m[i], [&] { return Interval::from_decimal(m[i].text, 64); });
        e[i] = m[i].text;
      }
      t.sources.push_back(e);
    }
    t.genus = genus;
    auto enclosed = t.at(256);
    for (size_t i = 0; i < t.sources.size(); ++i)
      if (!enclosed.generators[i].det().contains(1.0)) fail(matrices[i].first, 1, "determinant enclosure excludes 1");
    g.tuple = std::move(t);
  }
  if (genus > 0 && g.size() != static_cast<size_t>(2 * genus))
    fail(lineno, 1, "relation genus " + std::to_string(genus) + " needs " + std::to_string(2 * genus) + " matrices");
  return g;
}

Group load_group(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::InvalidArgument, "cannot open group file '" + path + "'");
  std::stringstream buf;
  buf << in.rdbuf();
  return parse_group(buf.str());
}

std::string serialize_group(const Group& group) {
  std::ostringstream out;
  out << "scalar " << to_string(group.kind()) << '\n';
  if (FieldPtr k = group.field()) out << k->serialize();
  std::visit(
      [&](const auto& t) {
        if constexpr (std::is_same_v<std::decay_t<decltype(t)>, RealTuple>) {
          for (const auto& s : t.sources) out << "matrix " << s[0] << ' ' << s[1] << ' ' << s[2] << ' ' << s[3] << '\n';
        } else {
          for (const auto& m : t.generators)
            out << "matrix " << scalar_string(m.a) << ' ' << scalar_string(m.b) << ' ' << scalar_string(m.c) << ' '
                << scalar_string(m.d) << '\n';
        }
      },
      group.tuple);
  if (group.genus() > 0) out << "relation genus " << group.genus() << '\n';
  return out.str();
}

}  // namespace lsp
