#include "lsp/words.hpp"

#include <algorithm>
#include <cctype>

namespace lsp {

Word free_reduce(const std::vector<Letter>& raw) {
  Word out;
  for (Letter l : raw) {
    if (!out.empty() && out.back() == inverse_letter(l))
      out.pop_back();
    else
      out.push_back(l);
  }
  return out;
}

Word inverse(const Word& w) {
  Word out(w.rbegin(), w.rend());
  for (auto& l : out) l = inverse_letter(l);
  return out;
}

Word cyclic_reduce(const Word& w) {
  Word r = free_reduce(w);
  size_t lo = 0, hi = r.size();
  while (hi - lo >= 2 && r[lo] == inverse_letter(r[hi - 1])) {
    ++lo;
    --hi;
  }
  return Word(r.begin() + static_cast<long>(lo), r.begin() + static_cast<long>(hi));
}

std::string word_to_string(const Word& w) {
  std::string out;
  for (size_t i = 0; i < w.size(); ++i) {
    if (i) out += ' ';
    out += letter_inverse(w[i]) ? 'A' : 'a';
    out += std::to_string(letter_generator(w[i]) + 1);
  }
  return out;
}

Word parse_word(const std::string& text) {
  Word out;
  size_t i = 0;
  while (i < text.size()) {
    char c = text[i];
    if (std::isspace(static_cast<unsigned char>(c))) {
      ++i;
      continue;
    }
    if (c != 'a' && c != 'A')
      throw Error(ErrorCode::ParseError, "column " + std::to_string(i + 1) + ": expected a letter a<k> or A<k>");
    size_t j = i + 1;
    while (j < text.size() && std::isdigit(static_cast<unsigned char>(text[j]))) ++j;
    if (j == i + 1) throw Error(ErrorCode::ParseError, "column " + std::to_string(j + 1) + ": missing generator index");
    int idx = std::stoi(text.substr(i + 1, j - i - 1));
    if (idx < 1) throw Error(ErrorCode::ParseError, "column " + std::to_string(i + 2) + ": generator index starts at 1");
    out.push_back(make_letter(idx - 1, c == 'A'));
    i = j;
  }
  return out;
}

namespace {

// Minimal rotation, by direct comparison (words here are short).
Word min_rotation(const Word& w) {
  Word best = w;
  Word rot = w;
  for (size_t k = 1; k < w.size(); ++k) {
    std::rotate(rot.begin(), rot.begin() + 1, rot.end());
    if (rot < best) best = rot;
  }
  return best;
}

}  // namespace

Word canonical_class(const Word& w, bool oriented) {
  Word r = cyclic_reduce(w);
  if (r.empty()) throw Error(ErrorCode::EmptyWord, "word is trivial after cyclic reduction");
  Word best = min_rotation(r);
  if (!oriented) best = std::min(best, min_rotation(inverse(r)));
  return best;
}

bool is_primitive(const Word& w) {
  Word r = cyclic_reduce(w);
  const size_t n = r.size();
  for (size_t p = 1; p < n; ++p) {
    if (n % p != 0) continue;
    bool periodic = true;
    for (size_t i = p; i < n && periodic; ++i) periodic = r[i] == r[i - p];
    if (periodic) return false;
  }
  return !r.empty();
}

namespace {

void extend(int m, int n, Word& w, const std::function<void(const Word&)>& visit) {
  if (static_cast<int>(w.size()) == n) {
    visit(w);
    return;
  }
  for (Letter l = 0; l < 2 * m; ++l) {
    if (!w.empty() && l == inverse_letter(w.back())) continue;
    w.push_back(l);
    extend(m, n, w, visit);
    w.pop_back();
  }
}

// True if no rotation (or inverse rotation) is smaller than w itself.
bool is_canonical(const Word& w, bool oriented) {
  const size_t n = w.size();
  for (size_t k = 1; k < n; ++k) {
    for (size_t i = 0; i < n; ++i) {
      Letter x = w[(i + k) % n];
      if (x != w[i]) {
        if (x < w[i]) return false;
        break;
      }
    }
  }
  if (oriented) return true;
  Word inv = inverse(w);
  for (size_t k = 0; k < n; ++k) {
    for (size_t i = 0; i < n; ++i) {
      Letter x = inv[(i + k) % n];
      if (x != w[i]) {
        if (x < w[i]) return false;
        break;
      }
    }
  }
  return true;
}

}  // namespace

void for_each_reduced(int m, int n, const std::function<void(const Word&)>& visit, Letter first) {
  if (m < 1 || n < 0) throw Error(ErrorCode::InvalidArgument, "need m >= 1 and n >= 0");
  Word w;
  if (n == 0) {
    visit(w);
    return;
  }
  for (Letter l = 0; l < 2 * m; ++l) {
    if (first >= 0 && l != first) continue;
    w.assign(1, l);
    extend(m, n, w, visit);
  }
}

std::vector<Word> enumerate_reduced(int m, int n) {
  std::vector<Word> out;
  for_each_reduced(m, n, [&](const Word& w) { out.push_back(w); });
  return out;
}

void for_each_class(int m, int n_max, bool primitive_only, bool oriented, const std::function<void(const Word&)>& visit) {
  for (int n = 1; n <= n_max; ++n) {
    for_each_reduced(m, n, [&](const Word& w) {
      if (n >= 2 && w.front() == inverse_letter(w.back())) return;
      if (!is_canonical(w, oriented)) return;
      if (primitive_only && !is_primitive(w)) return;
      visit(w);
    });
  }
}

std::vector<Word> enumerate_classes(int m, int n_max, bool primitive_only, bool oriented) {
  std::vector<Word> out;
  for_each_class(m, n_max, primitive_only, oriented, [&](const Word& w) { out.push_back(w); });
  return out;
}

}  // namespace lsp
