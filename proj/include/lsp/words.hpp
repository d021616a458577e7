#pragma once

// Freely reduced words over m generators and their conjugacy classes.
//
// A letter is encoded as 2 * generator + (inverse ? 1 : 0) with generators
// numbered from 0, so the natural integer order is "generator ascending,
// positive before negative".  Text form: "a1 A2 a1" (upper case = inverse).

#include <functional>
#include <string>
#include <vector>

#include "lsp/moebius.hpp"

namespace lsp {

using Letter = int;
using Word = std::vector<Letter>;

inline Letter make_letter(int generator, bool inverse) { return 2 * generator + (inverse ? 1 : 0); }
inline int letter_generator(Letter l) { return l >> 1; }
inline bool letter_inverse(Letter l) { return (l & 1) != 0; }
inline Letter inverse_letter(Letter l) { return l ^ 1; }

Word free_reduce(const std::vector<Letter>& raw);
Word inverse(const Word& w);
// Strips letters cancelling around the end of the word.
Word cyclic_reduce(const Word& w);

std::string word_to_string(const Word& w);
// Accepts "a1 A2 a1" or compact forms like "a1A2a1"; throws ParseError.
Word parse_word(const std::string& text);

// Minimal rotation of the cyclic reduction, also over the inverse's
// rotations unless `oriented`.  Throws EmptyWord.
Word canonical_class(const Word& w, bool oriented = false);

// False for proper powers u^k, k >= 2 (after cyclic reduction).
bool is_primitive(const Word& w);

// Visits all reduced words of length n in lexicographic order; `first` (if
// >= 0) restricts to words beginning with that letter.
void for_each_reduced(int m, int n, const std::function<void(const Word&)>& visit, Letter first = -1);
std::vector<Word> enumerate_reduced(int m, int n);

// Canonical representatives of all classes of length 1..n_max, by length
// then lexicographically.
void for_each_class(int m, int n_max, bool primitive_only, bool oriented,
                    const std::function<void(const Word&)>& visit);
std::vector<Word> enumerate_classes(int m, int n_max, bool primitive_only, bool oriented = false);

template <class T>
Matrix2<T> evaluate(const Word& w, const GeneratorTuple<T>& t) {
  if (t.generators.empty()) throw Error(ErrorCode::ArityMismatch, "empty generator tuple");
  Matrix2<T> r = Matrix2<T>::identity_like(t.generators[0].a);
  for (Letter l : w) {
    const size_t g = static_cast<size_t>(letter_generator(l));
    if (g >= t.generators.size()) throw Error(ErrorCode::ArityMismatch, "letter beyond tuple arity");
    r = r * (letter_inverse(l) ? t.generators[g].inverse() : t.generators[g]);
  }
  return r;
}

}  // namespace lsp
