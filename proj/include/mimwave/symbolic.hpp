#pragma once

#include <compare>
#include <optional>
#include <vector>

#include "mimwave/errors.hpp"

namespace mimwave {

// 0/1 transition matrix over the alphabet {0, ..., N-1}.
// entry(i, j) == 1 means symbol j may follow symbol i.
struct IncidenceMatrix {
  int N = 0;
  std::vector<std::vector<int>> rows;

  IncidenceMatrix() = default;
  // Throws input_error unless rows is N x N with entries in {0, 1} and
  // every row contains at least one 1 (every state has a successor).
  IncidenceMatrix(int n, std::vector<std::vector<int>> entries);

  bool at(int i, int j) const { return rows[i][j] != 0; }
  bool all_ones() const;
  // Number of admissible successors of symbol k.
  int out_degree(int k) const;
  // Successors of k in increasing order.
  std::vector<int> successors(int k) const;
};

// Finite admissible word over the alphabet. Empty words are allowed and
// represent the root cylinder (used as an intermediate only).
struct Word {
  std::vector<int> syms;

  Word() = default;
  explicit Word(std::vector<int> s) : syms(std::move(s)) {}

  int length() const { return static_cast<int>(syms.size()); }
  bool empty() const { return syms.empty(); }
  int front() const { return syms.front(); }
  int back() const { return syms.back(); }
  int operator[](int i) const { return syms[static_cast<size_t>(i)]; }

  Word prefix(int len) const;
  Word suffix_from(int start) const;
  // this followed by w.
  Word concat(const Word& w) const;
  Word append(int sym) const;
  bool is_prefix_of(const Word& longer) const;

  auto operator<=>(const Word&) const = default;
};

// Throws input_error if any symbol is outside {0, ..., N-1}.
// Returns true iff consecutive symbols are linked by A. Empty and
// single-symbol words are admissible.
bool is_admissible(const IncidenceMatrix& A, const Word& w);

// All admissible words of exactly the given length, lexicographic order.
// length == 0 yields the single empty word. Throws input_error for length < 0.
std::vector<Word> enumerate_words(const IncidenceMatrix& A, int length);

// Integer encoding c(w) = sum_i w[n-1-i] * N^i of a word of length n,
// i.e. w is read as base-N digits with w[n-1] in the ones place.
long long word_offset(const Word& w, int N);

// Decomposition of an integer translate m as m = c(w) + N^n * k with w of
// length n admissible. Unique when it exists; fails when the base-N residue
// digits of m do not form an admissible word.
struct TranslateDecomposition {
  Word word;
  long long k = 0;
};

std::optional<TranslateDecomposition> decompose_translate(
    const IncidenceMatrix& A, long long m, int n);

}  // namespace mimwave
