#include "mimwave/symbolic.hpp"

#include <algorithm>
#include <string>

namespace mimwave {

namespace {

std::string word_text(const Word& w) {
  std::string s = "(";
  for (int i = 0; i < w.length(); ++i) {
    if (i) s += ",";
    s += std::to_string(w[i]);
  }
  return s + ")";
}

}  // namespace

IncidenceMatrix::IncidenceMatrix(int n, std::vector<std::vector<int>> entries)
    : N(n), rows(std::move(entries)) {
  if (N < 1) throw input_error("incidence matrix: N must be >= 1");
  if (static_cast<int>(rows.size()) != N)
    throw input_error("incidence matrix: expected " + std::to_string(N) + " rows");
  for (int i = 0; i < N; ++i) {
    if (static_cast<int>(rows[i].size()) != N)
      throw input_error("incidence matrix: row " + std::to_string(i) + " has wrong length");
    int ones = 0;
    for (int j = 0; j < N; ++j) {
      if (rows[i][j] != 0 && rows[i][j] != 1)
        throw input_error("incidence matrix: entries must be 0 or 1");
      ones += rows[i][j];
    }
    if (ones == 0)
      throw input_error("incidence matrix: row " + std::to_string(i) +
                        " has no successor");
  }
}

bool IncidenceMatrix::all_ones() const {
  for (const auto& r : rows)
    for (int v : r)
      if (v == 0) return false;
  return true;
}

int IncidenceMatrix::out_degree(int k) const {
  int d = 0;
  for (int v : rows[k]) d += v;
  return d;
}

std::vector<int> IncidenceMatrix::successors(int k) const {
  std::vector<int> s;
  for (int j = 0; j < N; ++j)
    if (rows[k][j]) s.push_back(j);
  return s;
}

Word Word::prefix(int len) const {
  return Word(std::vector<int>(syms.begin(), syms.begin() + len));
}

Word Word::suffix_from(int start) const {
  return Word(std::vector<int>(syms.begin() + start, syms.end()));
}

Word Word::concat(const Word& w) const {
  std::vector<int> s = syms;
  s.insert(s.end(), w.syms.begin(), w.syms.end());
  return Word(std::move(s));
}

Word Word::append(int sym) const {
  std::vector<int> s = syms;
  s.push_back(sym);
  return Word(std::move(s));
}

bool Word::is_prefix_of(const Word& longer) const {
  if (length() > longer.length()) return false;
  return std::equal(syms.begin(), syms.end(), longer.syms.begin());
}

bool is_admissible(const IncidenceMatrix& A, const Word& w) {
  for (int s : w.syms)
    if (s < 0 || s >= A.N)
      throw input_error("word " + word_text(w) + ": symbol out of range for N=" +
                        std::to_string(A.N));
  for (int i = 0; i + 1 < w.length(); ++i)
    if (!A.at(w[i], w[i + 1])) return false;
  return true;
}

std::vector<Word> enumerate_words(const IncidenceMatrix& A, int length) {
  if (length < 0) throw input_error("enumerate_words: negative length");
  std::vector<Word> words{Word{}};
  for (int step = 0; step < length; ++step) {
    std::vector<Word> next;
    for (const Word& w : words) {
      for (int j = 0; j < A.N; ++j) {
        if (w.empty() || A.at(w.back(), j)) next.push_back(w.append(j));
      }
    }
    words = std::move(next);
  }
  return words;
}

long long word_offset(const Word& w, int N) {
  long long c = 0;
  for (int s : w.syms) c = c * N + s;
  return c;
}

std::optional<TranslateDecomposition> decompose_translate(const IncidenceMatrix& A,
                                                          long long m, int n) {
  if (n < 0) throw input_error("decompose_translate: negative word length");
  long long block = 1;
  for (int i = 0; i < n; ++i) {
    if (block > (1LL << 56) / A.N)
      throw input_error("decompose_translate: N^n overflows");
    block *= A.N;
  }
  long long r = ((m % block) + block) % block;
  long long k = (m - r) / block;

  std::vector<int> syms(static_cast<size_t>(n));
  long long rest = r;
  for (int i = n - 1; i >= 0; --i) {
    syms[static_cast<size_t>(i)] = static_cast<int>(rest % A.N);
    rest /= A.N;
  }
  Word w(std::move(syms));
  if (!is_admissible(A, w)) return std::nullopt;
  return TranslateDecomposition{std::move(w), k};
}

}  // namespace mimwave
