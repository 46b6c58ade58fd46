#include "bnst/entypes.hpp"

#include <stdexcept>

namespace bnst {
namespace {

void checkShape(int n, int m) {
  if (n < 1 || m < 1 || n % m != 0) {
    throw std::invalid_argument("entypes: need m >= 1 dividing n");
  }
}

/// Number of sequences completing the given remaining symbol counts.
BigUint completions(const std::vector<int>& counts) {
  int total = 0;
  for (int c : counts) total += c;
  BigUint result = 1;
  // multinomial(total; counts) built incrementally
  int placed = 0;
  for (int c : counts) {
    for (int i = 1; i <= c; ++i) {
      result = result * (placed + i) / i;  // binomial(placed + i, i) step
    }
    placed += c;
  }
  return result;
}

}  // namespace

BigUint typeClassSize(int n, int m) {
  checkShape(n, m);
  return completions(std::vector<int>(m, n / m));
}

int capacityBits(int n, int m) {
  const BigUint size = typeClassSize(n, m);
  return static_cast<int>(boost::multiprecision::msb(size));
}

std::vector<int> unrank(const BigUint& index, int n, int m) {
  checkShape(n, m);
  if (index < 0 || index >= typeClassSize(n, m)) {
    throw std::out_of_range("unrank: index outside type class");
  }
  std::vector<int> counts(m, n / m);
  std::vector<int> seq;
  seq.reserve(n);
  BigUint rem = index;
  for (int pos = 0; pos < n; ++pos) {
    for (int s = 0; s < m; ++s) {
      if (counts[s] == 0) continue;
      --counts[s];
      const BigUint below = completions(counts);
      if (rem < below) {
        seq.push_back(s);
        break;
      }
      rem -= below;
      ++counts[s];
    }
  }
  return seq;
}

BigUint rank(const std::vector<int>& seq, int m) {
  const int n = static_cast<int>(seq.size());
  checkShape(n, m);
  std::vector<int> counts(m, 0);
  for (int s : seq) {
    if (s < 0 || s >= m) {
      throw std::invalid_argument("rank: symbol out of alphabet");
    }
    ++counts[s];
  }
  for (int c : counts) {
    if (c != n / m) {
      throw std::invalid_argument("rank: sequence is not balanced");
    }
  }
  BigUint r = 0;
  for (int s : seq) {
    for (int lower = 0; lower < s; ++lower) {
      if (counts[lower] == 0) continue;
      --counts[lower];
      r += completions(counts);
      ++counts[lower];
    }
    --counts[s];
  }
  return r;
}

std::vector<int> encodeBits(const std::vector<bool>& bits, int n, int m) {
  if (static_cast<int>(bits.size()) != capacityBits(n, m)) {
    throw std::invalid_argument("encodeBits: wrong payload length");
  }
  BigUint index = 0;
  for (bool b : bits) {
    index <<= 1;
    if (b) index |= 1;
  }
  return unrank(index, n, m);
}

std::vector<bool> decodeBits(const std::vector<int>& seq, int m) {
  const int n = static_cast<int>(seq.size());
  const int nbits = capacityBits(n, m);
  BigUint index = rank(seq, m);
  std::vector<bool> bits(static_cast<std::size_t>(nbits), false);
  for (int i = nbits - 1; i >= 0; --i) {
    bits[static_cast<std::size_t>(i)] = (index & 1) != 0;
    index >>= 1;
  }
  return bits;
}

}  // namespace bnst
