#pragma once

#include <boost/multiprecision/cpp_int.hpp>
#include <vector>

// Enumerative coding over constant-composition sequences: every codeword of
// length n contains each of the m symbols exactly n/m times, so the empirical
// symbol mean is fixed by construction. Rank/unrank follow lexicographic
// order with symbol 0 < 1 < ... < m-1; all counts use exact integers.
namespace bnst {

using BigUint = boost::multiprecision::cpp_int;

/// Exact multinomial coefficient n! / ((n/m)!)^m. Requires m | n.
BigUint typeClassSize(int n, int m);

/// floor(log2(typeClassSize(n, m))).
int capacityBits(int n, int m);

/// index-th balanced sequence in lexicographic order, index in
/// [0, typeClassSize).
std::vector<int> unrank(const BigUint& index, int n, int m);

/// Inverse of unrank; rejects sequences without exact composition.
BigUint rank(const std::vector<int>& seq, int m);

/// Interprets bits (big-endian, length exactly capacityBits(n, m)) as an
/// index and unranks it.
std::vector<int> encodeBits(const std::vector<bool>& bits, int n, int m);

/// Inverse of encodeBits.
std::vector<bool> decodeBits(const std::vector<int>& seq, int m);

}  // namespace bnst
