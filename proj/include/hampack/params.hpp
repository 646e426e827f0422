#pragma once

namespace hampack {

// Derived constants of the (k, ell) cycle family on n vertices.
//   z      shift count per block pair, ceil((k-ell)/ell)
//   q      tuple width, ell*z; satisfies k/2 < k-ell <= q < k
//   nu_q   digraph order n/q (0 when q does not divide n in relaxed mode)
//   nu_ell Hamilton cycle length n/ell (0 likewise)
struct Params {
  int k = 0;
  int ell = 0;
  int z = 0;
  int q = 0;
  int n = 0;
  int nu_q = 0;
  int nu_ell = 0;
  bool divisible_q = false;
  bool divisible_2q = false;
};

enum class Divisibility { required, relaxed };

// Validates k >= 3, ell >= 1, ell < k/2, n >= k, and (in required mode)
// q | n. Throws std::invalid_argument with a diagnostic naming q and 2q
// when divisibility fails.
Params derive_params(int k, int ell, int n, Divisibility div = Divisibility::required);

}  // namespace hampack
