#pragma once
// Admissible monomials in the corner coordinates: elementary factors (single
// coordinates and products of three adjacent ones), the vanishing test for
// their pairwise Poisson brackets, and memoized enumerations. Two flavors
// exist: cyclic monomials on 2n coordinates (invariant sums) and non-cyclic
// window monomials on zero-based ray variables (reconstruction polynomials).

#include <vector>

namespace pentagram {

enum class InvariantParity { O, E };

enum class MonomialKind { Single, Triple };

// A single coordinate x_index or a triple x_{index-1} x_index x_{index+1},
// on the cyclic 1-based coordinates.
struct ElementaryMonomial {
  MonomialKind kind;
  long index;
};

// True when the Poisson bracket of the two elementary monomials vanishes
// identically on 2n cyclic coordinates. The nonzero patterns are: two triples
// with center distance 2 or 4, two singles with index distance 2, and a
// single against a triple whose center is 1, 2, or 3 away.
bool brackets_vanish(const ElementaryMonomial& a, const ElementaryMonomial& b, long n);

struct AdmissibleMonomial {
  std::vector<long> triple_centers;  // 1-based, sorted
  std::vector<long> single_indices;  // 1-based, sorted
  int sign;                          // (-1)^(number of singles)
  std::vector<long> factors;         // all coordinate indices, 1-based, with multiplicity
};

// All weight-k products of pairwise-commuting elementary monomials on 2n
// cyclic coordinates. Weight = number of factors. Parity O takes triples at
// even centers and singles at odd indices; parity E swaps the roles.
// Memoized; the returned reference stays valid for the process lifetime.
const std::vector<AdmissibleMonomial>& enumerate_admissible(long n, long k, InvariantParity parity);

struct WindowMonomial {
  std::vector<long> triple_centers;  // zero-based ray indices, sorted
  std::vector<long> single_indices;
  int sign;
  std::vector<long> factors;         // zero-based ray variable indices
};

// All monomials of the window polynomial with cuts (a, b) on the zero-based
// ray variables: parity O takes odd singles and even triple centers with all
// variables in [max(a+1,0), b-1]; parity E swaps parities. Compatibility is
// non-cyclic: center distances at least 6 (two triples), 4 (two singles),
// 5 (mixed). Includes the empty monomial. Memoized.
const std::vector<WindowMonomial>& window_monomials(long a, long b, InvariantParity parity);

}  // namespace pentagram
