// Cyclic admissible-monomial enumeration with memoization.

#include "pentagram/admissible.hpp"

#include <algorithm>
#include <map>
#include <mutex>
#include <stdexcept>
#include <tuple>

namespace pentagram {

namespace {

long mod2n(long i, long n) {
  long m = 2 * n;
  long k = i % m;
  if (k <= 0) k += m;
  return k;  // 1..2n
}

// Cyclic distance between indices, in 0..n.
long cyclic_distance(long i, long j, long n) {
  long m = 2 * n;
  long d = (i - j) % m;
  if (d < 0) d += m;
  return std::min(d, m - d);
}

}  // namespace

bool brackets_vanish(const ElementaryMonomial& a, const ElementaryMonomial& b, long n) {
  if (n < 3) throw std::invalid_argument("brackets_vanish requires n >= 3");
  long i = mod2n(a.index, n), j = mod2n(b.index, n);
  long d = cyclic_distance(i, j, n);
  if (a.kind == MonomialKind::Triple && b.kind == MonomialKind::Triple)
    return d != 2 && d != 4;
  if (a.kind == MonomialKind::Single && b.kind == MonomialKind::Single)
    return d != 2;
  return d != 1 && d != 2 && d != 3;
}

const std::vector<AdmissibleMonomial>& enumerate_admissible(long n, long k, InvariantParity parity) {
  if (n < 5) throw std::invalid_argument("enumerate_admissible requires n >= 5");
  if (k < 0 || k > n / 2) throw std::invalid_argument("invariant weight out of range");

  static std::mutex cache_mutex;
  static std::map<std::tuple<long, long, int>, std::vector<AdmissibleMonomial>> cache;
  std::lock_guard<std::mutex> lock(cache_mutex);
  auto key = std::make_tuple(n, k, static_cast<int>(parity));
  auto it = cache.find(key);
  if (it != cache.end()) return it->second;

  // Candidates in a fixed order: all triples by center, then all singles.
  // Triples sit at even centers for O, odd for E; singles at the other parity.
  std::vector<ElementaryMonomial> cand;
  int triple_rem = parity == InvariantParity::O ? 0 : 1;
  for (long i = 1; i <= 2 * n; ++i)
    if (i % 2 == triple_rem) cand.push_back({MonomialKind::Triple, i});
  for (long j = 1; j <= 2 * n; ++j)
    if (j % 2 != triple_rem) cand.push_back({MonomialKind::Single, j});

  std::vector<AdmissibleMonomial> out;
  std::vector<std::size_t> chosen;
  auto emit = [&]() {
    AdmissibleMonomial m;
    m.sign = 1;
    for (std::size_t c : chosen) {
      const ElementaryMonomial& e = cand[c];
      if (e.kind == MonomialKind::Triple) {
        m.triple_centers.push_back(e.index);
        m.factors.push_back(mod2n(e.index - 1, n));
        m.factors.push_back(e.index);
        m.factors.push_back(mod2n(e.index + 1, n));
      } else {
        m.single_indices.push_back(e.index);
        m.factors.push_back(e.index);
        m.sign = -m.sign;
      }
    }
    std::sort(m.triple_centers.begin(), m.triple_centers.end());
    std::sort(m.single_indices.begin(), m.single_indices.end());
    std::sort(m.factors.begin(), m.factors.end());
    out.push_back(std::move(m));
  };

  auto rec = [&](auto&& self, std::size_t start) -> void {
    if (chosen.size() == static_cast<std::size_t>(k)) {
      emit();
      return;
    }
    for (std::size_t c = start; c < cand.size(); ++c) {
      bool ok = true;
      for (std::size_t p : chosen)
        if (!brackets_vanish(cand[p], cand[c], n)) {
          ok = false;
          break;
        }
      if (!ok) continue;
      chosen.push_back(c);
      self(self, c + 1);
      chosen.pop_back();
    }
  };
  rec(rec, 0);

  auto [pos, inserted] = cache.emplace(key, std::move(out));
  (void)inserted;
  return pos->second;
}

}  // namespace pentagram
